#include <doctest.h>

#include "perfcal/emg.hpp"
#include "perfcal/error.hpp"
#include "perfcal/synth.hpp"

#include <algorithm>
#include <random>

using namespace perfcal;

namespace {

synth::SynthSpec bursts_spec(std::vector<synth::BurstSpec> b, std::uint64_t seed = 3) {
    synth::SynthSpec s;
    s.seed = seed;
    s.duration_s = 60;
    s.emg_bursts = std::move(b);
    return s;
}

emg::BurstConfig quiet_baseline() {
    emg::BurstConfig c;
    c.baseline = Window(0, 5);
    return c;
}

}  // namespace

TEST_CASE("envelope of trivial inputs") {
    const TimeSeries zero(ChannelKind::EMG, 512, 0, std::vector<double>(2048, 0.0));
    for (double v : emg::emg_envelope(zero).values()) CHECK(v == 0.0);
    const TimeSeries one(ChannelKind::EMG, 512, 0, std::vector<double>(2048, 1.0));
    for (double v : emg::emg_envelope(one).values()) CHECK(v == doctest::Approx(1.0));
    CHECK_THROWS_AS(emg::emg_envelope(TimeSeries(ChannelKind::ECG, 512, 0, std::vector<double>(2048, 0.0))),
                    ValidationError);
    CHECK_THROWS_AS(emg::emg_envelope(TimeSeries(ChannelKind::EMG, 512, 0, std::vector<double>(10, 0.0))),
                    ProcessingError);
}

TEST_CASE("envelope is sign blind and nonnegative") {
    const auto x = synth::gen_emg(bursts_spec({{10, 11, 0.2}})).series;
    std::vector<double> neg(x.values().begin(), x.values().end());
    for (double& v : neg) v = -v;
    const auto a = emg::emg_envelope(x);
    const auto b = emg::emg_envelope(x.with_values(neg));
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.values()[i] >= 0.0);
        CHECK(a.values()[i] == b.values()[i]);
    }
}

TEST_CASE("envelope peaks at burst centres") {
    const auto syn = synth::gen_emg(bursts_spec({{12, 14, 0.3}, {30, 32, 0.3}}));
    const auto env = emg::emg_envelope(syn.series);
    const auto v = env.values();
    for (double centre : {13.0, 31.0}) {
        // Peak of a lightly smoothed envelope within the burst.
        std::size_t best = 0;
        double top = -1;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double t = env.time_at(i);
            if (t < centre - 1.5 || t > centre + 1.5) continue;
            std::size_t lo = i >= 256 ? i - 256 : 0, hi = std::min(v.size(), i + 256);
            double s = 0;
            for (std::size_t k = lo; k < hi; ++k) s += v[k];
            if (s > top) {
                top = s;
                best = i;
            }
        }
        CHECK(std::abs(env.time_at(best) - centre) < 0.25);
    }
}

TEST_CASE("no bursts gives a near-zero envelope") {
    const auto env = emg::emg_envelope(synth::gen_emg(bursts_spec({})).series);
    CHECK(*std::max_element(env.values().begin(), env.values().end()) < 0.02);
    CHECK(emg::detect_bursts(env, {0.05}).empty());
}

TEST_CASE("five bursts of 500 ms") {
    std::vector<synth::BurstSpec> b;
    for (int k = 0; k < 5; ++k) b.push_back({10.0 + 10 * k, 10.5 + 10 * k, 0.1});
    const auto syn = synth::gen_emg(bursts_spec(b));
    const auto found = emg::detect_bursts(emg::emg_envelope(syn.series), quiet_baseline());
    REQUIRE(found.size() == 5);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(std::abs(found[k].start_s - b[k].start_s) < 0.15);
        CHECK(std::abs(found[k].end_s - b[k].end_s) < 0.15);
        CHECK(found[k].end_s - found[k].start_s >= 0.2);
    }
}

TEST_CASE("burst count tracks the seed count") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<synth::BurstSpec> b;
        double t = 6.0;
        while (true) {
            const double len = std::uniform_real_distribution<double>(0.4, 1.5)(rng);
            if (t + len > 58) break;
            b.push_back({t, t + len, std::uniform_real_distribution<double>(0.05, 0.5)(rng)});
            t += len + std::uniform_real_distribution<double>(1.0, 6.0)(rng);
        }
        const auto syn = synth::gen_emg(bursts_spec(b, 100 + trial));
        CHECK(emg::detect_bursts(emg::emg_envelope(syn.series), quiet_baseline()).size() == b.size());
    }
}

TEST_CASE("short spike is discarded") {
    const auto syn = synth::gen_emg(bursts_spec({{20, 20.02, 0.5}}));
    CHECK(emg::detect_bursts(emg::emg_envelope(syn.series), quiet_baseline()).empty());
}

TEST_CASE("flat envelope") {
    const TimeSeries flat(ChannelKind::EMG, 512, 0, std::vector<double>(5120, 0.01));
    CHECK(emg::detect_bursts(flat).empty());
}

TEST_CASE("threshold rule") {
    const TimeSeries env(ChannelKind::EMG, 10, 0, {1, 3, 1, 3, 9, 9});
    emg::BurstConfig c;
    c.baseline = Window(0, 0.4);
    CHECK(emg::burst_threshold(env, c) == doctest::Approx(2 + 3 * 1));
    c.threshold_mV = 0.7;
    CHECK(emg::burst_threshold(env, c) == 0.7);
}

TEST_CASE("burst export round trip") {
    const std::vector<emg::EmgBurst> b = {{1.5, 2.25, 0.125}};
    const auto back = emg::parse_bursts(emg::format_bursts(b));
    REQUIRE(back.size() == 1);
    CHECK(back[0].end_s == 2.25);
    CHECK(back[0].peak_amplitude_mV == 0.125);
    CHECK_THROWS_AS(emg::parse_bursts("start,end\n"), ValidationError);
}
