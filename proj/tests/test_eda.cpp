#include <doctest.h>

#include "oracles.hpp"
#include "perfcal/dsp.hpp"
#include "perfcal/eda.hpp"
#include "perfcal/error.hpp"
#include "perfcal/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace perfcal;
using eda::BatemanKernel;

namespace {

synth::SynthSpec three_events(double snr = 0.0) {
    synth::SynthSpec s;
    s.seed = 21;
    s.duration_s = 60;
    s.tonic_uS = 2.0;
    s.gsr_events = {{8.0, 0.5}, {25.0, 0.3}, {41.0, 0.2}};
    if (snr > 0) s.snr_db = snr;
    return s;
}

void check_recovery(const std::vector<eda::ScrEvent>& truth, const std::vector<eda::ScrEvent>& got) {
    REQUIRE(got.size() == truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
        CHECK(std::abs(got[i].onset_s - truth[i].onset_s) <= 0.25);
        CHECK(std::abs(got[i].amplitude_uS - truth[i].amplitude_uS) <= 0.10 * truth[i].amplitude_uS);
    }
}

eda::EdaDecomposition manual(std::vector<double> tonic, std::vector<double> driver, double fs) {
    const BatemanKernel k;
    auto phasic = eda::convolve_driver(driver, k, fs);
    return {TimeSeries(ChannelKind::GSR, fs, 0, std::move(tonic)), TimeSeries(ChannelKind::GSR, fs, 0, phasic),
            TimeSeries(ChannelKind::GSR, fs, 0, std::move(driver)), 0, 0.0};
}

}  // namespace

TEST_CASE("bateman kernel") {
    const BatemanKernel k;
    const double tp = 2.0 * 0.75 * std::log(2.0 / 0.75) / (2.0 - 0.75);
    CHECK(k.peak_time_s() == doctest::Approx(tp));
    CHECK(k(tp) == doctest::Approx(1.0));
    CHECK(k(0.0) == doctest::Approx(0.0));
    CHECK(k(-1.0) == 0.0);
    const auto h = k.sampled(16.0);
    CHECK(h.size() == 30 * 16 + 1);
    CHECK(*std::max_element(h.begin(), h.end()) <= 1.0 + 1e-12);
    for (std::size_t i = 0; i < h.size(); ++i) {
        CHECK(h[i] >= 0.0);
        CHECK(h[i] == doctest::Approx(oracle::bateman(double(i) / 16.0)).epsilon(1e-12));
    }
    CHECK_THROWS_AS((BatemanKernel{0.5, 0.75, 30}.validate()), ValidationError);
    CHECK_THROWS_AS((BatemanKernel{2, 0, 30}.validate()), ValidationError);
    CHECK_THROWS_AS((BatemanKernel{2, 0.75, 0}.validate()), ValidationError);
}

TEST_CASE("recursive convolution equals the direct sum") {
    const double fs = 32;
    std::vector<double> d(32 * 50, 0.0);
    d[10] = 0.3;
    d[200] = 1.0;
    d[201] = 0.5;
    d[900] = 0.05;
    const auto fast = eda::convolve_driver(d, BatemanKernel{}, fs);
    const auto slow = oracle::convolve(d, fs);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-9).scale(1.0));
}

TEST_CASE("constant conductance has no driver") {
    const TimeSeries flat(ChannelKind::GSR, 128, 0, std::vector<double>(128 * 60, 2.0));
    const auto dec = eda::decompose(flat);
    for (double v : dec.driver.values()) CHECK(v == doctest::Approx(0.0).scale(1e-6));
    for (double v : dec.tonic.values()) CHECK(v == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(eda::detect_scr_events(dec).empty());
}

TEST_CASE("noiseless round trip") {
    const auto syn = synth::gen_gsr(three_events());
    const auto dec = eda::decompose(syn.series);
    CHECK(dec.residual_rms_uS <= 1e-3);
    for (double v : dec.driver.values()) CHECK(v >= 0.0);
    const auto rec = eda::reconstruct(dec);
    double ss = 0;
    for (std::size_t i = 0; i < rec.size(); ++i) ss += std::pow(rec.values()[i] - syn.series.values()[i], 2);
    CHECK(std::sqrt(ss / double(rec.size())) <= 1e-3);

    // Driver mass sits at the seeded impulses.
    const double fs = dec.driver.sampling_rate_hz();
    for (const auto& e : syn.events) {
        double mass = 0;
        for (std::size_t i = 0; i < dec.driver.size(); ++i)
            if (std::abs(dec.driver.time_at(i) - e.onset_s) <= 0.25) mass += dec.driver.values()[i];
        CHECK(mass == doctest::Approx(e.amplitude_uS).epsilon(0.1));
    }
    (void)fs;
    const auto events = eda::detect_scr_events(dec);
    check_recovery(syn.events, events);
    for (const auto& e : events) {
        CHECK(e.peak_s > e.onset_s);
        CHECK(e.amplitude_uS >= 0.01);
    }
}

TEST_CASE("round trip at 20 dB") {
    const auto syn = synth::gen_gsr(three_events(20.0));
    const auto dec = eda::decompose(syn.series);
    eda::ScrConfig cfg;
    cfg.amplitude_threshold_uS = 0.05;
    check_recovery(syn.events, eda::detect_scr_events(dec, {}, cfg));
}

TEST_CASE("response below threshold is ignored") {
    auto spec = three_events();
    spec.gsr_events = {{20.0, 0.005}};
    const auto dec = eda::decompose(synth::gen_gsr(spec).series);
    CHECK(eda::detect_scr_events(dec).empty());
}

TEST_CASE("doubling amplitudes doubles the detected amplitudes") {
    auto spec = three_events(30.0);
    const auto base = eda::detect_scr_events(eda::decompose(synth::gen_gsr(spec).series));
    for (auto& e : spec.gsr_events) e.amplitude_uS *= 2;
    const auto twice = eda::detect_scr_events(eda::decompose(synth::gen_gsr(spec).series));
    REQUIRE(base.size() == 3);
    REQUIRE(twice.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(twice[i].amplitude_uS == doctest::Approx(2 * base[i].amplitude_uS).epsilon(0.1));
}

TEST_CASE("tonic stays slow") {
    // Slow wave plus responses at a low rate keeps the plain DFT cheap.
    const double fs = 16;
    const std::size_t n = 16 * 200;
    std::vector<double> driver(n, 0.0);
    driver[16 * 30] = 0.4;
    driver[16 * 90] = 0.3;
    driver[16 * 150] = 0.6;
    auto x = eda::convolve_driver(driver, BatemanKernel{}, fs);
    for (std::size_t i = 0; i < n; ++i) x[i] += 3.0 + 0.3 * std::sin(2 * std::numbers::pi * 0.01 * double(i) / fs);
    const auto dec = eda::decompose(TimeSeries(ChannelKind::GSR, fs, 0, x));
    const std::vector<double> tonic(dec.tonic.values().begin(), dec.tonic.values().end());
    CHECK(oracle::power_fraction_above(tonic, fs, 0.05) <= 0.01);
    CHECK(dec.residual_rms_uS <= 1e-3);
}

TEST_CASE("reconstruct") {
    const double fs = 8;
    const std::vector<double> tonic(8 * 40, 1.5);
    SUBCASE("zero driver") {
        const auto rec = eda::reconstruct(manual(tonic, std::vector<double>(tonic.size(), 0.0), fs));
        for (double v : rec.values()) CHECK(v == 1.5);
    }
    SUBCASE("unit impulse") {
        std::vector<double> d(tonic.size(), 0.0);
        d[0] = 1.0;
        const auto rec = eda::reconstruct(manual(tonic, d, fs));
        for (std::size_t i = 0; i < rec.size(); ++i)
            CHECK(rec.values()[i] - 1.5 == doctest::Approx(oracle::bateman(double(i) / fs)).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("decompose input checks") {
    CHECK_THROWS_AS(eda::decompose(TimeSeries(ChannelKind::GSR, 128, 0, std::vector<double>(128 * 10, 2.0))),
                    ProcessingError);
    std::vector<double> neg(128 * 40, 2.0);
    neg[100] = -0.1;
    CHECK_THROWS_AS(eda::decompose(TimeSeries(ChannelKind::GSR, 128, 0, neg)), ValidationError);
    CHECK_THROWS_AS(eda::decompose(TimeSeries(ChannelKind::ECG, 128, 0, std::vector<double>(128 * 40, 2.0))),
                    ValidationError);
}

TEST_CASE("empty driver gives no events") {
    const auto dec = manual(std::vector<double>(400, 2.0), std::vector<double>(400, 0.0), 8);
    CHECK(eda::detect_scr_events(dec).empty());
}

TEST_CASE("event export round trip") {
    const std::vector<eda::ScrEvent> ev = {{1.0, 3.5, 0.25}, {10.125, 12.0, 0.0625}};
    const auto back = eda::parse_events(eda::format_events(ev));
    REQUIRE(back.size() == 2);
    CHECK(back[1].onset_s == 10.125);
    CHECK(back[1].amplitude_uS == 0.0625);
    CHECK_THROWS_AS(eda::parse_events("a,b,c\n"), ValidationError);
    CHECK_THROWS_AS(eda::parse_events("onset_s,peak_s,amplitude_uS\n1,2\n"), ValidationError);
}
