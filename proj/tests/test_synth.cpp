#include <doctest.h>

#include "oracles.hpp"
#include "perfcal/error.hpp"
#include "perfcal/synth.hpp"

#include <algorithm>

using namespace perfcal;
using namespace perfcal::synth;

namespace {

SynthSpec spec_hr(std::vector<HrKnot> knots, double duration, std::uint64_t seed = 1) {
    SynthSpec s;
    s.seed = seed;
    s.duration_s = duration;
    s.hr_profile = std::move(knots);
    return s;
}

bool same(const TimeSeries& a, const TimeSeries& b) {
    return a.size() == b.size() && std::equal(a.values().begin(), a.values().end(), b.values().begin());
}

}  // namespace

TEST_CASE("constant rate beats") {
    const auto b = beat_times(spec_hr({{0, 60}}, 60));
    REQUIRE(b.size() == 60);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(b[i] == doctest::Approx(0.5 + double(i)));
    CHECK(beat_times(spec_hr({{0, 75}}, 120)).size() == 150);
}

TEST_CASE("ramp beats follow the integral of the rate") {
    const auto b = beat_times(spec_hr({{0, 60}, {60, 120}}, 60));
    CHECK(b.size() == 90);
    // Phase at t is t + t^2 / 120 cycles; beat k sits at phase k + 1/2.
    for (std::size_t k = 0; k < b.size(); ++k) {
        const double t = b[k];
        CHECK(t + t * t / 120.0 == doctest::Approx(double(k) + 0.5));
    }
}

TEST_CASE("ecg and bvp share one beat list") {
    const auto spec = spec_hr({{0, 62}, {30, 95}, {60, 70}}, 60, 4);
    const auto e = gen_ecg(spec);
    const auto p = gen_bvp(spec);
    CHECK(e.beat_times_s == p.beat_times_s);
    CHECK(e.beat_times_s == beat_times(spec));
    CHECK(e.series.kind() == ChannelKind::ECG);
    CHECK(p.series.kind() == ChannelKind::BVP);
    CHECK(gen_bvp(spec_hr({{0, 60}}, 60)).beat_times_s.size() == 60);
}

TEST_CASE("generators are deterministic under seed") {
    auto spec = spec_hr({{0, 80}}, 30, 11);
    spec.snr_db = 10;
    spec.gsr_events = {{5, 0.3}};
    spec.emg_bursts = {{10, 11, 0.2}};
    CHECK(same(gen_ecg(spec).series, gen_ecg(spec).series));
    CHECK(same(gen_bvp(spec).series, gen_bvp(spec).series));
    CHECK(same(gen_gsr(spec).series, gen_gsr(spec).series));
    CHECK(same(gen_emg(spec).series, gen_emg(spec).series));
    auto other = spec;
    other.seed = 12;
    CHECK_FALSE(same(gen_ecg(spec).series, gen_ecg(other).series));
    CHECK_FALSE(same(gen_emg(spec).series, gen_emg(other).series));
}

TEST_CASE("noise level matches the requested SNR") {
    auto clean = spec_hr({{0, 70}}, 60, 2);
    auto noisy = clean;
    noisy.snr_db = 10;
    const auto a = gen_ecg(clean).series;
    const auto b = gen_ecg(noisy).series;
    std::vector<double> x(a.values().begin(), a.values().end()), n(a.size());
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = b.values()[i] - a.values()[i];
    CHECK(20 * std::log10(oracle::pstd(x) / oracle::pstd(n)) == doctest::Approx(10).epsilon(0.01));
}

TEST_CASE("gsr is tonic plus kernel copies") {
    SynthSpec s;
    s.duration_s = 60;
    s.tonic_uS = 2;
    CHECK(gen_gsr(s).series.values()[100] == 2.0);
    for (double v : gen_gsr(s).series.values()) CHECK(v == 2.0);

    s.drift_uS_per_min = 0.3;
    s.gsr_events = {{5.0, 0.4}, {20.0, 0.2}, {33.3, 0.7}};
    const auto g = gen_gsr(s);
    const double fs = g.series.sampling_rate_hz();
    std::vector<double> driver(g.series.size(), 0.0);
    for (const auto& e : g.events) driver[static_cast<std::size_t>(std::llround(e.onset_s * fs))] += e.amplitude_uS;
    const auto ref = oracle::convolve(driver, fs);
    for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(g.tonic[i] == doctest::Approx(2.0 + 0.3 * double(i) / fs / 60.0));
        CHECK(g.series.values()[i] - g.tonic[i] == doctest::Approx(ref[i]).epsilon(1e-9).scale(1.0));
    }
    REQUIRE(g.events.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(g.events[i].onset_s - s.gsr_events[i].t_s) <= 0.5 / fs);
        CHECK(g.events[i].peak_s > g.events[i].onset_s);
        CHECK(g.events[i].amplitude_uS > 0);
        if (i) CHECK(g.events[i].onset_s > g.events[i - 1].onset_s);
    }
}

TEST_CASE("emg bursts") {
    SynthSpec s;
    s.duration_s = 60;
    const auto quiet = gen_emg(s);
    CHECK(oracle::pstd({quiet.series.values().begin(), quiet.series.values().end()}) ==
          doctest::Approx(0.005).epsilon(0.05));
    for (int k = 0; k < 5; ++k) s.emg_bursts.push_back({5.0 + 10 * k, 5.5 + 10 * k, 0.1});
    const auto loud = gen_emg(s);
    REQUIRE(loud.bursts.size() == 5);
    CHECK(loud.bursts[2].start_s == 25.0);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(beat_times(spec_hr({{0, 25}}, 10)), ValidationError);
    CHECK_THROWS_AS(beat_times(spec_hr({{0, 60}, {0, 70}}, 10)), ValidationError);
    SynthSpec s;
    s.gsr_events = {{70, 0.3}};
    CHECK_THROWS_AS(gen_gsr(s), ValidationError);
    s.gsr_events = {{10, -0.3}};
    CHECK_THROWS_AS(gen_gsr(s), ValidationError);
    SynthSpec e;
    e.emg_bursts = {{50, 70, 0.1}};
    CHECK_THROWS_AS(gen_emg(e), ValidationError);
}

TEST_CASE("profiles") {
    const auto calm = calm_profile();
    for (int k = 0; k < 7; ++k) {
        CHECK(calm.stroop_correct[k] == 15);
        CHECK(calm.math_correct[k] == 7);
        CHECK(calm.level_scrs[k] == 0);
    }
    const auto paper = paper_like_profile();
    // Rounded published means: 99.55 % of 15 is 14.9, and so on.
    const double means[] = {99.55, 100, 99.55, 98.22, 92.88, 76.88, 52.44};
    for (int k = 0; k < 7; ++k) CHECK(paper.stroop_correct[k] == std::lround(means[k] * 15 / 100));
    const double maths[] = {100, 80.61, 82.65, 60.20, 56.12, 43.87, 15.30};
    for (int k = 0; k < 7; ++k) CHECK(paper.math_correct[k] == std::lround(maths[k] * 7 / 100));
    for (int level = 2; level <= 7; ++level) {
        const auto p = planted_profile(level);
        CHECK(p.planted_level == level);
        for (int k = 1; k < level; ++k) CHECK(p.stroop_correct[k - 1] == 15);
        CHECK(p.stroop_correct[level - 1] < 15);
    }
    CHECK_THROWS_AS(planted_profile(1), ValidationError);
    CHECK_THROWS_AS(profile_by_name("angry"), ValidationError);
}

TEST_CASE("session") {
    const auto s = gen_session(paper_like_profile(), 3);
    CHECK(s.subject_id == "synth-paper-like-3");
    CHECK(check_markers(s.markers).empty());
    CHECK(s.ecg.duration_s() == doctest::Approx(1200));
    CHECK(s.gsr.duration_s() == doctest::Approx(1200));
    CHECK(std::is_sorted(s.truth_beats_s.begin(), s.truth_beats_s.end()));
    for (const auto& e : s.truth_scrs) CHECK(e.amplitude_uS > 0);

    // Logs score to the scripted pattern exactly.
    const auto sr = protocol::score_session(s.stroop_plan, s.stroop_log);
    const auto mr = protocol::score_session(s.math_plan, s.math_log);
    for (int k = 0; k < 7; ++k) {
        CHECK(sr[k].n_correct == s.profile.stroop_correct[k]);
        CHECK(mr[k].n_correct == s.profile.math_correct[k]);
    }
    CHECK(s.stroop_log.size() + s.math_log.size() <= 154);

    // SCR truth per level follows the profile.
    const auto lv = s.markers.level_windows("II");
    for (int k = 0; k < 7; ++k) {
        const auto n = std::count_if(s.truth_scrs.begin(), s.truth_scrs.end(),
                                     [&](const auto& e) { return lv[k].contains(e.peak_s); });
        CHECK(n == s.profile.level_scrs[k]);
    }

    const auto again = gen_session(paper_like_profile(), 3);
    CHECK(same(s.gsr, again.gsr));
    CHECK(protocol::format_log(s.math_log) == protocol::format_log(again.math_log));
    const auto other = gen_session(paper_like_profile(), 4);
    CHECK_FALSE(same(s.ecg, other.ecg));
}
