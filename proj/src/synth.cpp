#include "perfcal/synth.hpp"

#include "perfcal/dsp.hpp"
#include "perfcal/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace perfcal::synth {

namespace {

constexpr double kEcgSigma = 0.010;
constexpr double kEcgAmplitude = 1.0;

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent streams per channel so that adding a channel never shifts another.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t salt) {
    return std::mt19937_64(splitmix(seed ^ splitmix(salt)));
}

std::size_t sample_count(const SynthSpec& spec, double fs) {
    return static_cast<std::size_t>(std::llround(spec.duration_s * fs));
}

double bpm_at(const std::vector<HrKnot>& knots, double t) {
    if (t <= knots.front().t_s) return knots.front().bpm;
    if (t >= knots.back().t_s) return knots.back().bpm;
    const auto hi = std::upper_bound(knots.begin(), knots.end(), t,
                                     [](double v, const HrKnot& k) { return v < k.t_s; });
    const auto lo = hi - 1;
    const double f = (t - lo->t_s) / (hi->t_s - lo->t_s);
    return lo->bpm + f * (hi->bpm - lo->bpm);
}

void add_gaussian(std::vector<double>& x, double fs, double start, double centre, double sigma_left,
                  double sigma_right, double amplitude) {
    const double reach = 5.0 * std::max(sigma_left, sigma_right);
    const double lo_t = std::max(0.0, (centre - reach - start) * fs);
    const double hi_t = (centre + reach - start) * fs;
    const auto lo = static_cast<std::size_t>(std::ceil(lo_t));
    const auto hi = std::min(x.size(), static_cast<std::size_t>(std::max(0.0, std::floor(hi_t) + 1.0)));
    for (std::size_t i = lo; i < hi; ++i) {
        const double dt = start + static_cast<double>(i) / fs - centre;
        const double s = dt < 0.0 ? sigma_left : sigma_right;
        x[i] += amplitude * std::exp(-0.5 * dt * dt / (s * s));
    }
}

// White Gaussian noise filtered to the channel band, scaled to the requested
// SNR against the clean signal's standard deviation.
void add_noise(std::vector<double>& x, double fs, ChannelKind kind, double snr_db, std::mt19937_64& rng) {
    const double clean_std = dsp::stddev(x);
    if (clean_std <= 0.0) return;
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> w(x.size());
    for (auto& v : w) v = gauss(rng);
    const double nyq_guard = 0.45 * fs;
    dsp::Sos sos;
    switch (kind) {
        case ChannelKind::ECG: sos = dsp::butter_bandpass(2, 0.5, std::min(40.0, nyq_guard), fs); break;
        case ChannelKind::BVP: sos = dsp::butter_bandpass(2, 0.5, std::min(8.0, nyq_guard), fs); break;
        case ChannelKind::GSR: sos = dsp::butter_lowpass(2, std::min(1.0, nyq_guard), fs); break;
        case ChannelKind::EMG: break;
    }
    if (!sos.empty() && w.size() > 1) w = dsp::filtfilt(sos, w);
    const double w_std = dsp::stddev(w);
    if (w_std <= 0.0) return;
    const double scale = clean_std / std::pow(10.0, snr_db / 20.0) / w_std;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += scale * w[i];
}

}  // namespace

void SynthSpec::validate() const {
    if (!(duration_s > 0.0) || !std::isfinite(duration_s)) throw ValidationError("duration must be positive");
    if (!std::isfinite(start_s)) throw ValidationError("start must be finite");
    if (rate_hz && !(*rate_hz > 0.0)) throw ValidationError("sampling rate must be positive");
    if (hr_profile.empty()) throw ValidationError("HR profile needs at least one knot");
    for (std::size_t i = 0; i < hr_profile.size(); ++i) {
        const auto& k = hr_profile[i];
        if (!(k.bpm > 30.0 && k.bpm < 200.0))
            throw ValidationError("HR profile values must lie in (30, 200) bpm");
        if (i > 0 && !(k.t_s > hr_profile[i - 1].t_s))
            throw ValidationError("HR profile knots must be strictly increasing in time");
    }
    if (snr_db && !std::isfinite(*snr_db)) throw ValidationError("SNR must be finite");
    if (!(tonic_uS >= 0.0)) throw ValidationError("tonic level must be nonnegative");
    const double end = start_s + duration_s;
    for (const auto& e : gsr_events) {
        if (!(e.amplitude_uS > 0.0)) throw ValidationError("GSR event amplitudes must be positive");
        if (e.t_s < start_s || e.t_s >= end) throw ValidationError("GSR event outside the recording");
    }
    for (const auto& b : emg_bursts) {
        if (!(b.amplitude_mV > 0.0)) throw ValidationError("EMG burst amplitudes must be positive");
        if (!(b.end_s > b.start_s) || b.start_s < start_s || b.end_s > end)
            throw ValidationError("EMG burst outside the recording");
    }
    if (!(emg_baseline_mV >= 0.0)) throw ValidationError("EMG baseline must be nonnegative");
}

double SynthSpec::rate_for(ChannelKind kind) const { return rate_hz ? *rate_hz : default_rate_hz(kind); }

std::vector<double> beat_times(const SynthSpec& spec) {
    spec.validate();
    const double end = spec.start_s + spec.duration_s;
    std::vector<double> edges{spec.start_s};
    for (const auto& k : spec.hr_profile)
        if (k.t_s > spec.start_s && k.t_s < end) edges.push_back(k.t_s);
    edges.push_back(end);

    std::vector<double> beats;
    double phase = 0.0;  // cycles completed at the current segment start
    double target = 0.5;
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
        const double ta = edges[s];
        const double tb = edges[s + 1];
        const double ba = bpm_at(spec.hr_profile, ta);
        const double bb = bpm_at(spec.hr_profile, tb);
        const double slope = (bb - ba) / (tb - ta);  // bpm per second
        const double seg_phase = 0.5 * (ba + bb) * (tb - ta) / 60.0;
        while (target < phase + seg_phase) {
            // Solve (slope/2) tau^2 + ba tau = 60 * need for the positive root.
            const double need = 60.0 * (target - phase);
            const double tau = 2.0 * need / (ba + std::sqrt(ba * ba + 2.0 * slope * need));
            beats.push_back(ta + tau);
            target += 1.0;
        }
        phase += seg_phase;
    }
    return beats;
}

CardiacSynth gen_ecg(const SynthSpec& spec) {
    auto beats = beat_times(spec);
    const double fs = spec.rate_for(ChannelKind::ECG);
    std::vector<double> x(sample_count(spec, fs), 0.0);
    if (x.empty()) throw ValidationError("duration shorter than one sample");
    for (double b : beats) add_gaussian(x, fs, spec.start_s, b, kEcgSigma, kEcgSigma, kEcgAmplitude);
    if (spec.snr_db) {
        auto rng = stream(spec.seed, 1);
        add_noise(x, fs, ChannelKind::ECG, *spec.snr_db, rng);
    }
    return {TimeSeries(ChannelKind::ECG, fs, spec.start_s, std::move(x)), std::move(beats)};
}

CardiacSynth gen_bvp(const SynthSpec& spec) {
    auto beats = beat_times(spec);
    const double fs = spec.rate_for(ChannelKind::BVP);
    std::vector<double> x(sample_count(spec, fs), 0.0);
    if (x.empty()) throw ValidationError("duration shorter than one sample");
    for (double b : beats) {
        // Rise and decay widths scale with the local cycle length.
        const double rr = 60.0 / bpm_at(spec.hr_profile, b);
        add_gaussian(x, fs, spec.start_s, b, 0.10 * rr, 0.25 * rr, 1.0);
    }
    if (spec.snr_db) {
        auto rng = stream(spec.seed, 2);
        add_noise(x, fs, ChannelKind::BVP, *spec.snr_db, rng);
    }
    return {TimeSeries(ChannelKind::BVP, fs, spec.start_s, std::move(x)), std::move(beats)};
}

GsrSynth gen_gsr(const SynthSpec& spec, const eda::BatemanKernel& kernel) {
    spec.validate();
    kernel.validate();
    const double fs = spec.rate_for(ChannelKind::GSR);
    const std::size_t n = sample_count(spec, fs);
    if (n == 0) throw ValidationError("duration shorter than one sample");

    auto events = spec.gsr_events;
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.t_s < b.t_s; });
    std::vector<double> driver(n, 0.0);
    std::vector<eda::ScrEvent> truth;
    for (const auto& e : events) {
        const auto idx = std::min(n - 1, static_cast<std::size_t>(std::llround((e.t_s - spec.start_s) * fs)));
        driver[idx] += e.amplitude_uS;
        const double onset = spec.start_s + static_cast<double>(idx) / fs;
        truth.push_back({onset, onset + kernel.peak_time_s(), e.amplitude_uS});
    }
    auto x = eda::convolve_driver(driver, kernel, fs);
    std::vector<double> tonic(n);
    for (std::size_t i = 0; i < n; ++i) {
        tonic[i] = spec.tonic_uS + spec.drift_uS_per_min * (static_cast<double>(i) / fs) / 60.0;
        x[i] += tonic[i];
    }
    if (spec.snr_db) {
        auto rng = stream(spec.seed, 3);
        // Noise is scaled against the signal's fluctuation, not its offset.
        add_noise(x, fs, ChannelKind::GSR, *spec.snr_db, rng);
    }
    for (double& v : x) v = std::max(v, 0.0);
    return {TimeSeries(ChannelKind::GSR, fs, spec.start_s, std::move(x)), std::move(tonic), std::move(truth)};
}

EmgSynth gen_emg(const SynthSpec& spec) {
    spec.validate();
    const double fs = spec.rate_for(ChannelKind::EMG);
    const std::size_t n = sample_count(spec, fs);
    if (n == 0) throw ValidationError("duration shorter than one sample");
    auto rng = stream(spec.seed, 4);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(n);
    for (auto& v : x) v = spec.emg_baseline_mV * gauss(rng);

    auto bursts = spec.emg_bursts;
    std::sort(bursts.begin(), bursts.end(), [](const auto& a, const auto& b) { return a.start_s < b.start_s; });
    std::vector<emg::EmgBurst> truth;
    for (const auto& b : bursts) {
        // Tukey envelope with 10 % cosine tapers at each end.
        const double len = b.end_s - b.start_s;
        const double taper = 0.1 * len;
        const auto lo = static_cast<std::size_t>(std::ceil((b.start_s - spec.start_s) * fs));
        const auto hi = std::min(n, static_cast<std::size_t>(std::ceil((b.end_s - spec.start_s) * fs)));
        for (std::size_t i = lo; i < hi; ++i) {
            const double t = spec.start_s + static_cast<double>(i) / fs - b.start_s;
            double g = 1.0;
            if (t < taper) g = 0.5 * (1.0 - std::cos(std::numbers::pi * t / taper));
            else if (t > len - taper) g = 0.5 * (1.0 - std::cos(std::numbers::pi * (len - t) / taper));
            x[i] += b.amplitude_mV * g * gauss(rng);
        }
        truth.push_back({b.start_s, b.end_s, b.amplitude_mV});
    }
    return {TimeSeries(ChannelKind::EMG, fs, spec.start_s, std::move(x)), std::move(truth)};
}

SessionProfile calm_profile() {
    SessionProfile p;
    p.name = "calm";
    p.stroop_correct.fill(protocol::kStroopSlidesPerLevel);
    p.math_correct.fill(protocol::kMathSlidesPerLevel);
    p.level_bpm_offset.fill(0.0);
    p.level_scrs.fill(0);
    return p;
}

SessionProfile paper_like_profile() {
    SessionProfile p;
    p.name = "paper-like";
    // 99.55, 100, 99.55, 98.22, 92.88, 76.88, 52.44 % of 15 slides
    p.stroop_correct = {15, 15, 15, 15, 14, 12, 8};
    // 100, 80.61, 82.65, 60.20, 56.12, 43.87, 15.30 % of 7 slides
    p.math_correct = {7, 6, 6, 4, 4, 3, 1};
    for (int k = 0; k < kLevelsPerTest; ++k) {
        p.level_bpm_offset[static_cast<std::size_t>(k)] = 3.0 * (k + 1);
        p.level_scrs[static_cast<std::size_t>(k)] = k + 1;
    }
    p.relax_scrs_per_minute = 1;
    p.planted_level = 6;
    return p;
}

SessionProfile planted_profile(int level) {
    if (level < 2 || level > kLevelsPerTest) throw ValidationError("planted level must lie in 2..7");
    SessionProfile p = paper_like_profile();
    p.name = "planted";
    for (int k = 1; k <= kLevelsPerTest; ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        const bool collapsed = k >= level;
        p.stroop_correct[i] = collapsed ? 9 - (k - level) : protocol::kStroopSlidesPerLevel;
        p.math_correct[i] = collapsed ? 4 - std::min(3, k - level) : protocol::kMathSlidesPerLevel;
    }
    p.planted_level = level;
    return p;
}

SessionProfile profile_by_name(std::string_view name, int planted_level) {
    if (name == "calm") return calm_profile();
    if (name == "paper-like") return paper_like_profile();
    if (name == "planted") return planted_profile(planted_level);
    throw ValidationError("unknown profile '" + std::string(name) + "' (calm, paper-like, planted)");
}

namespace {

// HR plateaus per level with 2 s ramps at every boundary.
std::vector<HrKnot> session_hr(const SessionProfile& p, const SessionMarkers& m) {
    constexpr double ramp = 2.0;
    std::vector<HrKnot> knots;
    auto push = [&](double t, double bpm) {
        if (!knots.empty() && t <= knots.back().t_s) return;
        knots.push_back({t, bpm});
    };
    push(0.0, p.rest_bpm);
    for (const auto& s : m.scenarios) {
        if (s.kind == ScenarioKind::Relax) {
            push(s.start_s + ramp, p.rest_bpm);
            push(s.end_s - ramp, p.rest_bpm);
            continue;
        }
        const auto wins = m.level_windows(s.id);
        for (std::size_t k = 0; k < wins.size(); ++k) {
            const double bpm = p.rest_bpm + p.level_bpm_offset[k];
            push(wins[k].start_s + ramp, bpm);
            push(wins[k].end_s - ramp, bpm);
        }
    }
    return knots;
}

// Impulses spread across a window, one per equal slot, jittered inside the
// slot while keeping each response's peak in the window.
void place_scrs(std::vector<GsrImpulse>& out, const Window& w, int count, double peak_delay,
                std::mt19937_64& rng) {
    if (count <= 0) return;
    std::uniform_real_distribution<double> amp(0.1, 0.5);
    const double slot = w.duration_s() / count;
    std::uniform_real_distribution<double> jitter(0.0, std::max(0.0, slot - peak_delay - 2.0));
    for (int i = 0; i < count; ++i) {
        const double t = w.start_s + i * slot + 0.5 + jitter(rng);
        out.push_back({t, amp(rng)});
    }
}

protocol::SessionLog scripted_log(const protocol::StimulusPlan& plan, const std::vector<Window>& levels,
                                  const std::array<int, kLevelsPerTest>& correct, std::mt19937_64& rng) {
    protocol::SessionLog log;
    for (int level = 1; level <= kLevelsPerTest; ++level) {
        std::vector<const protocol::Slide*> slides;
        for (const auto& s : plan.slides)
            if (s.level == level) slides.push_back(&s);
        const auto& w = levels[static_cast<std::size_t>(level - 1)];
        std::vector<std::size_t> order(slides.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<bool> right(slides.size(), false);
        const auto n_right = static_cast<std::size_t>(correct[static_cast<std::size_t>(level - 1)]);
        for (std::size_t i = 0; i < n_right && i < order.size(); ++i) right[order[i]] = true;

        const double spacing = w.duration_s() / static_cast<double>(slides.size());
        for (std::size_t i = 0; i < slides.size(); ++i) {
            const auto& s = *slides[i];
            const auto shown = static_cast<std::int64_t>(std::llround((w.start_s + spacing * i) * 1000.0));
            const auto latency = static_cast<std::int64_t>(std::llround(s.deadline_s * 500.0));
            protocol::LogRecord rec{s.index, shown, {}, std::nullopt};
            if (right[i]) {
                rec.response = s.expected_answer();
                rec.responded_at_ms = shown + latency;
            } else if (i % 2 == 0) {
                // Wrong answer in time; the others run out the clock.
                if (s.kind() == protocol::TestKind::Stroop) {
                    const auto& p = std::get<protocol::StroopPayload>(s.payload);
                    const auto ink = static_cast<std::size_t>(p.ink);
                    rec.response = std::string(protocol::to_string(protocol::kColors[(ink + 1) % 7]));
                } else {
                    rec.response = std::to_string(std::get<protocol::MathPayload>(s.payload).expected + 1);
                }
                rec.responded_at_ms = shown + latency;
            }
            log.push_back(std::move(rec));
        }
    }
    return log;
}

}  // namespace

Session gen_session(const SessionProfile& profile, std::uint64_t seed) {
    auto markers = default_markers();
    const double duration = markers.scenarios.back().end_s;
    const eda::BatemanKernel kernel;

    SynthSpec spec;
    spec.seed = seed;
    spec.duration_s = duration;
    spec.hr_profile = session_hr(profile, markers);
    spec.snr_db = 20.0;
    spec.tonic_uS = 4.0;
    spec.drift_uS_per_min = 0.05;

    auto rng = stream(seed, 5);
    for (const auto& s : markers.scenarios) {
        if (s.kind == ScenarioKind::Relax) {
            const int count = static_cast<int>(profile.relax_scrs_per_minute * (s.end_s - s.start_s) / 60.0);
            place_scrs(spec.gsr_events, s.window(), count, kernel.peak_time_s(), rng);
            continue;
        }
        const auto wins = markers.level_windows(s.id);
        for (std::size_t k = 0; k < wins.size(); ++k)
            place_scrs(spec.gsr_events, wins[k], profile.level_scrs[k], kernel.peak_time_s(), rng);
    }

    auto ecg = gen_ecg(spec);
    auto bvp = gen_bvp(spec);
    SynthSpec gsr_spec = spec;
    gsr_spec.snr_db = 40.0;
    auto gsr = gen_gsr(gsr_spec, kernel);
    auto emg = gen_emg(spec);

    auto stroop_plan = protocol::generate_stroop_plan(splitmix(seed ^ 0x5374));
    auto math_plan = protocol::generate_math_plan(splitmix(seed ^ 0x4d61));
    auto log_rng = stream(seed, 6);
    const auto* stroop = markers.first_of(ScenarioKind::Stroop);
    const auto* math = markers.first_of(ScenarioKind::Math);
    auto stroop_log = scripted_log(stroop_plan, markers.level_windows(stroop->id), profile.stroop_correct, log_rng);
    auto math_log = scripted_log(math_plan, markers.level_windows(math->id), profile.math_correct, log_rng);

    return Session{"synth-" + profile.name + "-" + std::to_string(seed),
                   profile,
                   std::move(markers),
                   std::move(ecg.series),
                   std::move(bvp.series),
                   std::move(gsr.series),
                   std::move(emg.series),
                   std::move(stroop_plan),
                   std::move(math_plan),
                   std::move(stroop_log),
                   std::move(math_log),
                   std::move(ecg.beat_times_s),
                   std::move(gsr.events)};
}

}  // namespace perfcal::synth
