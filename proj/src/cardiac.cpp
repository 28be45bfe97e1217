#include "perfcal/cardiac.hpp"

#include "perfcal/dsp.hpp"
#include "perfcal/error.hpp"
#include "perfcal/textio.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace perfcal::cardiac {

namespace {

constexpr double kMinDuration = 2.0;
constexpr double kAgreementGridHz = 4.0;

struct Peak {
    std::size_t idx;
    double height;
};

void require_input(const TimeSeries& s, ChannelKind kind) {
    if (s.kind() != kind)
        throw ValidationError("expected a " + std::string(to_string(kind)) + " channel, got " +
                              std::string(to_string(s.kind())));
    if (s.duration_s() < kMinDuration)
        throw ProcessingError("beat detection needs at least 2 s of signal");
}

bool is_flat(std::span<const double> x) {
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    const double scale = std::max({1.0, std::abs(*lo), std::abs(*hi)});
    return (*hi - *lo) <= 1e-12 * scale;
}

std::vector<double> centered(std::span<const double> x) {
    const double m = dsp::mean(x);
    std::vector<double> out(x.begin(), x.end());
    for (double& v : out) v -= m;
    return out;
}

// Pan-Tompkins style peak classification on a nonnegative feature signal.
// Returns the indices of accepted peaks in time order.
std::vector<Peak> classify_peaks(std::span<const double> feature, double fs,
                                 const DetectorConfig& cfg) {
    const auto maxima = dsp::local_maxima(feature);
    if (maxima.empty()) return {};

    const auto learn = std::min(feature.size(),
                                static_cast<std::size_t>(std::max(1.0, cfg.learning_s * fs)));
    const auto head = feature.first(learn);
    double spk = 0.5 * *std::max_element(head.begin(), head.end());
    double npk = 0.5 * dsp::mean(head);
    auto threshold = [&] { return npk + 0.25 * (spk - npk); };

    const auto refractory = static_cast<std::size_t>(std::llround(cfg.refractory_s * fs));
    std::vector<Peak> beats;
    std::vector<Peak> since_last;  // rejected candidates after the last beat

    auto rr_average = [&]() -> double {
        if (beats.size() < 2) return 0.0;
        const std::size_t k = std::min<std::size_t>(8, beats.size() - 1);
        return static_cast<double>(beats.back().idx - beats[beats.size() - 1 - k].idx) /
               static_cast<double>(k);
    };

    for (std::size_t idx : maxima) {
        const double h = feature[idx];

        const double rr = rr_average();
        if (rr > 0.0 && static_cast<double>(idx - beats.back().idx) > cfg.searchback_factor * rr) {
            const double half = 0.5 * threshold();
            const Peak* best = nullptr;
            for (const auto& c : since_last)
                if (c.idx >= beats.back().idx + refractory && c.height > half &&
                    (!best || c.height > best->height))
                    best = &c;
            if (best) {
                const Peak recovered = *best;
                spk = 0.25 * recovered.height + 0.75 * spk;
                std::erase_if(since_last, [&](const Peak& c) { return c.idx <= recovered.idx; });
                beats.push_back(recovered);
            }
        }

        if (h > threshold()) {
            if (!beats.empty() && idx - beats.back().idx < refractory) {
                if (h > beats.back().height) beats.back() = {idx, h};
            } else {
                beats.push_back({idx, h});
                since_last.clear();
            }
            spk = 0.125 * h + 0.875 * spk;
        } else {
            npk = 0.125 * h + 0.875 * npk;
            since_last.push_back({idx, h});
        }
    }
    return beats;
}

// Refines each index to the sub-sample maximum of `shape` within +-radius.
std::vector<double> refine(std::span<const double> shape, const std::vector<Peak>& peaks,
                           std::size_t radius, const TimeSeries& s) {
    std::vector<double> times;
    times.reserve(peaks.size());
    const std::size_t n = shape.size();
    for (const auto& p : peaks) {
        const std::size_t lo = p.idx > radius ? p.idx - radius : 0;
        const std::size_t hi = std::min(n - 1, p.idx + radius);
        std::size_t best = lo;
        for (std::size_t i = lo; i <= hi; ++i)
            if (shape[i] > shape[best]) best = i;
        double offset = 0.0;
        if (best > 0 && best + 1 < n)
            offset = dsp::parabolic_offset(shape[best - 1], shape[best], shape[best + 1]);
        times.push_back(s.start_s() + (static_cast<double>(best) + offset) / s.sampling_rate_hz());
    }
    return times;
}

// Enforces strict ordering and the refractory spacing after refinement.
std::vector<double> enforce_spacing(const std::vector<double>& times, std::span<const double> shape,
                                    const TimeSeries& s, double refractory_s) {
    std::vector<double> out;
    std::vector<double> heights;
    for (double t : times) {
        const auto i = static_cast<std::size_t>(std::clamp(
            std::llround((t - s.start_s()) * s.sampling_rate_hz()), 0LL,
            static_cast<long long>(shape.size()) - 1));
        const double h = shape[i];
        if (!out.empty() && t - out.back() < refractory_s) {
            if (h > heights.back()) {
                out.back() = t;
                heights.back() = h;
            }
            continue;
        }
        out.push_back(t);
        heights.push_back(h);
    }
    return out;
}

double interpolate(const HrSeries& hr, double t) {
    const auto& ts = hr.times_s;
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    if (it == ts.begin()) return hr.hr_bpm.front();
    if (it == ts.end()) return hr.hr_bpm.back();
    const auto j = static_cast<std::size_t>(it - ts.begin());
    const double f = (t - ts[j - 1]) / (ts[j] - ts[j - 1]);
    return hr.hr_bpm[j - 1] + f * (hr.hr_bpm[j] - hr.hr_bpm[j - 1]);
}

}  // namespace

std::vector<bool> BeatSeries::rr_flags() const {
    std::vector<bool> flags;
    for (std::size_t i = 1; i < beat_times_s.size(); ++i) {
        const double rr = beat_times_s[i] - beat_times_s[i - 1];
        flags.push_back(rr < kMinPlausibleRr || rr > kMaxPlausibleRr);
    }
    return flags;
}

BeatSeries detect_r_peaks(const TimeSeries& ecg, const DetectorConfig& cfg) {
    require_input(ecg, ChannelKind::ECG);
    BeatSeries out{{}, BeatSource::ECG};
    if (is_flat(ecg.values())) return out;

    const double fs = ecg.sampling_rate_hz();
    const auto x = centered(ecg.values());
    const auto bp = dsp::filtfilt(dsp::butter_bandpass(2, cfg.band_low_hz, cfg.band_high_hz, fs), x);
    auto sq = dsp::derivative(bp, fs);
    for (double& v : sq) v *= v;
    const auto width = static_cast<std::size_t>(std::max(1.0, std::round(cfg.integration_s * fs)));
    const auto mwi = dsp::moving_average(sq, width);

    const auto peaks = classify_peaks(mwi, fs, cfg);
    std::vector<double> abs_bp(bp.size());
    std::transform(bp.begin(), bp.end(), abs_bp.begin(), [](double v) { return std::abs(v); });
    const auto times = refine(abs_bp, peaks, width, ecg);
    out.beat_times_s = enforce_spacing(times, abs_bp, ecg, cfg.refractory_s);
    return out;
}

BeatSeries detect_bvp_peaks(const TimeSeries& bvp, const DetectorConfig& cfg) {
    require_input(bvp, ChannelKind::BVP);
    BeatSeries out{{}, BeatSource::BVP};
    if (is_flat(bvp.values())) return out;

    const double fs = bvp.sampling_rate_hz();
    const auto x = centered(bvp.values());
    const auto bp = dsp::filtfilt(dsp::butter_bandpass(2, cfg.band_low_hz, cfg.band_high_hz, fs), x);
    std::vector<double> feature(bp.size());
    std::transform(bp.begin(), bp.end(), feature.begin(), [](double v) { return std::max(v, 0.0); });

    const auto peaks = classify_peaks(feature, fs, cfg);
    const auto times = refine(bp, peaks, 1, bvp);
    out.beat_times_s = enforce_spacing(times, feature, bvp, cfg.refractory_s);
    return out;
}

HrSeries beats_to_hr(const BeatSeries& beats) {
    if (beats.size() < 2) throw ProcessingError("heart rate needs at least 2 beats");
    HrSeries hr;
    const auto flags = beats.rr_flags();
    for (std::size_t i = 1; i < beats.size(); ++i) {
        const double rr = beats.beat_times_s[i] - beats.beat_times_s[i - 1];
        if (!(rr > 0.0)) throw ValidationError("beat times must be strictly increasing");
        hr.times_s.push_back(beats.beat_times_s[i]);
        hr.hr_bpm.push_back(60.0 / rr);
        hr.flagged.push_back(flags[i - 1]);
    }
    return hr;
}

HrStats hr_stats(const HrSeries& hr, const Window& w) {
    std::vector<double> picked;
    for (std::size_t i = 0; i < hr.hr_bpm.size(); ++i)
        if (w.contains(hr.times_s[i]) && !(i < hr.flagged.size() && hr.flagged[i]))
            picked.push_back(hr.hr_bpm[i]);
    if (picked.size() < 2)
        throw ProcessingError("window " + w.label + " holds fewer than 2 heart-rate samples");
    return {dsp::mean(picked), dsp::stddev(picked), picked.size()};
}

Agreement cardiac_agreement(const HrSeries& ecg_hr, const HrSeries& bvp_hr, const Window& w) {
    if (ecg_hr.times_s.empty() || bvp_hr.times_s.empty())
        throw ProcessingError("agreement needs two non-empty heart-rate series");
    const double lo = std::max({w.start_s, ecg_hr.times_s.front(), bvp_hr.times_s.front()});
    const double hi = std::min({w.end_s, ecg_hr.times_s.back(), bvp_hr.times_s.back()});
    if (!(hi > lo)) throw ProcessingError("heart-rate series do not both cover window " + w.label);
    const auto steps = static_cast<std::size_t>(std::floor((hi - lo) * kAgreementGridHz));
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = lo + static_cast<double>(k) / kAgreementGridHz;
        if (t > hi) break;
        acc += std::abs(interpolate(ecg_hr, t) - interpolate(bvp_hr, t));
        ++count;
    }
    return {acc / static_cast<double>(count), count};
}

std::string format_beats(const BeatSeries& beats) {
    std::string out = "t_s\n";
    for (double t : beats.beat_times_s) {
        out += textio::format_double(t);
        out += '\n';
    }
    return out;
}

BeatSeries parse_beats(std::string_view text, BeatSource source) {
    BeatSeries beats{{}, source};
    const auto lines = textio::split(text, '\n');
    if (lines.empty() || textio::trim(lines.front()) != "t_s")
        throw ValidationError("beat file: expected header 't_s'");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto line = textio::trim(lines[i]);
        if (line.empty()) continue;
        double t = 0.0;
        if (!textio::parse_double(line, t) || !std::isfinite(t))
            throw ValidationError("beat file: malformed time on line " + std::to_string(i + 1));
        if (!beats.beat_times_s.empty() && !(t > beats.beat_times_s.back()))
            throw ValidationError("beat file: times must be strictly increasing");
        beats.beat_times_s.push_back(t);
    }
    return beats;
}

void write_beats(const BeatSeries& beats, const std::filesystem::path& path) {
    textio::write_file(path, format_beats(beats));
}

BeatSeries load_beats(const std::filesystem::path& path, BeatSource source) {
    return parse_beats(textio::read_file(path), source);
}

}  // namespace perfcal::cardiac
