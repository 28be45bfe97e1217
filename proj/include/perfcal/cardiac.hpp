#pragma once

#include "perfcal/signal.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace perfcal::cardiac {

enum class BeatSource { ECG, BVP };

// RR intervals outside this range are flagged, never dropped.
inline constexpr double kMinPlausibleRr = 0.3;
inline constexpr double kMaxPlausibleRr = 2.0;

struct BeatSeries {
    std::vector<double> beat_times_s;  // strictly increasing
    BeatSource source = BeatSource::ECG;

    std::size_t size() const { return beat_times_s.size(); }
    bool empty() const { return beat_times_s.empty(); }
    // One flag per RR interval (size() - 1 entries).
    std::vector<bool> rr_flags() const;
};

struct HrSeries {
    std::vector<double> times_s;  // end of each RR interval
    std::vector<double> hr_bpm;
    std::vector<bool> flagged;    // implausible RR behind this sample
};

struct DetectorConfig {
    double band_low_hz;
    double band_high_hz;
    double integration_s;  // moving-window integrator width (ECG only)
    double refractory_s;
    double learning_s = 2.0;
    double searchback_factor = 1.66;

    static DetectorConfig ecg_defaults() { return {5.0, 15.0, 0.150, 0.250}; }
    static DetectorConfig bvp_defaults() { return {0.5, 5.0, 0.0, 0.300}; }
};

// Band-pass, differentiate, square, integrate, then adaptive signal/noise
// thresholding with a refractory period and RR search-back. Beats are
// placed on the band-passed R wave. Constant input yields no beats.
BeatSeries detect_r_peaks(const TimeSeries& ecg,
                          const DetectorConfig& cfg = DetectorConfig::ecg_defaults());

// Same thresholding applied directly to the band-passed pulse wave maxima.
BeatSeries detect_bvp_peaks(const TimeSeries& bvp,
                            const DetectorConfig& cfg = DetectorConfig::bvp_defaults());

// hr[i] = 60 / (beat[i+1] - beat[i]), stamped at beat[i+1].
HrSeries beats_to_hr(const BeatSeries& beats);

struct HrStats {
    double hr_mean_bpm;
    double hr_std_bpm;  // population standard deviation
    std::size_t samples;
};

// Statistics over the unflagged HR samples stamped inside w.
HrStats hr_stats(const HrSeries& hr, const Window& w);

struct Agreement {
    double mean_abs_diff_bpm;
    std::size_t grid_points;
};

// Both HR series are linearly interpolated onto a 4 Hz grid over the part of
// w they both cover; the mean absolute difference is returned.
Agreement cardiac_agreement(const HrSeries& ecg_hr, const HrSeries& bvp_hr, const Window& w);

// Beat exports: one `t_s` value per line after a `t_s` header.
std::string format_beats(const BeatSeries& beats);
BeatSeries parse_beats(std::string_view text, BeatSource source);
void write_beats(const BeatSeries& beats, const std::filesystem::path& path);
BeatSeries load_beats(const std::filesystem::path& path, BeatSource source);

}  // namespace perfcal::cardiac
