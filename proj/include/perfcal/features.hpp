#pragma once

#include "perfcal/cardiac.hpp"
#include "perfcal/eda.hpp"
#include "perfcal/emg.hpp"
#include "perfcal/signal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace perfcal::features {

struct HeartFeatures {
    double mean_bpm;
    double std_bpm;
};

struct EventFeatures {
    int count;
    double mean_amplitude;  // 0 when count == 0
};

// The eight per-window features, two per signal. A missing channel leaves
// its pair empty.
struct FeatureVector {
    std::string label;
    double start_s;
    double end_s;
    std::optional<HeartFeatures> ecg;
    std::optional<HeartFeatures> bvp;  // informational; ECG is the cardiac reference
    std::optional<EventFeatures> gsr;  // amplitudes in uS
    std::optional<EventFeatures> emg;  // amplitudes in mV
};

struct SlopeFit {
    double slope;
    double intercept;
    double rms_residual;
};

// Ordinary least-squares line through (x, y), computed on centred data.
SlopeFit fit_line(std::span<const double> x, std::span<const double> y);

// Event inputs for one subject. Absent channels stay nullopt.
struct SessionEvents {
    std::optional<cardiac::BeatSeries> ecg_beats;
    std::optional<cardiac::BeatSeries> bvp_beats;
    std::optional<std::vector<eda::ScrEvent>> scrs;
    std::optional<std::vector<emg::EmgBurst>> bursts;
};

// Events are assigned to a window by their peak time (SCR) or start time
// (EMG burst).
FeatureVector extract_features(const SessionEvents& events, const Window& w);

// Unflagged HR samples stamped inside w.
SlopeFit hr_slope(const cardiac::HrSeries& hr, const Window& w);

// Least-squares line through the running sum of SCR amplitudes, sampled at
// each event's peak time.
SlopeFit gsr_cumulative_slope(const std::vector<eda::ScrEvent>& scrs, const Window& w);

// One row per scenario followed by one row per level window.
std::vector<FeatureVector> feature_table(const SessionEvents& events, const SessionMarkers& markers);

// Delimited text with a fixed column order; empty fields read "NA".
std::string format_feature_table(const std::vector<FeatureVector>& rows);

}  // namespace perfcal::features
