#pragma once

#include "perfcal/signal.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace perfcal::emg {

struct EmgBurst {
    double start_s;
    double end_s;
    double peak_amplitude_mV;
};

struct EnvelopeConfig {
    double window_s = 0.100;
};

// Full-wave rectification followed by a centered moving RMS.
TimeSeries emg_envelope(const TimeSeries& emg, const EnvelopeConfig& cfg = {});

struct BurstConfig {
    // Explicit threshold in mV. When unset the threshold is
    // mean + k_sigma * std of the envelope inside baseline.
    std::optional<double> threshold_mV;
    std::optional<Window> baseline;  // defaults to the whole envelope
    double k_sigma = 3.0;
    double min_duration_s = 0.200;
};

double burst_threshold(const TimeSeries& envelope, const BurstConfig& cfg);

// Contiguous supra-threshold regions lasting at least min_duration_s.
std::vector<EmgBurst> detect_bursts(const TimeSeries& envelope, const BurstConfig& cfg = {});

// Exports: header `start_s,end_s,peak_amplitude_mV`.
std::string format_bursts(const std::vector<EmgBurst>& bursts);
std::vector<EmgBurst> parse_bursts(std::string_view text);
void write_bursts(const std::vector<EmgBurst>& bursts, const std::filesystem::path& path);
std::vector<EmgBurst> load_bursts(const std::filesystem::path& path);

}  // namespace perfcal::emg
