#pragma once

#include "perfcal/calibration.hpp"
#include "perfcal/eda.hpp"
#include "perfcal/emg.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace perfcal::commands {

namespace fs = std::filesystem;

// Everything a batch command needs. Paths are used as given; relative
// paths in a config file are resolved against the file's directory.
struct RunConfig {
    std::optional<fs::path> manifest;
    std::optional<fs::path> markers;  // default_markers() when unset
    std::vector<fs::path> plans;      // paired with logs by position
    std::vector<fs::path> logs;
    fs::path out = "out";
    std::optional<fs::path> events;   // event directory, defaults to out
    calibration::CalibrationConfig calibration;
    eda::DecomposeConfig decompose;
    eda::ScrConfig scr;
    double emg_k_sigma = 3.0;
    double emg_min_duration_s = 0.2;

    fs::path events_dir() const { return events ? *events : out; }
};

// Reads a JSON run configuration. Unknown keys are rejected.
RunConfig load_run_config(const fs::path& path);
std::string format_run_config(const RunConfig& cfg);

struct Diagnostics {
    std::vector<std::string> info;
    std::vector<std::string> warnings;
    std::vector<std::string> errors;

    bool ok() const { return errors.empty(); }
    std::string format() const;
};

// Channel coverage, rate checks, marker consistency, and plan/log scoring
// when plans are given. Never throws on invalid inputs; reports them.
Diagnostics cmd_validate(const RunConfig& cfg);

// Stable file names written by cmd_process under out/.
inline constexpr const char* kEcgBeatsFile = "ecg_beats.csv";
inline constexpr const char* kBvpBeatsFile = "bvp_beats.csv";
inline constexpr const char* kScrEventsFile = "scr_events.csv";
inline constexpr const char* kEmgBurstsFile = "emg_bursts.csv";
inline constexpr const char* kProcessSummaryFile = "process.json";
inline constexpr const char* kFeaturesFile = "features.csv";
inline constexpr const char* kSlopesFile = "slopes.csv";
inline constexpr const char* kCalibrationTableFile = "calibration.csv";
inline constexpr const char* kCalibrationJsonFile = "calibration.json";

void cmd_process(const RunConfig& cfg);
void cmd_features(const RunConfig& cfg);
void cmd_calibrate(const RunConfig& cfg);

struct SynthOptions {
    fs::path out = "synth";
    std::uint64_t seed = 0;
    std::string profile = "paper-like";
    int planted_level = 5;
    // Single-channel mode when set: ecg, bvp, gsr or emg.
    std::optional<std::string> kind;
    double hr_bpm = 60.0;
    double duration_s = 60.0;
    std::optional<double> snr_db;
};

// A session directory (channels, manifest, markers, plans, logs, truth and
// a run.json config) or a single channel with its truth file.
void cmd_synth(const SynthOptions& opts);

// One table across calibration summaries, with plots.
void cmd_report(const std::vector<fs::path>& summaries, const fs::path& out);

}  // namespace perfcal::commands
