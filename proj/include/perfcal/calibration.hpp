#pragma once

#include "perfcal/cardiac.hpp"
#include "perfcal/eda.hpp"
#include "perfcal/protocol.hpp"
#include "perfcal/signal.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace perfcal::calibration {

struct CalibrationConfig {
    double delta_pct = 10.0;  // drop below the running maximum that counts as a decrease
    bool sustain = true;      // later levels must stay below max - delta/2

    void validate() const;
};

// Smallest level L >= 2 with accuracy(L) <= max(accuracy(1..L-1)) - delta
// and, when sustain is set, no later level above max - delta/2.
std::optional<int> detect_decrease_level(const std::vector<protocol::PerformanceRecord>& records,
                                         const CalibrationConfig& cfg = {});

// Mean HR in the decrease level's window minus mean HR in level 1's window.
double hr_increment(const cardiac::HrSeries& hr, const std::vector<Window>& levels, int decrease_level);

// SCR events whose peak falls between the start of level 1 and the start of
// the decrease level.
int gsr_peaks_until(const std::vector<eda::ScrEvent>& scrs, const std::vector<Window>& levels,
                    int decrease_level);

struct TestCalibration {
    std::optional<int> decrease_level;
    std::optional<int> optimal_level;  // decrease_level - 1
    std::optional<double> hr_increment_bpm;
    std::optional<int> gsr_peaks_until_decrease;
    std::vector<double> accuracy_pct;  // per level, for reports
};

struct SubjectCalibration {
    std::string subject_id;
    TestCalibration stroop;
    TestCalibration math;
    std::vector<std::string> warnings;
};

struct TestInputs {
    std::vector<protocol::PerformanceRecord> records;
    std::vector<Window> levels;
};

struct SubjectInputs {
    std::string subject_id;
    TestInputs stroop;
    TestInputs math;
    std::optional<cardiac::HrSeries> hr;             // ECG-derived
    std::optional<std::vector<eda::ScrEvent>> scrs;
};

SubjectCalibration calibrate_subject(const SubjectInputs& inputs, const CalibrationConfig& cfg = {});

// Columns: subject, level decrease, HR increment and GSR peaks for
// each test, followed by the optimal levels. Missing values read "none"/"NA".
std::string format_calibration_table(const std::vector<SubjectCalibration>& rows);
std::string format_calibration_json(const std::vector<SubjectCalibration>& rows, const CalibrationConfig& cfg);
std::vector<SubjectCalibration> parse_calibration_json(std::string_view text);

}  // namespace perfcal::calibration
