#include "perfcal/calibration.hpp"

#include "perfcal/error.hpp"
#include "perfcal/textio.hpp"

#include <json.hpp>

#include <algorithm>

namespace perfcal::calibration {

namespace {

using nlohmann::json;

void require_levels(const std::vector<Window>& levels, int level) {
    if (levels.size() != static_cast<std::size_t>(kLevelsPerTest))
        throw ValidationError("expected 7 level windows, got " + std::to_string(levels.size()));
    if (level < 1 || level > kLevelsPerTest) throw ValidationError("level out of range");
}

double window_mean(const cardiac::HrSeries& hr, const Window& w) {
    return cardiac::hr_stats(hr, w).hr_mean_bpm;
}

TestCalibration calibrate_test(const TestInputs& in, const std::optional<cardiac::HrSeries>& hr,
                               const std::optional<std::vector<eda::ScrEvent>>& scrs,
                               const CalibrationConfig& cfg, const std::string& name,
                               std::vector<std::string>& warnings) {
    TestCalibration out;
    if (in.records.empty()) {
        warnings.push_back(name + ": no scored session; test skipped");
        return out;
    }
    for (const auto& r : in.records) out.accuracy_pct.push_back(r.accuracy_pct);
    out.decrease_level = detect_decrease_level(in.records, cfg);
    const bool all_zero = std::all_of(in.records.begin(), in.records.end(),
                                      [](const auto& r) { return r.n_correct == 0; });
    if (all_zero) warnings.push_back(name + ": zero accuracy at every level; no decrease reported");
    if (!out.decrease_level) return out;
    const int level = *out.decrease_level;
    out.optimal_level = level - 1;
    if (hr) out.hr_increment_bpm = hr_increment(*hr, in.levels, level);
    if (scrs) out.gsr_peaks_until_decrease = gsr_peaks_until(*scrs, in.levels, level);
    return out;
}

std::string opt_int(const std::optional<int>& v, const char* none = "none") {
    return v ? std::to_string(*v) : none;
}

std::string opt_fixed(const std::optional<double>& v) { return v ? textio::format_fixed(*v, 2) : "NA"; }

json test_json(const TestCalibration& t) {
    json j;
    j["decrease_level"] = t.decrease_level ? json(*t.decrease_level) : json(nullptr);
    j["optimal_level"] = t.optimal_level ? json(*t.optimal_level) : json(nullptr);
    j["hr_increment_bpm"] = t.hr_increment_bpm ? json(*t.hr_increment_bpm) : json(nullptr);
    j["gsr_peaks_until_decrease"] =
        t.gsr_peaks_until_decrease ? json(*t.gsr_peaks_until_decrease) : json(nullptr);
    j["accuracy_pct"] = t.accuracy_pct;
    return j;
}

TestCalibration test_from_json(const json& j) {
    TestCalibration t;
    if (!j.at("decrease_level").is_null()) t.decrease_level = j.at("decrease_level").get<int>();
    if (!j.at("optimal_level").is_null()) t.optimal_level = j.at("optimal_level").get<int>();
    if (!j.at("hr_increment_bpm").is_null()) t.hr_increment_bpm = j.at("hr_increment_bpm").get<double>();
    if (!j.at("gsr_peaks_until_decrease").is_null())
        t.gsr_peaks_until_decrease = j.at("gsr_peaks_until_decrease").get<int>();
    t.accuracy_pct = j.value("accuracy_pct", std::vector<double>{});
    return t;
}

}  // namespace

void CalibrationConfig::validate() const {
    if (!(delta_pct > 0.0 && delta_pct < 100.0)) throw ValidationError("delta_pct must lie in (0, 100)");
}

std::optional<int> detect_decrease_level(const std::vector<protocol::PerformanceRecord>& records,
                                         const CalibrationConfig& cfg) {
    cfg.validate();
    if (records.size() != static_cast<std::size_t>(kLevelsPerTest))
        throw ValidationError("decrease detection needs exactly 7 level records");
    std::vector<double> acc(kLevelsPerTest);
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].level != static_cast<int>(i) + 1)
            throw ValidationError("level records must be ordered 1..7");
        acc[i] = records[i].accuracy_pct;
    }
    double running_max = acc[0];
    for (std::size_t l = 1; l < acc.size(); ++l) {
        const double drop_line = running_max - cfg.delta_pct;
        if (acc[l] <= drop_line) {
            const double recovery_line = running_max - 0.5 * cfg.delta_pct;
            const bool sustained = !cfg.sustain || std::none_of(acc.begin() + static_cast<std::ptrdiff_t>(l) + 1,
                                                                acc.end(),
                                                                [&](double a) { return a > recovery_line; });
            if (sustained) return static_cast<int>(l) + 1;
        }
        running_max = std::max(running_max, acc[l]);
    }
    return std::nullopt;
}

double hr_increment(const cardiac::HrSeries& hr, const std::vector<Window>& levels, int decrease_level) {
    require_levels(levels, decrease_level);
    if (decrease_level < 2) throw ValidationError("HR increment needs a decrease level of at least 2");
    return window_mean(hr, levels[static_cast<std::size_t>(decrease_level - 1)]) - window_mean(hr, levels[0]);
}

int gsr_peaks_until(const std::vector<eda::ScrEvent>& scrs, const std::vector<Window>& levels,
                    int decrease_level) {
    require_levels(levels, decrease_level);
    const double from = levels[0].start_s;
    const double until = levels[static_cast<std::size_t>(decrease_level - 1)].start_s;
    return static_cast<int>(std::count_if(scrs.begin(), scrs.end(), [&](const eda::ScrEvent& e) {
        return e.peak_s >= from && e.peak_s < until;
    }));
}

SubjectCalibration calibrate_subject(const SubjectInputs& inputs, const CalibrationConfig& cfg) {
    SubjectCalibration out;
    out.subject_id = inputs.subject_id;
    out.stroop = calibrate_test(inputs.stroop, inputs.hr, inputs.scrs, cfg, "stroop", out.warnings);
    out.math = calibrate_test(inputs.math, inputs.hr, inputs.scrs, cfg, "math", out.warnings);
    return out;
}

std::string format_calibration_table(const std::vector<SubjectCalibration>& rows) {
    std::string out =
        "subject,level_decr_test1,level_decr_test2,hr_incr_bpm_test1,hr_incr_bpm_test2,"
        "gsr_peaks_test1,gsr_peaks_test2,optimal_level_test1,optimal_level_test2\n";
    for (const auto& r : rows) {
        out += r.subject_id + "," + opt_int(r.stroop.decrease_level) + "," + opt_int(r.math.decrease_level) + "," +
               opt_fixed(r.stroop.hr_increment_bpm) + "," + opt_fixed(r.math.hr_increment_bpm) + "," +
               opt_int(r.stroop.gsr_peaks_until_decrease, "NA") + "," +
               opt_int(r.math.gsr_peaks_until_decrease, "NA") + "," + opt_int(r.stroop.optimal_level) + "," +
               opt_int(r.math.optimal_level) + "\n";
    }
    return out;
}

std::string format_calibration_json(const std::vector<SubjectCalibration>& rows, const CalibrationConfig& cfg) {
    json doc;
    doc["delta_pct"] = cfg.delta_pct;
    doc["sustain"] = cfg.sustain;
    doc["units"] = {{"hr_increment", "bpm"}, {"gsr_peaks", "count"}};
    doc["subjects"] = json::array();
    for (const auto& r : rows)
        doc["subjects"].push_back({{"subject_id", r.subject_id},
                                   {"test1_stroop", test_json(r.stroop)},
                                   {"test2_math", test_json(r.math)},
                                   {"warnings", r.warnings}});
    return doc.dump(2) + "\n";
}

std::vector<SubjectCalibration> parse_calibration_json(std::string_view text) {
    std::vector<SubjectCalibration> out;
    try {
        const auto doc = json::parse(text);
        for (const auto& s : doc.at("subjects")) {
            SubjectCalibration c;
            c.subject_id = s.at("subject_id").get<std::string>();
            c.stroop = test_from_json(s.at("test1_stroop"));
            c.math = test_from_json(s.at("test2_math"));
            c.warnings = s.value("warnings", std::vector<std::string>{});
            out.push_back(std::move(c));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("calibration summary: ") + e.what());
    }
    return out;
}

}  // namespace perfcal::calibration
