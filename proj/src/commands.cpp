#include "perfcal/commands.hpp"

#include "perfcal/cardiac.hpp"
#include "perfcal/error.hpp"
#include "perfcal/features.hpp"
#include "perfcal/plot.hpp"
#include "perfcal/protocol.hpp"
#include "perfcal/synth.hpp"
#include "perfcal/textio.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace perfcal::commands {

namespace {

using nlohmann::json;

constexpr std::array<ChannelKind, 4> kAllKinds = {ChannelKind::ECG, ChannelKind::BVP, ChannelKind::GSR,
                                                  ChannelKind::EMG};

std::string lower_kind(ChannelKind k) {
    std::string s(to_string(k));
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

SessionMarkers markers_for(const RunConfig& cfg) {
    auto m = cfg.markers ? load_markers(*cfg.markers) : default_markers();
    validate_markers(m);
    return m;
}

ChannelManifest manifest_for(const RunConfig& cfg) {
    if (!cfg.manifest) throw ValidationError("no manifest given (--manifest)");
    return load_manifest(*cfg.manifest);
}

void remove_stale(const fs::path& path) {
    std::error_code ec;
    fs::remove(path, ec);
}

template <typename T, typename Loader>
std::optional<T> load_if_present(const fs::path& path, Loader loader) {
    if (!fs::exists(path)) return std::nullopt;
    return loader(path);
}

features::SessionEvents load_session_events(const fs::path& dir) {
    features::SessionEvents ev;
    ev.ecg_beats = load_if_present<cardiac::BeatSeries>(
        dir / kEcgBeatsFile, [](const fs::path& p) { return cardiac::load_beats(p, cardiac::BeatSource::ECG); });
    ev.bvp_beats = load_if_present<cardiac::BeatSeries>(
        dir / kBvpBeatsFile, [](const fs::path& p) { return cardiac::load_beats(p, cardiac::BeatSource::BVP); });
    ev.scrs = load_if_present<std::vector<eda::ScrEvent>>(dir / kScrEventsFile, eda::load_events);
    ev.bursts = load_if_present<std::vector<emg::EmgBurst>>(dir / kEmgBurstsFile, emg::load_bursts);
    return ev;
}

std::string subject_of(const RunConfig& cfg) {
    if (!cfg.manifest || !fs::exists(*cfg.manifest)) return "subject";
    try {
        return load_manifest(*cfg.manifest).subject_id;
    } catch (const ValidationError&) {
        return "subject";
    }
}

struct ScoredTest {
    protocol::TestKind kind;
    std::vector<protocol::PerformanceRecord> records;
};

std::vector<ScoredTest> score_all(const RunConfig& cfg) {
    if (cfg.plans.size() != cfg.logs.size())
        throw ValidationError("every --plan needs a matching --log (" + std::to_string(cfg.plans.size()) +
                              " plans, " + std::to_string(cfg.logs.size()) + " logs)");
    std::vector<ScoredTest> out;
    std::set<protocol::TestKind> seen;
    for (std::size_t i = 0; i < cfg.plans.size(); ++i) {
        const auto plan = protocol::load_plan(cfg.plans[i]);
        if (!seen.insert(plan.kind).second)
            throw ValidationError("two plans for the " + std::string(protocol::to_string(plan.kind)) + " test");
        const auto log = protocol::load_log(cfg.logs[i]);
        out.push_back({plan.kind, protocol::score_session(plan, log)});
    }
    return out;
}

std::string opt_number(const std::optional<double>& v) { return v ? textio::format_fixed(*v, 6) : "NA"; }

}  // namespace

RunConfig load_run_config(const fs::path& path) {
    json doc;
    try {
        doc = json::parse(textio::read_file(path));
    } catch (const json::exception& e) {
        throw ValidationError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config " + path.string() + " must be a JSON object");
    const auto base = path.parent_path();
    auto resolve = [&](const std::string& p) {
        fs::path f = p;
        return f.is_absolute() ? f : base / f;
    };
    RunConfig cfg;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "manifest") cfg.manifest = resolve(value.get<std::string>());
            else if (key == "markers") cfg.markers = resolve(value.get<std::string>());
            else if (key == "plans")
                for (const auto& p : value) cfg.plans.push_back(resolve(p.get<std::string>()));
            else if (key == "logs")
                for (const auto& p : value) cfg.logs.push_back(resolve(p.get<std::string>()));
            else if (key == "out") cfg.out = resolve(value.get<std::string>());
            else if (key == "events") cfg.events = resolve(value.get<std::string>());
            else if (key == "delta_pct") cfg.calibration.delta_pct = value.get<double>();
            else if (key == "sustain") cfg.calibration.sustain = value.get<bool>();
            else if (key == "lambda") cfg.decompose.lambda = value.get<double>();
            else if (key == "tonic_cutoff_hz") cfg.decompose.tonic_cutoff_hz = value.get<double>();
            else if (key == "scr_threshold_uS") cfg.scr.amplitude_threshold_uS = value.get<double>();
            else if (key == "scr_min_separation_s") cfg.scr.min_separation_s = value.get<double>();
            else if (key == "emg_k_sigma") cfg.emg_k_sigma = value.get<double>();
            else if (key == "emg_min_duration_s") cfg.emg_min_duration_s = value.get<double>();
            else throw ValidationError("config " + path.string() + ": unknown key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw ValidationError("config " + path.string() + ": " + e.what());
    }
    return cfg;
}

std::string format_run_config(const RunConfig& cfg) {
    json doc;
    if (cfg.manifest) doc["manifest"] = cfg.manifest->generic_string();
    if (cfg.markers) doc["markers"] = cfg.markers->generic_string();
    doc["plans"] = json::array();
    for (const auto& p : cfg.plans) doc["plans"].push_back(p.generic_string());
    doc["logs"] = json::array();
    for (const auto& p : cfg.logs) doc["logs"].push_back(p.generic_string());
    doc["delta_pct"] = cfg.calibration.delta_pct;
    doc["sustain"] = cfg.calibration.sustain;
    doc["lambda"] = cfg.decompose.lambda;
    doc["tonic_cutoff_hz"] = cfg.decompose.tonic_cutoff_hz;
    doc["scr_threshold_uS"] = cfg.scr.amplitude_threshold_uS;
    doc["scr_min_separation_s"] = cfg.scr.min_separation_s;
    doc["emg_k_sigma"] = cfg.emg_k_sigma;
    doc["emg_min_duration_s"] = cfg.emg_min_duration_s;
    return doc.dump(2) + "\n";
}

std::string Diagnostics::format() const {
    std::string out;
    for (const auto& e : errors) out += "error: " + e + "\n";
    for (const auto& w : warnings) out += "warning: " + w + "\n";
    for (const auto& i : info) out += "info: " + i + "\n";
    out += ok() ? "ok\n" : "invalid\n";
    return out;
}

Diagnostics cmd_validate(const RunConfig& cfg) {
    Diagnostics d;
    std::optional<SessionMarkers> markers;
    try {
        markers = cfg.markers ? load_markers(*cfg.markers) : default_markers();
        if (!cfg.markers) d.info.push_back("no markers given; using the default protocol schedule");
        for (const auto& p : check_markers(*markers)) d.errors.push_back("markers: " + p);
    } catch (const ValidationError& e) {
        d.errors.push_back(e.what());
        markers.reset();
    }

    if (!cfg.manifest) {
        d.warnings.push_back("no manifest given; channel checks skipped");
    } else {
        try {
            const auto manifest = load_manifest(*cfg.manifest);
            d.info.push_back("subject " + manifest.subject_id);
            for (auto kind : kAllKinds) {
                const auto* entry = manifest.find(kind);
                const std::string name(to_string(kind));
                if (!entry) {
                    d.warnings.push_back(name + " channel missing; " + name + " features disabled");
                    continue;
                }
                try {
                    const auto series = load_series(*entry);
                    d.info.push_back(name + ": " + std::to_string(series.size()) + " samples at " +
                                     textio::format_double(series.sampling_rate_hz()) + " Hz, " +
                                     textio::format_fixed(series.start_s(), 3) + " to " +
                                     textio::format_fixed(series.end_s(), 3) + " s");
                    if (markers && !markers->scenarios.empty()) {
                        const double slack = 1.0 / series.sampling_rate_hz();
                        const double begin = markers->scenarios.front().start_s;
                        const double end = markers->scenarios.back().end_s;
                        if (series.start_s() > begin + slack || series.end_s() < end - slack)
                            d.warnings.push_back(name + " does not cover the whole session (" +
                                                 textio::format_fixed(begin, 3) + " to " +
                                                 textio::format_fixed(end, 3) + " s)");
                    }
                } catch (const std::exception& e) {
                    d.errors.push_back(e.what());
                }
            }
        } catch (const std::exception& e) {
            d.errors.push_back(e.what());
        }
    }

    try {
        for (const auto& t : score_all(cfg)) {
            std::string line = std::string(protocol::to_string(t.kind)) + " accuracy per level:";
            for (const auto& r : t.records) line += " " + textio::format_fixed(r.accuracy_pct, 2);
            d.info.push_back(line);
        }
    } catch (const std::exception& e) {
        d.errors.push_back(e.what());
    }
    return d;
}

void cmd_process(const RunConfig& cfg) {
    const auto manifest = manifest_for(cfg);
    const auto markers = markers_for(cfg);
    const auto& out = cfg.out;
    fs::create_directories(out);

    json summary;
    summary["subject_id"] = manifest.subject_id;
    summary["channels"] = json::object();

    if (const auto* e = manifest.find(ChannelKind::ECG)) {
        const auto beats = cardiac::detect_r_peaks(load_series(*e));
        cardiac::write_beats(beats, out / kEcgBeatsFile);
        const auto flags = beats.rr_flags();
        summary["channels"]["ecg"] = {{"beats", beats.size()},
                                      {"flagged_rr", std::count(flags.begin(), flags.end(), true)}};
    } else {
        remove_stale(out / kEcgBeatsFile);
    }

    if (const auto* e = manifest.find(ChannelKind::BVP)) {
        const auto beats = cardiac::detect_bvp_peaks(load_series(*e));
        cardiac::write_beats(beats, out / kBvpBeatsFile);
        const auto flags = beats.rr_flags();
        summary["channels"]["bvp"] = {{"beats", beats.size()},
                                      {"flagged_rr", std::count(flags.begin(), flags.end(), true)}};
    } else {
        remove_stale(out / kBvpBeatsFile);
    }

    if (const auto* e = manifest.find(ChannelKind::GSR)) {
        const eda::BatemanKernel kernel;
        const auto dec = eda::decompose(load_series(*e), kernel, cfg.decompose);
        const auto events = eda::detect_scr_events(dec, kernel, cfg.scr);
        eda::write_events(events, out / kScrEventsFile);
        summary["channels"]["gsr"] = {{"events", events.size()},
                                      {"solver_iterations", dec.iterations},
                                      {"residual_rms_uS", dec.residual_rms_uS}};
    } else {
        remove_stale(out / kScrEventsFile);
    }

    if (const auto* e = manifest.find(ChannelKind::EMG)) {
        const auto env = emg::emg_envelope(load_series(*e));
        emg::BurstConfig bc;
        bc.k_sigma = cfg.emg_k_sigma;
        bc.min_duration_s = cfg.emg_min_duration_s;
        // Baseline statistics come from the first relaxation period.
        if (const auto* relax = markers.first_of(ScenarioKind::Relax))
            if (intersect(relax->window(), Window(env.start_s(), env.end_s()))) bc.baseline = relax->window();
        const double threshold = emg::burst_threshold(env, bc);
        bc.threshold_mV = threshold;
        const auto bursts = emg::detect_bursts(env, bc);
        emg::write_bursts(bursts, out / kEmgBurstsFile);
        summary["channels"]["emg"] = {{"bursts", bursts.size()}, {"threshold_mV", threshold}};
    } else {
        remove_stale(out / kEmgBurstsFile);
    }

    textio::write_file(out / kProcessSummaryFile, summary.dump(2) + "\n");
}

void cmd_features(const RunConfig& cfg) {
    const auto markers = markers_for(cfg);
    const auto events = load_session_events(cfg.events_dir());
    const auto rows = features::feature_table(events, markers);
    fs::create_directories(cfg.out);
    textio::write_file(cfg.out / kFeaturesFile, features::format_feature_table(rows));

    std::optional<cardiac::HrSeries> hr;
    if (events.ecg_beats && events.ecg_beats->size() >= 2) hr = cardiac::beats_to_hr(*events.ecg_beats);
    std::string slopes = "window,start_s,end_s,hr_slope_bpm_per_s,gsr_cumulative_slope_uS_per_s\n";
    for (const auto& s : markers.scenarios) {
        const auto w = s.window();
        std::optional<double> hs, gs;
        if (hr) {
            try {
                hs = features::hr_slope(*hr, w).slope;
            } catch (const ProcessingError&) {
            }
        }
        if (events.scrs) {
            try {
                gs = features::gsr_cumulative_slope(*events.scrs, w).slope;
            } catch (const ProcessingError&) {
            }
        }
        slopes += s.id + "," + textio::format_fixed(w.start_s, 3) + "," + textio::format_fixed(w.end_s, 3) + "," +
                  opt_number(hs) + "," + opt_number(gs) + "\n";
    }
    textio::write_file(cfg.out / kSlopesFile, slopes);
}

void cmd_calibrate(const RunConfig& cfg) {
    cfg.calibration.validate();
    const auto markers = markers_for(cfg);
    const auto scored = score_all(cfg);
    if (scored.empty()) throw ValidationError("calibration needs at least one --plan/--log pair");
    const auto events = load_session_events(cfg.events_dir());

    calibration::SubjectInputs in;
    in.subject_id = subject_of(cfg);
    for (const auto& t : scored) {
        const auto kind = t.kind == protocol::TestKind::Stroop ? ScenarioKind::Stroop : ScenarioKind::Math;
        const auto* scenario = markers.first_of(kind);
        if (!scenario)
            throw ValidationError("markers have no " + std::string(to_string(kind)) + " scenario for the plan");
        auto& target = t.kind == protocol::TestKind::Stroop ? in.stroop : in.math;
        target.records = t.records;
        target.levels = markers.level_windows(scenario->id);
    }
    if (events.ecg_beats && events.ecg_beats->size() >= 2) in.hr = cardiac::beats_to_hr(*events.ecg_beats);
    in.scrs = events.scrs;

    const auto result = calibration::calibrate_subject(in, cfg.calibration);
    fs::create_directories(cfg.out);
    textio::write_file(cfg.out / kCalibrationTableFile, calibration::format_calibration_table({result}));
    textio::write_file(cfg.out / kCalibrationJsonFile, calibration::format_calibration_json({result}, cfg.calibration));

    // Per-level views of accuracy, HR and SCR counts for both tests.
    std::vector<double> levels;
    for (int k = 1; k <= kLevelsPerTest; ++k) levels.push_back(k);
    plot::Chart acc{"Accuracy per level, " + in.subject_id, "level", "accuracy (%)", {}, {}};
    plot::Chart hr{"Mean HR per level", "level", "HR (bpm)", {}, {}};
    plot::Chart gsr{"GSR peaks per level", "level", "SCR count", {}, {}};
    plot::Chart hr_trend{"HR during the tests", "time (s)", "HR (bpm)", {}, {}};
    plot::Chart gsr_cum{"Cumulative SCR amplitude during the tests", "time (s)", "amplitude (uS)", {}, {}};
    std::vector<std::string> cats;
    for (int k = 1; k <= kLevelsPerTest; ++k) cats.push_back(std::to_string(k));

    const std::pair<const calibration::TestInputs*, const calibration::TestCalibration*> tests[] = {
        {&in.stroop, &result.stroop}, {&in.math, &result.math}};
    const char* names[] = {"stroop", "math"};
    for (std::size_t t = 0; t < 2; ++t) {
        const auto& inputs = *tests[t].first;
        const auto& res = *tests[t].second;
        if (inputs.records.empty()) continue;
        acc.series.push_back({names[t], levels, res.accuracy_pct});
        if (res.decrease_level) acc.markers_x.push_back(*res.decrease_level);

        if (in.hr) {
            std::vector<double> means;
            for (const auto& w : inputs.levels) {
                try {
                    means.push_back(cardiac::hr_stats(*in.hr, w).hr_mean_bpm);
                } catch (const ProcessingError&) {
                    means.push_back(std::nan(""));
                }
            }
            hr.series.push_back({names[t], levels, means});
            const Window span(inputs.levels.front().start_s, inputs.levels.back().end_s);
            plot::Series raw{names[t], {}, {}};
            for (std::size_t i = 0; i < in.hr->times_s.size(); ++i) {
                if (!span.contains(in.hr->times_s[i]) || in.hr->flagged[i]) continue;
                raw.x.push_back(in.hr->times_s[i]);
                raw.y.push_back(in.hr->hr_bpm[i]);
            }
            try {
                const auto fit = features::hr_slope(*in.hr, span);
                hr_trend.series.push_back({std::string(names[t]) + " fit",
                                           {span.start_s, span.end_s},
                                           {fit.intercept + fit.slope * span.start_s,
                                            fit.intercept + fit.slope * span.end_s}});
            } catch (const ProcessingError&) {
            }
            hr_trend.series.push_back(std::move(raw));
        }
        if (in.scrs) {
            std::vector<double> counts;
            for (const auto& w : inputs.levels)
                counts.push_back(static_cast<double>(std::count_if(
                    in.scrs->begin(), in.scrs->end(), [&](const eda::ScrEvent& e) { return w.contains(e.peak_s); })));
            gsr.series.push_back({names[t], {}, counts});
            const Window span(inputs.levels.front().start_s, inputs.levels.back().end_s);
            plot::Series cum{names[t], {}, {}};
            double total = 0.0;
            for (const auto& e : *in.scrs) {
                if (!span.contains(e.peak_s)) continue;
                total += e.amplitude_uS;
                cum.x.push_back(e.peak_s);
                cum.y.push_back(total);
            }
            gsr_cum.series.push_back(std::move(cum));
        }
    }
    plot::write_svg(cfg.out / "accuracy_levels.svg", plot::line_chart_svg(acc));
    if (!hr.series.empty()) {
        plot::write_svg(cfg.out / "hr_levels.svg", plot::line_chart_svg(hr));
        plot::write_svg(cfg.out / "hr_trend.svg", plot::line_chart_svg(hr_trend));
    }
    if (!gsr.series.empty()) {
        plot::write_svg(cfg.out / "gsr_levels.svg", plot::bar_chart_svg(gsr, cats));
        plot::write_svg(cfg.out / "gsr_cumulative.svg", plot::line_chart_svg(gsr_cum));
    }
}

void cmd_synth(const SynthOptions& opts) {
    const auto& out = opts.out;
    fs::create_directories(out);
    if (opts.kind) {
        const auto kind = parse_channel_kind(*opts.kind);
        synth::SynthSpec spec;
        spec.seed = opts.seed;
        spec.duration_s = opts.duration_s;
        spec.hr_profile = {{0.0, opts.hr_bpm}};
        spec.snr_db = opts.snr_db;
        const std::string name = lower_kind(kind);
        std::optional<TimeSeries> series;
        switch (kind) {
            case ChannelKind::ECG:
            case ChannelKind::BVP: {
                auto s = kind == ChannelKind::ECG ? synth::gen_ecg(spec) : synth::gen_bvp(spec);
                cardiac::write_beats({s.beat_times_s, kind == ChannelKind::ECG ? cardiac::BeatSource::ECG
                                                                               : cardiac::BeatSource::BVP},
                                     out / (name + "_truth.csv"));
                series = std::move(s.series);
                break;
            }
            case ChannelKind::GSR: {
                // One response every 10 s of growing amplitude.
                for (double t = 5.0; t + 5.0 < spec.duration_s; t += 10.0)
                    spec.gsr_events.push_back({t, 0.1 + 0.05 * static_cast<double>(spec.gsr_events.size() % 5)});
                auto s = synth::gen_gsr(spec);
                eda::write_events(s.events, out / (name + "_truth.csv"));
                series = std::move(s.series);
                break;
            }
            case ChannelKind::EMG: {
                for (double t = 5.0; t + 5.0 < spec.duration_s; t += 10.0) spec.emg_bursts.push_back({t, t + 0.5, 0.2});
                auto s = synth::gen_emg(spec);
                emg::write_bursts(s.bursts, out / (name + "_truth.csv"));
                series = std::move(s.series);
                break;
            }
        }
        write_series(*series, out / (name + ".csv"));
        ChannelManifest manifest{"synth-" + name + "-" + std::to_string(opts.seed),
                                 {{name + ".csv", kind, series->sampling_rate_hz(), std::string(default_units(kind))}}};
        write_manifest(manifest, out / "manifest.json");
        return;
    }

    const auto session = synth::gen_session(synth::profile_by_name(opts.profile, opts.planted_level), opts.seed);
    ChannelManifest manifest{session.subject_id, {}};
    for (const TimeSeries* s : {&session.ecg, &session.bvp, &session.gsr, &session.emg}) {
        const std::string file = lower_kind(s->kind()) + ".csv";
        write_series(*s, out / file);
        manifest.entries.push_back({file, s->kind(), s->sampling_rate_hz(), std::string(default_units(s->kind()))});
    }
    write_manifest(manifest, out / "manifest.json");
    write_markers(session.markers, out / "markers.json");
    protocol::write_plan(session.stroop_plan, out / "stroop_plan.json");
    protocol::write_plan(session.math_plan, out / "math_plan.json");
    protocol::write_log(session.stroop_log, out / "stroop_log.jsonl");
    protocol::write_log(session.math_log, out / "math_log.jsonl");
    cardiac::write_beats({session.truth_beats_s, cardiac::BeatSource::ECG}, out / "truth" / "beats.csv");
    eda::write_events(session.truth_scrs, out / "truth" / "scr_events.csv");

    json profile;
    profile["name"] = session.profile.name;
    profile["seed"] = opts.seed;
    profile["stroop_correct"] = session.profile.stroop_correct;
    profile["math_correct"] = session.profile.math_correct;
    profile["rest_bpm"] = session.profile.rest_bpm;
    profile["level_bpm_offset"] = session.profile.level_bpm_offset;
    profile["level_scrs"] = session.profile.level_scrs;
    profile["planted_level"] = session.profile.planted_level ? json(*session.profile.planted_level) : json(nullptr);
    textio::write_file(out / "truth" / "profile.json", profile.dump(2) + "\n");

    RunConfig run;
    run.manifest = "manifest.json";
    run.markers = "markers.json";
    run.plans = {"stroop_plan.json", "math_plan.json"};
    run.logs = {"stroop_log.jsonl", "math_log.jsonl"};
    textio::write_file(out / "run.json", format_run_config(run));
}

void cmd_report(const std::vector<fs::path>& summaries, const fs::path& out) {
    if (summaries.empty()) throw ValidationError("report needs at least one calibration summary");
    std::vector<calibration::SubjectCalibration> rows;
    for (const auto& p : summaries) {
        const auto path = fs::is_directory(p) ? p / kCalibrationJsonFile : p;
        for (auto& r : calibration::parse_calibration_json(textio::read_file(path))) rows.push_back(std::move(r));
    }
    fs::create_directories(out);
    textio::write_file(out / "report.csv", calibration::format_calibration_table(rows));

    std::vector<std::string> subjects;
    plot::Series t1{"test 1 (stroop)", {}, {}};
    plot::Series t2{"test 2 (math)", {}, {}};
    auto level_or_nan = [](const std::optional<int>& v) { return v ? static_cast<double>(*v) : std::nan(""); };
    for (const auto& r : rows) {
        subjects.push_back(r.subject_id);
        t1.y.push_back(level_or_nan(r.stroop.decrease_level));
        t2.y.push_back(level_or_nan(r.math.decrease_level));
    }
    plot::Chart chart{"Level at which performance decreased", "subject", "level", {t1, t2}, {}};
    plot::write_svg(out / "decrease_levels.svg", plot::bar_chart_svg(chart, subjects));

    plot::Chart acc{"Accuracy per level", "level", "accuracy (%)", {}, {}};
    for (const auto& r : rows) {
        for (const auto* t : {&r.stroop, &r.math}) {
            if (t->accuracy_pct.empty()) continue;
            plot::Series s{r.subject_id + (t == &r.stroop ? " stroop" : " math"), {}, t->accuracy_pct};
            for (std::size_t k = 0; k < t->accuracy_pct.size(); ++k) s.x.push_back(static_cast<double>(k + 1));
            acc.series.push_back(std::move(s));
        }
    }
    plot::write_svg(out / "accuracy_levels.svg", plot::line_chart_svg(acc));
}

}  // namespace perfcal::commands
