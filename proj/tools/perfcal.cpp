#include "perfcal/commands.hpp"
#include "perfcal/error.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using perfcal::commands::RunConfig;
namespace fs = std::filesystem;

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kFailed = 3 };

// Flags shared by the pipeline commands. Values land in `flags`; only the
// ones actually given override the config file.
struct PipelineFlags {
    std::string config;
    std::string manifest;
    std::string markers;
    std::vector<std::string> plans;
    std::vector<std::string> logs;
    std::string out;
    std::string events;
    double delta = 10.0;
    bool no_sustain = false;
    double lambda = 0.01;
    double scr_threshold = 0.01;
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f) {
    cmd->add_option("--config", f.config, "JSON run configuration; flags override its values");
    cmd->add_option("--manifest", f.manifest, "channel manifest (JSON)");
    cmd->add_option("--markers", f.markers, "session markers (JSON); default protocol schedule when omitted");
    cmd->add_option("--plan", f.plans, "stimulus plan (JSON); repeat for each test");
    cmd->add_option("--log", f.logs, "session log (JSON Lines), paired with --plan by position");
    cmd->add_option("--out", f.out, "output directory")->capture_default_str();
    cmd->add_option("--events", f.events, "directory with event files (default: --out)");
    cmd->add_option("--delta", f.delta, "accuracy drop (percentage points) that marks a decrease")
        ->capture_default_str();
    cmd->add_flag("--no-sustain", f.no_sustain, "do not require the drop to persist at later levels");
    cmd->add_option("--lambda", f.lambda, "driver sparsity weight of the GSR deconvolution")->capture_default_str();
    cmd->add_option("--scr-threshold", f.scr_threshold, "minimum SCR amplitude in uS")->capture_default_str();
}

RunConfig resolve(const CLI::App* cmd, const PipelineFlags& f) {
    RunConfig cfg = f.config.empty() ? RunConfig{} : perfcal::commands::load_run_config(f.config);
    auto given = [&](const char* name) { return cmd->count(name) > 0; };
    if (given("--manifest")) cfg.manifest = f.manifest;
    if (given("--markers")) cfg.markers = f.markers;
    if (given("--plan")) cfg.plans.assign(f.plans.begin(), f.plans.end());
    if (given("--log")) cfg.logs.assign(f.logs.begin(), f.logs.end());
    if (given("--out")) cfg.out = f.out;
    if (given("--events")) cfg.events = f.events;
    if (given("--delta")) cfg.calibration.delta_pct = f.delta;
    if (given("--no-sustain")) cfg.calibration.sustain = false;
    if (given("--lambda")) cfg.decompose.lambda = f.lambda;
    if (given("--scr-threshold")) cfg.scr.amplitude_threshold_uS = f.scr_threshold;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perfcal: stress signals and performance-level calibration"};
    app.require_subcommand(1);

    PipelineFlags validate_f, process_f, features_f, calibrate_f;
    validate_f.out = process_f.out = features_f.out = calibrate_f.out = "out";
    auto* validate = app.add_subcommand("validate", "check manifest, markers, plans and logs");
    add_pipeline_flags(validate, validate_f);
    auto* process = app.add_subcommand("process", "detect beats, SCRs and EMG bursts");
    add_pipeline_flags(process, process_f);
    auto* features = app.add_subcommand("features", "per-scenario and per-level feature table");
    add_pipeline_flags(features, features_f);
    auto* calibrate = app.add_subcommand("calibrate", "performance-decrease levels with HR/GSR changes");
    add_pipeline_flags(calibrate, calibrate_f);

    perfcal::commands::SynthOptions synth_o;
    std::string synth_out = "synth";
    double snr = 0.0;
    auto* synth = app.add_subcommand("synth", "write a synthetic session or a single synthetic channel");
    synth->add_option("--out", synth_out, "output directory")->capture_default_str();
    synth->add_option("--seed", synth_o.seed, "random seed")->capture_default_str();
    synth->add_option("--profile", synth_o.profile, "calm, paper-like or planted")->capture_default_str();
    synth->add_option("--planted-level", synth_o.planted_level, "decrease level of the planted profile")
        ->check(CLI::Range(2, 7))
        ->capture_default_str();
    auto* kind_opt = synth->add_option("--kind", "single channel: ecg, bvp, gsr or emg");
    synth->add_option("--hr", synth_o.hr_bpm, "heart rate of a single ECG/BVP channel (bpm)")->capture_default_str();
    synth->add_option("--duration", synth_o.duration_s, "single-channel duration (s)")->capture_default_str();
    auto* snr_opt = synth->add_option("--snr", snr, "single-channel SNR in dB (noiseless when omitted)");

    std::vector<std::string> report_inputs;
    std::string report_out = "report";
    auto* report = app.add_subcommand("report", "combine calibration summaries into one table with plots");
    report->add_option("summaries", report_inputs, "calibration.json files or calibrate output directories")
        ->required();
    report->add_option("--out", report_out, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*validate) {
            const auto diag = perfcal::commands::cmd_validate(resolve(validate, validate_f));
            std::cout << diag.format();
            return diag.ok() ? kOk : kInvalid;
        }
        if (*process) perfcal::commands::cmd_process(resolve(process, process_f));
        if (*features) perfcal::commands::cmd_features(resolve(features, features_f));
        if (*calibrate) perfcal::commands::cmd_calibrate(resolve(calibrate, calibrate_f));
        if (*synth) {
            synth_o.out = synth_out;
            if (kind_opt->count() > 0) synth_o.kind = kind_opt->as<std::string>();
            if (snr_opt->count() > 0) synth_o.snr_db = snr;
            perfcal::commands::cmd_synth(synth_o);
        }
        if (*report) {
            perfcal::commands::cmd_report({report_inputs.begin(), report_inputs.end()}, report_out);
        }
    } catch (const perfcal::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kInvalid;
    } catch (const perfcal::ProcessingError& e) {
        std::cerr << "processing failed: " << e.what() << "\n";
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kOk;
}
