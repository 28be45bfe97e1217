#pragma once

#include "perfcal/eda.hpp"
#include "perfcal/emg.hpp"
#include "perfcal/protocol.hpp"
#include "perfcal/signal.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace perfcal::synth {

struct HrKnot {
    double t_s;
    double bpm;
};

struct GsrImpulse {
    double t_s;          // driver impulse time; snapped to the sample grid
    double amplitude_uS;
};

struct BurstSpec {
    double start_s;
    double end_s;
    double amplitude_mV;  // RMS of the burst plateau
};

struct SynthSpec {
    std::uint64_t seed = 0;
    double duration_s = 60.0;
    double start_s = 0.0;
    std::optional<double> rate_hz;  // channel default when unset
    // Piecewise-linear heart rate, held constant outside the knots.
    std::vector<HrKnot> hr_profile{{0.0, 60.0}};
    std::optional<double> snr_db;   // noiseless when unset
    double tonic_uS = 2.0;
    double drift_uS_per_min = 0.0;
    std::vector<GsrImpulse> gsr_events;
    std::vector<BurstSpec> emg_bursts;
    double emg_baseline_mV = 0.005;

    // Throws ValidationError on a malformed spec.
    void validate() const;
    double rate_for(ChannelKind kind) const;
};

struct CardiacSynth {
    TimeSeries series;
    std::vector<double> beat_times_s;
};

struct GsrSynth {
    TimeSeries series;
    std::vector<double> tonic;  // baseline plus drift, noiseless
    std::vector<eda::ScrEvent> events;
};

struct EmgSynth {
    TimeSeries series;
    std::vector<emg::EmgBurst> bursts;
};

// Beats sit where the integrated rate crosses k + 1/2 cycles.
std::vector<double> beat_times(const SynthSpec& spec);

CardiacSynth gen_ecg(const SynthSpec& spec);
CardiacSynth gen_bvp(const SynthSpec& spec);
GsrSynth gen_gsr(const SynthSpec& spec, const eda::BatemanKernel& kernel = {});
EmgSynth gen_emg(const SynthSpec& spec);

// How a synthetic subject responds to the seven levels of each test.
struct SessionProfile {
    std::string name;
    std::array<int, kLevelsPerTest> stroop_correct{};  // of 15 slides
    std::array<int, kLevelsPerTest> math_correct{};    // of 7 slides
    double rest_bpm = 70.0;
    std::array<double, kLevelsPerTest> level_bpm_offset{};
    std::array<int, kLevelsPerTest> level_scrs{};
    int relax_scrs_per_minute = 0;
    std::optional<int> planted_level;  // expected decrease level, if any
};

SessionProfile calm_profile();
// Published mean accuracies rounded to whole slides, HR and SCR rate rising by level.
SessionProfile paper_like_profile();
// Perfect accuracy below `level`, a sustained collapse from `level` on.
SessionProfile planted_profile(int level);
SessionProfile profile_by_name(std::string_view name, int planted_level = 5);

struct Session {
    std::string subject_id;
    SessionProfile profile;
    SessionMarkers markers;
    TimeSeries ecg;
    TimeSeries bvp;
    TimeSeries gsr;
    TimeSeries emg;
    protocol::StimulusPlan stroop_plan;
    protocol::StimulusPlan math_plan;
    protocol::SessionLog stroop_log;
    protocol::SessionLog math_log;
    std::vector<double> truth_beats_s;
    std::vector<eda::ScrEvent> truth_scrs;
};

Session gen_session(const SessionProfile& profile, std::uint64_t seed);

}  // namespace perfcal::synth
