#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace perfcal {

enum class ChannelKind { ECG, BVP, GSR, EMG };

std::string_view to_string(ChannelKind kind);
ChannelKind parse_channel_kind(std::string_view text);

// Default acquisition rates. The recordings do not state them; these are
// common wearable settings and every operation accepts any positive rate.
double default_rate_hz(ChannelKind kind);
std::string_view default_units(ChannelKind kind);

// Uniformly sampled channel. Sample i sits at start_s + i / sampling_rate_hz.
class TimeSeries {
public:
    TimeSeries(ChannelKind kind, double sampling_rate_hz, double start_s,
               std::vector<double> values);

    ChannelKind kind() const { return kind_; }
    double sampling_rate_hz() const { return rate_; }
    double start_s() const { return start_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double time_at(std::size_t i) const { return start_ + static_cast<double>(i) / rate_; }
    double end_s() const { return time_at(values_.size()); }
    double duration_s() const { return static_cast<double>(values_.size()) / rate_; }

    // Copy with the same kind, rate and start but different samples.
    TimeSeries with_values(std::vector<double> values) const;

private:
    ChannelKind kind_;
    double rate_;
    double start_;
    std::vector<double> values_;
};

// Half-open interval [start_s, end_s).
struct Window {
    double start_s;
    double end_s;
    std::string label;

    Window(double start, double end, std::string label = {});
    double duration_s() const { return end_s - start_s; }
    bool contains(double t) const { return t >= start_s && t < end_s; }
};

std::optional<Window> intersect(const Window& a, const Window& b);

struct ManifestEntry {
    std::filesystem::path file;
    ChannelKind kind;
    double sampling_rate_hz;
    std::string units;
};

struct ChannelManifest {
    std::string subject_id;
    std::vector<ManifestEntry> entries;

    const ManifestEntry* find(ChannelKind kind) const;
};

// Parses a JSON manifest; relative file paths resolve against the manifest's
// directory. Throws ValidationError on missing files, duplicate channel
// kinds or non-positive rates.
ChannelManifest load_manifest(const std::filesystem::path& path);
void write_manifest(const ChannelManifest& manifest, const std::filesystem::path& path);

// Reads a `t_s,value` channel file and checks the implied rate against the
// declared one (0.1 % tolerance).
TimeSeries load_series(const ManifestEntry& entry);
TimeSeries parse_series(std::string_view text, ChannelKind kind, double declared_rate_hz,
                        std::string_view origin = "<memory>");
void write_series(const TimeSeries& series, const std::filesystem::path& path);
std::string format_series(const TimeSeries& series);

// Samples with w.start_s <= t < w.end_s.
TimeSeries slice_window(const TimeSeries& series, const Window& w);

enum class ScenarioKind { Relax, Stroop, Math };

std::string_view to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(std::string_view text);

struct Scenario {
    std::string id;  // "I" .. "V"
    ScenarioKind kind;
    double start_s;
    double end_s;

    Window window() const { return {start_s, end_s, id}; }
};

struct LevelInterval {
    std::string scenario_id;
    int level;  // 1..7
    double start_s;
    double end_s;

    Window window() const;
};

inline constexpr int kLevelsPerTest = 7;

struct SessionMarkers {
    std::vector<Scenario> scenarios;
    std::vector<LevelInterval> levels;

    const Scenario* scenario(std::string_view id) const;
    const Scenario* first_of(ScenarioKind kind) const;
    // The seven level windows of one test scenario, ordered by level.
    std::vector<Window> level_windows(std::string_view scenario_id) const;
};

// Standard schedule: relax 4 min, Stroop 4 min, relax 4 min, math 5 min,
// relax 3 min; each test split into seven equal level intervals.
SessionMarkers default_markers();

// Every invariant violation, in human-readable form. Empty when valid.
std::vector<std::string> check_markers(const SessionMarkers& markers);
// Throws ValidationError listing the problems.
void validate_markers(const SessionMarkers& markers);

SessionMarkers load_markers(const std::filesystem::path& path);
SessionMarkers parse_markers(std::string_view json_text);
void write_markers(const SessionMarkers& markers, const std::filesystem::path& path);

}  // namespace perfcal
