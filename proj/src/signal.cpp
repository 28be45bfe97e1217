#include "perfcal/signal.hpp"

#include "perfcal/error.hpp"
#include "perfcal/textio.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace perfcal {

namespace {

using nlohmann::json;

constexpr double kBoundaryTol = 1e-6;  // seconds
constexpr double kRateTol = 1e-3;      // relative

}  // namespace

std::string_view to_string(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::ECG: return "ECG";
        case ChannelKind::BVP: return "BVP";
        case ChannelKind::GSR: return "GSR";
        case ChannelKind::EMG: return "EMG";
    }
    return "?";
}

ChannelKind parse_channel_kind(std::string_view text) {
    std::string up;
    for (char c : text) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (up == "ECG") return ChannelKind::ECG;
    if (up == "BVP") return ChannelKind::BVP;
    if (up == "GSR" || up == "EDA") return ChannelKind::GSR;
    if (up == "EMG") return ChannelKind::EMG;
    throw ValidationError("unknown channel kind: " + std::string(text));
}

double default_rate_hz(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::ECG: return 512.0;
        case ChannelKind::BVP: return 128.0;
        case ChannelKind::GSR: return 128.0;
        case ChannelKind::EMG: return 512.0;
    }
    return 128.0;
}

std::string_view default_units(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::ECG: return "mV";
        case ChannelKind::BVP: return "au";
        case ChannelKind::GSR: return "uS";
        case ChannelKind::EMG: return "mV";
    }
    return "";
}

TimeSeries::TimeSeries(ChannelKind kind, double sampling_rate_hz, double start_s,
                       std::vector<double> values)
    : kind_(kind), rate_(sampling_rate_hz), start_(start_s), values_(std::move(values)) {
    if (!(rate_ > 0.0) || !std::isfinite(rate_))
        throw ValidationError("sampling rate must be positive");
    if (!std::isfinite(start_)) throw ValidationError("start time must be finite");
    if (values_.empty()) throw ValidationError("time series must contain at least one sample");
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i]))
            throw ValidationError("non-finite sample at index " + std::to_string(i));
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
    return TimeSeries(kind_, rate_, start_, std::move(values));
}

Window::Window(double start, double end, std::string label_)
    : start_s(start), end_s(end), label(std::move(label_)) {
    if (!(end_s > start_s)) throw ValidationError("window end must exceed start: " + label);
}

std::optional<Window> intersect(const Window& a, const Window& b) {
    const double s = std::max(a.start_s, b.start_s);
    const double e = std::min(a.end_s, b.end_s);
    if (!(e > s)) return std::nullopt;
    return Window(s, e, a.label);
}

const ManifestEntry* ChannelManifest::find(ChannelKind kind) const {
    for (const auto& e : entries)
        if (e.kind == kind) return &e;
    return nullptr;
}

ChannelManifest load_manifest(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw ValidationError("manifest not found: " + path.string());
    json doc;
    try {
        doc = json::parse(textio::read_file(path));
    } catch (const json::exception& e) {
        throw ValidationError("manifest " + path.string() + " is not valid JSON: " + e.what());
    }
    ChannelManifest m;
    try {
        m.subject_id = doc.at("subject_id").get<std::string>();
        const auto base = path.parent_path();
        std::set<ChannelKind> seen;
        for (const auto& item : doc.at("entries")) {
            ManifestEntry entry;
            entry.kind = parse_channel_kind(item.at("channel_kind").get<std::string>());
            entry.sampling_rate_hz = item.at("sampling_rate_hz").get<double>();
            entry.units = item.value("units", std::string(default_units(entry.kind)));
            std::filesystem::path file = item.at("file").get<std::string>();
            entry.file = file.is_absolute() ? file : base / file;
            if (!(entry.sampling_rate_hz > 0.0))
                throw ValidationError("non-positive sampling rate for channel " +
                                      std::string(to_string(entry.kind)));
            if (!seen.insert(entry.kind).second)
                throw ValidationError("duplicate channel kind in manifest: " +
                                      std::string(to_string(entry.kind)));
            if (!std::filesystem::exists(entry.file))
                throw ValidationError("channel file not found: " + entry.file.string());
            m.entries.push_back(std::move(entry));
        }
    } catch (const json::exception& e) {
        throw ValidationError("manifest " + path.string() + ": " + e.what());
    }
    return m;
}

void write_manifest(const ChannelManifest& manifest, const std::filesystem::path& path) {
    json doc;
    doc["subject_id"] = manifest.subject_id;
    doc["entries"] = json::array();
    const auto base = path.parent_path();
    for (const auto& e : manifest.entries) {
        auto file = e.file;
        if (file.is_absolute() && !base.empty()) file = std::filesystem::relative(file, base);
        doc["entries"].push_back({{"file", file.generic_string()},
                                  {"channel_kind", std::string(to_string(e.kind))},
                                  {"sampling_rate_hz", e.sampling_rate_hz},
                                  {"units", e.units}});
    }
    textio::write_file(path, doc.dump(2) + "\n");
}

TimeSeries parse_series(std::string_view text, ChannelKind kind, double declared_rate_hz,
                        std::string_view origin) {
    const std::string where(origin);
    if (!(declared_rate_hz > 0.0)) throw ValidationError(where + ": non-positive sampling rate");
    auto lines = textio::split(text, '\n');
    if (lines.empty() || textio::trim(lines.front()) != "t_s,value")
        throw ValidationError(where + ": expected header 't_s,value'");
    std::vector<double> times;
    std::vector<double> values;
    times.reserve(lines.size());
    values.reserve(lines.size());
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        const auto line = textio::trim(lines[ln]);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string_view::npos)
            throw ValidationError(where + ":" + std::to_string(ln + 1) + ": expected two columns");
        double t = 0.0;
        double v = 0.0;
        if (!textio::parse_double(line.substr(0, comma), t) ||
            !textio::parse_double(line.substr(comma + 1), v))
            throw ValidationError(where + ":" + std::to_string(ln + 1) + ": malformed number");
        if (!std::isfinite(t) || !std::isfinite(v))
            throw ValidationError(where + ":" + std::to_string(ln + 1) + ": non-finite value");
        if (!times.empty() && !(t > times.back()))
            throw ValidationError(where + ":" + std::to_string(ln + 1) + ": non-monotonic timestamp");
        times.push_back(t);
        values.push_back(v);
    }
    if (values.empty()) throw ValidationError(where + ": no samples");
    if (times.size() >= 2) {
        const double implied = static_cast<double>(times.size() - 1) / (times.back() - times.front());
        if (std::abs(implied - declared_rate_hz) > kRateTol * declared_rate_hz) {
            std::ostringstream msg;
            msg << where << ": rate mismatch (declared " << declared_rate_hz << " Hz, implied "
                << implied << " Hz)";
            throw ValidationError(msg.str());
        }
    }
    return TimeSeries(kind, declared_rate_hz, times.front(), std::move(values));
}

TimeSeries load_series(const ManifestEntry& entry) {
    return parse_series(textio::read_file(entry.file), entry.kind, entry.sampling_rate_hz,
                        entry.file.string());
}

std::string format_series(const TimeSeries& series) {
    std::string out = "t_s,value\n";
    out.reserve(series.size() * 24);
    const auto v = series.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += textio::format_double(series.time_at(i));
        out += ',';
        out += textio::format_double(v[i]);
        out += '\n';
    }
    return out;
}

void write_series(const TimeSeries& series, const std::filesystem::path& path) {
    textio::write_file(path, format_series(series));
}

TimeSeries slice_window(const TimeSeries& series, const Window& w) {
    const double rate = series.sampling_rate_hz();
    const auto n = static_cast<double>(series.size());
    const double lo = std::ceil((w.start_s - series.start_s()) * rate - 1e-9);
    const double hi = std::ceil((w.end_s - series.start_s()) * rate - 1e-9);
    const double first = std::clamp(lo, 0.0, n);
    const double last = std::clamp(hi, 0.0, n);
    if (!(last > first))
        throw ProcessingError("window [" + textio::format_double(w.start_s) + ", " +
                              textio::format_double(w.end_s) + ") does not overlap the series");
    const auto b = static_cast<std::size_t>(first);
    const auto e = static_cast<std::size_t>(last);
    const auto v = series.values();
    return TimeSeries(series.kind(), rate, series.time_at(b),
                      std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(b),
                                          v.begin() + static_cast<std::ptrdiff_t>(e)));
}

std::string_view to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::Relax: return "relax";
        case ScenarioKind::Stroop: return "stroop";
        case ScenarioKind::Math: return "math";
    }
    return "?";
}

ScenarioKind parse_scenario_kind(std::string_view text) {
    if (text == "relax") return ScenarioKind::Relax;
    if (text == "stroop") return ScenarioKind::Stroop;
    if (text == "math") return ScenarioKind::Math;
    throw ValidationError("unknown scenario kind: " + std::string(text));
}

Window LevelInterval::window() const {
    return {start_s, end_s, scenario_id + "/level-" + std::to_string(level)};
}

const Scenario* SessionMarkers::scenario(std::string_view id) const {
    for (const auto& s : scenarios)
        if (s.id == id) return &s;
    return nullptr;
}

const Scenario* SessionMarkers::first_of(ScenarioKind kind) const {
    for (const auto& s : scenarios)
        if (s.kind == kind) return &s;
    return nullptr;
}

std::vector<Window> SessionMarkers::level_windows(std::string_view scenario_id) const {
    std::vector<const LevelInterval*> picked;
    for (const auto& l : levels)
        if (l.scenario_id == scenario_id) picked.push_back(&l);
    std::sort(picked.begin(), picked.end(),
              [](const auto* a, const auto* b) { return a->level < b->level; });
    std::vector<Window> out;
    out.reserve(picked.size());
    for (const auto* l : picked) out.push_back(l->window());
    return out;
}

SessionMarkers default_markers() {
    struct Row {
        const char* id;
        ScenarioKind kind;
        double minutes;
    };
    constexpr Row rows[] = {{"I", ScenarioKind::Relax, 4},
                            {"II", ScenarioKind::Stroop, 4},
                            {"III", ScenarioKind::Relax, 4},
                            {"IV", ScenarioKind::Math, 5},
                            {"V", ScenarioKind::Relax, 3}};
    SessionMarkers m;
    double t = 0.0;
    for (const auto& r : rows) {
        const double end = t + r.minutes * 60.0;
        m.scenarios.push_back({r.id, r.kind, t, end});
        if (r.kind != ScenarioKind::Relax) {
            // Both tests have the same slide count per level (15 or 7), so
            // proportional partitioning gives equal sevenths.
            const double len = end - t;
            for (int lvl = 1; lvl <= kLevelsPerTest; ++lvl) {
                const double s = t + len * (lvl - 1) / kLevelsPerTest;
                const double e = lvl == kLevelsPerTest ? end : t + len * lvl / kLevelsPerTest;
                m.levels.push_back({r.id, lvl, s, e});
            }
        }
        t = end;
    }
    return m;
}

std::vector<std::string> check_markers(const SessionMarkers& markers) {
    std::vector<std::string> problems;
    if (markers.scenarios.empty()) {
        problems.emplace_back("no scenarios defined");
        return problems;
    }
    std::set<std::string> ids;
    double prev_end = 0.0;
    for (std::size_t i = 0; i < markers.scenarios.size(); ++i) {
        const auto& s = markers.scenarios[i];
        if (!ids.insert(s.id).second) problems.push_back("duplicate scenario id " + s.id);
        if (!(s.end_s > s.start_s)) problems.push_back("scenario " + s.id + " has non-positive duration");
        if (i == 0) {
            if (std::abs(s.start_s) > kBoundaryTol)
                problems.push_back("scenario " + s.id + " does not start at 0 s");
        } else if (s.start_s < prev_end - kBoundaryTol) {
            problems.push_back("scenario " + s.id + " overlaps the previous scenario");
        } else if (s.start_s > prev_end + kBoundaryTol) {
            problems.push_back("gap before scenario " + s.id);
        }
        prev_end = s.end_s;
    }
    for (const auto& l : markers.levels) {
        const auto* s = markers.scenario(l.scenario_id);
        if (!s) {
            problems.push_back("level references unknown scenario " + l.scenario_id);
        } else if (s->kind == ScenarioKind::Relax) {
            problems.push_back("level intervals given for relax scenario " + s->id);
        }
        if (l.level < 1 || l.level > kLevelsPerTest)
            problems.push_back("level number out of range in scenario " + l.scenario_id);
        if (!(l.end_s > l.start_s))
            problems.push_back("empty level interval in scenario " + l.scenario_id);
    }
    for (const auto& s : markers.scenarios) {
        if (s.kind == ScenarioKind::Relax) continue;
        std::vector<const LevelInterval*> lv;
        for (const auto& l : markers.levels)
            if (l.scenario_id == s.id) lv.push_back(&l);
        if (lv.size() != kLevelsPerTest) {
            problems.push_back("scenario " + s.id + " has " + std::to_string(lv.size()) +
                               " level intervals, expected 7");
            continue;
        }
        std::sort(lv.begin(), lv.end(), [](const auto* a, const auto* b) { return a->level < b->level; });
        double cursor = s.start_s;
        bool contiguous = true;
        for (int k = 0; k < kLevelsPerTest && contiguous; ++k) {
            const auto* l = lv[static_cast<std::size_t>(k)];
            const std::string tag = "level " + std::to_string(k + 1) + " of scenario " + s.id;
            if (l->level != k + 1) {
                problems.push_back("scenario " + s.id + " is missing level " + std::to_string(k + 1));
                contiguous = false;
            } else if (std::abs(l->start_s - cursor) > kBoundaryTol) {
                problems.push_back(tag + " does not continue the previous level");
                contiguous = false;
            } else if (l->end_s > s.end_s + kBoundaryTol) {
                problems.push_back(tag + " extends past the scenario");
                contiguous = false;
            }
            cursor = l->end_s;
        }
        if (contiguous && std::abs(cursor - s.end_s) > kBoundaryTol)
            problems.push_back("levels of scenario " + s.id + " do not cover the scenario");
    }
    return problems;
}

void validate_markers(const SessionMarkers& markers) {
    const auto problems = check_markers(markers);
    if (problems.empty()) return;
    std::string msg = "invalid session markers:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw ValidationError(msg);
}

SessionMarkers parse_markers(std::string_view json_text) {
    SessionMarkers m;
    try {
        const auto doc = json::parse(json_text);
        for (const auto& s : doc.at("scenarios"))
            m.scenarios.push_back({s.at("id").get<std::string>(),
                                   parse_scenario_kind(s.at("kind").get<std::string>()),
                                   s.at("start_s").get<double>(), s.at("end_s").get<double>()});
        if (doc.contains("levels"))
            for (const auto& l : doc.at("levels"))
                m.levels.push_back({l.at("scenario_id").get<std::string>(), l.at("level").get<int>(),
                                    l.at("start_s").get<double>(), l.at("end_s").get<double>()});
    } catch (const json::exception& e) {
        throw ValidationError(std::string("markers: ") + e.what());
    }
    return m;
}

SessionMarkers load_markers(const std::filesystem::path& path) {
    return parse_markers(textio::read_file(path));
}

void write_markers(const SessionMarkers& markers, const std::filesystem::path& path) {
    json doc;
    doc["scenarios"] = json::array();
    for (const auto& s : markers.scenarios)
        doc["scenarios"].push_back({{"id", s.id},
                                    {"kind", std::string(to_string(s.kind))},
                                    {"start_s", s.start_s},
                                    {"end_s", s.end_s}});
    doc["levels"] = json::array();
    for (const auto& l : markers.levels)
        doc["levels"].push_back({{"scenario_id", l.scenario_id},
                                 {"level", l.level},
                                 {"start_s", l.start_s},
                                 {"end_s", l.end_s}});
    textio::write_file(path, doc.dump(2) + "\n");
}

}  // namespace perfcal
