#include "perfcal/protocol.hpp"

#include "perfcal/error.hpp"
#include "perfcal/textio.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace perfcal::protocol {

namespace {

using nlohmann::json;

constexpr double kPartitionTolerance = 0.05;

std::string lower(std::string_view text) {
    std::string out;
    for (char c : textio::trim(text)) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

// Linearly interpolated knob for level 1..7.
double level_ramp(double first, double last, int level) {
    return first + (last - first) * static_cast<double>(level - 1) / (kLevelsPerTest - 1);
}

std::vector<double> level_deadlines(double first, double last, double scenario_s, int per_level) {
    std::vector<double> d(kLevelsPerTest);
    for (int l = 1; l <= kLevelsPerTest; ++l) d[static_cast<std::size_t>(l - 1)] = level_ramp(first, last, l);
    const double raw = per_level * std::accumulate(d.begin(), d.end(), 0.0);
    for (double& v : d) v *= scenario_s / raw;
    return d;
}

std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

std::int64_t digits_low(int digits) {
    std::int64_t v = 1;
    for (int i = 1; i < digits; ++i) v *= 10;
    return v;
}

MathPayload make_problem(std::mt19937_64& rng, Operator op, int digits) {
    const std::int64_t lo = digits_low(digits);
    const std::int64_t hi = lo * 10 - 1;
    MathPayload p{0, 0, op, 0};
    switch (op) {
        case Operator::Add:
            p.operand_a = draw(rng, lo, hi);
            p.operand_b = draw(rng, lo, hi);
            p.expected = p.operand_a + p.operand_b;
            break;
        case Operator::Subtract:
            p.operand_a = draw(rng, lo, hi);
            p.operand_b = draw(rng, lo, hi);
            if (p.operand_a < p.operand_b) std::swap(p.operand_a, p.operand_b);
            p.expected = p.operand_a - p.operand_b;
            break;
        case Operator::Multiply:
            p.operand_a = draw(rng, lo, hi);
            p.operand_b = draw(rng, lo, hi);
            p.expected = p.operand_a * p.operand_b;
            break;
        case Operator::Divide: {
            const std::int64_t divisor = draw(rng, std::max<std::int64_t>(lo, 2), hi);
            const std::int64_t quotient = draw(rng, lo, hi);
            p.operand_a = divisor * quotient;
            p.operand_b = divisor;
            p.expected = quotient;
            break;
        }
    }
    return p;
}

std::int64_t evaluate(const MathPayload& p) {
    switch (p.op) {
        case Operator::Add: return p.operand_a + p.operand_b;
        case Operator::Subtract: return p.operand_a - p.operand_b;
        case Operator::Multiply: return p.operand_a * p.operand_b;
        case Operator::Divide:
            if (p.operand_b == 0 || p.operand_a % p.operand_b != 0)
                throw ValidationError("division slide without an integer result");
            return p.operand_a / p.operand_b;
    }
    return 0;
}

bool parse_integer(std::string_view text, std::int64_t& out) {
    text = textio::trim(text);
    if (text.empty()) return false;
    std::size_t i = 0;
    bool neg = false;
    if (text[0] == '-' || text[0] == '+') {
        neg = text[0] == '-';
        i = 1;
    }
    if (i == text.size()) return false;
    std::int64_t v = 0;
    for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') return false;
        v = v * 10 + (text[i] - '0');
    }
    out = neg ? -v : v;
    return true;
}

int slides_per_level(TestKind kind) {
    return kind == TestKind::Stroop ? kStroopSlidesPerLevel : kMathSlidesPerLevel;
}

}  // namespace

std::string_view to_string(TestKind kind) { return kind == TestKind::Stroop ? "stroop" : "math"; }

std::string_view to_string(Color color) {
    switch (color) {
        case Color::Yellow: return "yellow";
        case Color::Red: return "red";
        case Color::Green: return "green";
        case Color::Blue: return "blue";
        case Color::Black: return "black";
        case Color::White: return "white";
        case Color::Orange: return "orange";
    }
    return "?";
}

std::string_view to_symbol(Operator op) {
    switch (op) {
        case Operator::Add: return "+";
        case Operator::Subtract: return "-";
        case Operator::Multiply: return "*";
        case Operator::Divide: return "/";
    }
    return "?";
}

TestKind parse_test_kind(std::string_view text) {
    const auto t = lower(text);
    if (t == "stroop") return TestKind::Stroop;
    if (t == "math") return TestKind::Math;
    throw ValidationError("unknown test kind: " + std::string(text));
}

Color parse_color(std::string_view text) {
    const auto t = lower(text);
    for (Color c : kColors)
        if (to_string(c) == t) return c;
    throw ValidationError("unknown colour: " + std::string(text));
}

Operator parse_operator(std::string_view symbol) {
    const auto t = textio::trim(symbol);
    for (Operator op : kOperators)
        if (to_symbol(op) == t) return op;
    throw ValidationError("unknown operator: " + std::string(symbol));
}

TestKind Slide::kind() const {
    return std::holds_alternative<StroopPayload>(payload) ? TestKind::Stroop : TestKind::Math;
}

std::string Slide::expected_answer() const {
    if (const auto* s = std::get_if<StroopPayload>(&payload)) return std::string(to_string(s->ink));
    return std::to_string(std::get<MathPayload>(payload).expected);
}

double StimulusPlan::total_deadline_s() const {
    double t = 0.0;
    for (const auto& s : slides) t += s.deadline_s;
    return t;
}

StimulusPlan generate_stroop_plan(std::uint64_t seed, const StroopConfig& cfg) {
    std::mt19937_64 rng(seed);
    const auto deadlines = level_deadlines(cfg.first_deadline_s, cfg.last_deadline_s, cfg.scenario_s,
                                           kStroopSlidesPerLevel);
    StimulusPlan plan{TestKind::Stroop, seed, {}};
    std::uniform_int_distribution<int> any_color(0, 6);
    std::uniform_int_distribution<int> other_color(1, 6);
    int index = 0;
    for (int level = 1; level <= kLevelsPerTest; ++level) {
        const double fraction = level_ramp(cfg.first_incongruent, cfg.last_incongruent, level);
        const auto incongruent = static_cast<int>(std::lround(fraction * kStroopSlidesPerLevel));
        std::vector<bool> mask(kStroopSlidesPerLevel, false);
        std::fill(mask.begin(), mask.begin() + incongruent, true);
        std::shuffle(mask.begin(), mask.end(), rng);
        for (int k = 0; k < kStroopSlidesPerLevel; ++k) {
            const int ink = any_color(rng);
            // Word drawn uniformly from the other six colours keeps the word
            // marginal uniform as well.
            const int word = mask[static_cast<std::size_t>(k)] ? (ink + other_color(rng)) % 7 : ink;
            plan.slides.push_back({index++, level, deadlines[static_cast<std::size_t>(level - 1)],
                                   StroopPayload{kColors[static_cast<std::size_t>(word)],
                                                 kColors[static_cast<std::size_t>(ink)],
                                                 !mask[static_cast<std::size_t>(k)]}});
        }
    }
    return plan;
}

StimulusPlan generate_math_plan(std::uint64_t seed, const MathConfig& cfg) {
    std::mt19937_64 rng(seed);
    const auto deadlines =
        level_deadlines(cfg.first_deadline_s, cfg.last_deadline_s, cfg.scenario_s, kMathSlidesPerLevel);
    StimulusPlan plan{TestKind::Math, seed, {}};
    std::uniform_int_distribution<int> any_op(0, 3);
    int index = 0;
    for (int level = 1; level <= kLevelsPerTest; ++level) {
        const int digits = static_cast<int>(
            std::lround(level_ramp(cfg.first_digits, cfg.last_digits, level)));
        for (int k = 0; k < kMathSlidesPerLevel; ++k) {
            const Operator op = kOperators[static_cast<std::size_t>(any_op(rng))];
            plan.slides.push_back({index++, level, deadlines[static_cast<std::size_t>(level - 1)],
                                   make_problem(rng, op, digits)});
        }
    }
    return plan;
}

void validate_plan(const StimulusPlan& plan) {
    const int per_level = slides_per_level(plan.kind);
    const auto expected_total = static_cast<std::size_t>(per_level * kLevelsPerTest);
    if (plan.slides.size() != expected_total)
        throw ValidationError(std::string(to_string(plan.kind)) + " plan must have " +
                              std::to_string(expected_total) + " slides, found " +
                              std::to_string(plan.slides.size()));
    std::array<int, kLevelsPerTest> counts{};
    for (std::size_t i = 0; i < plan.slides.size(); ++i) {
        const auto& s = plan.slides[i];
        if (s.index != static_cast<int>(i)) throw ValidationError("slide indices must be 0..n-1 in order");
        if (s.level < 1 || s.level > kLevelsPerTest) throw ValidationError("slide level out of range");
        if (s.kind() != plan.kind) throw ValidationError("slide kind differs from plan kind");
        if (!(s.deadline_s > 0.0)) throw ValidationError("slide deadline must be positive");
        if (const auto* m = std::get_if<MathPayload>(&s.payload)) {
            if (evaluate(*m) != m->expected)
                throw ValidationError("math slide " + std::to_string(s.index) + " has an inconsistent answer");
        } else {
            const auto& p = std::get<StroopPayload>(s.payload);
            if (p.congruent != (p.word == p.ink))
                throw ValidationError("stroop slide " + std::to_string(s.index) + " has a wrong congruent flag");
        }
        ++counts[static_cast<std::size_t>(s.level - 1)];
    }
    for (int c : counts)
        if (c != per_level) throw ValidationError("every level must hold " + std::to_string(per_level) + " slides");
}

std::vector<PerformanceRecord> score_session(const StimulusPlan& plan, const SessionLog& log) {
    if (log.empty()) throw ValidationError("session log is empty; it does not match the plan");
    std::map<int, const LogRecord*> by_slide;
    for (const auto& r : log) {
        if (r.slide_index < 0 || static_cast<std::size_t>(r.slide_index) >= plan.slides.size())
            throw ValidationError("session log references unknown slide " + std::to_string(r.slide_index));
        if (!by_slide.emplace(r.slide_index, &r).second)
            throw ValidationError("session log holds two records for slide " + std::to_string(r.slide_index));
        if (r.responded_at_ms && *r.responded_at_ms < r.presented_at_ms)
            throw ValidationError("response precedes presentation for slide " + std::to_string(r.slide_index));
    }
    std::vector<PerformanceRecord> out;
    for (int level = 1; level <= kLevelsPerTest; ++level) out.push_back({level, 0, 0, 0.0});
    for (const auto& s : plan.slides) {
        auto& rec = out[static_cast<std::size_t>(s.level - 1)];
        ++rec.n_total;
        const auto it = by_slide.find(s.index);
        if (it == by_slide.end() || !it->second->responded_at_ms) continue;
        const auto& r = *it->second;
        const double latency_ms = static_cast<double>(*r.responded_at_ms - r.presented_at_ms);
        if (latency_ms > s.deadline_s * 1000.0 + 1e-6) continue;
        bool ok = false;
        if (s.kind() == TestKind::Stroop) {
            ok = lower(r.response) == s.expected_answer();
        } else {
            std::int64_t v = 0;
            ok = parse_integer(r.response, v) && v == std::get<MathPayload>(s.payload).expected;
        }
        if (ok) ++rec.n_correct;
    }
    for (auto& rec : out)
        rec.accuracy_pct = rec.n_total > 0 ? 100.0 * rec.n_correct / rec.n_total : 0.0;
    return out;
}

std::vector<Window> partition_levels(const StimulusPlan& plan, const Window& scenario) {
    std::array<double, kLevelsPerTest> budget{};
    for (const auto& s : plan.slides) {
        if (s.level < 1 || s.level > kLevelsPerTest) throw ValidationError("slide level out of range");
        budget[static_cast<std::size_t>(s.level - 1)] += s.deadline_s;
    }
    const double total = std::accumulate(budget.begin(), budget.end(), 0.0);
    if (!(total > 0.0) || std::abs(scenario.duration_s() - total) > kPartitionTolerance * total)
        throw ValidationError("scenario duration " + textio::format_fixed(scenario.duration_s(), 1) +
                              " s does not match the plan's deadline total " + textio::format_fixed(total, 1) +
                              " s");
    std::vector<Window> out;
    const double scale = scenario.duration_s() / total;
    double cursor = scenario.start_s;
    double acc = 0.0;
    for (int level = 1; level <= kLevelsPerTest; ++level) {
        acc += budget[static_cast<std::size_t>(level - 1)];
        const double end = level == kLevelsPerTest ? scenario.end_s : scenario.start_s + acc * scale;
        const std::string prefix = scenario.label.empty() ? "" : scenario.label + "/";
        out.emplace_back(cursor, end, prefix + "level-" + std::to_string(level));
        cursor = end;
    }
    return out;
}

std::string format_plan(const StimulusPlan& plan) {
    json doc;
    doc["kind"] = std::string(to_string(plan.kind));
    doc["seed"] = plan.seed;
    doc["slides"] = json::array();
    for (const auto& s : plan.slides) {
        json rec{{"index", s.index}, {"level", s.level}, {"deadline_s", s.deadline_s}};
        if (const auto* p = std::get_if<StroopPayload>(&s.payload)) {
            rec["word"] = std::string(to_string(p->word));
            rec["ink"] = std::string(to_string(p->ink));
            rec["congruent"] = p->congruent;
        } else {
            const auto& m = std::get<MathPayload>(s.payload);
            rec["operand_a"] = m.operand_a;
            rec["operand_b"] = m.operand_b;
            rec["operator"] = std::string(to_symbol(m.op));
        }
        rec["expected_answer"] = s.expected_answer();
        doc["slides"].push_back(std::move(rec));
    }
    return doc.dump(1) + "\n";
}

StimulusPlan parse_plan(std::string_view json_text) {
    StimulusPlan plan{};
    try {
        const auto doc = json::parse(json_text);
        plan.kind = parse_test_kind(doc.at("kind").get<std::string>());
        plan.seed = doc.at("seed").get<std::uint64_t>();
        for (const auto& rec : doc.at("slides")) {
            Slide s{rec.at("index").get<int>(), rec.at("level").get<int>(), rec.at("deadline_s").get<double>(),
                    StroopPayload{}};
            if (plan.kind == TestKind::Stroop) {
                const Color word = parse_color(rec.at("word").get<std::string>());
                const Color ink = parse_color(rec.at("ink").get<std::string>());
                s.payload = StroopPayload{word, ink, rec.value("congruent", word == ink)};
            } else {
                MathPayload m{rec.at("operand_a").get<std::int64_t>(), rec.at("operand_b").get<std::int64_t>(),
                              parse_operator(rec.at("operator").get<std::string>()), 0};
                m.expected = evaluate(m);
                s.payload = m;
            }
            if (rec.contains("expected_answer") && rec.at("expected_answer").get<std::string>() != s.expected_answer())
                throw ValidationError("slide " + std::to_string(s.index) + ": stored answer disagrees with payload");
            plan.slides.push_back(std::move(s));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("plan: ") + e.what());
    }
    validate_plan(plan);
    return plan;
}

void write_plan(const StimulusPlan& plan, const std::filesystem::path& path) {
    textio::write_file(path, format_plan(plan));
}

StimulusPlan load_plan(const std::filesystem::path& path) {
    try {
        return parse_plan(textio::read_file(path));
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

std::string format_log(const SessionLog& log) {
    std::string out;
    for (const auto& r : log) {
        json rec{{"slide_index", r.slide_index},
                 {"presented_at_ms", r.presented_at_ms},
                 {"response", r.response},
                 {"responded_at_ms", nullptr}};
        if (r.responded_at_ms) rec["responded_at_ms"] = *r.responded_at_ms;
        out += rec.dump() + "\n";
    }
    return out;
}

SessionLog parse_log(std::string_view text) {
    SessionLog log;
    std::size_t line_no = 0;
    for (const auto line : textio::split(text, '\n')) {
        ++line_no;
        const auto t = textio::trim(line);
        if (t.empty()) continue;
        try {
            const auto rec = json::parse(t);
            LogRecord r{rec.at("slide_index").get<int>(), rec.at("presented_at_ms").get<std::int64_t>(),
                        rec.value("response", std::string{}), std::nullopt};
            if (rec.contains("responded_at_ms") && !rec.at("responded_at_ms").is_null())
                r.responded_at_ms = rec.at("responded_at_ms").get<std::int64_t>();
            log.push_back(std::move(r));
        } catch (const json::exception& e) {
            throw ValidationError("session log line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return log;
}

void write_log(const SessionLog& log, const std::filesystem::path& path) {
    textio::write_file(path, format_log(log));
}

SessionLog load_log(const std::filesystem::path& path) { return parse_log(textio::read_file(path)); }

}  // namespace perfcal::protocol
