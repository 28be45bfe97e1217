#pragma once

#include "perfcal/signal.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace perfcal::protocol {

enum class TestKind { Stroop, Math };

enum class Color { Yellow, Red, Green, Blue, Black, White, Orange };
inline constexpr std::array<Color, 7> kColors = {Color::Yellow, Color::Red,   Color::Green, Color::Blue,
                                                 Color::Black,  Color::White, Color::Orange};

enum class Operator { Add, Subtract, Multiply, Divide };
inline constexpr std::array<Operator, 4> kOperators = {Operator::Add, Operator::Subtract,
                                                       Operator::Multiply, Operator::Divide};

std::string_view to_string(TestKind kind);
std::string_view to_string(Color color);
std::string_view to_symbol(Operator op);
TestKind parse_test_kind(std::string_view text);
Color parse_color(std::string_view text);
Operator parse_operator(std::string_view symbol);

struct StroopPayload {
    Color word;
    Color ink;
    bool congruent;
};

struct MathPayload {
    std::int64_t operand_a;
    std::int64_t operand_b;
    Operator op;
    std::int64_t expected;
};

struct Slide {
    int index;  // position in the plan, 0-based
    int level;  // 1..7
    double deadline_s;
    std::variant<StroopPayload, MathPayload> payload;

    TestKind kind() const;
    // Stroop: the ink colour name. Math: the decimal result.
    std::string expected_answer() const;
};

struct StimulusPlan {
    TestKind kind;
    std::uint64_t seed;
    std::vector<Slide> slides;

    double total_deadline_s() const;
};

inline constexpr int kStroopSlidesPerLevel = 15;
inline constexpr int kMathSlidesPerLevel = 7;

// Difficulty knobs. Per-slide deadlines fall linearly from the first to the
// last level and are then rescaled so the plan fills the scenario exactly.
struct StroopConfig {
    double first_deadline_s = 3.2;
    double last_deadline_s = 1.6;
    double scenario_s = 240.0;
    double first_incongruent = 0.0;  // fraction of incongruent slides at level 1
    double last_incongruent = 1.0;   // ... and at level 7
};

struct MathConfig {
    double first_deadline_s = 9.0;
    double last_deadline_s = 4.0;
    double scenario_s = 300.0;
    int first_digits = 1;
    int last_digits = 3;
};

StimulusPlan generate_stroop_plan(std::uint64_t seed, const StroopConfig& cfg = {});
StimulusPlan generate_math_plan(std::uint64_t seed, const MathConfig& cfg = {});

// Structural checks: slide counts, levels, payload consistency.
void validate_plan(const StimulusPlan& plan);

struct LogRecord {
    int slide_index;
    std::int64_t presented_at_ms;
    std::string response;
    std::optional<std::int64_t> responded_at_ms;
};

using SessionLog = std::vector<LogRecord>;

struct PerformanceRecord {
    int level;
    int n_correct;
    int n_total;
    double accuracy_pct;
};

// A response counts iff it matches the expected answer and arrives within
// the slide's deadline. Slides without a record are incorrect.
std::vector<PerformanceRecord> score_session(const StimulusPlan& plan, const SessionLog& log);

// Seven contiguous windows, one per level, sized by each level's deadline
// budget and scaled onto the scenario.
std::vector<Window> partition_levels(const StimulusPlan& plan, const Window& scenario);

std::string format_plan(const StimulusPlan& plan);
StimulusPlan parse_plan(std::string_view json_text);
void write_plan(const StimulusPlan& plan, const std::filesystem::path& path);
StimulusPlan load_plan(const std::filesystem::path& path);

// JSON Lines, one record per line.
std::string format_log(const SessionLog& log);
SessionLog parse_log(std::string_view text);
void write_log(const SessionLog& log, const std::filesystem::path& path);
SessionLog load_log(const std::filesystem::path& path);

}  // namespace perfcal::protocol
