#include <doctest.h>

#include "oracles.hpp"
#include "perfcal/error.hpp"
#include "perfcal/signal.hpp"
#include "perfcal/textio.hpp"

#include <filesystem>
#include <random>
#include <string>

using namespace perfcal;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("perfcal_signal_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string rows(std::size_t n, double rate, double start = 0.0) {
    std::string s = "t_s,value\n";
    for (std::size_t i = 0; i < n; ++i)
        s += textio::format_double(start + double(i) / rate) + "," + textio::format_double(std::sin(0.01 * i)) + "\n";
    return s;
}

void write_manifest_json(const fs::path& p, const std::string& entries) {
    textio::write_file(p, "{\"subject_id\": \"s1\", \"entries\": [" + entries + "]}");
}

std::string entry(const char* kind, const char* file, double rate) {
    return std::string("{\"channel_kind\": \"") + kind + "\", \"file\": \"" + file +
           "\", \"sampling_rate_hz\": " + textio::format_double(rate) + ", \"units\": \"x\"}";
}

}  // namespace

TEST_CASE("time series invariants") {
    CHECK_THROWS_AS(TimeSeries(ChannelKind::ECG, 0.0, 0.0, {1.0}), ValidationError);
    CHECK_THROWS_AS(TimeSeries(ChannelKind::ECG, -5.0, 0.0, {1.0}), ValidationError);
    CHECK_THROWS_AS(TimeSeries(ChannelKind::ECG, 100.0, 0.0, {}), ValidationError);
    CHECK_THROWS_AS(TimeSeries(ChannelKind::ECG, 100.0, 0.0, {1.0, std::nan("")}), ValidationError);
    const TimeSeries ts(ChannelKind::GSR, 4.0, 10.0, {1, 2, 3, 4});
    CHECK(ts.time_at(2) == doctest::Approx(10.5));
    CHECK(ts.end_s() == doctest::Approx(11.0));
    CHECK(ts.duration_s() == doctest::Approx(1.0));
}

TEST_CASE("channel kind names") {
    for (auto k : {ChannelKind::ECG, ChannelKind::BVP, ChannelKind::GSR, ChannelKind::EMG})
        CHECK(parse_channel_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_channel_kind("EEG"), ValidationError);
}

TEST_CASE("manifest loading") {
    const auto dir = scratch("manifest");
    for (const char* f : {"ecg.csv", "bvp.csv", "gsr.csv", "emg.csv"}) textio::write_file(dir / f, rows(10, 100));

    SUBCASE("four channels") {
        write_manifest_json(dir / "m.json", entry("ECG", "ecg.csv", 100) + "," + entry("BVP", "bvp.csv", 100) + "," +
                                                entry("GSR", "gsr.csv", 100) + "," + entry("EMG", "emg.csv", 100));
        const auto m = load_manifest(dir / "m.json");
        CHECK(m.entries.size() == 4);
        CHECK(m.subject_id == "s1");
        REQUIRE(m.find(ChannelKind::GSR));
        CHECK(m.find(ChannelKind::GSR)->file == dir / "gsr.csv");
    }
    SUBCASE("duplicate kind") {
        write_manifest_json(dir / "m.json", entry("ECG", "ecg.csv", 100) + "," + entry("ECG", "bvp.csv", 100));
        CHECK_THROWS_WITH_AS(load_manifest(dir / "m.json"), doctest::Contains("duplicate"), ValidationError);
    }
    SUBCASE("zero rate") {
        write_manifest_json(dir / "m.json", entry("ECG", "ecg.csv", 0));
        CHECK_THROWS_WITH_AS(load_manifest(dir / "m.json"), doctest::Contains("rate"), ValidationError);
    }
    SUBCASE("missing file") {
        write_manifest_json(dir / "m.json", entry("ECG", "nope.csv", 100));
        CHECK_THROWS_WITH_AS(load_manifest(dir / "m.json"), doctest::Contains("nope.csv"), ValidationError);
    }
    SUBCASE("round trip") {
        write_manifest_json(dir / "m.json", entry("ECG", "ecg.csv", 100) + "," + entry("GSR", "gsr.csv", 100));
        const auto m = load_manifest(dir / "m.json");
        write_manifest(m, dir / "m2.json");
        const auto back = load_manifest(dir / "m2.json");
        REQUIRE(back.entries.size() == 2);
        CHECK(back.entries[1].kind == ChannelKind::GSR);
        CHECK(back.entries[1].file == m.entries[1].file);
        CHECK(back.entries[1].sampling_rate_hz == 100.0);
    }
    fs::remove_all(dir);
}

TEST_CASE("series parsing") {
    CHECK(parse_series(rows(1000, 100), ChannelKind::ECG, 100).size() == 1000);
    CHECK_THROWS_WITH_AS(parse_series(rows(1000, 100), ChannelKind::ECG, 128, "ecg.csv"),
                         doctest::Contains("rate mismatch"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_series("t_s,value\n0,1\n0.01,NaN\n", ChannelKind::ECG, 100, "x.csv"),
                         doctest::Contains("non-finite"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_series("t_s,value\n0,1\n0,2\n", ChannelKind::ECG, 100, "x.csv"),
                         doctest::Contains("non-monotonic"), ValidationError);
    CHECK_THROWS_AS(parse_series("time,v\n0,1\n", ChannelKind::ECG, 100), ValidationError);
    CHECK_THROWS_AS(parse_series("t_s,value\n0,abc\n", ChannelKind::ECG, 100), ValidationError);
    CHECK_THROWS_AS(parse_series("t_s,value\n", ChannelKind::ECG, 100), ValidationError);
}

TEST_CASE("series text round trip is exact") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0, 1);
    std::vector<double> v(500);
    for (auto& x : v) x = n(rng);
    const TimeSeries ts(ChannelKind::EMG, 512.0, 12.5, v);
    const auto back = parse_series(format_series(ts), ChannelKind::EMG, 512.0);
    REQUIRE(back.size() == ts.size());
    CHECK(back.start_s() == ts.start_s());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(back.values()[i] == v[i]);
}

TEST_CASE("slice_window") {
    std::vector<double> v(1200 * 4);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = double(i);
    const TimeSeries ts(ChannelKind::GSR, 4.0, 0.0, v);

    SUBCASE("four minute slice") {
        const auto s = slice_window(ts, Window(240, 480));
        CHECK(s.duration_s() == doctest::Approx(240.0));
        CHECK(s.start_s() == doctest::Approx(240.0));
        CHECK(s.values()[0] == 960.0);
    }
    SUBCASE("identity") {
        const auto s = slice_window(ts, Window(ts.start_s(), ts.end_s()));
        CHECK(s.size() == ts.size());
        CHECK(s.start_s() == ts.start_s());
    }
    SUBCASE("beyond the end") {
        CHECK_THROWS_AS(slice_window(ts, Window(1300, 1400)), ProcessingError);
    }
    SUBCASE("nested slices compose") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0, 1200);
        for (int k = 0; k < 200; ++k) {
            double a = u(rng), b = u(rng);
            if (a > b) std::swap(a, b);
            if (b - a < 2) continue;
            const double c = a + (b - a) * 0.3, d = a + (b - a) * 0.8;
            const auto outer = slice_window(ts, Window(a, b));
            const auto twice = slice_window(outer, Window(c, d));
            const auto once = slice_window(ts, Window(c, d));
            REQUIRE(twice.size() == once.size());
            CHECK(twice.start_s() == doctest::Approx(once.start_s()));
            CHECK(twice.values()[0] == once.values()[0]);
        }
    }
}

TEST_CASE("windows") {
    CHECK_THROWS_AS(Window(5, 5), ValidationError);
    const Window w(1, 3);
    CHECK(w.contains(1));
    CHECK_FALSE(w.contains(3));
    CHECK(intersect(Window(0, 2), Window(1, 3))->duration_s() == doctest::Approx(1));
    CHECK_FALSE(intersect(Window(0, 1), Window(1, 2)));
}

TEST_CASE("default markers follow the protocol table") {
    const auto m = default_markers();
    REQUIRE(m.scenarios.size() == 5);
    const double bounds[] = {0, 240, 480, 720, 1020, 1200};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(m.scenarios[i].start_s == bounds[i]);
        CHECK(m.scenarios[i].end_s == bounds[i + 1]);
    }
    CHECK(m.scenarios.back().end_s == 1200.0);
    CHECK(m.level_windows("II").size() == 7);
    CHECK(m.level_windows("IV").size() == 7);
    CHECK(m.level_windows("I").empty());
    CHECK(check_markers(m).empty());
    const auto lv = m.level_windows("IV");
    for (const auto& w : lv) CHECK(w.duration_s() == doctest::Approx(300.0 / 7));
    CHECK(lv.front().start_s == 720.0);
    CHECK(lv.back().end_s == 1020.0);
}

TEST_CASE("marker invariants") {
    SUBCASE("overlap") {
        auto m = default_markers();
        m.scenarios[2].start_s -= 10;
        CHECK_FALSE(check_markers(m).empty());
        CHECK_THROWS_WITH_AS(validate_markers(m), doctest::Contains("overlaps"), ValidationError);
    }
    SUBCASE("gap") {
        auto m = default_markers();
        m.scenarios[4].start_s += 5;
        CHECK_THROWS_WITH_AS(validate_markers(m), doctest::Contains("gap"), ValidationError);
    }
    SUBCASE("six levels") {
        auto m = default_markers();
        m.levels.pop_back();
        CHECK_THROWS_WITH_AS(validate_markers(m), doctest::Contains("expected 7"), ValidationError);
    }
    SUBCASE("levels leave a hole") {
        auto m = default_markers();
        m.levels[3].end_s -= 1;
        CHECK_THROWS_AS(validate_markers(m), ValidationError);
    }
    SUBCASE("not from zero") {
        auto m = default_markers();
        m.scenarios[0].start_s = 1;
        CHECK_THROWS_AS(validate_markers(m), ValidationError);
    }
}

TEST_CASE("markers json round trip") {
    const auto dir = scratch("markers");
    const auto m = default_markers();
    write_markers(m, dir / "markers.json");
    const auto back = load_markers(dir / "markers.json");
    REQUIRE(back.scenarios.size() == m.scenarios.size());
    REQUIRE(back.levels.size() == m.levels.size());
    for (std::size_t i = 0; i < m.levels.size(); ++i) {
        CHECK(back.levels[i].start_s == m.levels[i].start_s);
        CHECK(back.levels[i].end_s == m.levels[i].end_s);
        CHECK(back.levels[i].level == m.levels[i].level);
    }
    CHECK_THROWS_AS(parse_markers("{\"scenarios\": [{\"id\": \"I\"}]}"), ValidationError);
    CHECK_THROWS_AS(parse_markers("not json"), ValidationError);
    fs::remove_all(dir);
}
