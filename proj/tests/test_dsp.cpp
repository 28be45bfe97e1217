#include <doctest.h>

#include "oracles.hpp"
#include "perfcal/dsp.hpp"
#include "perfcal/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace perfcal;

namespace {

// Analog Butterworth magnitude after bilinear prewarping.
double butter_gain(bool lowpass, int order, double fc, double f, double fs) {
    const double r = std::tan(std::numbers::pi * f / fs) / std::tan(std::numbers::pi * fc / fs);
    const double x = lowpass ? r : 1.0 / r;
    return 1.0 / std::sqrt(1.0 + std::pow(x, 2 * order));
}

std::vector<double> sine(double f, double fs, std::size_t n, double phase = 0.0) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(2 * std::numbers::pi * f * double(i) / fs + phase);
    return v;
}

// Amplitude of the f component over the tail of y, by projection.
double amplitude(const std::vector<double>& y, double f, double fs, std::size_t from) {
    double c = 0, s = 0;
    std::size_t n = 0;
    for (std::size_t i = from; i < y.size(); ++i, ++n) {
        const double a = 2 * std::numbers::pi * f * double(i) / fs;
        c += y[i] * std::cos(a);
        s += y[i] * std::sin(a);
    }
    return 2.0 * std::hypot(c, s) / double(n);
}

}  // namespace

TEST_CASE("butterworth magnitude matches the analog prototype") {
    const double fs = 500;
    for (int order : {2, 4, 6}) {
        for (double f : {2.0, 10.0, 20.0, 40.0, 80.0}) {
            // Whole number of cycles in the analysed tail keeps the projection exact.
            const std::size_t n = 20000;
            const auto lp = dsp::sosfilt(dsp::butter_lowpass(order, 20, fs), sine(f, fs, n));
            CHECK(amplitude(lp, f, fs, 10000) == doctest::Approx(butter_gain(true, order, 20, f, fs)).epsilon(1e-3));
            const auto hp = dsp::sosfilt(dsp::butter_highpass(order, 20, fs), sine(f, fs, n));
            CHECK(amplitude(hp, f, fs, 10000) == doctest::Approx(butter_gain(false, order, 20, f, fs)).epsilon(1e-3));
        }
    }
}

TEST_CASE("cutoff sits at half power") {
    const double fs = 128;
    const auto y = dsp::sosfilt(dsp::butter_lowpass(4, 8, fs), sine(8, fs, 12800));
    CHECK(amplitude(y, 8, fs, 6400) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-3));
}

TEST_CASE("bandpass passes the centre and rejects the edges") {
    const double fs = 512;
    const auto sos = dsp::butter_bandpass(2, 5, 15, fs);
    const auto mid = dsp::sosfilt(sos, sine(9, fs, 20480));
    const auto low = dsp::sosfilt(sos, sine(0.5, fs, 20480));
    const auto high = dsp::sosfilt(sos, sine(100, fs, 20480));
    const double g = butter_gain(false, 2, 5, 9, fs) * butter_gain(true, 2, 15, 9, fs);
    CHECK(amplitude(mid, 9, fs, 10240) == doctest::Approx(g).epsilon(1e-3));
    CHECK(amplitude(low, 0.5, fs, 10240) < 0.02);
    CHECK(amplitude(high, 100, fs, 10240) < 0.03);
}

TEST_CASE("design rejects bad parameters") {
    CHECK_THROWS_AS(dsp::butter_lowpass(3, 10, 100), ValidationError);
    CHECK_THROWS_AS(dsp::butter_lowpass(2, 60, 100), ValidationError);
    CHECK_THROWS_AS(dsp::butter_lowpass(2, 0, 100), ValidationError);
    CHECK_THROWS_AS(dsp::butter_bandpass(2, 10, 5, 100), ValidationError);
}

TEST_CASE("filtfilt has zero phase") {
    const double fs = 200;
    const auto x = sine(2, fs, 4000, 0.3);
    const auto y = dsp::filtfilt(dsp::butter_lowpass(4, 20, fs), x);
    // Gain squared, no delay: the middle of the record equals the input scaled.
    const double g2 = std::pow(butter_gain(true, 4, 20, 2, fs), 2);
    for (std::size_t i = 1000; i < 3000; i += 37) CHECK(y[i] == doctest::Approx(g2 * x[i]).epsilon(1e-4));
}

TEST_CASE("filtfilt keeps a constant") {
    std::vector<double> x(300, 4.2);
    for (double v : dsp::filtfilt(dsp::butter_lowpass(2, 1, 128), x)) CHECK(v == doctest::Approx(4.2));
    for (double v : dsp::filtfilt(dsp::butter_highpass(2, 1, 128), x)) CHECK(v == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("moving average and rms") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    const auto m = dsp::moving_average(x, 3);
    CHECK(m[0] == doctest::Approx(1.5));
    CHECK(m[2] == doctest::Approx(3));
    CHECK(m[4] == doctest::Approx(4.5));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n;
    std::vector<double> r(200);
    for (auto& v : r) v = n(rng);
    const auto ms = dsp::moving_rms(r, 11);
    for (std::size_t i = 5; i + 5 < r.size(); i += 13) {
        std::vector<double> win(r.begin() + long(i) - 5, r.begin() + long(i) + 6);
        double s = 0;
        for (double v : win) s += v * v;
        CHECK(ms[i] == doctest::Approx(std::sqrt(s / 11)));
    }
}

TEST_CASE("statistics") {
    const std::vector<double> x = {60, 120};
    CHECK(dsp::mean(x) == 90);
    CHECK(dsp::stddev(x) == 30);
    CHECK(dsp::rms(std::vector<double>{3, 4}) == doctest::Approx(std::sqrt(12.5)));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-5, 5);
    std::vector<double> r(999);
    for (auto& v : r) v = u(rng);
    CHECK(dsp::mean(r) == doctest::Approx(oracle::mean(r)).epsilon(1e-12));
    CHECK(dsp::stddev(r) == doctest::Approx(oracle::pstd(r)).epsilon(1e-12));
}

TEST_CASE("derivative of a line") {
    std::vector<double> x(50);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 3.0 * double(i) / 10.0;
    for (double d : dsp::derivative(x, 10.0)) CHECK(d == doctest::Approx(3.0));
}

TEST_CASE("local maxima and parabolic offset") {
    const std::vector<double> x = {0, 1, 0, 2, 2, 1, 3};
    const auto p = dsp::local_maxima(x);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == 1);
    CHECK(p[1] == 3);
    // Vertex of y = -(t - 0.2)^2 sampled at -1, 0, 1.
    auto f = [](double t) { return -(t - 0.2) * (t - 0.2); };
    CHECK(dsp::parabolic_offset(f(-1), f(0), f(1)) == doctest::Approx(0.2));
    CHECK(dsp::parabolic_offset(1, 1, 1) == 0.0);
}
