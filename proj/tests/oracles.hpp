#pragma once

// Reference computations for the tests. Each one is written the slow,
// obvious way and shares no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

// Normal equations on raw sums, in long double.
struct Line {
    double slope;
    double intercept;
};

inline Line ols(const std::vector<double>& x, const std::vector<double>& y) {
    long double n = static_cast<long double>(x.size());
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += static_cast<long double>(x[i]) * x[i];
        sxy += static_cast<long double>(x[i]) * y[i];
    }
    const long double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const long double a = (sy - b * sx) / n;
    return {static_cast<double>(b), static_cast<double>(a)};
}

inline double mean(const std::vector<double>& v) {
    long double s = 0;
    for (double x : v) s += x;
    return static_cast<double>(s / v.size());
}

inline double pstd(const std::vector<double>& v) {
    const long double m = mean(v);
    long double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return static_cast<double>(std::sqrt(s / v.size()));
}

// Bateman response with unit peak, from the closed form.
inline double bateman(double t, double tau1 = 2.0, double tau2 = 0.75) {
    if (t < 0) return 0.0;
    const double tp = tau1 * tau2 * std::log(tau1 / tau2) / (tau1 - tau2);
    const double peak = std::exp(-tp / tau1) - std::exp(-tp / tau2);
    return (std::exp(-t / tau1) - std::exp(-t / tau2)) / peak;
}

// Direct causal convolution of a per-sample driver with the untruncated kernel.
inline std::vector<double> convolve(const std::vector<double>& driver, double fs) {
    const std::size_t m = driver.size();
    std::vector<double> out(driver.size(), 0.0);
    for (std::size_t i = 0; i < driver.size(); ++i) {
        if (driver[i] == 0.0) continue;
        for (std::size_t k = 0; k < m && i + k < out.size(); ++k)
            out[i + k] += driver[i] * bateman(static_cast<double>(k) / fs);
    }
    return out;
}

// Fraction of signal power (mean removed) above f_hz, via a plain DFT.
inline double power_fraction_above(const std::vector<double>& x, double fs, double f_hz) {
    const std::size_t n = x.size();
    const double m = mean(x);
    double total = 0, high = 0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        std::complex<double> acc = 0;
        for (std::size_t i = 0; i < n; ++i)
            acc += (x[i] - m) * std::polar(1.0, -2.0 * std::numbers::pi * double(k) * double(i) / double(n));
        const double p = std::norm(acc);
        total += p;
        if (double(k) * fs / double(n) > f_hz) high += p;
    }
    return total > 0 ? high / total : 0.0;
}

inline double chi_square(const std::vector<long>& counts) {
    long total = 0;
    for (long c : counts) total += c;
    const double expected = double(total) / double(counts.size());
    double chi = 0;
    for (long c : counts) chi += (c - expected) * (c - expected) / expected;
    return chi;
}

// Greedy one-to-one matching of sorted detections to sorted truth.
struct Match {
    std::size_t true_pos = 0;
    std::size_t truth = 0;
    std::size_t detected = 0;
    double sensitivity() const { return truth ? double(true_pos) / double(truth) : 1.0; }
    double ppv() const { return detected ? double(true_pos) / double(detected) : 1.0; }
};

inline Match match_times(const std::vector<double>& truth, const std::vector<double>& det, double tol) {
    Match m;
    m.truth = truth.size();
    m.detected = det.size();
    std::vector<bool> used(det.size(), false);
    for (double t : truth) {
        std::size_t best = det.size();
        double bd = tol;
        for (std::size_t j = 0; j < det.size(); ++j) {
            const double d = std::abs(det[j] - t);
            if (!used[j] && d <= bd) {
                bd = d;
                best = j;
            }
        }
        if (best < det.size()) {
            used[best] = true;
            ++m.true_pos;
        }
    }
    return m;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

inline std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace oracle
