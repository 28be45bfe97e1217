#include "perfcal/dsp.hpp"

#include "perfcal/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace perfcal::dsp {

namespace {

void check_design(int order, double cutoff_hz, double fs_hz) {
    if (order < 2 || order % 2 != 0) throw ValidationError("filter order must be even and >= 2");
    if (!(cutoff_hz > 0.0) || !(cutoff_hz < 0.5 * fs_hz))
        throw ValidationError("filter cutoff must lie in (0, fs/2)");
}

// Q of the k-th conjugate pole pair of an order-n Butterworth prototype.
double butter_q(int order, int k) {
    const double angle = std::numbers::pi * (2.0 * k + 1.0) / (2.0 * order);
    return 1.0 / (2.0 * std::sin(angle));
}

Biquad rbj(bool lowpass, double fc, double fs, double q) {
    const double w0 = 2.0 * std::numbers::pi * fc / fs;
    const double cw = std::cos(w0);
    const double alpha = std::sin(w0) / (2.0 * q);
    const double a0 = 1.0 + alpha;
    Biquad bq{};
    if (lowpass) {
        bq.b0 = (1.0 - cw) / 2.0;
        bq.b1 = 1.0 - cw;
        bq.b2 = (1.0 - cw) / 2.0;
    } else {
        bq.b0 = (1.0 + cw) / 2.0;
        bq.b1 = -(1.0 + cw);
        bq.b2 = (1.0 + cw) / 2.0;
    }
    bq.b0 /= a0;
    bq.b1 /= a0;
    bq.b2 /= a0;
    bq.a1 = -2.0 * cw / a0;
    bq.a2 = (1.0 - alpha) / a0;
    return bq;
}

Sos design(bool lowpass, int order, double fc, double fs) {
    check_design(order, fc, fs);
    Sos sos;
    for (int k = 0; k < order / 2; ++k) sos.push_back(rbj(lowpass, fc, fs, butter_q(order, k)));
    return sos;
}

}  // namespace

Sos butter_lowpass(int order, double cutoff_hz, double fs_hz) {
    return design(true, order, cutoff_hz, fs_hz);
}

Sos butter_highpass(int order, double cutoff_hz, double fs_hz) {
    return design(false, order, cutoff_hz, fs_hz);
}

Sos butter_bandpass(int order, double low_hz, double high_hz, double fs_hz) {
    if (!(low_hz < high_hz)) throw ValidationError("bandpass edges must satisfy low < high");
    auto sos = butter_highpass(order, low_hz, fs_hz);
    const auto lp = butter_lowpass(order, high_hz, fs_hz);
    sos.insert(sos.end(), lp.begin(), lp.end());
    return sos;
}

std::vector<double> sosfilt(const Sos& sos, std::span<const double> x) {
    std::vector<double> y(x.begin(), x.end());
    for (const auto& s : sos) {
        double z1 = 0.0;
        double z2 = 0.0;
        for (double& v : y) {
            const double in = v;
            const double out = s.b0 * in + z1;
            z1 = s.b1 * in - s.a1 * out + z2;
            z2 = s.b2 * in - s.a2 * out;
            v = out;
        }
    }
    return y;
}

std::vector<double> filtfilt(const Sos& sos, std::span<const double> x) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    const std::size_t pad = std::min<std::size_t>(n - 1, 3 * (2 * sos.size() + 1));
    std::vector<double> ext;
    ext.reserve(n + 2 * pad);
    for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

    // Each pass starts as if the input had been constant at its first value
    // forever (steady-state initial conditions), which removes the DC step.
    double dc_gain = 1.0;
    for (const auto& s : sos) dc_gain *= (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
    auto pass = [&](std::vector<double>& v) {
        const double lead = v.front();
        for (double& e : v) e -= lead;
        v = sosfilt(sos, v);
        for (double& e : v) e += lead * dc_gain;
        std::reverse(v.begin(), v.end());
    };
    pass(ext);
    pass(ext);
    const auto& back = ext;
    std::vector<double> y(back.begin() + static_cast<std::ptrdiff_t>(pad),
                          back.begin() + static_cast<std::ptrdiff_t>(pad + n));
    return y;
}

std::vector<double> moving_average(std::span<const double> x, std::size_t width) {
    const std::size_t n = x.size();
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;
    width = std::max<std::size_t>(width, 1);
    const std::size_t half_lo = (width - 1) / 2;
    const std::size_t half_hi = width - 1 - half_lo;
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half_lo ? i - half_lo : 0;
        const std::size_t hi = std::min(n - 1, i + half_hi);
        out[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
    }
    return out;
}

std::vector<double> moving_rms(std::span<const double> x, std::size_t width) {
    std::vector<double> sq(x.size());
    std::transform(x.begin(), x.end(), sq.begin(), [](double v) { return v * v; });
    auto ms = moving_average(sq, width);
    for (double& v : ms) v = std::sqrt(std::max(v, 0.0));
    return ms;
}

std::vector<double> derivative(std::span<const double> x, double fs_hz) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    d[0] = (x[1] - x[0]) * fs_hz;
    d[n - 1] = (x[n - 1] - x[n - 2]) * fs_hz;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = 0.5 * (x[i + 1] - x[i - 1]) * fs_hz;
    return d;
}

double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double stddev(std::span<const double> x) {
    if (x.empty()) return 0.0;
    const double m = mean(x);
    double acc = 0.0;
    for (double v : x) acc += (v - m) * (v - m);
    return std::sqrt(acc / static_cast<double>(x.size()));
}

double rms(std::span<const double> x) {
    if (x.empty()) return 0.0;
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc / static_cast<double>(x.size()));
}

std::vector<std::size_t> local_maxima(std::span<const double> x) {
    std::vector<std::size_t> out;
    const std::size_t n = x.size();
    std::size_t i = 1;
    while (i + 1 < n) {
        if (x[i] > x[i - 1]) {
            std::size_t j = i;
            while (j + 1 < n && x[j + 1] == x[i]) ++j;
            if (j + 1 < n && x[j + 1] < x[i]) out.push_back(i);
            i = j + 1;
        } else {
            ++i;
        }
    }
    return out;
}

double parabolic_offset(double y0, double y1, double y2) {
    const double denom = y0 - 2.0 * y1 + y2;
    if (denom >= 0.0) return 0.0;
    return std::clamp(0.5 * (y0 - y2) / denom, -0.5, 0.5);
}

}  // namespace perfcal::dsp
