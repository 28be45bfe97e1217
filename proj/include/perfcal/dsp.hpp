#pragma once

#include <span>
#include <vector>

namespace perfcal::dsp {

// Direct-form II transposed second-order section, a0 normalised to 1.
struct Biquad {
    double b0, b1, b2, a1, a2;
};

using Sos = std::vector<Biquad>;

// Butterworth designs via the bilinear transform. `order` must be even.
Sos butter_lowpass(int order, double cutoff_hz, double fs_hz);
Sos butter_highpass(int order, double cutoff_hz, double fs_hz);
Sos butter_bandpass(int order, double low_hz, double high_hz, double fs_hz);

std::vector<double> sosfilt(const Sos& sos, std::span<const double> x);
// Zero-phase forward/backward filtering with odd-reflection padding.
std::vector<double> filtfilt(const Sos& sos, std::span<const double> x);

// Centered moving average over `width` samples; the window is truncated at
// the edges (mean over the available samples).
std::vector<double> moving_average(std::span<const double> x, std::size_t width);
std::vector<double> moving_rms(std::span<const double> x, std::size_t width);

// Central-difference derivative in units per second.
std::vector<double> derivative(std::span<const double> x, double fs_hz);

double mean(std::span<const double> x);
// Population standard deviation.
double stddev(std::span<const double> x);
double rms(std::span<const double> x);

// Strict local maxima (plateaus report their first sample).
std::vector<std::size_t> local_maxima(std::span<const double> x);

// Vertex offset in (-0.5, 0.5) of the parabola through (y0, y1, y2).
double parabolic_offset(double y0, double y1, double y2);

}  // namespace perfcal::dsp
