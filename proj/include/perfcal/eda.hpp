#pragma once

#include "perfcal/signal.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace perfcal::eda {

// Biexponential SCR impulse response h(t) = exp(-t/tau1) - exp(-t/tau2),
// scaled to unit peak, so a driver impulse of a uS produces an SCR whose
// peak is a uS above its onset level.
struct BatemanKernel {
    double tau1_s = 2.0;
    double tau2_s = 0.75;
    double duration_s = 30.0;

    void validate() const;
    double peak_time_s() const;
    double peak_value() const;  // unnormalised maximum
    double operator()(double t_s) const;
    // h sampled at k / fs for k = 0 .. duration_s * fs.
    std::vector<double> sampled(double fs_hz) const;
};

// Causal convolution of a driver with the kernel, computed through the
// kernel's exact second-order recursion. The response is not truncated at
// duration_s.
std::vector<double> convolve_driver(std::span<const double> driver, const BatemanKernel& kernel,
                                    double fs_hz);

struct DecomposeConfig {
    double lambda = 0.01;          // sparsity weight on the driver rate (uS/s)
    double tonic_cutoff_hz = 0.05; // half-power point of the tonic smoother
    int max_iterations = 200;
    double tolerance_uS = 1e-3;    // reconstruction RMS expected on clean input
};

struct EdaDecomposition {
    TimeSeries tonic;   // SCL
    TimeSeries phasic;  // SCR, equal to driver convolved with the kernel
    TimeSeries driver;  // nonnegative sudomotor activity, uS per sample
    int iterations = 0;
    double residual_rms_uS = 0.0;
};

// Jointly fits tonic + (driver * kernel) to the conductance signal:
//   min 1/2 |tonic + phasic - gsr|^2 + gamma/2 |D2 tonic|^2 + lambda fs sum(driver)
//   s.t. driver >= 0
// with a primal-dual interior-point method. Throws ProcessingError when the
// solver does not converge and ValidationError on negative conductance.
EdaDecomposition decompose(const TimeSeries& gsr, const BatemanKernel& kernel = {},
                           const DecomposeConfig& cfg = {});

// tonic + driver * kernel at the decomposition's rate.
TimeSeries reconstruct(const EdaDecomposition& dec, const BatemanKernel& kernel = {});

struct ScrEvent {
    double onset_s;
    double peak_s;
    double amplitude_uS;
};

struct ScrConfig {
    double amplitude_threshold_uS = 0.01;
    double min_separation_s = 1.0;
    // Two rises of the phasic curve separated by less than merge_gap_s and a
    // dip smaller than floor_fraction * threshold are one response.
    double floor_fraction = 0.1;
    double merge_gap_s = 0.25;
};

// One event per rise of the phasic curve: onset at the trough (the first
// driver sample of the response), peak at the crest. The amplitude is the
// peak of the response to the driver inside the rise, which equals the
// trough-to-crest height for isolated responses. Events closer than
// min_separation_s keep only the larger one.
std::vector<ScrEvent> detect_scr_events(const EdaDecomposition& dec, const BatemanKernel& kernel = {},
                                        const ScrConfig& cfg = {});

// Exports: header `onset_s,peak_s,amplitude_uS`.
std::string format_events(const std::vector<ScrEvent>& events);
std::vector<ScrEvent> parse_events(std::string_view text);
void write_events(const std::vector<ScrEvent>& events, const std::filesystem::path& path);
std::vector<ScrEvent> load_events(const std::filesystem::path& path);

}  // namespace perfcal::eda
