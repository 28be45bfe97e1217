#include "perfcal/eda.hpp"

#include "perfcal/dsp.hpp"
#include "perfcal/error.hpp"
#include "perfcal/textio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace perfcal::eda {

namespace {

constexpr double kMinDuration = 30.0;
// Phasic increments below this are solver residue, not a response.
constexpr double kRiseEps = 1e-9;
// Driver samples above this after the sparse fit form the support of the
// debiasing refit.
constexpr double kSupportLevel = 1e-6;
constexpr std::size_t kSupportPad = 2;
constexpr int kRefinePasses = 1;
constexpr double kOffSupportFactor = 100.0;

// Symmetric positive definite band matrix, lower band stored row-wise:
// at(i, k) = A(i, i - k) for k in [0, bw].
class BandSpd {
public:
    BandSpd(std::size_t n, std::size_t bw) : n_(n), bw_(bw), a_(n * (bw + 1), 0.0) {}

    void clear() { std::fill(a_.begin(), a_.end(), 0.0); }
    // Adds v to A(i, j) (and implicitly A(j, i)); requires |i - j| <= bw.
    void add(std::size_t i, std::size_t j, double v) {
        if (i < j) std::swap(i, j);
        a_[i * (bw_ + 1) + (i - j)] += v;
    }
    double& at(std::size_t i, std::size_t k) { return a_[i * (bw_ + 1) + k]; }
    double at(std::size_t i, std::size_t k) const { return a_[i * (bw_ + 1) + k]; }
    std::size_t size() const { return n_; }
    std::size_t bandwidth() const { return bw_; }
    // Reciprocal diagonal of the factor, set by cholesky().
    std::vector<double>& inv_diag() { return inv_diag_; }
    const std::vector<double>& inv_diag() const { return inv_diag_; }

    std::vector<double> multiply(std::span<const double> x) const {
        std::vector<double> y(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            y[i] += at(i, 0) * x[i];
            for (std::size_t k = 1; k <= bw_ && k <= i; ++k) {
                const double v = at(i, k);
                y[i] += v * x[i - k];
                y[i - k] += v * x[i];
            }
        }
        return y;
    }

private:
    std::size_t n_;
    std::size_t bw_;
    std::vector<double> a_;
    std::vector<double> inv_diag_;
};

// In-place banded Cholesky; returns false if the matrix is not positive definite.
bool cholesky(BandSpd& m) {
    const std::size_t n = m.size();
    m.inv_diag().assign(n, 0.0);
    const std::size_t bw = m.bandwidth();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j0 = i >= bw ? i - bw : 0;
        for (std::size_t j = j0; j <= i; ++j) {
            double sum = m.at(i, i - j);
            const std::size_t k0 = std::max(j0, j >= bw ? j - bw : 0);
            for (std::size_t k = k0; k < j; ++k) sum -= m.at(i, i - k) * m.at(j, j - k);
            if (j == i) {
                if (!(sum > 0.0)) return false;
                m.at(i, 0) = std::sqrt(sum);
                m.inv_diag()[i] = 1.0 / m.at(i, 0);
            } else {
                m.at(i, i - j) = sum * m.inv_diag()[j];
            }
        }
    }
    return true;
}

std::vector<double> cholesky_solve(const BandSpd& l, std::span<const double> b) {
    const std::size_t n = l.size();
    const std::size_t bw = l.bandwidth();
    std::vector<double> x(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
        double sum = x[i];
        for (std::size_t k = 1; k <= bw && k <= i; ++k) sum -= l.at(i, k) * x[i - k];
        x[i] = sum * l.inv_diag()[i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double sum = x[ii];
        for (std::size_t k = 1; k <= bw && ii + k < n; ++k) sum -= l.at(ii + k, k) * x[ii + k];
        x[ii] = sum * l.inv_diag()[ii];
    }
    return x;
}

struct Recursion {
    double a1;  // p1 + p2
    double a2;  // p1 * p2
    double gain;  // h[1]
};

Recursion recursion_for(const BatemanKernel& kernel, double fs) {
    const double p1 = std::exp(-1.0 / (kernel.tau1_s * fs));
    const double p2 = std::exp(-1.0 / (kernel.tau2_s * fs));
    return {p1 + p2, p1 * p2, (p1 - p2) / kernel.peak_value()};
}

// The deconvolution problem in interleaved variables u[2n] = tonic[n],
// u[2n+1] = phasic[n]. phasic[0] is pinned to zero so that the phasic part
// is exactly the causal convolution of the driver.
class Deconvolver {
public:
    // weights[k] is the L1 weight on driver sample k.
    Deconvolver(std::span<const double> y, const Recursion& rec, double gamma, std::vector<double> weights)
        : y_(y), n_(y.size()), m_(y.size() - 1), rec_(rec), gamma_(gamma), weights_(std::move(weights)),
          hess_(2 * y.size(), 4), factor_(2 * y.size(), 4) {}

    struct Result {
        std::vector<double> tonic;
        std::vector<double> driver;
        int iterations;
        bool converged;
    };

    Result solve(int max_iterations) {
        std::vector<double> u(2 * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) u[2 * i] = y_[i];
        const double ymax = std::max(1.0, *std::max_element(y_.begin(), y_.end()));
        // Slacks start near the size of a small driver sample; starting at 1
        // sends the phasic part far off and the tonic drifts to compensate.
        std::vector<double> s(m_, 1e-3 * ymax);
        std::vector<double> z(m_, 1.0);

        const double primal_tol = 1e-10 * ymax;
        // The smoothing term is evaluated with O(eps * gamma * |tonic|) roundoff,
        // which sets a floor on the attainable dual residual.
        const double dual_tol =
            std::max(1e-9 * ymax, 1024.0 * std::numeric_limits<double>::epsilon() * gamma_ * ymax);

        int it = 0;
        bool converged = false;
        for (; it < max_iterations; ++it) {
            const auto gx = constraint(u);
            std::vector<double> rp(m_);
            for (std::size_t k = 0; k < m_; ++k) rp[k] = gx[k] - s[k];
            const auto rd = dual_residual(u, z);
            double mu = 0.0;
            for (std::size_t k = 0; k < m_; ++k) mu += s[k] * z[k];
            mu /= static_cast<double>(m_);

            if (inf_norm(rp) < primal_tol && inf_norm(rd) < dual_tol && mu < 1e-13 * ymax) {
                converged = true;
                break;
            }

            std::vector<double> w(m_);
            for (std::size_t k = 0; k < m_; ++k) w[k] = z[k] / s[k];
            assemble(w);
            if (!factorize()) break;

            // Predictor (affine scaling) direction.
            std::vector<double> rc(m_);
            for (std::size_t k = 0; k < m_; ++k) rc[k] = s[k] * z[k];
            Step aff = direction(rd, rp, rc, s, z, w);
            const double alpha_aff = step_length(s, z, aff);
            double mu_aff = 0.0;
            for (std::size_t k = 0; k < m_; ++k)
                mu_aff += (s[k] + alpha_aff * aff.ds[k]) * (z[k] + alpha_aff * aff.dz[k]);
            mu_aff /= static_cast<double>(m_);
            const double sigma = std::pow(mu_aff / mu, 3.0);

            // Corrector with Mehrotra's second-order term.
            for (std::size_t k = 0; k < m_; ++k)
                rc[k] = s[k] * z[k] + aff.ds[k] * aff.dz[k] - sigma * mu;
            Step step = direction(rd, rp, rc, s, z, w);
            const double a = std::min(1.0, 0.995 * step_length(s, z, step));
            for (std::size_t i = 0; i < u.size(); ++i) u[i] += a * step.du[i];
            for (std::size_t k = 0; k < m_; ++k) {
                s[k] += a * step.ds[k];
                z[k] += a * step.dz[k];
            }
        }

        Result out;
        out.iterations = it;
        out.converged = converged;
        out.tonic.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) out.tonic[i] = u[2 * i];
        const auto gx = constraint(u);
        out.driver.assign(n_, 0.0);
        for (std::size_t k = 0; k < m_; ++k) out.driver[k] = gx[k];
        return out;
    }

private:
    struct Step {
        std::vector<double> du, dz, ds;
    };

    static double inf_norm(std::span<const double> v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }

    double phasic(std::span<const double> u, std::ptrdiff_t i) const {
        return i <= 0 ? 0.0 : u[2 * static_cast<std::size_t>(i) + 1];
    }

    // driver[k] = (r[k+1] - a1 r[k] + a2 r[k-1]) / gain, k = 0 .. n-2
    std::vector<double> constraint(std::span<const double> u) const {
        std::vector<double> g(m_);
        for (std::size_t k = 0; k < m_; ++k) {
            const auto i = static_cast<std::ptrdiff_t>(k);
            g[k] = (phasic(u, i + 1) - rec_.a1 * phasic(u, i) + rec_.a2 * phasic(u, i - 1)) / rec_.gain;
        }
        return g;
    }

    // Adds G^T v into the phasic slots of out.
    void add_constraint_transpose(std::span<const double> v, std::vector<double>& out, double scale) const {
        for (std::size_t k = 0; k < m_; ++k) {
            const double c = scale * v[k] / rec_.gain;
            out[2 * (k + 1) + 1] += c;
            if (k >= 1) out[2 * k + 1] -= rec_.a1 * c;
            if (k >= 2) out[2 * (k - 1) + 1] += rec_.a2 * c;
        }
    }

    std::vector<double> dual_residual(std::span<const double> u, std::span<const double> z) const {
        std::vector<double> rd(2 * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            const double e = u[2 * i] + phasic(u, static_cast<std::ptrdiff_t>(i)) - y_[i];
            rd[2 * i] = e;
            rd[2 * i + 1] = e;
        }
        for (std::size_t i = 2; i < n_; ++i) {
            const double d2 = u[2 * i] - 2.0 * u[2 * (i - 1)] + u[2 * (i - 2)];
            rd[2 * i] += gamma_ * d2;
            rd[2 * (i - 1)] -= 2.0 * gamma_ * d2;
            rd[2 * (i - 2)] += gamma_ * d2;
        }
        std::vector<double> coeff(m_);
        for (std::size_t k = 0; k < m_; ++k) coeff[k] = weights_[k] - z[k];
        add_constraint_transpose(coeff, rd, 1.0);
        rd[1] = 0.0;
        return rd;
    }

    void assemble(std::span<const double> w) {
        hess_.clear();
        for (std::size_t i = 0; i < n_; ++i) {
            hess_.add(2 * i, 2 * i, 1.0);
            if (i > 0) {
                hess_.add(2 * i + 1, 2 * i + 1, 1.0);
                hess_.add(2 * i + 1, 2 * i, 1.0);
            }
        }
        const std::size_t ti[3] = {0, 1, 2};
        const double tc[3] = {1.0, -2.0, 1.0};
        for (std::size_t i = 2; i < n_; ++i)
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = 0; b <= a; ++b)
                    hess_.add(2 * (i - ti[a]), 2 * (i - ti[b]), gamma_ * tc[a] * tc[b]);
        for (std::size_t k = 0; k < m_; ++k) {
            std::size_t idx[3];
            double c[3];
            std::size_t cnt = 0;
            idx[cnt] = 2 * (k + 1) + 1;
            c[cnt++] = 1.0 / rec_.gain;
            if (k >= 1) {
                idx[cnt] = 2 * k + 1;
                c[cnt++] = -rec_.a1 / rec_.gain;
            }
            if (k >= 2) {
                idx[cnt] = 2 * (k - 1) + 1;
                c[cnt++] = rec_.a2 / rec_.gain;
            }
            for (std::size_t a = 0; a < cnt; ++a)
                for (std::size_t b = 0; b <= a; ++b) hess_.add(idx[a], idx[b], w[k] * c[a] * c[b]);
        }
        hess_.at(1, 0) = 1.0;  // pinned phasic[0] has no other couplings
    }

    // Huge barrier weights can push the factorization past what double
    // precision resolves; a small diagonal shift keeps it usable and the
    // refinement steps below absorb the perturbation.
    bool factorize() {
        factor_ = hess_;
        if (cholesky(factor_)) return true;
        double scale = 0.0;
        for (std::size_t i = 0; i < hess_.size(); ++i) scale = std::max(scale, hess_.at(i, 0));
        for (double shift = 1e-14 * scale; shift <= 1e-6 * scale; shift *= 100.0) {
            factor_ = hess_;
            for (std::size_t i = 0; i < factor_.size(); ++i) factor_.at(i, 0) += shift;
            if (cholesky(factor_)) return true;
        }
        return false;
    }

    std::vector<double> solve_refined(std::span<const double> rhs) const {
        auto x = cholesky_solve(factor_, rhs);
        for (int pass = 0; pass < kRefinePasses; ++pass) {
            const auto ax = hess_.multiply(x);
            std::vector<double> res(rhs.size());
            for (std::size_t i = 0; i < res.size(); ++i) res[i] = rhs[i] - ax[i];
            const auto dx = cholesky_solve(factor_, res);
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
        }
        return x;
    }

    Step direction(std::span<const double> rd, std::span<const double> rp, std::span<const double> rc,
                   std::span<const double> s, std::span<const double> z, std::span<const double> w) const {
        // (Q + G^T W G) du = -rd - G^T (W rp + S^-1 rc)
        std::vector<double> rhs(2 * n_);
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = -rd[i];
        std::vector<double> v(m_);
        for (std::size_t k = 0; k < m_; ++k) v[k] = w[k] * rp[k] + rc[k] / s[k];
        add_constraint_transpose(v, rhs, -1.0);
        rhs[1] = 0.0;

        Step st;
        st.du = solve_refined(rhs);
        const auto gdu = constraint(st.du);
        st.dz.resize(m_);
        st.ds.resize(m_);
        for (std::size_t k = 0; k < m_; ++k) {
            st.dz[k] = -w[k] * (rp[k] + gdu[k]) - rc[k] / s[k];
            st.ds[k] = -(rc[k] + s[k] * st.dz[k]) / z[k];
        }
        return st;
    }

    double step_length(std::span<const double> s, std::span<const double> z, const Step& st) const {
        double alpha = 1.0;
        for (std::size_t k = 0; k < m_; ++k) {
            if (st.ds[k] < 0.0) alpha = std::min(alpha, -s[k] / st.ds[k]);
            if (st.dz[k] < 0.0) alpha = std::min(alpha, -z[k] / st.dz[k]);
        }
        return alpha;
    }

    std::span<const double> y_;
    std::size_t n_;
    std::size_t m_;
    Recursion rec_;
    double gamma_;
    std::vector<double> weights_;
    BandSpd hess_;
    BandSpd factor_;
};

}  // namespace

void BatemanKernel::validate() const {
    if (!(tau2_s > 0.0) || !(tau1_s > tau2_s))
        throw ValidationError("Bateman kernel needs tau1 > tau2 > 0");
    if (!(duration_s > 0.0)) throw ValidationError("Bateman kernel duration must be positive");
}

double BatemanKernel::peak_time_s() const {
    return std::log(tau1_s / tau2_s) * tau1_s * tau2_s / (tau1_s - tau2_s);
}

double BatemanKernel::peak_value() const {
    const double t = peak_time_s();
    return std::exp(-t / tau1_s) - std::exp(-t / tau2_s);
}

double BatemanKernel::operator()(double t) const {
    if (t < 0.0) return 0.0;
    return (std::exp(-t / tau1_s) - std::exp(-t / tau2_s)) / peak_value();
}

std::vector<double> BatemanKernel::sampled(double fs_hz) const {
    validate();
    const auto count = static_cast<std::size_t>(std::floor(duration_s * fs_hz)) + 1;
    std::vector<double> h(count);
    for (std::size_t k = 0; k < count; ++k) h[k] = (*this)(static_cast<double>(k) / fs_hz);
    return h;
}

std::vector<double> convolve_driver(std::span<const double> driver, const BatemanKernel& kernel,
                                    double fs_hz) {
    kernel.validate();
    const auto rec = recursion_for(kernel, fs_hz);
    std::vector<double> r(driver.size(), 0.0);
    for (std::size_t n = 1; n < r.size(); ++n) {
        double v = rec.a1 * r[n - 1] + rec.gain * driver[n - 1];
        if (n >= 2) v -= rec.a2 * r[n - 2];
        r[n] = v;
    }
    return r;
}

EdaDecomposition decompose(const TimeSeries& gsr, const BatemanKernel& kernel, const DecomposeConfig& cfg) {
    if (gsr.kind() != ChannelKind::GSR)
        throw ValidationError("decompose expects a GSR channel, got " + std::string(to_string(gsr.kind())));
    kernel.validate();
    if (gsr.duration_s() < kMinDuration) throw ProcessingError("decomposition needs at least 30 s of GSR");
    const auto y = gsr.values();
    for (double v : y)
        if (v < 0.0) throw ValidationError("negative skin conductance in GSR input");
    if (!(cfg.tonic_cutoff_hz > 0.0) || !(cfg.lambda >= 0.0))
        throw ValidationError("invalid decomposition configuration");

    const double fs = gsr.sampling_rate_hz();
    const double w = 2.0 * std::sin(std::numbers::pi * cfg.tonic_cutoff_hz / fs);
    const double gamma = 1.0 / std::pow(w, 4.0);

    const auto rec = recursion_for(kernel, fs);
    const std::size_t m = y.size() - 1;
    auto run = [&](std::vector<double> weights) {
        Deconvolver solver(y, rec, gamma, std::move(weights));
        auto r = solver.solve(cfg.max_iterations);
        if (!r.converged)
            throw ProcessingError("GSR deconvolution did not converge after " + std::to_string(r.iterations) +
                                  " iterations");
        return r;
    };

    // The penalty weighs the driver as a rate (uS/s), which keeps the shrinkage
    // of response amplitudes independent of the sampling rate.
    const double weight = cfg.lambda * fs;
    auto result = run(std::vector<double>(m, weight));
    if (weight > 0.0) {
        // Debias: refit with the penalty lifted on the active samples (and
        // their neighbours) and raised elsewhere, so amplitudes and the
        // reconstruction are not shrunk.
        std::vector<double> weights(m, kOffSupportFactor * weight);
        for (std::size_t k = 0; k < m; ++k) {
            if (!(result.driver[k] > kSupportLevel)) continue;
            const std::size_t lo = k >= kSupportPad ? k - kSupportPad : 0;
            const std::size_t hi = std::min(m, k + kSupportPad + 1);
            for (std::size_t j = lo; j < hi; ++j) weights[j] = 0.0;
        }
        const int first = result.iterations;
        result = run(std::move(weights));
        result.iterations += first;
    }

    for (double& d : result.driver) d = std::max(d, 0.0);
    auto phasic = convolve_driver(result.driver, kernel, fs);
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double e = y[i] - result.tonic[i] - phasic[i];
        acc += e * e;
    }
    return EdaDecomposition{gsr.with_values(std::move(result.tonic)), gsr.with_values(std::move(phasic)),
                            gsr.with_values(std::move(result.driver)), result.iterations,
                            std::sqrt(acc / static_cast<double>(y.size()))};
}

TimeSeries reconstruct(const EdaDecomposition& dec, const BatemanKernel& kernel) {
    if (dec.tonic.size() != dec.driver.size() ||
        dec.tonic.sampling_rate_hz() != dec.driver.sampling_rate_hz())
        throw ProcessingError("tonic and driver lengths or rates differ");
    const auto conv = convolve_driver(dec.driver.values(), kernel, dec.driver.sampling_rate_hz());
    std::vector<double> out(conv.size());
    const auto t = dec.tonic.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = t[i] + conv[i];
    return dec.tonic.with_values(std::move(out));
}

std::vector<ScrEvent> detect_scr_events(const EdaDecomposition& dec, const BatemanKernel& kernel,
                                        const ScrConfig& cfg) {
    const auto d = dec.driver.values();
    const auto p = dec.phasic.values();
    if (p.size() != d.size()) throw ProcessingError("phasic and driver lengths differ");
    const double fs = dec.driver.sampling_rate_hz();
    const std::size_t n = d.size();
    const double dip_tol = cfg.floor_fraction * cfg.amplitude_threshold_uS;
    const auto merge_gap = static_cast<std::size_t>(std::llround(cfg.merge_gap_s * fs));

    // Rises of the phasic curve, trough to peak. The driver is nonnegative,
    // so a response can only be interrupted by a later one, never dented.
    struct Rise {
        std::size_t trough, peak;
    };
    std::vector<Rise> rises;
    for (std::size_t i = 0; i + 1 < n;) {
        if (!(p[i + 1] - p[i] > kRiseEps)) {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j + 1 < n && p[j + 1] - p[j] > kRiseEps) ++j;
        if (!rises.empty()) {
            auto& last = rises.back();
            if (i - last.peak <= merge_gap && p[last.peak] - p[i] < dip_tol && p[j] >= p[last.peak]) {
                last.peak = j;
                i = j;
                continue;
            }
        }
        rises.push_back({i, j});
        i = j;
    }

    // Amplitude of the response produced by the driver inside the rise alone,
    // so a preceding response's decay does not eat into it.
    const auto rec = recursion_for(kernel, fs);
    const auto tail = static_cast<std::size_t>(std::ceil(2.0 * kernel.peak_time_s() * fs));
    std::vector<ScrEvent> events;
    std::size_t prev_peak = 0;
    for (const auto& r : rises) {
        // A response's driver can start a few samples before the phasic
        // curve turns upward, while a preceding decay still dominates.
        std::size_t start = r.trough;
        while (start > prev_peak && r.trough - start < merge_gap && d[start - 1] > kSupportLevel) --start;
        prev_peak = r.peak;

        const std::size_t stop = std::min(n, r.peak + tail);
        double r1 = 0.0;
        double r2 = 0.0;
        double best = 0.0;
        double dmax = 0.0;
        for (std::size_t k = start + 1; k < stop; ++k) {
            const double in = k - 1 < r.peak ? d[k - 1] : 0.0;
            dmax = std::max(dmax, in);
            const double v = rec.a1 * r1 - rec.a2 * r2 + rec.gain * in;
            r2 = r1;
            r1 = v;
            best = std::max(best, v);
        }
        if (best < cfg.amplitude_threshold_uS) continue;
        std::size_t onset = start;
        while (onset < r.peak && d[onset] < 0.1 * dmax) ++onset;
        events.push_back({dec.driver.time_at(onset), dec.driver.time_at(r.peak), best});
    }

    // Keep the larger of any two events closer than the minimum separation.
    std::vector<ScrEvent> kept;
    for (const auto& e : events) {
        if (!kept.empty() && e.onset_s - kept.back().onset_s < cfg.min_separation_s) {
            if (e.amplitude_uS > kept.back().amplitude_uS) kept.back() = e;
            continue;
        }
        kept.push_back(e);
    }
    return kept;
}

std::string format_events(const std::vector<ScrEvent>& events) {
    std::string out = "onset_s,peak_s,amplitude_uS\n";
    for (const auto& e : events) {
        out += textio::format_double(e.onset_s) + "," + textio::format_double(e.peak_s) + "," +
               textio::format_double(e.amplitude_uS) + "\n";
    }
    return out;
}

std::vector<ScrEvent> parse_events(std::string_view text) {
    const auto lines = textio::split(text, '\n');
    if (lines.empty() || textio::trim(lines.front()) != "onset_s,peak_s,amplitude_uS")
        throw ValidationError("SCR event file: unexpected header");
    std::vector<ScrEvent> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto line = textio::trim(lines[i]);
        if (line.empty()) continue;
        const auto cols = textio::split(line, ',');
        ScrEvent e{};
        if (cols.size() != 3 || !textio::parse_double(cols[0], e.onset_s) ||
            !textio::parse_double(cols[1], e.peak_s) || !textio::parse_double(cols[2], e.amplitude_uS))
            throw ValidationError("SCR event file: malformed line " + std::to_string(i + 1));
        out.push_back(e);
    }
    return out;
}

void write_events(const std::vector<ScrEvent>& events, const std::filesystem::path& path) {
    textio::write_file(path, format_events(events));
}

std::vector<ScrEvent> load_events(const std::filesystem::path& path) {
    return parse_events(textio::read_file(path));
}

}  // namespace perfcal::eda
