#include "nhirota/pde.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "nhirota/io.hpp"

namespace nh {
namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Owned in-place complex FFT of fixed size; unnormalized forward, normalized inverse.
class Fft {
  public:
    explicit Fft(std::size_t n) : n_(n) {
        buf_ = fftw_alloc_complex(n);
        std::lock_guard<std::mutex> lock(planner_mutex());
        fwd_ = fftw_plan_dft_1d(int(n), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(int(n), buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    void forward(const CVec& in, CVec& out) { run(fwd_, in, out, 1.0); }
    void inverse(const CVec& in, CVec& out) { run(bwd_, in, out, 1.0 / double(n_)); }

  private:
    void run(fftw_plan p, const CVec& in, CVec& out, double scale) {
        auto* b = reinterpret_cast<cplx*>(buf_);
        std::copy(in.begin(), in.end(), b);
        fftw_execute(p);
        out.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = b[i] * scale;
    }
    std::size_t n_;
    fftw_complex* buf_;
    fftw_plan fwd_, bwd_;
};

// Wavenumbers in FFT order; the Nyquist entry is returned separately for odd derivatives.
RVec wavenumbers(const GridSpec1D& g) {
    const std::size_t n = g.n;
    const double L = g.x_max - g.x_min;
    RVec k(n);
    for (std::size_t j = 0; j < n; ++j) {
        const long m = j <= n / 2 ? long(j) : long(j) - long(n);
        k[j] = 2.0 * kPi * double(m) / L;
    }
    return k;
}

// Spectral operators on one grid.
struct Spectral {
    std::size_t n;
    RVec k;       // even-derivative wavenumbers (Nyquist kept)
    RVec k_odd;   // odd-derivative wavenumbers (Nyquist zeroed)
    std::vector<double> mask;  // dealias mask
    Fft fft;

    Spectral(const GridSpec1D& g, double dealias) : n(g.n), k(wavenumbers(g)), k_odd(k), mask(g.n, 1.0), fft(g.n) {
        k_odd[n / 2] = 0.0;
        const double kmax = std::abs(k[n / 2]);
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(k[j]) > dealias * kmax + 1e-12) mask[j] = 0.0;
    }

    // Linear symbol of u_t = i alpha u_xx - beta u_xxx.
    cplx symbol(std::size_t j, double alpha, double beta) const {
        return kI * (beta * k_odd[j] * k_odd[j] * k_odd[j] - alpha * k[j] * k[j]);
    }
};

void reflect_conj_into(const CVec& u, CVec& w) {
    const std::size_t n = u.size();
    w.resize(n);
    w[0] = std::conj(u[0]);
    for (std::size_t j = 1; j < n; ++j) w[j] = std::conj(u[n - j]);
}

double max_abs(const CVec& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

void EvolutionConfig::validate() const {
    grid.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("evolution: dt must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("evolution: t_end must be positive");
    if (!std::isfinite(alpha) || !std::isfinite(beta)) throw ConfigError("evolution: alpha, beta must be finite");
    if (kappa != 1 && kappa != -1) throw ConfigError("evolution: kappa must be +1 or -1");
    if (!(dealias > 0.0 && dealias <= 1.0)) throw ConfigError("evolution: dealias must lie in (0, 1]");
    for (std::size_t i = 0; i < output_times.size(); ++i) {
        if (output_times[i] < 0.0 || output_times[i] > t_end + 1e-12)
            throw ConfigError("evolution: output time outside [0, t_end]");
        if (i && output_times[i] <= output_times[i - 1])
            throw ConfigError("evolution: output times must be strictly increasing");
    }
}

double EvolutionConfig::stiffness(double u_max) const {
    if (linear) return 0.0;
    const double kmax = dealias * kPi / grid.h();
    const double u2 = u_max * u_max;
    return dt * (2.0 * std::abs(alpha) * u2 + 6.0 * std::abs(beta) * u2 * kmax);
}

ComplexField reflect_conjugate(const ComplexField& f) {
    f.grid.validate();
    if (f.samples.size() != f.grid.n) throw ConfigError("field size does not match its grid");
    ComplexField out = f;
    reflect_conj_into(f.samples, out.samples);
    return out;
}

cplx quasi_power(const ComplexField& f) {
    cplx s = 0.0;
    const std::size_t n = f.samples.size();
    for (std::size_t j = 0; j < n; ++j) s += f.samples[j] * std::conj(f.samples[j == 0 ? 0 : n - j]);
    return s * f.grid.h();
}

ComplexField linear_propagate(const ComplexField& u0, const EvolutionConfig& cfg, double t) {
    Spectral sp(u0.grid, 1.0);
    CVec v;
    sp.fft.forward(u0.samples, v);
    for (std::size_t j = 0; j < sp.n; ++j) v[j] *= std::exp(sp.symbol(j, cfg.alpha, cfg.beta) * t);
    ComplexField out = u0;
    sp.fft.inverse(v, out.samples);
    out.time = u0.time + t;
    return out;
}

Trajectory evolve(const ComplexField& u0, const EvolutionConfig& cfg) {
    cfg.validate();
    if (u0.grid.n != cfg.grid.n || std::abs(u0.grid.x_max - cfg.grid.x_max) > 1e-12 * cfg.grid.x_max)
        throw ConfigError("evolution: initial field is not on the configured grid");
    if (cfg.require_decay) u0.check_decay();
    const double stiff = cfg.stiffness(max_abs(u0.samples));
    if (stiff > cfg.stability_limit)
        throw ConfigError("evolution: dt too large for the nonlinear stability bound (dt*rate = " + fmt17(stiff) + ")");

    RVec outs = cfg.output_times;
    if (outs.empty()) outs = {0.0, cfg.t_end};

    const std::size_t n = cfg.grid.n;
    Spectral sp(cfg.grid, cfg.dealias);
    const double a = cfg.alpha, b = cfg.beta, kap = double(cfg.kappa);

    CVec u(n), ux(n), w(n), nl(n), tmp(n);
    // Fourier-space nonlinear term of v.
    auto N = [&](const CVec& v, CVec& out) {
        out.assign(n, 0.0);
        if (cfg.linear) return;
        sp.fft.inverse(v, u);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = kI * sp.k_odd[j] * v[j];
        sp.fft.inverse(tmp, ux);
        reflect_conj_into(u, w);
        for (std::size_t j = 0; j < n; ++j)
            nl[j] = -2.0 * kI * a * kap * w[j] * u[j] * u[j] + 6.0 * b * kap * u[j] * w[j] * ux[j];
        sp.fft.forward(nl, out);
        for (std::size_t j = 0; j < n; ++j) out[j] *= sp.mask[j];
    };

    Trajectory traj;
    CVec v;
    sp.fft.forward(u0.samples, v);
    double t = u0.time;
    CVec E(n), E2(n), ka(n), kb(n), kc(n), kd(n), st(n);
    double cached_h = -1.0;
    auto emit = [&](double time) {
        ComplexField f;
        f.grid = cfg.grid;
        f.time = time;
        sp.fft.inverse(v, f.samples);
        traj.quasi_power.push_back(quasi_power(f));
        traj.frames.push_back(std::move(f));
    };
    for (double target : outs) {
        const double span = target - t;
        if (span < -1e-12) throw ConfigError("evolution: output time precedes the initial time");
        const std::size_t steps = span > 1e-14 ? std::size_t(std::ceil(span / cfg.dt - 1e-9)) : 0;
        const double h = steps ? span / double(steps) : 0.0;
        if (steps && h != cached_h) {
            for (std::size_t j = 0; j < n; ++j) {
                E[j] = std::exp(sp.symbol(j, a, b) * (h / 2.0));
                E2[j] = E[j] * E[j];
            }
            cached_h = h;
        }
        for (std::size_t s = 0; s < steps; ++s) {
            N(v, ka);
            for (std::size_t j = 0; j < n; ++j) {
                ka[j] *= h;
                st[j] = E[j] * (v[j] + 0.5 * ka[j]);
            }
            N(st, kb);
            for (std::size_t j = 0; j < n; ++j) {
                kb[j] *= h;
                st[j] = E[j] * v[j] + 0.5 * kb[j];
            }
            N(st, kc);
            for (std::size_t j = 0; j < n; ++j) {
                kc[j] *= h;
                st[j] = E2[j] * v[j] + E[j] * kc[j];
            }
            N(st, kd);
            double vmax = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                v[j] = E2[j] * v[j] + (E2[j] * ka[j] + 2.0 * E[j] * (kb[j] + kc[j]) + h * kd[j]) / 6.0;
                vmax += std::abs(v[j]);
            }
            ++traj.steps;
            // sum |v_k| / n bounds max |u|; check the actual maximum only when that bound is large.
            if (!std::isfinite(vmax) || vmax / double(n) > cfg.blowup) {
                sp.fft.inverse(v, u);
                const double m = max_abs(u);
                if (!std::isfinite(m) || m > cfg.blowup)
                    throw NumericalError("evolution blow-up: max|u| = " + fmt17(m) + " at t = " +
                                         fmt17(t + h * double(s + 1)));
            }
        }
        t = target;
        emit(t);
    }
    for (const auto& p : traj.quasi_power) traj.quasi_power_drift = std::max(traj.quasi_power_drift, std::abs(p - traj.quasi_power.front()));
    return traj;
}

RVec residual(const Trajectory& traj, const EvolutionConfig& cfg) {
    const std::size_t m = traj.frames.size();
    if (m < 3) throw ConfigError("residual needs at least three output frames");
    const GridSpec1D& g = traj.frames.front().grid;
    const std::size_t n = g.n;
    Spectral sp(g, 1.0);
    const double a = cfg.alpha, b = cfg.beta, kap = double(cfg.kappa);
    RVec out;
    CVec v, d1, d2, d3, tmp(n), w;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const ComplexField& f = traj.frames[i];
        const double t0 = traj.frames[i - 1].time, t1 = f.time, t2 = traj.frames[i + 1].time;
        const double h0 = t1 - t0, h1 = t2 - t1;
        sp.fft.forward(f.samples, v);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = kI * sp.k_odd[j] * v[j];
        sp.fft.inverse(tmp, d1);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = -sp.k[j] * sp.k[j] * v[j];
        sp.fft.inverse(tmp, d2);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = -kI * sp.k_odd[j] * sp.k_odd[j] * sp.k_odd[j] * v[j];
        sp.fft.inverse(tmp, d3);
        reflect_conj_into(f.samples, w);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const cplx um = traj.frames[i - 1].samples[j], u = f.samples[j], up = traj.frames[i + 1].samples[j];
            // Second-order three-point derivative on a possibly nonuniform stencil.
            const cplx ut = (-h1 / (h0 * (h0 + h1))) * um + ((h1 - h0) / (h0 * h1)) * u + (h0 / (h1 * (h0 + h1))) * up;
            const cplx r = kI * ut + a * (d2[j] - 2.0 * kap * w[j] * u * u) + kI * b * (d3[j] - 6.0 * kap * u * w[j] * d1[j]);
            acc += std::norm(r);
        }
        out.push_back(std::sqrt(acc * g.h()));
    }
    return out;
}

}  // namespace nh
