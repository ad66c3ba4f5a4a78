#include "nhirota/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nhirota/io.hpp"
#include "nhirota/ode.hpp"
#include "nhirota/parallel.hpp"

namespace nh {
namespace {

// Interpolated potential restricted to its numerical support.
struct Sampler {
    UniformInterpolant up, lo;
    double xs = 0.0, xe = 0.0;  // integration interval
    bool empty = true;

    explicit Sampler(const PotentialField& p)
        : up(p.grid.x_min, p.grid.h(), p.upper), lo(p.grid.x_min, p.grid.h(), p.lower) {
        const std::size_t n = p.grid.n;
        double peak = 0.0;
        for (std::size_t j = 0; j < n; ++j) peak = std::max({peak, std::abs(p.upper[j]), std::abs(p.lower[j])});
        if (peak == 0.0) return;
        const double tiny = 1e-17 * peak;
        std::size_t jl = n, jr = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(p.upper[j]) > tiny || std::abs(p.lower[j]) > tiny) {
                jl = std::min(jl, j);
                jr = std::max(jr, j);
            }
        }
        const double h = p.grid.h();
        xs = std::max(p.grid.x_min, p.grid.x(jl) - 4.0 * h);
        xe = std::min(p.grid.x(n - 1), p.grid.x(jr) + 4.0 * h);
        xs = std::min(xs, 0.0);
        xe = std::max(xe, 0.0);
        empty = false;
    }
};

using V4 = std::array<cplx, 4>;
using V2 = std::array<cplx, 2>;

V4 identity4() { return {cplx(1.0), cplx(0.0), cplx(0.0), cplx(1.0)}; }

// Y' = Qt Y with Qt = [[0, u e^{2izx}], [lower e^{-2izx}, 0]].
V4 integrate_y(const Sampler& s, double z, double from, double to, const JostOptions& opt) {
    auto rhs = [&](double x, const V4& y, V4& dy) {
        const cplx e = std::exp(cplx(0.0, 2.0 * z * x));
        const cplx q12 = s.up(x) * e;
        const cplx q21 = s.lo(x) / e;
        dy[0] = q12 * y[2];
        dy[1] = q12 * y[3];
        dy[2] = q21 * y[0];
        dy[3] = q21 * y[1];
    };
    return dopri5<4>(rhs, from, to, identity4(), opt.atol, opt.rtol);
}

Mat2 to_mat(const V4& y) {
    Mat2 m;
    m << y[0], y[1], y[2], y[3];
    return m;
}

// Y(x) for the requested side; Y = I outside the support.
Mat2 y_at(const Sampler& s, double z, Side side, double x, const JostOptions& opt) {
    if (s.empty) return Mat2::Identity();
    if (side == Side::left) {
        if (x <= s.xs) return Mat2::Identity();
        return to_mat(integrate_y(s, z, s.xs, std::min(x, s.xe), opt));
    }
    if (x >= s.xe) return Mat2::Identity();
    return to_mat(integrate_y(s, z, s.xe, std::max(x, s.xs), opt));
}

void check_finite(const CVec& v, const char* what) {
    for (const auto& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw NumericalError(std::string("non-finite potential sample in ") + what);
}

}  // namespace

PotentialField build_potential(const ComplexField& u0, int kappa) {
    if (kappa != 1 && kappa != -1) throw ConfigError("kappa must be +1 or -1");
    u0.grid.validate();
    if (u0.samples.size() != u0.grid.n) throw ConfigError("field size does not match its grid");
    check_finite(u0.samples, "initial datum");
    u0.check_decay();
    PotentialField p;
    p.grid = u0.grid;
    p.kappa = kappa;
    p.upper = u0.samples;
    p.lower.resize(u0.grid.n);
    for (std::size_t j = 0; j < u0.grid.n; ++j) p.lower[j] = double(kappa) * std::conj(u0.samples[u0.grid.reflect(j)]);
    return p;
}

Mat2 jost_solve_at(const PotentialField& p, double z, Side side, double x, const JostOptions& opt) {
    const Sampler s(p);
    const Mat2 y = y_at(s, z, side, x, opt);
    const cplx e = std::exp(cplx(0.0, 2.0 * z * x));
    Mat2 phi = y;
    phi(0, 1) = y(0, 1) / e;
    phi(1, 0) = y(1, 0) * e;
    return phi;
}

Mat2 jost_solve(const PotentialField& p, double z, Side side, const JostOptions& opt) {
    return jost_solve_at(p, z, side, 0.0, opt);
}

Mat2 scattering_at(const PotentialField& p, double z, double x_match, const JostOptions& opt) {
    const Mat2 pm = jost_solve_at(p, z, Side::left, x_match, opt);
    const Mat2 pp = jost_solve_at(p, z, Side::right, x_match, opt);
    // Cramer's rule: adj(Phi+) Phi-, then undo the gauge at x_match.
    Mat2 adj;
    adj << pp(1, 1), -pp(0, 1), -pp(1, 0), pp(0, 0);
    Mat2 s = adj * pm;
    const cplx e = std::exp(cplx(0.0, 2.0 * z * x_match));
    s(0, 1) *= e;
    s(1, 0) /= e;
    return s;
}

cplx s11_complex(const PotentialField& p, cplx z, const JostOptions& opt) {
    const Sampler s(p);
    if (s.empty) return 1.0;
    const cplx iz2 = 2.0 * kI * z;
    auto left = [&](double x, const V2& y, V2& dy) {
        dy[0] = s.up(x) * y[1];
        dy[1] = s.lo(x) * y[0] + iz2 * y[1];
    };
    auto right = [&](double x, const V2& y, V2& dy) {
        dy[0] = -iz2 * y[0] + s.up(x) * y[1];
        dy[1] = s.lo(x) * y[0];
    };
    const V2 ab = dopri5<2>(left, s.xs, 0.0, V2{cplx(1.0), cplx(0.0)}, opt.atol, opt.rtol);
    const V2 cd = dopri5<2>(right, s.xe, 0.0, V2{cplx(0.0), cplx(1.0)}, opt.atol, opt.rtol);
    return ab[0] * cd[1] - cd[0] * ab[1];
}

RVec uniform_zgrid(double Z, std::size_t nz) {
    if (nz < 2 || !(Z > 0.0)) throw ConfigError("spectral grid needs Z > 0 and at least 2 points");
    RVec g(nz);
    for (std::size_t i = 0; i < nz; ++i) g[i] = -Z + 2.0 * Z * double(i) / double(nz - 1);
    if (nz % 2 == 1) g[nz / 2] = 0.0;
    return g;
}

ScatteringData scattering_matrix(const PotentialField& p, const RVec& zgrid, const Params& params,
                                 const JostOptions& opt) {
    params.validate();
    for (std::size_t i = 0; i < zgrid.size(); ++i) {
        if (!std::isfinite(zgrid[i])) throw ConfigError("spectral grid contains a non-finite value");
        if (i && zgrid[i] <= zgrid[i - 1]) throw ConfigError("spectral grid must be strictly increasing");
    }
    if (params.kappa != p.kappa) throw ConfigError("kappa of the potential and the parameters differ");
    ScatteringData sd;
    sd.zgrid = zgrid;
    sd.kappa = p.kappa;
    sd.alpha = params.alpha;
    sd.beta = params.beta;
    const std::size_t n = zgrid.size();
    sd.s11.resize(n);
    sd.s12.resize(n);
    sd.s21.resize(n);
    sd.s22.resize(n);
    sd.det_flag.assign(n, 0);
    parallel_for(n, [&](std::size_t i) {
        const Mat2 s = scattering_at(p, zgrid[i], 0.0, opt);
        sd.s11[i] = s(0, 0);
        sd.s12[i] = s(0, 1);
        sd.s21[i] = s(1, 0);
        sd.s22[i] = s(1, 1);
        sd.det_flag[i] = std::abs(s.determinant() - 1.0) > opt.det_tol ? 1 : 0;
    });
    return sd;
}

ScatteringData reflection_coefficients(ScatteringData sd, double threshold) {
    const std::size_t n = sd.size();
    sd.r.resize(n);
    sd.rtilde.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(sd.s11[i]) < threshold || std::abs(sd.s22[i]) < threshold)
            throw AssumptionError("spectral singularity: |s11| or |s22| below " + fmt17(threshold) +
                                  " at z = " + fmt17(sd.zgrid[i]));
        sd.r[i] = sd.s21[i] / sd.s11[i];
        sd.rtilde[i] = double(sd.kappa) * sd.s12[i] / sd.s22[i];
    }
    return sd;
}

ScatteringData evolve_reflection(ScatteringData sd, double t0) {
    if (t0 < 0.0) throw ConfigError("evolve_reflection: t0 must be nonnegative");
    for (std::size_t i = 0; i < sd.size(); ++i) {
        const double z = sd.zgrid[i];
        const double phi = (4.0 * sd.alpha * z * z + 8.0 * sd.beta * z * z * z) * t0;
        const cplx e = std::exp(cplx(0.0, phi));
        if (i < sd.r.size()) sd.r[i] *= e;
        if (i < sd.rtilde.size()) sd.rtilde[i] /= e;
    }
    sd.time += t0;
    return sd;
}

ScatteringResiduals scattering_residuals(const ScatteringData& sd) {
    ScatteringResiduals res;
    const std::size_t n = sd.size();
    const double k = double(sd.kappa);
    for (std::size_t i = 0; i < n; ++i)
        res.det = std::max(res.det, std::abs(sd.s11[i] * sd.s22[i] - sd.s12[i] * sd.s21[i] - 1.0));
    res.symmetric_grid = true;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(sd.zgrid[i] + sd.zgrid[n - 1 - i]) > 1e-12 * (1.0 + std::abs(sd.zgrid[i])))
            res.symmetric_grid = false;
    if (res.symmetric_grid) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t m = n - 1 - i;
            res.sym11 = std::max(res.sym11, std::abs(sd.s11[i] - std::conj(sd.s11[m])));
            res.sym22 = std::max(res.sym22, std::abs(sd.s22[i] - std::conj(sd.s22[m])));
            res.sym12 = std::max(res.sym12, std::abs(sd.s12[i] - k * std::conj(sd.s21[m])));
        }
    } else {
        res.sym11 = res.sym22 = res.sym12 = std::nan("");
    }
    if (sd.r.size() == n && sd.rtilde.size() == n) {
        for (std::size_t i = 0; i < n; ++i)
            res.identity = std::max(res.identity,
                                    std::abs(1.0 - k * sd.r[i] * sd.rtilde[i] - 1.0 / (sd.s11[i] * sd.s22[i])));
    } else {
        res.identity = std::nan("");
    }
    return res;
}

double s11_winding(const PotentialField& p, const WindingOptions& w, const JostOptions& opt) {
    const cplx corners[5] = {cplx(-w.half_width, 0.0), cplx(w.half_width, 0.0), cplx(w.half_width, w.height),
                             cplx(-w.half_width, w.height), cplx(-w.half_width, 0.0)};
    double total = 0.0;
    std::function<void(cplx, cplx, cplx, cplx, int)> seg = [&](cplx za, cplx fa, cplx zb, cplx fb, int depth) {
        const double d = std::arg(fb / fa);
        if (std::abs(d) > 0.5 && depth < 14) {
            const cplx zm = 0.5 * (za + zb);
            const cplx fm = s11_complex(p, zm, opt);
            seg(za, fa, zm, fm, depth + 1);
            seg(zm, fm, zb, fb, depth + 1);
            return;
        }
        total += d;
    };
    for (int e = 0; e < 4; ++e) {
        cplx za = corners[e];
        cplx fa = s11_complex(p, za, opt);
        for (int k = 1; k <= w.samples_per_edge; ++k) {
            const cplx zb = corners[e] + (corners[e + 1] - corners[e]) * (double(k) / w.samples_per_edge);
            const cplx fb = s11_complex(p, zb, opt);
            seg(za, fa, zb, fb, 0);
            za = zb;
            fa = fb;
        }
    }
    return total / (2.0 * kPi);
}

AssumptionReport validate_assumptions(const ScatteringData& sd, const PotentialField* p, const WindingOptions& wopt,
                                      const JostOptions& opt) {
    const std::size_t n = sd.size();
    if (sd.r.size() != n || sd.rtilde.size() != n)
        throw ConfigError("validate_assumptions: reflection coefficients not populated");
    AssumptionReport rep;
    rep.arg_margin.resize(n);
    rep.im_nu_margin.resize(n);
    rep.min_arg_margin = kPi;
    rep.min_im_nu_margin = 0.5;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx v = 1.0 - double(sd.kappa) * sd.r[i] * sd.rtilde[i];
        const double a = std::arg(v);
        const double im_nu = -a / (2.0 * kPi);
        rep.arg_margin[i] = kPi - std::abs(a);
        rep.im_nu_margin[i] = 0.5 - std::abs(im_nu);
        if (v == 0.0) rep.arg_margin[i] = rep.im_nu_margin[i] = -1.0;
        rep.min_arg_margin = std::min(rep.min_arg_margin, rep.arg_margin[i]);
        rep.min_im_nu_margin = std::min(rep.min_im_nu_margin, rep.im_nu_margin[i]);
        rep.max_im_nu = std::max(rep.max_im_nu, std::abs(im_nu));
    }
    if (!(rep.min_arg_margin > 0.0)) rep.failures.push_back("arg(1 - kappa r rtilde) reaches +-pi");
    if (!(rep.min_im_nu_margin > 0.0)) rep.failures.push_back("|Im nu| >= 1/2");
    if (p) {
        rep.winding_raw = s11_winding(*p, wopt, opt);
        rep.winding = int(std::lround(rep.winding_raw));
        if (*rep.winding != 0) rep.failures.push_back("s11 has zeros in the upper half plane (discrete spectrum)");
    }
    rep.pass = rep.failures.empty();
    return rep;
}

}  // namespace nh
