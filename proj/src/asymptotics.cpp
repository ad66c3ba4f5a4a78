#include "nhirota/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/interpolators/makima.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nhirota/io.hpp"
#include "nhirota/specfun.hpp"

namespace nh {
namespace {

using boost::math::interpolators::makima;
using boost::math::quadrature::gauss_kronrod;

constexpr unsigned kQuadDepth = 18;
constexpr double kQuadTol = 1e-10;

template <class F>
cplx integrate(F f, double a, double b) {
    if (a == b) return 0.0;
    double err = 0.0;
    // unit offset: turns the relative tolerance into an absolute floor for near-zero integrands
    auto g = [&](double s) { return f(s) + 1.0; };
    const cplx v = gauss_kronrod<double, 31>::integrate(g, a, b, kQuadDepth, kQuadTol, &err) - (b - a);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericalError("quadrature produced a non-finite value");
    if (err > 1e-8 * std::max(1.0, std::abs(v))) throw NumericalError("quadrature did not converge (estimate " + fmt17(err) + ")");
    return v;
}

}  // namespace

struct ReflectionInterpolant::Impl {
    makima<RVec> rr, ri, tr, ti;
    Impl(RVec z, RVec a, RVec b, RVec c, RVec d)
        : rr(RVec(z), std::move(a)), ri(RVec(z), std::move(b)), tr(RVec(z), std::move(c)), ti(std::move(z), std::move(d)) {}
};

ReflectionInterpolant::ReflectionInterpolant(const ScatteringData& sd) {
    const std::size_t n = sd.size();
    if (sd.r.size() != n || sd.rtilde.size() != n) throw ConfigError("reflection coefficients not populated");
    if (n < 4) throw ConfigError("spectral grid needs at least 4 points");
    RVec a(n), b(n), c(n), d(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = sd.r[i].real();
        b[i] = sd.r[i].imag();
        c[i] = sd.rtilde[i].real();
        d[i] = sd.rtilde[i].imag();
    }
    impl_ = std::make_shared<Impl>(sd.zgrid, std::move(a), std::move(b), std::move(c), std::move(d));
    zmin_ = sd.zgrid.front();
    zmax_ = sd.zgrid.back();
}

cplx ReflectionInterpolant::r(double z) const {
    if (z < zmin_ || z > zmax_) throw ConfigError("z = " + fmt17(z) + " outside the spectral grid");
    return {impl_->rr(z), impl_->ri(z)};
}

cplx ReflectionInterpolant::rtilde(double z) const {
    if (z < zmin_ || z > zmax_) throw ConfigError("z = " + fmt17(z) + " outside the spectral grid");
    return {impl_->tr(z), impl_->ti(z)};
}

NuProfile nu_profile_from(std::function<cplx(double)> nu, double z1, double z2, std::size_t nodes) {
    if (!(z2 > z1)) throw ConfigError("nu profile needs z1 < z2");
    if (nodes < 3) nodes = 3;
    NuProfile np;
    np.z1 = z1;
    np.z2 = z2;
    np.nu_at = std::move(nu);
    np.nodes.resize(nodes);
    np.nu.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        np.nodes[i] = i + 1 == nodes ? z2 : z1 + (z2 - z1) * double(i) / double(nodes - 1);
        np.nu[i] = np.nu_at(np.nodes[i]);
        np.max_im_nu = std::max(np.max_im_nu, std::abs(np.nu[i].imag()));
    }
    for (std::size_t i = 1; i < nodes; ++i) {
        // log(1 - kappa r rtilde) = -2 pi nu; its imaginary part must not jump by pi.
        if (2.0 * kPi * std::abs(np.nu[i].imag() - np.nu[i - 1].imag()) >= kPi)
            throw AssumptionError("branch jump of log(1 - kappa r rtilde) near z = " + fmt17(np.nodes[i]));
    }
    if (np.max_im_nu >= 0.5) throw AssumptionError("|Im nu| >= 1/2 on [z1, z2] (max " + fmt17(np.max_im_nu) + ")");
    np.nu1 = np.nu.front();
    np.nu2 = np.nu.back();
    return np;
}

NuProfile nu_profile(const ScatteringData& sd, const PhaseGeometry& geom, std::size_t nodes) {
    auto interp = std::make_shared<ReflectionInterpolant>(sd);
    if (geom.z1 < interp->z_min() || geom.z2 > interp->z_max())
        throw ConfigError("stationary points lie outside the spectral grid");
    const double kappa = double(sd.kappa);
    auto nu = [interp, kappa](double s) {
        const cplx v = 1.0 - kappa * interp->r(s) * interp->rtilde(s);
        if (v == 0.0) throw AssumptionError("1 - kappa r rtilde vanishes at z = " + fmt17(s));
        return -std::log(v) / (2.0 * kPi);
    };
    return nu_profile_from(nu, geom.z1, geom.z2, nodes);
}

cplx delta_at(cplx z, const NuProfile& np) {
    const double len = np.z2 - np.z1;
    const double eps_d = 1e-3 * len;
    if (std::abs(z - np.z1) < eps_d || std::abs(z - np.z2) < eps_d)
        throw DomainError("delta_at: z within the endpoint tube; use delta_boundary");
    if (z.imag() == 0.0 && z.real() > np.z1 && z.real() < np.z2)
        throw DomainError("delta_at: z on the jump segment");
    const double s0 = std::clamp(z.real(), np.z1, np.z2);
    const cplx nu0 = np.nu_at(s0);
    auto f = [&](double s) { return (np.nu_at(s) - nu0) / (s - z); };
    const cplx I = integrate(f, np.z1, s0) + integrate(f, s0, np.z2);
    return std::exp(kI * (I + nu0 * std::log((np.z2 - z) / (np.z1 - z))));
}

cplx delta_boundary(const NuProfile& np, int j) {
    if (j != 1 && j != 2) throw ConfigError("stationary point index must be 1 or 2");
    const double zj = j == 1 ? np.z1 : np.z2;
    const cplx nuj = np.endpoint_nu(j);
    auto f = [&](double s) { return (np.nu_at(s) - nuj) / (s - zj); };
    const cplx I = integrate(f, np.z1, np.z2);
    const double L = std::log(np.z2 - np.z1);
    const cplx logd = kI * I + (j == 1 ? 1.0 : -1.0) * kI * nuj * L;
    return std::exp(logd);
}

namespace {

struct PointData {
    double zj, c;
    int sigma;
    cplx nu, r, delta;
};

PointData point_data(const NuProfile& np, const ScatteringData& sd, const PhaseGeometry& geom, double t, int j) {
    if (j != 1 && j != 2) throw ConfigError("stationary point index must be 1 or 2");
    if (!(t > 0.0)) throw ConfigError("t must be positive");
    PointData d;
    d.zj = geom.zj(j);
    d.c = geom.curvature(j);
    if (d.c == 0.0) throw ConfigError("scaling factor 8 t (6 beta z_j + alpha) vanishes");
    d.sigma = d.c > 0 ? 1 : -1;
    d.nu = np.endpoint_nu(j);
    const ReflectionInterpolant interp(sd);
    const double phi = (4.0 * sd.alpha * d.zj * d.zj + 8.0 * sd.beta * d.zj * d.zj * d.zj) * sd.time;
    d.r = interp.r(d.zj) * std::exp(cplx(0.0, -phi));
    d.delta = delta_boundary(np, j);
    return d;
}

cplx vartheta_of(const PointData& d, const PhaseGeometry& geom, double t, int j) {
    const double L = std::log(8.0 * std::abs(d.c) * t);
    const double S = stationary_phase_value(geom, t, j);
    return d.r / (d.delta * d.delta) * std::exp(cplx(0.0, d.sigma * d.nu.real() * L + S));
}

// t^{sigma Im nu} as printed, or (8 |c| t)^{sigma Im nu}.
double time_power(const PointData& d, double t, const AsymptoticOptions& opt) {
    const double base = opt.strict_paper_constants ? t : 8.0 * std::abs(d.c) * t;
    return std::pow(base, d.sigma * d.nu.imag());
}

}  // namespace

cplx vartheta(const NuProfile& np, const ScatteringData& sd, const PhaseGeometry& geom, double t, int j) {
    const PointData d = point_data(np, sd, geom, t, j);
    return vartheta_of(d, geom, t, j);
}

LocalConstants local_constants(const NuProfile& np, const ScatteringData& sd, const PhaseGeometry& geom, double t,
                               int j, const AsymptoticOptions& opt) {
    const PointData d = point_data(np, sd, geom, t, j);
    LocalConstants lc;
    lc.nu = d.nu;
    lc.r = d.r;
    lc.delta = d.delta;
    lc.curvature = d.c;
    lc.orientation = d.sigma;
    lc.vartheta = vartheta_of(d, geom, t, j);
    if (d.nu == 0.0 || lc.vartheta == 0.0) {
        lc.beta12 = lc.beta21 = 0.0;
        return lc;
    }
    const double sg = double(d.sigma);
    const cplx rg = rgamma(-sg * kI * d.nu);
    lc.beta12 = time_power(d, t, opt) * std::sqrt(2.0 * kPi) * std::exp(cplx(0.0, sg * kPi / 4.0)) *
                std::exp(-kPi * d.nu / 2.0) * rg / lc.vartheta;
    lc.beta21 = d.nu / lc.beta12;
    return lc;
}

std::pair<cplx, cplx> beta12(const NuProfile& np, const ScatteringData& sd, const PhaseGeometry& geom, double t,
                             int j, const AsymptoticOptions& opt) {
    const LocalConstants lc = local_constants(np, sd, geom, t, j, opt);
    return {lc.beta12, lc.beta21};
}

cplx theorem_contribution(const LocalConstants& lc, double t, const AsymptoticOptions& opt) {
    if (lc.nu == 0.0 || lc.vartheta == 0.0) return 0.0;
    const double sg = double(lc.orientation);
    const double ac = std::abs(lc.curvature);
    const double base = opt.strict_paper_constants ? t : 8.0 * ac * t;
    const double amp = std::pow(t, -0.5) * std::pow(base, sg * lc.nu.imag());
    return amp * std::sqrt(kPi) * std::exp(cplx(0.0, sg * kPi / 4.0)) * std::exp(-kPi * lc.nu / 2.0) *
           rgamma(-sg * kI * lc.nu) / (std::sqrt(ac) * lc.vartheta);
}

double xi_order(cplx nu1, cplx nu2) {
    const double m = std::max(nu1.imag(), nu2.imag());
    return m > 0.0 ? -0.75 + m / 2.0 : -0.75;
}

AsymptoticEvaluation leading_order_q(const ScatteringData& sd, const NuProfile& np, const PhaseGeometry& geom,
                                     double x, double t, const AsymptoticOptions& opt) {
    if (!(t > 0.0)) throw ConfigError("t must be positive");
    if (std::abs(x / t - geom.xi) > 1e-12 * (1.0 + std::abs(geom.xi)))
        throw ConfigError("x/t does not match the phase geometry");
    if (std::abs(np.z1 - geom.z1) > 1e-12 * (1.0 + std::abs(geom.z1)) ||
        std::abs(np.z2 - geom.z2) > 1e-12 * (1.0 + std::abs(geom.z2)))
        throw ConfigError("nu profile and phase geometry disagree");
    AsymptoticEvaluation ev;
    ev.x = x;
    ev.t = t;
    cplx contrib[2];
    for (int j = 1; j <= 2; ++j) {
        const LocalConstants lc = local_constants(np, sd, geom, t, j, opt);
        contrib[j - 1] = lc.beta12 == 0.0 ? cplx(0.0) : 2.0 * lc.beta12 / std::sqrt(8.0 * std::abs(lc.curvature) * t);
        const std::string s = std::to_string(j);
        ev.diagnostics["nu" + s] = lc.nu;
        ev.diagnostics["delta" + s] = lc.delta;
        ev.diagnostics["beta12_" + s] = lc.beta12;
        ev.diagnostics["beta21_" + s] = lc.beta21;
        ev.diagnostics["vartheta" + s] = lc.vartheta;
        ev.diagnostics["route_gap" + s] = theorem_contribution(lc, t, opt) - contrib[j - 1];
    }
    ev.contrib1 = contrib[0];
    ev.contrib2 = contrib[1];
    ev.q_leading = ev.contrib1 + ev.contrib2;
    ev.xi_order = xi_order(np.nu1, np.nu2);
    return ev;
}

std::pair<cplx, cplx> model_betas(cplx nu, cplx r_m) {
    if (nu == 0.0 || r_m == 0.0) return {0.0, 0.0};
    const cplx b12 = std::sqrt(2.0 * kPi) * std::exp(cplx(0.0, kPi / 4.0)) * std::exp(-kPi * nu / 2.0) *
                     rgamma(-kI * nu) / r_m;
    return {b12, nu / b12};
}

Mat2 model_matrix(cplx k, cplx nu, cplx r_m, Half half) {
    if (std::abs(k.imag()) < 1e-6) throw DomainError("model_matrix: k must be off the real axis");
    if ((half == Half::upper) != (k.imag() > 0.0)) throw DomainError("model_matrix: k is not in the requested half plane");
    const cplx a = kI * nu;
    const auto [b12, b21] = model_betas(nu, r_m);
    const cplx w1 = std::exp(cplx(0.0, half == Half::upper ? -0.75 * kPi : 0.25 * kPi));  // argument rotation for D_a
    const cplx w2 = std::exp(cplx(0.0, half == Half::upper ? -0.25 * kPi : 0.75 * kPi));  // for D_{-a}
    const cplx e1 = std::exp((half == Half::upper ? -0.75 : 0.25) * kPi * nu);
    const cplx e2 = std::exp((half == Half::upper ? 0.25 : -0.75) * kPi * nu);
    const auto [da, dda] = parabolic_cylinder_D_pair(a, w1 * k);
    const auto [dm, ddm] = parabolic_cylinder_D_pair(-a, w2 * k);
    Mat2 m;
    m(0, 0) = e1 * da.value;
    m(1, 1) = e2 * dm.value;
    if (b12 == 0.0) {
        m(0, 1) = m(1, 0) = 0.0;
        return m;
    }
    m(0, 1) = e2 / b21 * (w2 * ddm.value - 0.5 * kI * k * dm.value);
    m(1, 0) = e1 / b12 * (w1 * dda.value + 0.5 * kI * k * da.value);
    return m;
}

}  // namespace nh
