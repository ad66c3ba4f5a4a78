#include <algorithm>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nhirota/experiment.hpp"
#include "nhirota/specfun.hpp"

namespace nh {
namespace {

struct Suite {
    std::vector<ValidationLine> lines;
    void add(const std::string& name, double value, double tol) {
        lines.push_back({name, std::isfinite(value) && value <= tol, value, tol});
    }
};

cplx sample(std::mt19937_64& g, double re_lo, double re_hi, double im_lo, double im_hi) {
    std::uniform_real_distribution<double> re(re_lo, re_hi), im(im_lo, im_hi);
    const double a = re(g);
    return {a, im(g)};
}

void specfun_checks(Suite& s, std::mt19937_64& g) {
    s.add("specfun.gamma_one", std::abs(gamma_complex(1.0).value - 1.0), 1e-14);
    s.add("specfun.gamma_half", std::abs(gamma_complex(0.5).value - std::sqrt(kPi)) / std::sqrt(kPi), 1e-14);
    double rec = 0.0, refl = 0.0;
    for (int i = 0; i < 100; ++i) {
        const cplx z = sample(g, -3.0, 3.0, -2.0, 2.0);
        const cplx gz = gamma_complex(z).value;
        rec = std::max(rec, std::abs(gamma_complex(z + 1.0).value - z * gz) / std::abs(z * gz));
        const cplx lhs = gz * gamma_complex(1.0 - z).value, rhs = kPi / std::sin(kPi * z);
        refl = std::max(refl, std::abs(lhs - rhs) / std::abs(rhs));
    }
    s.add("specfun.gamma_recurrence", rec, 1e-12);
    s.add("specfun.gamma_reflection", refl, 1e-12);

    double d0 = 0.0, weber = 0.0, drec = 0.0;
    for (int i = 0; i < 100; ++i) {
        const cplx k = sample(g, -8.0, 8.0, -3.0, 3.0);
        d0 = std::max(d0, std::abs(parabolic_cylinder_D(0.0, k).value - std::exp(-k * k / 4.0)) /
                              std::max(1.0, std::abs(std::exp(-k * k / 4.0))));
        const cplx a = sample(g, -2.0, 2.0, -1.0, 1.0);
        // second derivative from a 4th-order difference of D'
        const double h = 0.01 / std::max(1.0, std::abs(k) / 4.0);
        auto dp = [&](double o) { return parabolic_cylinder_D_pair(a, k + o).second.value; };
        const cplx d2 = (-dp(2 * h) + 8.0 * dp(h) - 8.0 * dp(-h) + dp(-2 * h)) / (12.0 * h);
        const cplx d = parabolic_cylinder_D(a, k).value;
        const cplx c = a + 0.5 - k * k / 4.0;
        weber = std::max(weber, std::abs(d2 + c * d) / (std::abs(d2) + std::abs(c * d)));
        const cplx up = parabolic_cylinder_D(a + 1.0, k).value, dn = parabolic_cylinder_D(a - 1.0, k).value;
        const double scale = std::max({std::abs(up), std::abs(k * d), std::abs(a * dn)});
        drec = std::max(drec, std::abs(up - k * d + a * dn) / scale);
    }
    s.add("specfun.pcf_d0_gaussian", d0, 1e-10);
    s.add("specfun.pcf_weber_residual", weber, 1e-5);
    s.add("specfun.pcf_recurrence", drec, 1e-8);
}

void phase_checks(Suite& s, std::mt19937_64& g) {
    std::uniform_real_distribution<double> ua(-2.0, 2.0), ub(0.2, 2.0), ux(-5.0, 5.0);
    double roots = 0.0, vieta = 0.0;
    int done = 0;
    while (done < 1000) {
        const double a = ua(g), b = (done % 2 ? -1.0 : 1.0) * ub(g), xi = ux(g);
        if (a * a - 3.0 * b * xi <= 1e-6) continue;
        const PhaseGeometry pg = stationary_points(xi, a, b);
        for (int j = 1; j <= 2; ++j)
            roots = std::max(roots, std::abs(theta_prime(pg.zj(j), xi, a, b)) / (1.0 + std::abs(xi)));
        vieta = std::max(vieta, std::abs(pg.z1 + pg.z2 + a / (3.0 * b)) + std::abs(pg.z1 * pg.z2 - xi / (12.0 * b)));
        ++done;
    }
    s.add("phase.stationary_roots", roots, 1e-10);
    s.add("phase.vieta", vieta, 1e-10);
}

GridSpec1D fixture_grid() { return {-20.0, 20.0, 1024}; }

ScatteringData fixture_scatter(double amp, int kappa, std::size_t nz, PotentialField* keep = nullptr) {
    DatumSpec d;
    d.amplitude = amp;
    const PotentialField p = build_potential(make_datum(d, fixture_grid()), kappa);
    if (keep) *keep = p;
    return reflection_coefficients(scattering_matrix(p, uniform_zgrid(6.0, nz), Params{0.0, 1.0, kappa}));
}

void scattering_checks(Suite& s) {
    {
        DatumSpec d;
        d.kind = "zero";
        const PotentialField p = build_potential(make_datum(d, fixture_grid()), 1);
        const ScatteringData sd = reflection_coefficients(scattering_matrix(p, uniform_zgrid(6.0, 257), Params{}));
        double dev = 0.0;
        for (std::size_t i = 0; i < sd.size(); ++i)
            dev = std::max({dev, std::abs(sd.s11[i] - 1.0), std::abs(sd.s22[i] - 1.0), std::abs(sd.s12[i]),
                            std::abs(sd.s21[i]), std::abs(sd.r[i]), std::abs(sd.rtilde[i])});
        s.add("scattering.zero_identity", dev, 1e-10);
    }
    for (int kappa : {1, -1}) {
        const std::string k = kappa > 0 ? "kappa_plus" : "kappa_minus";
        const ScatteringResiduals r = scattering_residuals(fixture_scatter(0.3, kappa, 257));
        s.add("scattering." + k + ".det_S", r.det, 1e-6);
        s.add("scattering." + k + ".symmetry", std::max({r.sym11, r.sym22, r.sym12}), 1e-6);
        s.add("scattering." + k + ".reflection_identity", r.identity, 1e-6);
    }
    {
        const double eps = 1e-3;
        DatumSpec d;
        d.amplitude = eps;
        const PotentialField p = build_potential(make_datum(d, fixture_grid()), 1);
        double worst = 0.0;
        for (int i = 0; i < 11; ++i) {
            const double z = -2.0 + 0.4 * i;
            auto f = [&](double x) { return eps * std::exp(-x * x) * std::exp(cplx(0.0, -2.0 * z * x)); };
            const cplx born = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -20.0, 20.0, 12, 1e-13);
            worst = std::max(worst, std::abs(scattering_at(p, z)(1, 0) - born) / std::abs(born));
        }
        s.add("scattering.born_s21", worst, 1e-2);
    }
}

void asymptotic_checks(Suite& s) {
    const ScatteringData sd = fixture_scatter(0.3, 1, 513);
    const PhaseGeometry geom = stationary_points(-3.0, 0.0, 1.0);
    const NuProfile np = nu_profile(sd, geom);
    const ReflectionInterpolant ri(sd);
    double jump = 0.0;
    for (int i = 1; i <= 20; ++i) {
        const double x = np.z1 + (np.z2 - np.z1) * i / 21.0;
        const cplx ratio = delta_at({x, 1e-6}, np) / delta_at({x, -1e-6}, np);
        jump = std::max(jump, std::abs(ratio - (1.0 - ri.r(x) * ri.rtilde(x))));
    }
    s.add("asymptotics.delta_jump", jump, 1e-4);

    double prod = 0.0, gap = 0.0;
    for (int j = 1; j <= 2; ++j) {
        const LocalConstants lc = local_constants(np, sd, geom, 20.0, j);
        prod = std::max(prod, std::abs(lc.beta12 * lc.beta21 - lc.nu) / std::abs(lc.nu));
    }
    const AsymptoticEvaluation ev = leading_order_q(sd, np, geom, -60.0, 20.0);
    for (const char* key : {"route_gap1", "route_gap2"}) gap = std::max(gap, std::abs(ev.diagnostics.at(key)));
    s.add("asymptotics.beta_product_fixture", prod, 1e-8);
    s.add("asymptotics.contribution_routes", gap / std::max(1e-300, std::abs(ev.q_leading)), 1e-10);

    const double r0 = 0.2, rt0 = 0.15;
    const cplx nu = -std::log(1.0 - r0 * rt0) / (2.0 * kPi);
    Mat2 expected;
    expected << 1.0 - r0 * rt0, -rt0, r0, 1.0;
    double mj = 0.0;
    for (double k : {-2.0, -1.0, 1.0, 2.0}) {
        const Mat2 mp = model_matrix({k, 1e-6}, nu, r0, Half::upper);
        const Mat2 mm = model_matrix({k, -1e-6}, nu, r0, Half::lower);
        mj = std::max(mj, (mm.inverse() * mp - expected).cwiseAbs().maxCoeff());
    }
    s.add("asymptotics.model_jump", mj, 1e-5);
    const auto [b12, b21] = model_betas(nu, r0);
    s.add("asymptotics.beta_product_model", std::abs(b12 * b21 - nu) / std::abs(nu), 1e-8);
}

void pde_checks(Suite& s) {
    {
        EvolutionConfig c;
        c.grid = {-10.0, 10.0, 64};
        c.alpha = 1.0;
        c.beta = 0.7;
        c.kappa = 1;
        c.dt = 0.0025;
        c.t_end = 1.0;
        c.require_decay = false;
        DatumSpec d;
        d.kind = "constant";
        d.amplitude = 1.0;
        const Trajectory tr = evolve(make_datum(d, c.grid), c);
        double e = 0.0;
        for (const auto& u : tr.frames.back().samples) e = std::max(e, std::abs(u - std::exp(cplx(0.0, -2.0))));
        s.add("pde.uniform_exact", e, 1e-8);
    }
    {
        EvolutionConfig c;
        c.grid = {-20.0, 20.0, 512};
        c.alpha = 1.0;
        c.beta = 1.0;
        c.linear = true;
        DatumSpec d;
        d.width = 2.0;
        const ComplexField u0 = make_datum(d, c.grid);
        const ComplexField a = evolve(u0, c).frames.back(), b = linear_propagate(u0, c, c.t_end);
        double e = 0.0, m = 0.0;
        for (std::size_t j = 0; j < a.samples.size(); ++j) {
            e = std::max(e, std::abs(a.samples[j] - b.samples[j]));
            m = std::max(m, std::abs(b.samples[j]));
        }
        s.add("pde.linear_propagator", e / m, 1e-8);
    }
    {
        EvolutionConfig c;
        c.grid = {-30.0, 30.0, 128};
        c.alpha = 1.0;
        c.beta = 1.0;
        c.kappa = 1;
        c.t_end = 1.0;
        DatumSpec d;
        d.amplitude = 0.8;
        d.width = 2.0;
        const ComplexField u0 = make_datum(d, c.grid);
        const RVec dts = {0.01, 0.005, 0.0025};
        c.dt = dts.back() / 8.0;
        const CVec ref = evolve(u0, c).frames.back().samples;
        RVec errs;
        for (double dt : dts) {
            c.dt = dt;
            const CVec f = evolve(u0, c).frames.back().samples;
            double e = 0.0;
            for (std::size_t j = 0; j < f.size(); ++j) e = std::max(e, std::abs(f[j] - ref[j]));
            errs.push_back(e);
        }
        s.add("pde.rk4_order_deviation", std::abs(loglog_slope(dts, errs).slope - 4.0), 0.3);
    }
}

}  // namespace

std::vector<ValidationLine> run_validation_suite(const ExperimentConfig& cfg, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    Suite s;
    specfun_checks(s, gen);
    phase_checks(s, gen);
    scattering_checks(s);
    asymptotic_checks(s);
    pde_checks(s);
    if (!cfg.scattering_csv.empty()) {
        const ScatteringData sd = scattering_from_table(read_csv(cfg.scattering_csv), cfg.model);
        const ScatteringResiduals r = scattering_residuals(sd);
        s.add("input.det_S", r.det, 1e-6);
        s.add("input.symmetry", std::max({r.sym11, r.sym22, r.sym12}), 1e-6);
        s.add("input.reflection_identity", r.identity, 1e-6);
    }
    return s.lines;
}

}  // namespace nh
