#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nhirota/scattering.hpp"

using namespace nh;

namespace {

const GridSpec1D kGrid{-20.0, 20.0, 1024};

PotentialField gaussian(double amp, int kappa, double chirp = 0.0) {
    DatumSpec d;
    d.kind = chirp == 0.0 ? "gaussian" : "gaussian_chirp";
    d.amplitude = amp;
    d.chirp = chirp;
    return build_potential(make_datum(d, kGrid), kappa);
}

ScatteringData table(const PotentialField& p, double Z = 6.0, std::size_t nz = 257) {
    return reflection_coefficients(scattering_matrix(p, uniform_zgrid(Z, nz), Params{0.0, 1.0, p.kappa}));
}

// Half-line Fourier integral of g, by adaptive quadrature.
cplx half_line(std::function<cplx(double)> g, double lo, double hi) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, lo, hi, 12, 1e-13);
}

}  // namespace

TEST_CASE("build_potential") {
    DatumSpec z;
    z.kind = "zero";
    const PotentialField p0 = build_potential(make_datum(z, kGrid), 1);
    for (std::size_t j = 0; j < kGrid.n; ++j) CHECK((p0.upper[j] == cplx(0.0) && p0.lower[j] == cplx(0.0)));

    const PotentialField pe = gaussian(0.3, 1);
    for (std::size_t j = 0; j < kGrid.n; ++j) CHECK(std::abs(pe.lower[j] - pe.upper[j]) < 1e-16);

    DatumSpec c;
    c.kind = "gaussian_chirp";
    c.amplitude = 0.3;
    c.chirp = -1.0;
    const PotentialField pc = build_potential(make_datum(c, kGrid), 1);
    for (std::size_t j : {100u, 512u, 700u}) {
        const double x = kGrid.x(j);
        CHECK(std::abs(pc.lower[j] - 0.3 * std::exp(cplx(-x * x, x))) < 1e-15);
    }
    CHECK_THROWS_AS(build_potential(make_datum(c, kGrid), 2), ConfigError);
}

TEST_CASE("Jost solutions") {
    DatumSpec z;
    z.kind = "zero";
    const PotentialField p0 = build_potential(make_datum(z, kGrid), 1);
    for (double k : {-3.0, 0.0, 1.7}) CHECK((jost_solve(p0, k, Side::left) - Mat2::Identity()).norm() < 1e-14);

    const PotentialField p = gaussian(0.3, 1);
    CHECK(std::abs(jost_solve(p, 0.7, Side::left).determinant() - 1.0) < 1e-8);

    // one Picard iteration from x = -infinity
    const double zz = 2.0;
    const Mat2 phi = jost_solve(p, zz, Side::left);
    Mat2 picard = Mat2::Identity();
    picard(0, 1) = half_line([&](double y) { return 0.3 * std::exp(-y * y) * std::exp(cplx(0.0, 2.0 * zz * y)); }, -20.0, 0.0);
    picard(1, 0) = half_line([&](double y) { return 0.3 * std::exp(-y * y) * std::exp(cplx(0.0, -2.0 * zz * y)); }, -20.0, 0.0);
    CHECK((phi - picard).norm() / phi.norm() <= 0.05);
}

TEST_CASE("scattering matrix identities") {
    DatumSpec z;
    z.kind = "zero";
    const ScatteringData s0 = table(build_potential(make_datum(z, kGrid), 1));
    for (std::size_t i = 0; i < s0.size(); ++i) {
        CHECK(std::abs(s0.s11[i] - 1.0) + std::abs(s0.s22[i] - 1.0) + std::abs(s0.s12[i]) + std::abs(s0.s21[i]) < 1e-10);
        CHECK(std::abs(s0.r[i]) + std::abs(s0.rtilde[i]) == 0.0);
    }

    for (int kappa : {1, -1}) {
        const ScatteringData sd = table(gaussian(0.3, kappa), 3.0);
        const ScatteringResiduals r = scattering_residuals(sd);
        CAPTURE(kappa);
        CHECK(r.symmetric_grid);
        CHECK(r.det < 1e-6);
        CHECK(r.sym11 < 1e-6);
        CHECK(r.sym22 < 1e-6);
        CHECK(r.sym12 < 1e-6);
        CHECK(r.identity < 1e-6);
    }
}

TEST_CASE("s21 decays and matches the Born integral") {
    const PotentialField p = gaussian(0.3, 1);
    CHECK(std::abs(scattering_at(p, 3.0)(1, 0)) < std::abs(scattering_at(p, 0.5)(1, 0)));

    const double eps = 1e-3;
    const PotentialField pb = gaussian(eps, 1, 0.4);
    for (int i = 0; i < 11; ++i) {
        const double zz = -2.0 + 0.4 * i;
        const cplx born = half_line(
            [&](double x) { return eps * std::exp(-x * x) * std::exp(cplx(0.0, 0.4 * x - 2.0 * zz * x)); }, -20.0, 20.0);
        CAPTURE(zz);
        CHECK(std::abs(scattering_at(pb, zz)(1, 0) - born) / std::abs(born) < 1e-2);
    }
}

TEST_CASE("matching point and complex continuation") {
    const PotentialField p = gaussian(0.3, -1, 0.5);
    CHECK((scattering_at(p, 0.7, 0.0) - scattering_at(p, 0.7, 1.3)).norm() < 1e-8);
    CHECK(std::abs(s11_complex(p, 0.7) - scattering_at(p, 0.7)(0, 0)) < 1e-8);
}

TEST_CASE("reflection coefficients") {
    for (int kappa : {1, -1}) {
        const ScatteringData sd = table(gaussian(0.3, kappa));
        const std::size_t n = sd.size();
        double rmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            // rtilde from the symmetry route: kappa * kappa conj(s21(-z)) / s22
            CHECK(std::abs(sd.rtilde[i] - std::conj(sd.s21[n - 1 - i]) / sd.s22[i]) < 1e-6);
            CHECK(std::abs(sd.r[i] - sd.s21[i] / sd.s11[i]) < 1e-15);
            rmax = std::max(rmax, std::abs(sd.r[i]));
        }
        CHECK(rmax < 1.0);
    }
    ScatteringData bad = table(gaussian(0.3, 1), 6.0, 9);
    bad.s11[3] = 0.0;
    CHECK_THROWS_AS(reflection_coefficients(bad), AssumptionError);
}

TEST_CASE("reflection evolution") {
    const ScatteringData sd = table(gaussian(0.3, 1));
    const ScatteringData same = evolve_reflection(sd, 0.0);
    for (std::size_t i = 0; i < sd.size(); ++i) CHECK(same.r[i] == sd.r[i]);

    const ScatteringData later = evolve_reflection(sd, 2.5);
    CHECK(later.time == 2.5);
    for (std::size_t i = 0; i < sd.size(); ++i) {
        CHECK(std::abs(std::abs(later.r[i]) - std::abs(sd.r[i])) < 1e-15);
        CHECK(std::abs(later.r[i] * later.rtilde[i] - sd.r[i] * sd.rtilde[i]) < 1e-15);
    }

    ScatteringData one = sd;
    one.alpha = 1.0;
    one.beta = 0.0;
    one.zgrid = {1.0};
    one.r = {cplx(0.25, 0.1)};
    one.rtilde = {cplx(0.1, 0.0)};
    one.s11 = one.s12 = one.s21 = one.s22 = {cplx(1.0)};
    CHECK(std::abs(evolve_reflection(one, kPi / 2).r[0] - one.r[0]) < 1e-14);
}

TEST_CASE("assumption report") {
    DatumSpec z;
    z.kind = "zero";
    const PotentialField p0 = build_potential(make_datum(z, kGrid), 1);
    const AssumptionReport r0 = validate_assumptions(table(p0), &p0);
    CHECK(r0.pass);
    CHECK(r0.winding == 0);
    CHECK(r0.max_im_nu == 0.0);

    const PotentialField p = gaussian(0.3, 1);
    const AssumptionReport r = validate_assumptions(table(p), &p);
    CHECK(r.pass);
    CHECK(r.winding == 0);
    CHECK(std::abs(r.winding_raw) < 1e-6);
    CHECK(r.max_im_nu < 0.5);

    ScatteringData syn = table(p0, 6.0, 9);
    for (std::size_t i = 0; i < syn.size(); ++i) {
        syn.r[i] = 2.0;
        syn.rtilde[i] = 1.0;
    }
    const AssumptionReport rs = validate_assumptions(syn);
    CHECK_FALSE(rs.pass);
    CHECK(rs.min_arg_margin <= 1e-12);
}

TEST_CASE("discrete spectrum appears above the area threshold") {
    const PotentialField p = gaussian(1.0, -1);
    const AssumptionReport r = validate_assumptions(table(p), &p);
    CHECK_FALSE(r.pass);
    REQUIRE(r.winding.has_value());
    CHECK(*r.winding >= 1);
}

TEST_CASE("non-symmetric grids report NaN symmetry residuals") {
    const ScatteringData sd = reflection_coefficients(scattering_matrix(gaussian(0.3, 1), {0.1, 0.5, 0.9}, Params{}));
    const ScatteringResiduals r = scattering_residuals(sd);
    CHECK_FALSE(r.symmetric_grid);
    CHECK(std::isnan(r.sym11));
    CHECK(r.det < 1e-6);
}
