#include "nhirota/phase.hpp"

#include <cmath>
#include <utility>

#include "nhirota/io.hpp"

namespace nh {

double PhaseGeometry::curvature(int j) const { return alpha + 6.0 * beta * zj(j); }

cplx theta(cplx z, double xi, double alpha, double beta) {
    return z * (xi + z * (2.0 * alpha + 4.0 * beta * z));
}

cplx theta_prime(cplx z, double xi, double alpha, double beta) {
    return xi + z * (4.0 * alpha + 12.0 * beta * z);
}

PhaseGeometry stationary_points(double xi, double alpha, double beta) {
    if (!std::isfinite(xi) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw ConfigError("stationary_points: non-finite input");
    if (beta == 0.0) throw ConfigError("stationary_points: beta must be nonzero");
    PhaseGeometry g;
    g.alpha = alpha;
    g.beta = beta;
    g.xi = xi;
    g.discriminant = alpha * alpha - 3.0 * beta * xi;
    if (!(g.discriminant > 0.0))
        throw ConfigError("degenerate phase: alpha^2 - 3 beta xi = " + fmt17(g.discriminant) + " <= 0");
    // 12 beta z^2 + 4 alpha z + xi = 0, stable form: q = -(b + sgn(b) sqrt(disc)) / 2.
    const double A = 12.0 * beta, B = 4.0 * alpha;
    const double sq = 4.0 * std::sqrt(g.discriminant);  // sqrt(B^2 - 4 A xi)
    const double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
    double ra = q / A;
    double rb = (q != 0.0) ? xi / q : -ra;
    if (ra > rb) std::swap(ra, rb);
    g.z1 = ra;
    g.z2 = rb;
    g.swapped = beta < 0.0;
    return g;
}

int sign_re_itheta(cplx z, const PhaseGeometry& geom) {
    const cplx th = theta(z, geom.xi, geom.alpha, geom.beta);
    const double v = (2.0 * kI * th).real();
    const double scale = std::abs(z) * (std::abs(geom.xi) + std::abs(z) * (2.0 * std::abs(geom.alpha) +
                                                                           4.0 * std::abs(geom.beta) * std::abs(z)));
    if (std::abs(v) <= 1e-14 * scale) return 0;
    return v > 0 ? 1 : -1;
}

double stationary_phase_value(const PhaseGeometry& geom, double t, int j) {
    if (j != 1 && j != 2) throw ConfigError("stationary point index must be 1 or 2");
    const double z = geom.zj(j);
    const double lhs = 2.0 * t * theta(z, geom.xi, geom.alpha, geom.beta).real();
    const double rhs = -4.0 * geom.alpha * t * z * z - 16.0 * geom.beta * t * z * z * z;
    if (std::abs(lhs - rhs) > 1e-8 * (1.0 + std::abs(lhs)))
        throw NumericalError("stationary phase identity violated: inconsistent geometry");
    return lhs;
}

}  // namespace nh
