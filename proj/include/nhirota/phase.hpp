#pragma once

#include "nhirota/types.hpp"

namespace nh {

/// Stationary-point geometry of theta(z) = z xi + 2 alpha z^2 + 4 beta z^3.
struct PhaseGeometry {
    double alpha = 0.0;
    double beta = 1.0;
    double xi = 0.0;
    double z1 = 0.0;
    double z2 = 0.0;
    double discriminant = 0.0;  ///< alpha^2 - 3 beta xi
    bool swapped = false;       ///< true when beta < 0 forced a reorder of the roots

    /// theta''(z_j) / 4 = alpha + 6 beta z_j.
    double curvature(int j) const;
    double zj(int j) const { return j == 1 ? z1 : z2; }
};

cplx theta(cplx z, double xi, double alpha, double beta);
cplx theta_prime(cplx z, double xi, double alpha, double beta);

/// Real roots of 12 beta z^2 + 4 alpha z + xi; throws ConfigError if degenerate.
PhaseGeometry stationary_points(double xi, double alpha, double beta);

/// Sign of Re(2 i theta(z)): +1, -1, or 0 (within a relative tolerance).
int sign_re_itheta(cplx z, const PhaseGeometry& geom);

/// 2 t theta(z_j); verifies 2 t theta(z_j) = -4 alpha t z_j^2 - 16 beta t z_j^3.
double stationary_phase_value(const PhaseGeometry& geom, double t, int j);

}  // namespace nh
