#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "nhirota/phase.hpp"
#include "nhirota/scattering.hpp"
#include "nhirota/types.hpp"

namespace nh {

/// nu(s) = -log(1 - kappa r(s) rtilde(s)) / (2 pi) on [z1, z2].
struct NuProfile {
    double z1 = 0.0, z2 = 0.0;
    RVec nodes;  ///< refined sample points on [z1, z2]
    CVec nu;     ///< nu at the nodes
    double max_im_nu = 0.0;
    cplx nu1, nu2;  ///< nu(z1), nu(z2)
    /// Continuous evaluation of nu from the interpolated scattering data.
    std::function<cplx(double)> nu_at;

    cplx endpoint_nu(int j) const { return j == 1 ? nu1 : nu2; }
};

/// Interpolated r and rtilde at arbitrary real z (modified Akima on each component).
class ReflectionInterpolant {
  public:
    explicit ReflectionInterpolant(const ScatteringData& sd);
    cplx r(double z) const;
    cplx rtilde(double z) const;
    double z_min() const { return zmin_; }
    double z_max() const { return zmax_; }

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    double zmin_, zmax_;
};

/// Synthetic profile with nu given by a function (tests, diagnostics).
NuProfile nu_profile_from(std::function<cplx(double)> nu, double z1, double z2, std::size_t nodes = 257);

NuProfile nu_profile(const ScatteringData& sd, const PhaseGeometry& geom, std::size_t nodes = 257);

/// delta(z) = exp(i int_{z1}^{z2} nu(s)/(s - z) ds).
cplx delta_at(cplx z, const NuProfile& np);

/// Regular factor delta_j at the endpoint: delta ~ delta_2 (z - z2)^{i nu2} near z2 and
/// delta ~ delta_1 (z1 - z)^{-i nu1} near z1 (principal powers).
cplx delta_boundary(const NuProfile& np, int j);

struct AsymptoticOptions {
    bool strict_paper_constants = true;
};

/// Per-point pieces of the local model problem.
struct LocalConstants {
    cplx nu;
    cplx r;           ///< r(z_j) at time 0
    cplx delta;       ///< delta_j
    cplx vartheta;
    cplx beta12, beta21;
    double curvature = 0.0;  ///< alpha + 6 beta z_j
    int orientation = 1;     ///< sign of the curvature
};

cplx vartheta(const NuProfile& np, const ScatteringData& sd, const PhaseGeometry& geom, double t, int j);

std::pair<cplx, cplx> beta12(const NuProfile& np, const ScatteringData& sd, const PhaseGeometry& geom, double t,
                             int j, const AsymptoticOptions& opt = {});

LocalConstants local_constants(const NuProfile& np, const ScatteringData& sd, const PhaseGeometry& geom, double t,
                               int j, const AsymptoticOptions& opt = {});

struct AsymptoticEvaluation {
    double x = 0.0, t = 0.0;
    cplx q_leading;
    cplx contrib1, contrib2;
    double xi_order = -0.75;
    std::map<std::string, cplx> diagnostics;
};

/// Error exponent: -3/4 + max(Im nu1, Im nu2)/2 when positive, else -3/4.
double xi_order(cplx nu1, cplx nu2);

AsymptoticEvaluation leading_order_q(const ScatteringData& sd, const NuProfile& np, const PhaseGeometry& geom,
                                     double x, double t, const AsymptoticOptions& opt = {});

/// Theorem-form contribution (independent arithmetic route to contrib_j).
cplx theorem_contribution(const LocalConstants& lc, double t, const AsymptoticOptions& opt = {});

enum class Half { upper, lower };

/// Parabolic-cylinder solution of the local model problem; r_m is the rescaled reflection value.
Mat2 model_matrix(cplx k, cplx nu, cplx r_m, Half half);

/// (beta12, beta21) of the model problem with rescaled reflection value r_m.
std::pair<cplx, cplx> model_betas(cplx nu, cplx r_m);

}  // namespace nh
