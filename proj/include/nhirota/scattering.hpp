#pragma once

#include <optional>
#include <string>

#include "nhirota/grid.hpp"
#include "nhirota/types.hpp"

namespace nh {

/// Off-diagonal entries of Q: upper = u(x), lower = kappa conj(u(-x)).
struct PotentialField {
    GridSpec1D grid;
    CVec upper;
    CVec lower;
    int kappa = 1;
};

/// Scattering coefficients on a real z grid. rtilde is stored as kappa s12/s22.
struct ScatteringData {
    RVec zgrid;
    CVec s11, s12, s21, s22;
    CVec r, rtilde;
    int kappa = 1;
    double alpha = 0.0;
    double beta = 1.0;
    double time = 0.0;
    std::vector<int> det_flag;  ///< 1 where |det S - 1| exceeded the tolerance

    std::size_t size() const { return zgrid.size(); }
};

struct JostOptions {
    double atol = 1e-10;
    double rtol = 1e-10;
    double det_tol = 1e-6;
};

PotentialField build_potential(const ComplexField& u0, int kappa);

enum class Side { left, right };

/// Jost matrix Phi-(0, z) (left) or Phi+(0, z) (right).
Mat2 jost_solve(const PotentialField& p, double z, Side side, const JostOptions& opt = {});

/// Jost matrix at an arbitrary matching point x.
Mat2 jost_solve_at(const PotentialField& p, double z, Side side, double x, const JostOptions& opt = {});

/// S(z) from the Jost matrices matched at x, with the gauge e^{izx sigma3} undone.
Mat2 scattering_at(const PotentialField& p, double z, double x_match = 0.0, const JostOptions& opt = {});

/// s11(z) for Im z >= 0 from column solutions.
cplx s11_complex(const PotentialField& p, cplx z, const JostOptions& opt = {});

ScatteringData scattering_matrix(const PotentialField& p, const RVec& zgrid, const Params& params,
                                 const JostOptions& opt = {});

/// Fills r = s21/s11 and rtilde = kappa s12/s22. Throws AssumptionError near a spectral singularity.
ScatteringData reflection_coefficients(ScatteringData sd, double threshold = 1e-10);

/// r -> r exp(i(4 alpha z^2 + 8 beta z^3) t0), rtilde with the conjugate phase.
ScatteringData evolve_reflection(ScatteringData sd, double t0);

/// Residuals of the exact identities on a ScatteringData table.
struct ScatteringResiduals {
    double det = 0.0;       ///< max |s11 s22 - s12 s21 - 1|
    double sym11 = 0.0;     ///< max |s11(z) - conj s11(-z)|
    double sym22 = 0.0;
    double sym12 = 0.0;     ///< max |s12(z) - kappa conj s21(-z)|
    double identity = 0.0;  ///< max |1 - kappa r rtilde - 1/(s11 s22)| (NaN if r missing)
    bool symmetric_grid = false;
};
ScatteringResiduals scattering_residuals(const ScatteringData& sd);

struct WindingOptions {
    double half_width = 6.0;
    double height = 6.0;
    int samples_per_edge = 96;
};

struct AssumptionReport {
    RVec arg_margin;    ///< pi - |arg(1 - kappa r rtilde)|
    RVec im_nu_margin;  ///< 1/2 - |Im nu|
    double min_arg_margin = 0.0;
    double min_im_nu_margin = 0.0;
    double max_im_nu = 0.0;
    std::optional<int> winding;  ///< zero count of s11 in the box (if a potential was supplied)
    double winding_raw = 0.0;
    std::vector<std::string> failures;
    bool pass = true;
};

AssumptionReport validate_assumptions(const ScatteringData& sd, const PotentialField* p = nullptr,
                                      const WindingOptions& wopt = {}, const JostOptions& opt = {});

/// Winding number of s11 around the box [-W, W] x [0, H].
double s11_winding(const PotentialField& p, const WindingOptions& wopt = {}, const JostOptions& opt = {});

/// Symmetric uniform spectral grid on [-Z, Z] with nz points.
RVec uniform_zgrid(double Z, std::size_t nz);

}  // namespace nh
