#pragma once

#include <string>

#include "nhirota/grid.hpp"
#include "nhirota/types.hpp"

namespace nh {

struct EvolutionConfig {
    GridSpec1D grid{-200.0, 200.0, 8192};
    double dt = 0.01;
    double t_end = 1.0;
    double alpha = 0.0;
    double beta = 1.0;
    int kappa = 1;
    double dealias = 2.0 / 3.0;  ///< retained fraction of the wavenumber range for the nonlinear term
    RVec output_times;           ///< empty: {0, t_end}
    double blowup = 1e6;
    bool linear = false;           ///< drop the nonlinear terms
    bool require_decay = true;     ///< enforce the decaying-data contract on u0
    double stability_limit = 2.8;  ///< bound on dt times the nonlinear rate estimate

    /// Throws ConfigError on invalid fields.
    void validate() const;
    /// dt times the largest nonlinear rate for a field of amplitude u_max.
    double stiffness(double u_max) const;
};

struct Trajectory {
    std::vector<ComplexField> frames;
    CVec quasi_power;  ///< h sum u(x) conj(u(-x)) at each frame
    double quasi_power_drift = 0.0;
    std::size_t steps = 0;
};

/// conj(f(-x)) by index reflection (j -> n - j, j = 0 fixed).
ComplexField reflect_conjugate(const ComplexField& f);

Trajectory evolve(const ComplexField& u0, const EvolutionConfig& cfg);

/// Exact solution of the linearized equation by Fourier propagation.
ComplexField linear_propagate(const ComplexField& u0, const EvolutionConfig& cfg, double t);

/// Per interior frame: grid L2 norm of the equation residual with central time differences.
RVec residual(const Trajectory& traj, const EvolutionConfig& cfg);

/// h sum u conj(u(-x)).
cplx quasi_power(const ComplexField& f);

}  // namespace nh
