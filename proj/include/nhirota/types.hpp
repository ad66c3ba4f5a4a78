#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nh {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cplx kI{0.0, 1.0};

/// Invalid configuration or argument outside the documented domain.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Input lies outside the analytic domain of a special function.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A standing hypothesis of the theory is violated by the data.
class AssumptionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Loss of accuracy, blow-up, or a solver that could not converge.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parameter set (alpha, beta, kappa) of the equation.
struct Params {
    double alpha = 0.0;
    double beta = 1.0;
    int kappa = 1;

    void validate() const;
};

}  // namespace nh
