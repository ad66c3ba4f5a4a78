#pragma once

#include <cstddef>

#include "nhirota/types.hpp"

namespace nh {

/// Uniform periodic-style grid x_j = x_min + j h, j = 0..n-1, h = (x_max - x_min)/n.
struct GridSpec1D {
    double x_min = -1.0;
    double x_max = 1.0;
    std::size_t n = 2;

    double h() const { return (x_max - x_min) / double(n); }
    double x(std::size_t j) const { return x_min + double(j) * h(); }
    RVec points() const;
    /// Index of -x_j under the periodic convention (j = 0 maps to itself).
    std::size_t reflect(std::size_t j) const { return j == 0 ? 0 : n - j; }
    /// Throws ConfigError unless n is even and x_min = -x_max < 0.
    void validate() const;
};

/// Samples of u(x) at a fixed time.
struct ComplexField {
    GridSpec1D grid;
    CVec samples;
    double time = 0.0;

    /// max |u| over the outer 5% of points divided by max |u| (0 for the zero field).
    double boundary_ratio() const;
    /// Throws ConfigError if boundary_ratio() > tol.
    void check_decay(double tol = 1e-8) const;
};

/// Closed-form initial data by name: "zero", "gaussian", "gaussian_chirp", "sech", "constant".
/// gaussian: A exp(-(x-x0)^2 / w^2) exp(i c x).
struct DatumSpec {
    std::string kind = "gaussian";
    double amplitude = 0.3;
    double width = 1.0;
    double center = 0.0;
    double chirp = 0.0;
    std::string csv_path;
};

ComplexField make_datum(const DatumSpec& spec, const GridSpec1D& grid);

/// Local Lagrange interpolation on a uniform grid, used to sample a potential between nodes.
class UniformInterpolant {
  public:
    UniformInterpolant(double x0, double h, CVec values, int order = 8);
    cplx operator()(double x) const;

  private:
    double x0_, h_;
    CVec v_;
    int order_;
};

}  // namespace nh
