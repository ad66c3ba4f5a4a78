#include "nhirota/grid.hpp"

#include <algorithm>
#include <cmath>

#include "nhirota/io.hpp"

namespace nh {

RVec GridSpec1D::points() const {
    RVec p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = x(j);
    return p;
}

void GridSpec1D::validate() const {
    if (n < 4 || n % 2 != 0) throw ConfigError("grid: n must be even and >= 4");
    if (!(x_max > 0.0) || !std::isfinite(x_max)) throw ConfigError("grid: x_max must be positive");
    if (std::abs(x_min + x_max) > 1e-12 * x_max) throw ConfigError("grid: grid must be symmetric (x_min = -x_max)");
}

double ComplexField::boundary_ratio() const {
    const std::size_t n = samples.size();
    double peak = 0.0;
    for (const auto& v : samples) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    const std::size_t edge = std::max<std::size_t>(1, n / 40);  // 2.5% on each side
    double outer = 0.0;
    for (std::size_t j = 0; j < edge; ++j) {
        outer = std::max(outer, std::abs(samples[j]));
        outer = std::max(outer, std::abs(samples[n - 1 - j]));
    }
    return outer / peak;
}

void ComplexField::check_decay(double tol) const {
    const double r = boundary_ratio();
    if (r > tol)
        throw ConfigError("field does not decay at the boundary (edge/peak ratio " + fmt17(r) + ")");
}

ComplexField make_datum(const DatumSpec& spec, const GridSpec1D& grid) {
    grid.validate();
    ComplexField f;
    f.grid = grid;
    f.samples.assign(grid.n, 0.0);
    if (!spec.csv_path.empty()) {
        const CsvTable t = read_csv(spec.csv_path);
        if (t.header.size() < 3) throw ConfigError("datum csv needs columns x, Re u, Im u");
        std::vector<std::pair<double, cplx>> pts;
        for (const auto& r : t.rows) pts.push_back({r[0], cplx(r[1], r[2])});
        std::sort(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.first < b.first; });
        for (std::size_t j = 0; j < grid.n; ++j) {
            const double x = grid.x(j);
            auto it = std::lower_bound(pts.begin(), pts.end(), x, [](auto& p, double v) { return p.first < v; });
            if (it == pts.end() || it == pts.begin()) {
                if (it != pts.end() && it->first == x) f.samples[j] = it->second;
                continue;
            }
            auto lo = it - 1;
            const double w = (x - lo->first) / (it->first - lo->first);
            f.samples[j] = (1.0 - w) * lo->second + w * it->second;
        }
        return f;
    }
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double x = grid.x(j);
        const double s = (x - spec.center) / spec.width;
        cplx v = 0.0;
        if (spec.kind == "zero") {
            v = 0.0;
        } else if (spec.kind == "gaussian") {
            v = spec.amplitude * std::exp(-s * s);
        } else if (spec.kind == "gaussian_chirp") {
            v = spec.amplitude * std::exp(cplx(-s * s, spec.chirp * x));
        } else if (spec.kind == "sech") {
            v = spec.amplitude / std::cosh(s);
        } else if (spec.kind == "constant") {
            v = spec.amplitude;
        } else {
            throw ConfigError("unknown datum kind '" + spec.kind + "'");
        }
        f.samples[j] = v;
    }
    return f;
}

UniformInterpolant::UniformInterpolant(double x0, double h, CVec values, int order)
    : x0_(x0), h_(h), v_(std::move(values)), order_(order) {}

cplx UniformInterpolant::operator()(double x) const {
    const double s = (x - x0_) / h_;
    const long n = long(v_.size());
    const long base = long(std::floor(s));
    if (base < 0 || base > n - 1) return 0.0;
    const double frac = s - double(base);
    if (frac == 0.0) return v_[std::size_t(base)];
    long lo = base - order_ / 2 + 1;
    lo = std::clamp(lo, 0L, std::max(0L, n - order_));
    const long hi = std::min(n - 1, lo + order_ - 1);
    // Barycentric weights for equispaced nodes: w_i = (-1)^i C(m, i).
    const int m = int(hi - lo);
    cplx num = 0.0;
    double den = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= m; ++i) {
        const double w = ((i % 2) ? -binom : binom) / (s - double(lo + i));
        num += w * v_[std::size_t(lo + i)];
        den += w;
        binom = binom * double(m - i) / double(i + 1);
    }
    return num / den;
}

}  // namespace nh
