#include <doctest.h>

#include "nhirota/experiment.hpp"
#include "nhirota/pde.hpp"

#include <thread>

using namespace nh;

namespace {

ComplexField datum(const std::string& kind, double amp, const GridSpec1D& g, double width = 1.0) {
    DatumSpec d;
    d.kind = kind;
    d.amplitude = amp;
    d.width = width;
    return make_datum(d, g);
}

EvolutionConfig uniform_config(double dt) {
    EvolutionConfig c;
    c.grid = {-10.0, 10.0, 64};
    c.alpha = 1.0;
    c.beta = 0.7;
    c.kappa = 1;
    c.dt = dt;
    c.t_end = 1.0;
    c.require_decay = false;
    return c;
}

double max_diff(const CVec& a, const CVec& b) {
    double e = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) e = std::max(e, std::abs(a[j] - b[j]));
    return e;
}

}  // namespace

TEST_CASE("reflect_conjugate") {
    const GridSpec1D g{-10.0, 10.0, 256};
    const ComplexField even = datum("gaussian", 0.7, g);
    CHECK(max_diff(reflect_conjugate(even).samples, even.samples) == 0.0);

    ComplexField wave{g, CVec(g.n), 0.0};
    for (std::size_t j = 0; j < g.n; ++j) wave.samples[j] = std::exp(cplx(0.0, g.x(j)));
    const ComplexField rw = reflect_conjugate(wave);
    // j = 0 is its own periodic image, and e^{ix} is not periodic on this box
    for (std::size_t j = 1; j < g.n; ++j) CHECK(std::abs(rw.samples[j] - wave.samples[j]) < 1e-14);

    ComplexField f{g, CVec(g.n), 0.0};
    for (std::size_t j = 0; j < g.n; ++j) f.samples[j] = cplx(1.0, 2.0) * std::exp(-std::pow(g.x(j) - 1.0, 2));
    const ComplexField out = reflect_conjugate(f);
    for (std::size_t j : {30u, 128u, 200u}) {
        const double x = g.x(j);
        CHECK(std::abs(out.samples[j] - cplx(1.0, -2.0) * std::exp(-std::pow(x + 1.0, 2))) < 1e-15);
    }
}

TEST_CASE("zero datum stays zero") {
    EvolutionConfig c;
    c.grid = {-20.0, 20.0, 256};
    const Trajectory tr = evolve(datum("zero", 0.0, c.grid), c);
    for (const auto& v : tr.frames.back().samples) CHECK(v == cplx(0.0));
    c.output_times = {0.0, 0.1, 0.2};
    const RVec r = residual(evolve(datum("zero", 0.0, c.grid), c), c);
    CHECK(r.size() == 1);
    CHECK(r[0] == 0.0);
}

TEST_CASE("x-independent exact solution") {
    const EvolutionConfig c = uniform_config(0.0025);
    const Trajectory tr = evolve(datum("constant", 1.0, c.grid), c);
    CHECK(max_diff(tr.frames.back().samples, CVec(c.grid.n, std::exp(cplx(0.0, -2.0)))) < 1e-8);
    CHECK(tr.frames.back().time == 1.0);

    EvolutionConfig r = uniform_config(1e-3);
    r.t_end = 0.01;
    for (int i = 0; i <= 10; ++i) r.output_times.push_back(i * 1e-3);
    for (double v : residual(evolve(datum("constant", 0.5, r.grid), r), r)) CHECK(v < 1e-6);
}

TEST_CASE("linear regime matches the exact propagator") {
    EvolutionConfig c;
    c.grid = {-20.0, 20.0, 512};
    c.alpha = 1.0;
    c.beta = 1.0;
    const ComplexField u0 = datum("gaussian", 1e-6, c.grid);
    const ComplexField a = evolve(u0, c).frames.back(), b = linear_propagate(u0, c, 1.0);
    double m = 0.0;
    for (const auto& v : b.samples) m = std::max(m, std::abs(v));
    CHECK(max_diff(a.samples, b.samples) / m < 1e-8);
}

TEST_CASE("fourth-order convergence in dt") {
    EvolutionConfig c;
    c.grid = {-30.0, 30.0, 128};
    c.alpha = 1.0;
    c.beta = 1.0;
    const ComplexField u0 = datum("gaussian", 0.8, c.grid, 2.0);
    c.dt = 0.0025 / 8;
    const CVec ref = evolve(u0, c).frames.back().samples;
    RVec dts = {0.01, 0.005, 0.0025}, errs;
    for (double dt : dts) {
        c.dt = dt;
        errs.push_back(max_diff(evolve(u0, c).frames.back().samples, ref));
    }
    CHECK(std::abs(loglog_slope(dts, errs).slope - 4.0) < 0.3);
}

TEST_CASE("residual is second order in the output spacing") {
    EvolutionConfig c;
    c.grid = {-20.0, 20.0, 256};
    c.alpha = 1.0;
    c.beta = 1.0;
    c.dt = 0.001;
    c.t_end = 0.2;
    const ComplexField u0 = datum("gaussian", 0.5, c.grid, 3.0);
    auto mid = [&](double spacing) {
        c.output_times = {0.1 - spacing, 0.1, 0.1 + spacing};
        return residual(evolve(u0, c), c)[0];
    };
    const double ratio = mid(0.02) / mid(0.01);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("configuration errors") {
    EvolutionConfig c;
    c.grid = {-20.0, 20.0, 256};
    c.dt = -1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.dt = 0.01;
    c.output_times = {0.5, 0.2};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.output_times = {};
    CHECK_THROWS_AS(evolve(datum("constant", 1.0, c.grid), c), ConfigError);
    c.dt = 1.0;
    CHECK_THROWS_AS(evolve(datum("gaussian", 3.0, c.grid), c), ConfigError);
}

TEST_CASE("blow-up is a numerical failure") {
    EvolutionConfig c;
    c.grid = {-20.0, 20.0, 256};
    c.blowup = 0.5;
    CHECK_THROWS_AS(evolve(datum("gaussian", 1.0, c.grid), c), NumericalError);
}

TEST_CASE("quasi-power is logged") {
    EvolutionConfig c;
    c.grid = {-20.0, 20.0, 256};
    c.output_times = {0.0, 0.5, 1.0};
    const ComplexField u0 = datum("gaussian", 0.3, c.grid);
    const Trajectory tr = evolve(u0, c);
    CHECK(tr.quasi_power.size() == 3);
    CHECK(std::abs(tr.quasi_power[0] - quasi_power(u0)) < 1e-15);
    CHECK(tr.quasi_power[0].real() == doctest::Approx(0.09 * std::sqrt(kPi / 2.0)).epsilon(1e-10));
    CHECK(std::isfinite(tr.quasi_power_drift));
}

TEST_CASE("independent trajectories can run concurrently") {
    EvolutionConfig c;
    c.grid = {-20.0, 20.0, 256};
    const ComplexField u0 = datum("gaussian", 0.4, c.grid);
    const CVec serial = evolve(u0, c).frames.back().samples;
    std::vector<CVec> out(4);
    std::vector<std::thread> ts;
    for (int i = 0; i < 4; ++i) ts.emplace_back([&, i] { out[i] = evolve(u0, c).frames.back().samples; });
    for (auto& t : ts) t.join();
    for (const auto& o : out) CHECK(max_diff(o, serial) == 0.0);
}

TEST_CASE("linear time reversal") {
    EvolutionConfig c;
    c.grid = {-20.0, 20.0, 512};
    c.alpha = 1.0;
    c.beta = 1.0;
    c.linear = true;
    const ComplexField u0 = datum("gaussian", 0.5, c.grid);
    const ComplexField fwd = evolve(u0, c).frames.back();
    const ComplexField back = linear_propagate(fwd, c, -c.t_end);
    CHECK(max_diff(back.samples, u0.samples) < 1e-8);
}

TEST_CASE("spectral accuracy in x") {
    EvolutionConfig c;
    c.alpha = 0.0;
    c.beta = 1.0;
    c.dt = 0.01;
    std::vector<ComplexField> out;
    for (std::size_t n : {4096u, 8192u}) {
        c.grid = {-200.0, 200.0, n};
        out.push_back(evolve(datum("gaussian", 0.3, c.grid), c).frames.back());
    }
    double e = 0.0;
    for (std::size_t j = 0; j < out[0].grid.n; ++j) e = std::max(e, std::abs(out[0].samples[j] - out[1].samples[2 * j]));
    CHECK(e < 1e-10);
}
