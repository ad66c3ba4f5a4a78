#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "nhirota/asymptotics.hpp"
#include "nhirota/grid.hpp"
#include "nhirota/io.hpp"
#include "nhirota/pde.hpp"
#include "nhirota/scattering.hpp"

namespace nh {

/// One experiment, parsed from a JSON file with typed sections.
struct ExperimentConfig {
    DatumSpec datum;
    Params model;
    double z_max = 6.0;
    std::size_t n_z = 513;
    GridSpec1D scatter_grid{-20.0, 20.0, 1024};
    WindingOptions winding;
    bool check_winding = true;
    EvolutionConfig evolution;
    std::optional<double> ray_xi;
    RVec ray_t;
    std::vector<std::pair<double, double>> points;  ///< explicit (x, t) evaluation points
    bool strict_paper_constants = true;
    std::uint64_t seed = 0;
    std::string output_dir = ".";
    std::string scattering_csv;  ///< optional precomputed scattering table

    /// (x, t) evaluation set from the ray spec and the explicit points.
    std::vector<std::pair<double, double>> evaluation_points() const;
};

/// Parses and validates; throws ConfigError on missing or malformed fields.
ExperimentConfig parse_config(const std::string& json_text, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

struct ScatterResult {
    PotentialField potential;
    ScatteringData data;
    ScatteringResiduals residuals;
    AssumptionReport report;
};

ScatterResult compute_scatter(const ExperimentConfig& cfg);

CsvTable scattering_table(const ScatteringData& sd);
ScatteringData scattering_from_table(const CsvTable& t, const Params& model);

/// PDE sample at arbitrary x by trigonometric interpolation.
cplx spectral_sample(const ComplexField& f, double x);

struct SlopeFit {
    double slope = std::nan("");
    double stderr_ = std::nan("");
};
/// Least-squares slope of log y against log x; NaN when undefined.
SlopeFit loglog_slope(const RVec& x, const RVec& y);

struct CompareRow {
    double t, x;
    cplx q_asy, q_pde;
    double abs_err, rel_err;
};

struct CompareResult {
    std::vector<CompareRow> rows;
    SlopeFit err_fit, rel_fit, amp_fit;
    double xi_order = -0.75;
    double max_im_nu = 0.0;
};

CompareResult compute_compare(const ExperimentConfig& cfg, std::ostream& log);

/// Full invariant suite. Each line of the manifest reads "name = PASS|FAIL value".
struct ValidationLine {
    std::string name;
    bool pass;
    double value;
    double tol;
};
std::vector<ValidationLine> run_validation_suite(const ExperimentConfig& cfg, std::uint64_t seed);

// Subcommands; each returns the process exit code and writes artifacts under cfg.output_dir.
int run_scatter(const ExperimentConfig& cfg, std::ostream& log);
int run_evolve(const ExperimentConfig& cfg, std::ostream& log);
int run_asymptotics(const ExperimentConfig& cfg, std::ostream& log);
int run_compare(const ExperimentConfig& cfg, std::ostream& log);
int run_validate(const ExperimentConfig& cfg, std::ostream& log);

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitAssumption = 3, kExitNumerical = 4 };

}  // namespace nh
