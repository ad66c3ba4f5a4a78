#include <iostream>

#include <CLI11.hpp>

#include "nhirota/experiment.hpp"

namespace {

int dispatch(const std::string& cmd, nh::ExperimentConfig& cfg) {
    if (cmd == "scatter") return nh::run_scatter(cfg, std::cout);
    if (cmd == "evolve") return nh::run_evolve(cfg, std::cout);
    if (cmd == "asymptotics") return nh::run_asymptotics(cfg, std::cout);
    if (cmd == "compare") return nh::run_compare(cfg, std::cout);
    return nh::run_validate(cfg, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inverse scattering, long-time asymptotics and spectral evolution for the nonlocal Hirota equation"};
    app.require_subcommand(1);
    std::string config, out;
    std::uint64_t seed = 0;
    bool seed_set = false;
    for (const char* name : {"scatter", "evolve", "asymptotics", "compare", "validate"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "experiment JSON")->required();
        sub->add_option("--out", out, "output directory (overrides the config)");
        sub->add_option("--seed", seed, "seed for randomized checks")->each([&](const std::string&) { seed_set = true; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : nh::kExitConfig;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        nh::ExperimentConfig cfg = nh::load_config(config);
        if (!out.empty()) cfg.output_dir = out;
        if (seed_set) cfg.seed = seed;
        return dispatch(cmd, cfg);
    } catch (const nh::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return nh::kExitConfig;
    } catch (const nh::AssumptionError& e) {
        std::cerr << "assumption failure: " << e.what() << "\n";
        return nh::kExitAssumption;
    } catch (const nh::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return nh::kExitNumerical;
    } catch (const nh::DomainError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return nh::kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return nh::kExitNumerical;
    }
}
