// catgap — configure a damped quantized toral system and run any of its
// computations; deterministic artifacts under --out
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catgap/cli/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for damped quantized toral maps and "
                 "symbolic pressure bounds"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string configPath;
    std::string outDir = "out";
    std::string route;
    std::vector<int> nOverride;
    std::uint64_t seedOverride = 0;
    bool seedSet = false;
    std::uint64_t capOverride = 0;

    app.add_option("--config", configPath, "configuration file (key = value sections)");
    app.add_option("--out", outDir, "output directory for artifacts");
    app.add_option("--seed", seedOverride, "override the configured seed")
        ->each([&](const std::string&) { seedSet = true; });
    app.add_option("--N", nOverride, "override the Hilbert dimension list");
    app.add_option("--cap", capOverride, "override the enumeration cap");
    app.add_option("--route", route, "pressure route: transfer|brute|separated|all");
    bool dump = false;
    app.add_flag("--dump", dump, "also dump propagator matrices as complex128 binaries");

    const std::vector<std::string> commands = {"pressure",   "entropy",     "counting-lemma",
                                               "spectrum",   "gap-scan",    "mass-scan",
                                               "functional", "dispersive-check",
                                               "subinvariance", "selftest"};
    for (const auto& c : commands) app.add_subcommand(c);

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        catgap::cli::CommandContext ctx;
        ctx.cfg = configPath.empty() ? catgap::cli::RunConfig{}
                                     : catgap::cli::load_config(configPath);
        if (seedSet) ctx.cfg.seed = seedOverride;
        if (!nOverride.empty()) ctx.cfg.NList = nOverride;
        if (capOverride) ctx.cfg.enumerationCap = capOverride;
        ctx.cfg.validate();
        ctx.outDir = outDir;
        ctx.dumpMatrices = dump;
        return catgap::cli::run_command(command, ctx, route);
    } catch (const catgap::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const catgap::CapExceeded& e) {
        std::fprintf(stderr, "cap exceeded: %s\n", e.what());
        return 3;
    } catch (const catgap::ContractViolation& e) {
        std::fprintf(stderr, "numerical contract violation: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
