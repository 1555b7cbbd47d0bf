#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

using namespace symdom;
using namespace symdom::cli;

int main(int argc, char** argv) {
    CLI::App app{"Orthogonal polynomials on symmetric curved domains"};
    app.set_version_flag("--version", std::string(SYMDOM_VERSION));
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key=value file");

    RunConfig cfg;
    // Comma lists stay one string, also when they arrive split from a config file.
    auto list = [](CLI::Option* o) { return o->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join); };
    list(app.add_option("--domain", cfg.domain, "Domain parameters a,b,c"))->capture_default_str();
    app.add_option("--dim", cfg.dim, "Dimension of the domain (2 or 3)")->capture_default_str();
    list(app.add_option("--weight", cfg.weight, "k1=..,k2=..,k3=.. or beta=..,gamma=.."))->capture_default_str();
    app.add_option("--nmax", cfg.nmax, "Maximum degree")->capture_default_str();
    app.add_option("--quad-degree", cfg.quad_degree, "Quadrature exactness (-1: automatic)")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for random point sets")->capture_default_str();
    app.add_option("--samples", cfg.samples, "Sample count (0: command default)")->capture_default_str();
    app.add_option("--out", cfg.out, "Output path (default: stdout)");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--f", cfg.f, "builtin:expcos|poly|one or table:PATH")->capture_default_str();
    app.add_option("--emit-grid", cfg.emit_grid, "Write the quadrature grid used by project/converge");
    list(app.add_option("--center", cfg.center, "Center x1,x2,t for localize"))->capture_default_str();
    app.add_option("--bins", cfg.bins, "Distance bins for localize")->capture_default_str();

    const std::pair<const char*, const char*> commands[] = {
        {"gram", "Gram matrix deviation of the orthonormal basis per degree"},
        {"eigen", "Eigenvalue residuals of the spectral operator"},
        {"kernel", "Reproducing kernel: closed form, parity average and basis sum"},
        {"project", "Expansion coefficients of a test function"},
        {"converge", "L2 errors of partial sums"},
        {"localize", "Distance profile of the localized kernel"},
        {"mapcheck", "Round trips of the quadratic map"},
    };
    for (const auto& [name, help] : commands)
        app.add_subcommand(name, help)->callback([&cfg, n = name] { cfg.command = n; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Pass : ConfigError;
    }

    try {
        Report r = run_command(cfg);
        std::string text = cfg.format == "json" ? to_json(r) : to_csv(r);
        if (cfg.out.empty()) std::cout << text << std::flush;
        else write_atomic(cfg.out, text);
        if (!r.pass) {
            std::cerr << "symdom " << cfg.command << ": tolerance breach\n";
            return ToleranceBreach;
        }
        return Pass;
    } catch (const Error& e) {
        std::cerr << "symdom " << cfg.command << ": " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "symdom " << cfg.command << ": internal failure: " << e.what() << "\n";
        return InternalFailure;
    }
}
