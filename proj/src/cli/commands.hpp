#pragma once

#include <cstdint>
#include <string>

#include "report.hpp"
#include "symdom/approx.hpp"

namespace symdom::cli {

struct RunConfig {
    std::string command;
    std::string domain = "0,1,1";
    int dim = 2;
    std::string weight = "beta=0,gamma=0";
    int nmax = 8;
    int quad_degree = -1;
    std::uint64_t seed = 1;
    int samples = 0;  // 0: command default
    std::string out;
    std::string format = "csv";
    std::string f = "builtin:expcos";
    std::string emit_grid;
    std::string center = "0.2,0.1,0.6";
    int bins = 10;
};

namespace tol {
inline constexpr double gram2 = 1e-9;
inline constexpr double gram3 = 1e-8;
inline constexpr double eigen2 = 1e-8;
inline constexpr double eigen3 = 1e-7;
inline constexpr double kernel = 1e-8;
inline constexpr double map = 1e-13;
inline constexpr double localization_ratio = 1e2;
}  // namespace tol

struct ParsedWeight {
    double k1 = 0.0, k2 = 0.0, k3 = 0.0;
    bool beta_gamma = false;
    CurvedWeightParams curved() const { return {k1, k2, k3}; }
    BallWeightParams ball() const { return {k2, k3}; }
};

ParsedWeight parse_weight(const std::string& s);
DomainParams2 parse_domain(const std::string& s);
Point3 parse_point3(const std::string& s);

Report cmd_gram(const RunConfig& c);
Report cmd_eigen(const RunConfig& c);
Report cmd_kernel(const RunConfig& c);
Report cmd_project(const RunConfig& c);
Report cmd_converge(const RunConfig& c);
Report cmd_localize(const RunConfig& c);
Report cmd_mapcheck(const RunConfig& c);

Report run_command(const RunConfig& c);

enum ExitCode { Pass = 0, ConfigError = 1, ToleranceBreach = 2, InternalFailure = 3 };

/// Exit code for a library error: parameter problems are configuration errors.
int exit_code_for(const Error& e);

} // namespace symdom::cli
