#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symdom/approx.hpp"

namespace symdom::cli {

/// Test function for the approximation commands: either a builtin formula or
/// values tabulated on the quadrature grid.
struct FunctionSpec {
    std::string name;
    Func f;
    std::optional<std::vector<double>> table;
};

/// builtin:expcos, builtin:poly, builtin:one, table:PATH.
FunctionSpec resolve_function(const std::string& spec, int dim, const SampleRule& grid);

std::vector<std::string> builtin_names();

/// Writes the grid as CSV rows x1,x2[,x3],weight.
void write_grid(const std::string& path, const SampleRule& grid, int dim);

} // namespace symdom::cli
