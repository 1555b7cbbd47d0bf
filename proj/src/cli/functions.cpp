#include "functions.hpp"

#include <cmath>
#include <algorithm>
#include <fstream>
#include <sstream>

#include "report.hpp"

namespace symdom::cli {

std::vector<std::string> builtin_names() { return {"builtin:expcos", "builtin:poly", "builtin:one"}; }

namespace {

std::vector<double> read_table(const std::string& path, int dim, const SampleRule& grid) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidParameter, "cannot open table file " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        std::vector<double> cols;
        double x;
        while (row >> x) cols.push_back(x);
        if (int(cols.size()) != dim + 1)
            fail(ErrorKind::InvalidParameter, "table rows need " + std::to_string(dim + 1) + " columns (coordinates, value)");
        const std::size_t q = values.size();
        if (q >= grid.size()) fail(ErrorKind::InvalidParameter, "table has more rows than the quadrature grid");
        for (int d = 0; d < dim; ++d)
            if (std::abs(cols[d] - grid.nodes[q][d]) > 1e-12)
                fail(ErrorKind::InvalidParameter, "table row " + std::to_string(q + 1) + " does not match the grid node");
        values.push_back(cols[dim]);
    }
    if (values.size() != grid.size())
        fail(ErrorKind::InvalidParameter, "table has " + std::to_string(values.size()) + " rows, grid has "
                                              + std::to_string(grid.size()));
    return values;
}

} // namespace

FunctionSpec resolve_function(const std::string& spec, int dim, const SampleRule& grid) {
    FunctionSpec out;
    out.name = spec;
    const int last = dim == 3 ? 2 : 1;
    if (spec == "builtin:expcos") {
        out.f = [last](const Pt& p) { return std::exp(p[0]) * std::cos(p[last] * p[last]); };
    } else if (spec == "builtin:poly") {
        out.f = [dim](const Pt& p) {
            return dim == 3 ? p[0] * p[0] + p[1] * p[1] + p[2] * p[2] : p[0] * p[0] + p[1] * p[1];
        };
    } else if (spec == "builtin:one") {
        out.f = [](const Pt&) { return 1.0; };
    } else if (spec.rfind("table:", 0) == 0) {
        out.table = read_table(spec.substr(6), dim, grid);
    } else {
        fail(ErrorKind::InvalidParameter, "unknown function '" + spec + "' (use builtin:expcos|poly|one or table:PATH)");
    }
    return out;
}

void write_grid(const std::string& path, const SampleRule& grid, int dim) {
    std::ostringstream os;
    os << "# symdom " << SYMDOM_VERSION << "\n";
    os << (dim == 3 ? "x1,x2,t,weight\n" : "u,v,weight\n");
    for (std::size_t q = 0; q < grid.size(); ++q) {
        for (int d = 0; d < dim; ++d) os << format_number(grid.nodes[q][d]) << ',';
        os << format_number(grid.weights[q]) << '\n';
    }
    write_atomic(path, os.str());
}

} // namespace symdom::cli
