#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "symdom/errors.hpp"

namespace symdom::cli {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string to_csv(const Report& r) {
    std::string s = "# symdom " SYMDOM_VERSION "\n";
    for (std::size_t i = 0; i < r.columns.size(); ++i) s += (i ? "," : "") + r.columns[i];
    s += '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_number(row[i]);
        s += '\n';
    }
    return s;
}

namespace {

nlohmann::ordered_json number(double x) {
    if (std::isfinite(x)) return x;
    return format_number(x);
}

} // namespace

std::string to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["version"] = SYMDOM_VERSION;
    j["command"] = r.command;
    j["config"] = r.config;
    j["pass"] = r.pass;
    j["summary"] = r.summary;
    j["columns"] = r.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        auto jr = nlohmann::ordered_json::array();
        for (double x : row) jr.push_back(number(x));
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::InvalidParameter, "cannot write " + tmp.string());
        out << content;
        if (!out.flush()) fail(ErrorKind::InvalidParameter, "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        fail(ErrorKind::InvalidParameter, "cannot rename onto " + path + ": " + ec.message());
    }
}

} // namespace symdom::cli
