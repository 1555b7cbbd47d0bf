#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace symdom::cli {

struct Report {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    bool pass = true;
};

/// %.17g, with nan/inf spelled out.
std::string format_number(double x);

std::string to_csv(const Report& r);
std::string to_json(const Report& r);

/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::string& path, const std::string& content);

} // namespace symdom::cli
