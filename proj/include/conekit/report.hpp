#pragma once

// Deterministic rendering of command results as JSON, CSV or Markdown.

#include <string>
#include <vector>

#include "json.hpp"

#include "conekit/cohomology.hpp"

namespace conekit {

using Json = nlohmann::ordered_json;

struct CertificateRow {
    std::string claim;
    std::string value;
    std::string rule;
    std::string citation;
};

struct Table {
    std::string name;
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    std::string scenario;
    Json params = Json::object();
    std::vector<CertificateRow> certificates;
    std::vector<Table> tables;
    std::string verdict;
    /// Drives the process exit code: false means some check failed.
    bool ok = true;
};

enum class Format { Json, Csv, Markdown };

/// "json", "csv" or "md".
Format parse_format(const std::string& text);

std::string to_json(const Report& r);
std::string to_csv(const Report& r);
std::string to_markdown(const Report& r);
std::string render(const Report& r, Format f);

/// Rule tokens recorded for `entry`, joined with '+'.
std::string joined_rules(const CohomReport& r, const std::string& entry);

}  // namespace conekit
