#include "conekit/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace conekit {

Format parse_format(const std::string& text) {
    if (text == "json") {
        return Format::Json;
    }
    if (text == "csv") {
        return Format::Csv;
    }
    if (text == "md") {
        return Format::Markdown;
    }
    throw std::invalid_argument("unknown format '" + text + "' (expected json, csv or md)");
}

std::string to_json(const Report& r) {
    Json j;
    j["scenario"] = r.scenario;
    j["params"] = r.params;
    Json certs = Json::array();
    for (const auto& c : r.certificates) {
        certs.push_back({{"claim", c.claim}, {"value", c.value}, {"rule", c.rule}, {"citation", c.citation}});
    }
    j["certificates"] = std::move(certs);
    if (!r.tables.empty()) {
        Json tables = Json::object();
        for (const auto& t : r.tables) {
            Json rows = Json::array();
            for (const auto& row : t.rows) {
                Json obj = Json::object();
                for (std::size_t k = 0; k < t.headers.size() && k < row.size(); ++k) {
                    obj[t.headers[k]] = row[k];
                }
                rows.push_back(std::move(obj));
            }
            tables[t.name] = std::move(rows);
        }
        j["tables"] = std::move(tables);
    }
    j["verdict"] = r.verdict;
    return j.dump(2) + "\n";
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

void csv_line(std::ostringstream& os, const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
        os << (k ? "," : "") << csv_field(fields[k]);
    }
    os << '\n';
}

std::string md_cell(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') {
            out += "\\|";
        } else if (c == '\n') {
            out += ' ';
        } else {
            out += c;
        }
    }
    return out;
}

void md_table(std::ostringstream& os, const std::vector<std::string>& headers,
              const std::vector<std::vector<std::string>>& rows) {
    os << '|';
    for (const auto& h : headers) {
        os << ' ' << md_cell(h) << " |";
    }
    os << "\n|";
    for (std::size_t k = 0; k < headers.size(); ++k) {
        os << " --- |";
    }
    os << '\n';
    for (const auto& row : rows) {
        os << '|';
        for (const auto& cell : row) {
            os << ' ' << md_cell(cell) << " |";
        }
        os << '\n';
    }
}

std::vector<std::vector<std::string>> certificate_rows(const Report& r) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : r.certificates) {
        rows.push_back({c.claim, c.value, c.rule, c.citation});
    }
    return rows;
}

const std::vector<std::string> kCertificateHeaders{"claim", "value", "rule", "citation"};

}  // namespace

std::string to_csv(const Report& r) {
    std::ostringstream os;
    const std::size_t blocks = (r.certificates.empty() ? 0 : 1) + r.tables.size();
    if (!r.certificates.empty()) {
        if (blocks > 1) {
            os << "# certificates\n";
        }
        csv_line(os, kCertificateHeaders);
        for (const auto& row : certificate_rows(r)) {
            csv_line(os, row);
        }
    }
    for (const auto& t : r.tables) {
        if (blocks > 1) {
            if (os.tellp() > 0) {
                os << '\n';
            }
            os << "# " << t.name << '\n';
        }
        csv_line(os, t.headers);
        for (const auto& row : t.rows) {
            csv_line(os, row);
        }
    }
    return os.str();
}

std::string to_markdown(const Report& r) {
    std::ostringstream os;
    os << "# " << r.scenario << "\n\n";
    if (!r.params.empty()) {
        os << "Parameters:";
        for (const auto& [key, value] : r.params.items()) {
            os << ' ' << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump());
        }
        os << "\n\n";
    }
    if (!r.certificates.empty()) {
        os << "## Certificates\n\n";
        md_table(os, kCertificateHeaders, certificate_rows(r));
        os << '\n';
    }
    for (const auto& t : r.tables) {
        os << "## " << t.name << "\n\n";
        md_table(os, t.headers, t.rows);
        os << '\n';
    }
    os << "Verdict: " << r.verdict << '\n';
    return os.str();
}

std::string render(const Report& r, Format f) {
    switch (f) {
        case Format::Json: return to_json(r);
        case Format::Csv: return to_csv(r);
        case Format::Markdown: return to_markdown(r);
    }
    return {};
}

std::string joined_rules(const CohomReport& r, const std::string& entry) {
    std::vector<std::string> seen;
    std::string out;
    for (const auto& rule : r.rules_for(entry)) {
        if (std::find(seen.begin(), seen.end(), rule) != seen.end()) {
            continue;
        }
        seen.push_back(rule);
        out += (out.empty() ? "" : "+") + rule;
    }
    return out;
}

}  // namespace conekit
