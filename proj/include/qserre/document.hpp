#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qserre/report.hpp"
#include "qserre/series.hpp"

namespace qserre {

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> r) {
        if (r.size() != columns.size()) throw std::logic_error("row width differs from header in table " + name);
        rows.push_back(std::move(r));
    }
};

// Result of one CLI command: verdicts, tables of computed values and free-form notices.
struct Document {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::vector<Report> reports;
    std::vector<Table> tables;
    std::vector<std::string> notices;

    bool passed() const {
        for (const auto& r : reports)
            if (!r.passed) return false;
        return true;
    }
    void add(Report r) { reports.push_back(std::move(r)); }
    void add(const std::vector<Report>& rs) { reports.insert(reports.end(), rs.begin(), rs.end()); }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["command"] = command;
        j["config"] = config;
        j["passed"] = passed();
        j["reports"] = nlohmann::json::array();
        for (const auto& r : reports) j["reports"].push_back(r.to_json());
        j["tables"] = nlohmann::json::object();
        for (const auto& t : tables) j["tables"][t.name] = {{"columns", t.columns}, {"rows", t.rows}};
        j["notices"] = notices;
        return j;
    }
};

// Coefficients 0..order of named series side by side.
inline Table series_table(const std::string& name, const std::vector<std::pair<std::string, UniSeries>>& series) {
    Table t{name, {"k"}, {}};
    int order = -1;
    for (const auto& [label, s] : series) {
        t.columns.push_back(label);
        order = std::max(order, s.order());
    }
    for (int k = 0; k <= order; ++k) {
        std::vector<std::string> row{std::to_string(k)};
        for (const auto& [label, s] : series) row.push_back(k <= s.order() ? s[k].get_str() : "");
        t.add_row(std::move(row));
    }
    return t;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
    return r + "\"";
}

inline std::string md_cell(const std::string& s) {
    std::string r;
    for (char c : s) r += c == '|' ? std::string("\\|") : std::string(1, c);
    return r;
}

}  // namespace detail

// Long format: section,name,key,value. Reports give one row per verdict and one per message.
inline std::string render_csv(const Document& d) {
    std::ostringstream os;
    auto row = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& v) {
        os << detail::csv_field(a) << ',' << detail::csv_field(b) << ',' << detail::csv_field(c) << ','
           << detail::csv_field(v) << '\n';
    };
    row("section", "name", "key", "value");
    row("summary", d.command, "passed", d.passed() ? "true" : "false");
    for (const auto& r : d.reports) {
        row("report", r.name, "passed", r.passed ? "true" : "false");
        for (const auto& m : r.messages) row("report", r.name, "message", m);
    }
    for (const auto& t : d.tables)
        for (std::size_t i = 0; i < t.rows.size(); ++i)
            for (std::size_t c = 0; c < t.columns.size(); ++c)
                row("table:" + t.name, std::to_string(i), t.columns[c], t.rows[i][c]);
    for (const auto& n : d.notices) row("notice", d.command, "text", n);
    return os.str();
}

inline std::string render_markdown(const Document& d) {
    std::ostringstream os;
    os << "# " << d.command << "\n\n";
    os << "Overall: **" << (d.passed() ? "PASS" : "FAIL") << "**\n\n";
    if (!d.config.empty()) {
        os << "Configuration:";
        for (const auto& [k, v] : d.config.items()) os << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
        os << "\n\n";
    }
    if (!d.reports.empty()) {
        os << "## Checks\n\n";
        for (const auto& r : d.reports) {
            os << "- " << (r.passed ? "PASS" : "FAIL") << " " << r.name << "\n";
            for (const auto& m : r.messages) os << "  - " << m << "\n";
        }
        os << "\n";
    }
    for (const auto& t : d.tables) {
        os << "## " << t.name << "\n\n|";
        for (const auto& c : t.columns) os << ' ' << detail::md_cell(c) << " |";
        os << "\n|";
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << " --- |";
        os << "\n";
        for (const auto& r : t.rows) {
            os << "|";
            for (const auto& c : r) os << ' ' << detail::md_cell(c) << " |";
            os << "\n";
        }
        os << "\n";
    }
    if (!d.notices.empty()) {
        os << "## Notices\n\n";
        for (const auto& n : d.notices) os << "- " << n << "\n";
    }
    return os.str();
}

inline std::string render(const Document& d, const std::string& format) {
    if (format == "json") return d.to_json().dump(2) + "\n";
    if (format == "csv") return render_csv(d);
    if (format == "markdown") return render_markdown(d);
    throw std::invalid_argument("unknown format " + format);
}

}  // namespace qserre
