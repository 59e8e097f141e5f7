// report.hpp
// Tabular experiment reports and their CSV / JSON serializations. Output
// bytes depend only on the report contents.
//
// CSV layout: a "# config" section (key,value), then one section per table in
// name order, then "# checks" (name,lhs,rhs,pass). Each section is its title
// line, a header row, data rows and one blank line. Reals use %.12g.
//
// JSON layout: {"checks": [...], "config": {...}, "tables": {name: {"columns",
// "rows"}}} with sorted keys and reals at full round-trip precision.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace primesum::report {

using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

// Non-finite reals become empty cells; integers above INT64_MAX become reals.
Cell real(double v);
Cell integer(std::uint64_t v);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    friend bool operator==(const Table&, const Table&) = default;
};

// One recorded inequality or identity. Names carry an "exact:" prefix for
// unconditional statements and "asymptotic:" for ones only reported.
struct Check {
    std::string name;
    Cell lhs;
    Cell rhs;
    bool pass = false;

    friend bool operator==(const Check&, const Check&) = default;
};

struct FinalReport {
    std::map<std::string, Cell> config;
    std::map<std::string, Table> tables;
    std::vector<Check> checks;

    void check(std::string name, Cell lhs, Cell rhs, bool pass) {
        checks.push_back({std::move(name), std::move(lhs), std::move(rhs), pass});
    }
    // nullptr when absent.
    const Check* find_check(const std::string& name) const;
    // True when every check whose name starts with "exact:" passed.
    bool exact_checks_pass() const;

    friend bool operator==(const FinalReport&, const FinalReport&) = default;
};

enum class Format { Csv, Json };

// "csv" or "json"; ConfigError otherwise.
Format parse_format(const std::string& s);

std::string format_real(double v);

nlohmann::json to_json(const FinalReport& r);
FinalReport from_json(const nlohmann::json& j);

std::string to_csv(const FinalReport& r);
std::string render(const FinalReport& r, Format format);

// path "-" writes to stdout. ConfigError naming the path on I/O failure.
void emit_report(const FinalReport& r, Format format, const std::filesystem::path& path);

}  // namespace primesum::report
