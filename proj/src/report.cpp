#include "primesum/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include "primesum/errors.hpp"

namespace primesum::report {

using nlohmann::json;

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_cell(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_real(v); }
        std::string operator()(const std::string& s) const { return csv_field(s); }
    };
    return std::visit(Visitor{}, c);
}

void csv_row(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    out += '\n';
}

json cell_json(const Cell& c) {
    struct Visitor {
        json operator()(std::monostate) const { return nullptr; }
        json operator()(bool b) const { return b; }
        json operator()(std::int64_t v) const { return v; }
        json operator()(double v) const { return v; }
        json operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

Cell cell_from_json(const json& j) {
    switch (j.type()) {
        case json::value_t::null: return std::monostate{};
        case json::value_t::boolean: return j.get<bool>();
        case json::value_t::number_integer: return j.get<std::int64_t>();
        case json::value_t::number_unsigned: return integer(j.get<std::uint64_t>());
        case json::value_t::number_float: return j.get<double>();
        case json::value_t::string: return j.get<std::string>();
        default: throw ConfigError("report: unsupported JSON cell type");
    }
}

}  // namespace

Cell real(double v) {
    if (!std::isfinite(v)) return std::monostate{};
    return v;
}

Cell integer(std::uint64_t v) {
    if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) return static_cast<double>(v);
    return static_cast<std::int64_t>(v);
}

const Check* FinalReport::find_check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

bool FinalReport::exact_checks_pass() const {
    for (const auto& c : checks)
        if (c.name.rfind("exact:", 0) == 0 && !c.pass) return false;
    return true;
}

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw ConfigError("unknown output format '" + s + "' (expected csv or json)");
}

std::string format_real(double v) {
    if (!std::isfinite(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json to_json(const FinalReport& r) {
    json config = json::object();
    for (const auto& [k, v] : r.config) config[k] = cell_json(v);
    json tables = json::object();
    for (const auto& [name, t] : r.tables) {
        json rows = json::array();
        for (const auto& row : t.rows) {
            json jr = json::array();
            for (const auto& c : row) jr.push_back(cell_json(c));
            rows.push_back(std::move(jr));
        }
        tables[name] = {{"columns", t.columns}, {"rows", std::move(rows)}};
    }
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"lhs", cell_json(c.lhs)}, {"rhs", cell_json(c.rhs)}, {"pass", c.pass}});
    return {{"config", std::move(config)}, {"tables", std::move(tables)}, {"checks", std::move(checks)}};
}

FinalReport from_json(const json& j) {
    FinalReport r;
    for (const auto& [k, v] : j.at("config").items()) r.config[k] = cell_from_json(v);
    for (const auto& [name, t] : j.at("tables").items()) {
        Table table;
        table.columns = t.at("columns").get<std::vector<std::string>>();
        for (const auto& row : t.at("rows")) {
            std::vector<Cell> cells;
            for (const auto& c : row) cells.push_back(cell_from_json(c));
            table.rows.push_back(std::move(cells));
        }
        r.tables[name] = std::move(table);
    }
    for (const auto& c : j.at("checks"))
        r.checks.push_back({c.at("name").get<std::string>(), cell_from_json(c.at("lhs")), cell_from_json(c.at("rhs")),
                            c.at("pass").get<bool>()});
    return r;
}

std::string to_csv(const FinalReport& r) {
    std::string out;
    out += "# config\n";
    csv_row(out, {"key", "value"});
    for (const auto& [k, v] : r.config) csv_row(out, {csv_field(k), csv_cell(v)});
    out += '\n';
    for (const auto& [name, t] : r.tables) {
        out += "# " + name + "\n";
        std::vector<std::string> header;
        for (const auto& c : t.columns) header.push_back(csv_field(c));
        csv_row(out, header);
        for (const auto& row : t.rows) {
            std::vector<std::string> fields;
            for (const auto& c : row) fields.push_back(csv_cell(c));
            csv_row(out, fields);
        }
        out += '\n';
    }
    out += "# checks\n";
    csv_row(out, {"name", "lhs", "rhs", "pass"});
    for (const auto& c : r.checks) csv_row(out, {csv_field(c.name), csv_cell(c.lhs), csv_cell(c.rhs), c.pass ? "true" : "false"});
    return out;
}

std::string render(const FinalReport& r, Format format) {
    if (format == Format::Csv) return to_csv(r);
    return to_json(r).dump(2) + "\n";
}

void emit_report(const FinalReport& r, Format format, const std::filesystem::path& path) {
    const std::string bytes = render(r, format);
    if (path == "-") {
        std::cout << bytes << std::flush;
        if (!std::cout) throw ConfigError("failed writing report to stdout");
        return;
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot open report output '" + path.string() + "'");
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    os.close();
    if (!os) throw ConfigError("failed writing report output '" + path.string() + "'");
}

}  // namespace primesum::report
