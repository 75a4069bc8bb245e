// dataset.cpp

#include "dicke/dataset.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dicke {

using json = nlohmann::ordered_json;

Dataset::Dataset(std::string name, std::vector<std::string> columns)
    : name(std::move(name)), columns(std::move(columns)) {}

void Dataset::set_meta(const std::string& key, json value) {
    for (auto& [k, v] : meta) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    meta.emplace_back(key, std::move(value));
}

void Dataset::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("dataset " + name + ": row has " + std::to_string(row.size()) +
                                    " cells, expected " + std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
}

std::size_t Dataset::column(const std::string& col) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == col) return i;
    }
    throw std::out_of_range("dataset " + name + " has no column " + col);
}

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw std::invalid_argument("unknown format '" + s + "' (expected csv or json)");
}

namespace {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

struct CellText {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string& s) const { return csv_field(s); }
};

struct CellJson {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(double v) const { return v; }
    json operator()(std::int64_t v) const { return v; }
    json operator()(const std::string& s) const { return s; }
};

}  // namespace

std::string to_csv(const Dataset& d) {
    std::ostringstream out;
    out << "# dataset: " << d.name << '\n';
    for (const auto& [k, v] : d.meta) {
        out << "# " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
    for (std::size_t i = 0; i < d.columns.size(); ++i) out << (i ? "," : "") << csv_field(d.columns[i]);
    out << '\n';
    for (const auto& row : d.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << std::visit(CellText{}, row[i]);
        out << '\n';
    }
    return out.str();
}

json to_json(const Dataset& d) {
    json meta = json::object();
    meta["dataset"] = d.name;
    meta["columns"] = d.columns;
    for (const auto& [k, v] : d.meta) meta[k] = v;
    json rows = json::array();
    for (const auto& row : d.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[d.columns[i]] = std::visit(CellJson{}, row[i]);
        rows.push_back(std::move(obj));
    }
    return json{{"meta", std::move(meta)}, {"rows", std::move(rows)}};
}

std::string serialize(const Dataset& d, Format f) {
    return f == Format::csv ? to_csv(d) : to_json(d).dump(2) + "\n";
}

Dataset concat(std::vector<Dataset> parts) {
    if (parts.empty()) throw std::invalid_argument("concat: no datasets");
    Dataset out = std::move(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (parts[i].columns != out.columns) throw std::invalid_argument("concat: column mismatch");
        for (auto& r : parts[i].rows) out.rows.push_back(std::move(r));
    }
    return out;
}

}  // namespace dicke
