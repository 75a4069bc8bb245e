// dataset.hpp: tabular results with metadata, serialized as CSV or JSON

#pragma once

#include "json.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dicke {

inline constexpr const char* version = "0.1.0";

/// null, real, integer or text
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Dataset {
    std::string name;
    std::vector<std::pair<std::string, nlohmann::ordered_json>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    Dataset() = default;
    Dataset(std::string name, std::vector<std::string> columns);

    void set_meta(const std::string& key, nlohmann::ordered_json value);
    /// Throws std::invalid_argument when the row width differs from columns.
    void add_row(std::vector<Cell> row);
    std::size_t column(const std::string& name) const;
};

enum class Format { csv, json };
Format parse_format(const std::string& s);

/// `#`-prefixed metadata lines, a header line, then rows. Reals use %.17g,
/// null cells are empty.
std::string to_csv(const Dataset& d);
/// {"meta": {...}, "rows": [{column: value, ...}, ...]}
nlohmann::ordered_json to_json(const Dataset& d);
std::string serialize(const Dataset& d, Format f);

/// Concatenate datasets with identical columns; meta is taken from the first.
Dataset concat(std::vector<Dataset> parts);

}  // namespace dicke
