#pragma once

#include "cceq/equilibrium.hpp"
#include "cceq/policy.hpp"
#include "cceq/primitives.hpp"
#include "cceq/simulate.hpp"
#include "cceq/statics.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace cceq {

/// Flat JSON object with exactly the primitive field names.
nlohmann::json primitives_to_json(const Primitives& p);

/// Parses and validates primitives. Rejects unknown keys, missing keys, and
/// non-numeric values with a ConfigError naming the field.
Primitives primitives_from_json(const nlohmann::json& j);

std::string payoff_mode_name(PayoffMode mode);
PayoffMode payoff_mode_from_name(const std::string& name);

/// Shortest round-trip decimal form; infinities render as "inf" / "-inf".
std::string format_double(double v);

/// JSON value mirroring format_double: a number when finite, else the strings
/// "inf" / "-inf" (raw non-finite doubles would serialize as null).
nlohmann::json json_double(double v);

/// A rectangular result table rendered identically to CSV and JSON.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<nlohmann::json>> rows;

    void add_row(std::initializer_list<nlohmann::json> cells);
    std::string to_csv() const;
    nlohmann::json to_json() const;
};

} // namespace cceq
