#include "cceq/io.hpp"

#include "cceq/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace cceq {

namespace {

constexpr std::array<const char*, 11> kPrimitiveFields = {
    "pi",    "mu0", "mu1",    "sigma_h",    "sigma_l",   "theta",
    "kappa", "b",   "t_gate", "lambda_min", "lambda_max"};

double& field_ref(Primitives& p, const std::string& name) {
    if (name == "pi") return p.pi;
    if (name == "mu0") return p.mu0;
    if (name == "mu1") return p.mu1;
    if (name == "sigma_h") return p.sigma_h;
    if (name == "sigma_l") return p.sigma_l;
    if (name == "theta") return p.theta;
    if (name == "kappa") return p.kappa;
    if (name == "b") return p.b;
    if (name == "t_gate") return p.t_gate;
    if (name == "lambda_min") return p.lambda_min;
    if (name == "lambda_max") return p.lambda_max;
    throw ConfigError("primitives: unknown field \"" + name + "\"");
}

} // namespace

nlohmann::json primitives_to_json(const Primitives& p) {
    Primitives copy = p;
    nlohmann::json j;
    for (const char* field : kPrimitiveFields) {
        j[field] = field_ref(copy, field);
    }
    return j;
}

Primitives primitives_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw ConfigError("primitives: expected a JSON object");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* field : kPrimitiveFields) {
            if (it.key() == field) { known = true; break; }
        }
        if (!known) throw ConfigError("primitives: unknown key \"" + it.key() + "\"");
    }
    Primitives p{};
    for (const char* field : kPrimitiveFields) {
        if (!j.contains(field)) {
            throw ConfigError("primitives: missing field \"" + std::string(field) + "\"");
        }
        if (!j.at(field).is_number()) {
            throw ConfigError("primitives: field \"" + std::string(field) +
                              "\" must be a number");
        }
        field_ref(p, field) = j.at(field).get<double>();
    }
    try {
        return validate(p);
    } catch (const ValidationError& err) {
        throw ConfigError(std::string("primitives: ") + err.what());
    }
}

std::string payoff_mode_name(PayoffMode mode) {
    return mode == PayoffMode::Extended ? "extended" : "baseline";
}

PayoffMode payoff_mode_from_name(const std::string& name) {
    if (name == "baseline") return PayoffMode::Baseline;
    if (name == "extended") return PayoffMode::Extended;
    throw ConfigError("mode: expected \"baseline\" or \"extended\", got \"" + name + "\"");
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return buf;
    }
    return std::string(buf, ptr);
}

nlohmann::json json_double(double v) {
    if (std::isinf(v) || std::isnan(v)) return format_double(v);
    return v;
}

void Table::add_row(std::initializer_list<nlohmann::json> cells) {
    rows.emplace_back(cells);
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            const nlohmann::json& cell = row[i];
            if (cell.is_string()) out += cell.get<std::string>();
            else if (cell.is_number_float()) out += format_double(cell.get<double>());
            else out += cell.dump();
        }
        out += '\n';
    }
    return out;
}

nlohmann::json Table::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size() && i < header.size(); ++i) {
            obj[header[i]] = row[i];
        }
        arr.push_back(obj);
    }
    return arr;
}

} // namespace cceq
