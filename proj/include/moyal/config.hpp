#pragma once

#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>

#include <nlohmann/json.hpp>

#include "moyal/connections.hpp"
#include "moyal/expression.hpp"
#include "moyal/graded.hpp"

namespace moyal {

/// Malformed or inconsistent configuration input.
class ConfigError : public Error {
public:
    using Error::Error;
};

namespace config {

using nlohmann::json;

/// Scale values given on the command line; a set field must agree with the file.
struct Overrides {
    std::optional<int> dim;
    std::optional<double> theta;
    std::optional<double> mu;
    std::optional<double> m;
    std::optional<double> alpha;
};

/// Resolved scales after merging file values, overrides and defaults.
struct Scales {
    int dim = 2;
    double theta = 1.0;
    double mu = 1.0;
    double m = 1.0;
    double alpha = 1.0;
};

inline json parse_json(const std::string& text, const std::string& origin = "config")
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), path);
}

namespace detail {

inline const json& require_object(const json& j, const std::string& what)
{
    if (!j.is_object()) throw ConfigError(what + " must be an object");
    return j;
}

template <class T>
std::optional<T> number_field(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end()) return std::nullopt;
    if (!it->is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
    }
    return it->get<T>();
}

template <class T>
T merge(const json& j, const char* key, const std::optional<T>& flag, T fallback)
{
    const auto file = number_field<T>(j, key);
    if (file && flag && *file != *flag) {
        std::ostringstream msg;
        msg << "'" << key << "' is " << *file << " in the config but " << *flag << " on the command line";
        throw ConfigError(msg.str());
    }
    if (file) return *file;
    if (flag) return *flag;
    return fallback;
}

inline double positive(double v, const char* key)
{
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("'") + key + "' must be positive and finite");
    return v;
}

/// Digits of a generator suffix: "12" -> (1, 2); "1,12" -> (1, 12).
inline std::pair<int, int> index_pair(const std::string& text, const std::string& name)
{
    int a = 0, b = 0;
    if (const auto comma = text.find(','); comma != std::string::npos) {
        try {
            std::size_t used_a = 0, used_b = 0;
            a = std::stoi(text.substr(0, comma), &used_a);
            b = std::stoi(text.substr(comma + 1), &used_b);
            if (used_a != comma || used_b != text.size() - comma - 1) throw ConfigError("");
        } catch (const std::exception&) {
            throw ConfigError("malformed generator name '" + name + "'");
        }
    } else if (text.size() == 2 && std::isdigit(static_cast<unsigned char>(text[0])) &&
               std::isdigit(static_cast<unsigned char>(text[1]))) {
        a = text[0] - '0';
        b = text[1] - '0';
    } else {
        throw ConfigError("malformed generator name '" + name + "'");
    }
    return {a, b};
}

inline int single_index(const std::string& text, const std::string& name)
{
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError("malformed generator name '" + name + "'");
    return std::stoi(text);
}

inline void check_range(int v, int dim, const std::string& name)
{
    if (v < 1 || v > dim)
        throw ConfigError("generator '" + name + "' has an index outside 1.." + std::to_string(dim));
}

inline MoyalElement expression(const StructurePtr& s, const json& j, const std::string& where)
{
    if (!j.is_string()) throw ConfigError(where + " must be an expression string");
    try {
        return parse_expression(s, j.get<std::string>());
    } catch (const ParseError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

}  // namespace detail

/// Reads D, theta, mu, m, alpha from a config object, checking them against the overrides.
inline Scales resolve_scales(const json& j, const Overrides& o)
{
    detail::require_object(j, "config");
    Scales s;
    s.dim = detail::merge<int>(j, "D", o.dim, 2);
    if (s.dim < 2 || s.dim % 2 != 0) throw ConfigError("'D' must be even and positive");
    s.theta = detail::positive(detail::merge<double>(j, "theta", o.theta, 1.0), "theta");
    s.mu = detail::positive(detail::merge<double>(j, "mu", o.mu, 1.0), "mu");
    s.m = detail::positive(detail::merge<double>(j, "m", o.m, 1.0), "m");
    s.alpha = detail::positive(detail::merge<double>(j, "alpha", o.alpha, 1.0), "alpha");
    return s;
}

/// "d3" or "X12" on a structure of dimension dim.
inline Generator parse_generator(const std::string& name, int dim)
{
    if (name.size() >= 2 && name[0] == 'd') {
        const int mu = detail::single_index(name.substr(1), name);
        detail::check_range(mu, dim, name);
        return Generator::partial(mu);
    }
    if (name.size() >= 3 && name[0] == 'X') {
        const auto [a, b] = detail::index_pair(name.substr(1), name);
        detail::check_range(a, dim, name);
        detail::check_range(b, dim, name);
        return Generator::sym(a, b);
    }
    throw ConfigError("unknown generator '" + name + "'");
}

/// "T1", "U2", "M12" or "J".
inline GradedGenerator parse_graded_generator(const std::string& name, int dim)
{
    if (name == "J") return GradedGenerator::J();
    if (name.size() >= 2 && (name[0] == 'T' || name[0] == 'U')) {
        const int mu = detail::single_index(name.substr(1), name);
        detail::check_range(mu, dim, name);
        return name[0] == 'T' ? GradedGenerator::T(mu) : GradedGenerator::U(mu);
    }
    if (name.size() >= 3 && name[0] == 'M') {
        const auto [a, b] = detail::index_pair(name.substr(1), name);
        detail::check_range(a, dim, name);
        detail::check_range(b, dim, name);
        return GradedGenerator::M(a, b);
    }
    throw ConfigError("unknown graded generator '" + name + "'");
}

inline BasisKind parse_basis(const json& j)
{
    auto it = j.find("basis");
    if (it == j.end()) return BasisKind::G2;
    if (it->is_string()) {
        if (*it == "G1") return BasisKind::G1;
        if (*it == "G2") return BasisKind::G2;
    }
    throw ConfigError("'basis' must be \"G1\" or \"G2\"");
}

/// Builds a connection from { "D", "theta", "mu", "alpha", "basis", "components": {...} }.
inline ConnectionForm load_connection(const json& j, const Overrides& o = {})
{
    const Scales sc = resolve_scales(j, o);
    const auto s = make_structure(sc.dim, sc.theta);
    ConnectionForm A(s, parse_basis(j), sc.mu, sc.alpha);
    if (auto it = j.find("components"); it != j.end()) {
        detail::require_object(*it, "'components'");
        for (const auto& [name, value] : it->items()) {
            const Generator X = parse_generator(name, sc.dim);
            if (!A.contains(X)) throw ConfigError("generator '" + name + "' is not in the chosen basis");
            A.set(X, detail::expression(s, value, "component '" + name + "'"));
        }
    }
    return A;
}

/**
 * Builds a graded connection. Components come from the groups "A0" (T_mu),
 * "A1" (U_mu), "G0" (M_(mu nu), keyed "12"), "phi" (J), and optionally a
 * "components" object keyed by generator names.
 */
inline GradedConnectionForm load_graded(const json& j, const Overrides& o = {})
{
    const Scales sc = resolve_scales(j, o);
    const auto s = make_structure(sc.dim, sc.theta);
    GradedConnectionForm A(s, sc.m, sc.mu, sc.alpha);
    const auto group = [&](const char* key, char prefix) {
        auto it = j.find(key);
        if (it == j.end()) return;
        detail::require_object(*it, std::string("'") + key + "'");
        for (const auto& [index, value] : it->items()) {
            const std::string name = prefix + index;
            A.set(parse_graded_generator(name, sc.dim),
                  detail::expression(s, value, std::string(key) + "[" + index + "]"));
        }
    };
    group("A0", 'T');
    group("A1", 'U');
    group("G0", 'M');
    if (auto it = j.find("phi"); it != j.end()) A.set(GradedGenerator::J(), detail::expression(s, *it, "'phi'"));
    if (auto it = j.find("components"); it != j.end()) {
        detail::require_object(*it, "'components'");
        for (const auto& [name, value] : it->items())
            A.set(parse_graded_generator(name, sc.dim), detail::expression(s, value, "component '" + name + "'"));
    }
    return A;
}

/// A config with any of the graded groups is graded.
inline bool is_graded(const json& j)
{
    return j.is_object() && (j.contains("A0") || j.contains("A1") || j.contains("G0") || j.contains("phi"));
}

}  // namespace config
}  // namespace moyal
