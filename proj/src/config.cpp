#include "dualab/config.hpp"

#include <algorithm>
#include <string>

#include "dualab/errors.hpp"

namespace dualab {

namespace json_detail {

double number(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key))
        throw ConfigError("missing required key '" + where + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError("key '" + where + key + "' must be a number");
    return v.get<double>();
}

double number_or(const Json& obj, const char* key, double fallback, const std::string& where) {
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> known, const std::string& where) {
    if (!obj.is_object()) throw ConfigError("'" + where + "' must be a JSON object");
    for (const auto& item : obj.items()) {
        const bool ok = std::any_of(known.begin(), known.end(),
                                    [&](const char* k) { return item.key() == k; });
        if (!ok) throw ConfigError("unknown key '" + where + item.key() + "'");
    }
}

}  // namespace json_detail

using json_detail::number;
using json_detail::number_or;
using json_detail::reject_unknown;

UnitSystem units_from_json(const Json& j) {
    reject_unknown(j, {"hbar", "c", "eps0", "mu", "Gamma", "m"}, "units.");
    UnitSystem u;
    u.hbar = number_or(j, "hbar", u.hbar, "units.");
    u.c = number_or(j, "c", u.c, "units.");
    u.eps0 = number_or(j, "eps0", u.eps0, "units.");
    u.mu = number_or(j, "mu", u.mu, "units.");
    u.gyromagnetic = number_or(j, "Gamma", u.gyromagnetic, "units.");
    u.mass = number_or(j, "m", u.mass, "units.");
    u.validate();
    return u;
}

Json to_json(const UnitSystem& u) {
    return {{"hbar", u.hbar}, {"c", u.c}, {"eps0", u.eps0}, {"mu", u.mu}, {"Gamma", u.gyromagnetic}, {"m", u.mass}};
}

PulseProfile pulse_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("shape") || !j.at("shape").is_string())
        throw ConfigError("missing required key 'pulse.shape'");
    const auto shape = j.at("shape").get<std::string>();
    try {
        if (shape == "rectangular") {
            reject_unknown(j, {"shape", "B0", "t_on", "t_off"}, "pulse.");
            return PulseProfile::rectangular(number(j, "B0", "pulse."), number(j, "t_on", "pulse."),
                                             number(j, "t_off", "pulse."));
        }
        if (shape == "smooth-bump") {
            reject_unknown(j, {"shape", "B0", "t_on", "t_off", "ramp"}, "pulse.");
            return PulseProfile::smooth_bump(number(j, "B0", "pulse."), number(j, "t_on", "pulse."),
                                             number(j, "t_off", "pulse."), number(j, "ramp", "pulse."));
        }
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid 'pulse': ") + e.what());
    }
    throw ConfigError("key 'pulse.shape' must be \"rectangular\" or \"smooth-bump\"");
}

Json to_json(const PulseProfile& p) {
    return std::visit(
        [](const auto& s) -> Json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PulseProfile::Rectangular>) {
                return {{"shape", "rectangular"}, {"B0", s.amplitude}, {"t_on", s.t_on}, {"t_off", s.t_off}};
            } else {
                return {{"shape", "smooth-bump"}, {"B0", s.amplitude}, {"t_on", s.t_on},
                        {"t_off", s.t_off},       {"ramp", s.ramp}};
            }
        },
        p.shape());
}

FieldConfig field_config_from_json(const Json& j) {
    reject_unknown(j, {"charges", "pulse", "units"}, "field.");
    FieldConfig cfg;
    if (j.contains("charges")) {
        const auto& arr = j.at("charges");
        if (!arr.is_array()) throw ConfigError("key 'charges' must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "charges[" + std::to_string(i) + "].";
            reject_unknown(arr[i], {"x", "y", "lambda"}, where);
            cfg.charges.push_back({Vec2(number(arr[i], "x", where), number(arr[i], "y", where)),
                                   number(arr[i], "lambda", where)});
        }
    }
    if (j.contains("pulse")) cfg.pulse = pulse_from_json(j.at("pulse"));
    if (j.contains("units")) cfg.units = units_from_json(j.at("units"));
    return cfg;
}

Json to_json(const FieldConfig& cfg) {
    Json charges = Json::array();
    for (const auto& q : cfg.charges)
        charges.push_back({{"x", q.position.x()}, {"y", q.position.y()}, {"lambda", q.lambda}});
    return {{"charges", charges}, {"pulse", to_json(cfg.pulse)}, {"units", to_json(cfg.units)}};
}

PlanarPath path_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.at("vertices").is_array())
        throw ConfigError("missing required key 'path.vertices'");
    PlanarPath path;
    for (const auto& v : j.at("vertices")) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw ConfigError("key 'path.vertices' must hold [x, y] pairs");
        path.vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    if (j.contains("closed")) {
        if (!j.at("closed").is_boolean()) throw ConfigError("key 'path.closed' must be a boolean");
        path.closed = j.at("closed").get<bool>();
    }
    try {
        path.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid 'path': ") + e.what());
    }
    return path;
}

}  // namespace dualab
