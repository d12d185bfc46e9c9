#pragma once

#include "json.hpp"

#include "dualab/fields.hpp"

namespace dualab {

using Json = nlohmann::json;

/// {"hbar":1,"c":1,"eps0":1,"mu":..,"Gamma":..,"m":..}; missing keys keep natural-unit defaults.
UnitSystem units_from_json(const Json& j);
Json to_json(const UnitSystem& u);

/// {"shape":"rectangular","B0":..,"t_on":..,"t_off":..} or shape "smooth-bump" with "ramp".
PulseProfile pulse_from_json(const Json& j);
Json to_json(const PulseProfile& p);

/// {"charges":[{"x":..,"y":..,"lambda":..}], "pulse":{..}, "units":{..}}
FieldConfig field_config_from_json(const Json& j);
Json to_json(const FieldConfig& cfg);

/// {"vertices":[[x,y],...], "closed":bool}
PlanarPath path_from_json(const Json& j);

namespace json_detail {
/// Numeric member lookup that reports the offending key as a ConfigError.
double number(const Json& obj, const char* key, const std::string& where);
double number_or(const Json& obj, const char* key, double fallback, const std::string& where);
void reject_unknown(const Json& obj, std::initializer_list<const char*> known, const std::string& where);
}  // namespace json_detail

}  // namespace dualab
