#pragma once

#include <optional>
#include <string>

namespace dualab {

/// Locale-independent shortest round-trip text with at most 17 significant
/// digits; NaN prints as "NaN".
std::string format_number(double v);
std::string format_number(const std::optional<double>& v);

}  // namespace dualab
