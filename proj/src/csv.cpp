#include "dualab/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace dualab {

std::string format_number(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    if (v == 0.0) v = 0.0;  // print -0 as 0
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::general, 17);
    return {buf.data(), res.ptr};
}

std::string format_number(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string("NaN");
}

}  // namespace dualab
