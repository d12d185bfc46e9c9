#include "dualab/units.hpp"

#include <cmath>
#include <string>

#include "dualab/errors.hpp"

namespace dualab {

void UnitSystem::validate() const {
    auto positive = [](const char* name, double v) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError(std::string("units.") + name + " must be finite and > 0");
    };
    positive("hbar", hbar);
    positive("c", c);
    positive("eps0", eps0);
    positive("mu", mu);
    positive("m", mass);
    if (!std::isfinite(gyromagnetic)) throw ConfigError("units.Gamma must be finite");
}

}  // namespace dualab
