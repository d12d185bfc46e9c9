#pragma once

namespace dualab {

/// Physical constants and particle parameters. Natural units by default.
///
/// `gyromagnetic` (classical Gamma = q/2m of the dipole current) is signed;
/// every other entry must be strictly positive.
struct UnitSystem {
    double hbar = 1.0;
    double c = 1.0;
    double eps0 = 1.0;
    double mu = 1.0;
    double gyromagnetic = 1.0;
    double mass = 1.0;

    /// Throws ConfigError naming the first offending entry.
    void validate() const;
};

}  // namespace dualab
