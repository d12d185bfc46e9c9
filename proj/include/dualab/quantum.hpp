#pragma once

#include <complex>

#include "dualab/fields.hpp"
#include "dualab/geometry.hpp"
#include "dualab/units.hpp"

namespace dualab {

using Complex = std::complex<double>;

/// Spin-1/2 state up|+> + down|->, in the sigma_z eigenbasis.
struct Spinor {
    Complex up{1.0, 0.0};
    Complex down{0.0, 0.0};

    double norm() const { return std::sqrt(std::norm(up) + std::norm(down)); }
    Spinor normalized() const;
};

/// <a|b>
Complex inner(const Spinor& a, const Spinor& b);

/// Expectation values (<sigma_x>, <sigma_y>, <sigma_z>).
struct BlochVector {
    Vec3 n = Vec3::UnitZ();
};

/// cos(theta/2)|+> + e^{i azimuth} sin(theta/2)|->
Spinor spinor_from_angles(double theta, double azimuth = 0.0);

/// exp(-i sigma_z gamma / 2) |s>: rotates the Bloch vector by +gamma about z.
Spinor rotate_z(const Spinor& s, double gamma);

/// Spin factor of the SAB/AC wave function after precession by gamma.
inline Spinor evolve_spin(const Spinor& s, double gamma) { return rotate_z(s, gamma); }

/// Throws NotNormalized if | |s| - 1 | > 1e-9.
BlochVector bloch_of(const Spinor& s);

/// gamma(t) = -(2 mu / hbar) int_0^t B.
double sab_precession_angle(const PulseProfile& pulse, double t, const UnitSystem& units);

/// gamma = -(2 mu / hbar) int A . dr along the path (units from cfg).
double ac_precession_angle(const FieldConfig& cfg, const PlanarPath& path, int n_sub = 32);

/// Ideal AC phase mu * lambda_enc / (hbar eps0 c^2) for the given enclosed line charge.
double ideal_ac_phase(double enclosed_lambda, const UnitSystem& units);

struct GaugeCheckOptions {
    double fd_step = 1e-5;
    int samples_per_segment = 8;
    int n_sub = 32;
};

/// Largest |(hbar/2) grad gamma + mu A| over points sampled along the path, with
/// gamma(x) the AC angle of the sub-path ending at x and grad gamma by central
/// differences. Zero up to discretisation error when the transformed Hamiltonian is free.
double verify_gauge_cancellation(const FieldConfig& cfg, const PlanarPath& path,
                                 const GaugeCheckOptions& opts = {});

}  // namespace dualab
