#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dualab/quantum.hpp"

namespace dualab {

/// Visibilities below this leave the interference phase undefined.
inline constexpr double kVisibilityFloor = 1e-12;

/// Relative phase and fringe contrast of two interfering beams.
struct Fringe {
    std::optional<double> phi;  ///< in (-pi, pi]; empty when visibility < kVisibilityFloor
    double visibility = 0.0;
};

/// Precession angles of the two interferometer arms acting on a common initial spin.
struct ArmPair {
    double gamma_u = 0.0;
    double gamma_d = 0.0;
    Spinor s0;

    double phi_D() const { return 0.5 * (gamma_d - gamma_u); }
    Spinor upper() const { return evolve_spin(s0, gamma_u); }
    Spinor lower() const { return evolve_spin(s0, gamma_d); }
};

/// phi = arg <s_d|s_u>, visibility = |<s_d|s_u>|.
Fringe pancharatnam(const Spinor& s_d, const Spinor& s_u);
inline Fringe pancharatnam(const ArmPair& arms) { return pancharatnam(arms.lower(), arms.upper()); }

/// Phase for initial tilt theta and ideal phase phi_D: the branch of
/// arctan(cos theta tan phi_D) that equals arg <s_d|s_u>, in (-pi, pi].
/// Throws UndefinedPhase where the visibility vanishes.
double nonideal_phase(double theta, double phi_D);

/// sqrt(1 - sin^2 theta sin^2 phi_D)
double nonideal_visibility(double theta, double phi_D);

struct DetectorProbabilities {
    double p1 = 0.5;
    double p2 = 0.5;
};

/// P1 = (1 + nu cos(phi + chi)) / 2, P2 = 1 - P1.
DetectorProbabilities detector_probabilities(double phi, double nu, double chi);

/// Inverse of (theta, phi_D) -> (phi, nu) up to the sign/reflection ambiguities of the squares.
struct Inversion {
    double tan2_phi_D = 0.0;
    /// Empty when sin phi_D = 0: the observables then carry no information on theta.
    std::optional<double> cos2_theta;
    /// Principal values: phi_D in [0, pi/2], theta in [0, pi/2].
    double phi_D_principal = 0.0;
    std::optional<double> theta_principal;

    struct Candidate {
        double theta;  ///< NaN when theta is unconstrained
        double phi_D;
    };
    /// Every (theta, phi_D) with phi_D in (-pi, pi], theta in [0, pi] matching both squares.
    std::vector<Candidate> preimages() const;
    /// Candidates from preimages() whose forward phase and visibility reproduce the inputs.
    std::vector<Candidate> consistent(double phi, double nu, double tol = 1e-9) const;
};

/// Throws SingularInversion when nu |cos phi| < 1e-12.
Inversion invert_observables(double phi, double nu);

struct PhaseSplit {
    double dynamical = 0.0;  ///< phi_D cos theta
    double geometric = 0.0;  ///< phi - phi_D cos theta
};

PhaseSplit decompose_phase(double theta, double phi_D);

/// Signed solid angle enclosed by the spin path (latitude arc at polar angle
/// theta from azimuth 0 to delta_azimuth) and the shortest geodesic joining its ends.
/// Orientation: positive when the loop, traversed geodesic first and then back along
/// the spin path, is counterclockwise about the outward normal. With this convention
/// the geometric phase equals -Omega/2. Discretised with n_steps points per curve.
double solid_angle_geodesic_closed(double theta, double delta_azimuth, int n_steps = 10000);

/// Every observable for one (theta, phi_D) setting.
struct InterferenceResult {
    double theta = 0.0;
    double phi_D = 0.0;
    std::optional<double> phi;
    double visibility = 0.0;
    std::optional<double> gamma_dyn;
    std::optional<double> gamma_geo;
    std::optional<double> omega_gc;  ///< empty when the closing geodesic is ambiguous
};

InterferenceResult interfere(double theta, double phi_D, int n_steps = 10000);

/// CSV header and row: theta,phi_D,phi,visibility,gamma_dyn,gamma_geo,omega_gc
std::string interference_csv_header();
std::string to_csv_row(const InterferenceResult& r);

}  // namespace dualab
