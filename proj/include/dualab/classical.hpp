#pragma once

#include <vector>

#include "dualab/fields.hpp"
#include "dualab/geometry.hpp"
#include "dualab/units.hpp"

namespace dualab {

/// Classical magnetic moment vector; magnitude and tilt are derived from it.
class ClassicalDipole {
public:
    ClassicalDipole() = default;
    explicit ClassicalDipole(const Vec3& moment) : moment_(moment) {}

    /// moment = magnitude * (sin theta cos azimuth, sin theta sin azimuth, cos theta)
    static ClassicalDipole from_angles(double magnitude, double theta, double azimuth = 0.0);

    const Vec3& moment() const { return moment_; }
    double magnitude() const { return moment_.norm(); }
    double theta() const;
    double azimuth() const;
    Vec3 direction() const;

    ClassicalDipole rotated_about_z(double angle) const;

private:
    Vec3 moment_ = Vec3::UnitZ();
};

/// Spatial path traversed at a constant speed per segment; v_z = 0 throughout.
struct KinematicPath {
    PlanarPath path;
    std::vector<double> speeds;  ///< one strictly positive speed per segment

    static KinematicPath uniform(PlanarPath path, double speed);
    void validate() const;
    double duration() const;
};

struct Precession {
    ClassicalDipole dipole;
    double gamma = 0.0;  ///< precession angle about +z
};

/// gamma(t) = -Gamma * int_0^t B; the moment rotates by gamma about z.
Precession precess_sab_closed_form(const ClassicalDipole& d, const PulseProfile& pulse, double t,
                                   const UnitSystem& units);

/// Fixed-step RK4 of dmu/dt = Gamma mu x B(t) z over [t0, t1], renormalising |mu|
/// after every step. Steps never straddle a pulse breakpoint.
ClassicalDipole integrate_precession_sab(const ClassicalDipole& d, const PulseProfile& pulse,
                                         double t0, double t1, double dt, const UnitSystem& units);

inline ClassicalDipole integrate_precession_sab(const ClassicalDipole& d, const PulseProfile& pulse,
                                                double t, double dt, const UnitSystem& units) {
    return integrate_precession_sab(d, pulse, 0.0, t, dt, units);
}

/// Largest step keeping each SAB step below 0.01 rad of precession.
double default_sab_step(const PulseProfile& pulse, const UnitSystem& units);

/// gamma(x) = -Gamma * int A . dr along the path (units taken from cfg).
Precession precess_ac_closed_form(const ClassicalDipole& d, const FieldConfig& cfg,
                                  const PlanarPath& path, int n_sub = 32);

/// RK4 in time of dmu/dt = -(Gamma/c^2) mu x (v x E) along the kinematic path.
/// `ds` bounds the arclength advanced per step, so the step count is speed independent.
ClassicalDipole integrate_precession_ac(const ClassicalDipole& d, const FieldConfig& cfg,
                                        const KinematicPath& kin, double ds);

/// F = -v x (mu . grad) E / c^2 with the directional derivative by central differences.
Vec3 ac_force(const ClassicalDipole& d, const FieldConfig& cfg, const Vec2& p, const Vec2& v,
              double h = 1e-5);

}  // namespace dualab
