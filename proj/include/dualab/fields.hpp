#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "dualab/geometry.hpp"
#include "dualab/units.hpp"

namespace dualab {

/// Infinite line of charge parallel to z, piercing the x-y plane at `position`.
struct LineCharge {
    Vec2 position = Vec2::Zero();
    double lambda = 0.0;  ///< charge per unit length
};

/// Spatially uniform magnetic field B(t) along +z, vanishing outside [t_on, t_off].
class PulseProfile {
public:
    struct Rectangular {
        double amplitude, t_on, t_off;
    };
    /// Flat top with C-infinity ramps of width `ramp` at both ends.
    struct SmoothBump {
        double amplitude, t_on, t_off, ramp;
    };

    PulseProfile() : shape_(Rectangular{0.0, 0.0, 0.0}) {}

    static PulseProfile rectangular(double amplitude, double t_on, double t_off);
    static PulseProfile smooth_bump(double amplitude, double t_on, double t_off, double ramp);

    double operator()(double t) const;

    /// Integral of B over [t0, t1]; exact for rectangular pulses, adaptive
    /// Gauss-Kronrod (1e-12 relative) over the ramps of smooth bumps.
    double integral(double t0, double t1) const;
    double total_integral() const { return integral(t_on(), t_off()); }

    double amplitude() const;
    double t_on() const;
    double t_off() const;
    bool is_rectangular() const { return std::holds_alternative<Rectangular>(shape_); }
    const std::variant<Rectangular, SmoothBump>& shape() const { return shape_; }

    /// Times in increasing order at which B or one of its derivatives jumps.
    std::vector<double> breakpoints() const;

private:
    explicit PulseProfile(std::variant<Rectangular, SmoothBump> s) : shape_(s) {}
    std::variant<Rectangular, SmoothBump> shape_;
};

/// Smooth monotone step on [0, 1] with f(u) + f(1-u) = 1; flat to all orders at both ends.
double smooth_step(double u);

/// Polyline in the x-y plane. A closed path repeats its first vertex at the end.
struct PlanarPath {
    std::vector<Vec2> vertices;
    bool closed = false;

    /// Throws DomainError when fewer than two vertices, or closed but not returning to the start.
    void validate() const;
    std::size_t segment_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    double length() const;
    PlanarPath reversed() const;

    /// Regular n-gon inscribed in a circle, traversed counterclockwise.
    static PlanarPath polygon(const Vec2& center, double radius, int sides, double phase = 0.0);
};

struct FieldConfig {
    std::vector<LineCharge> charges;
    PulseProfile pulse;
    UnitSystem units;
    /// Optional extra planar field added to the line-charge superposition.
    /// Must be z-independent and divergence-free along every path used.
    std::function<Vec2(const Vec2&)> extra_field;
};

/// Sample points closer than this to a line charge are rejected as singular.
inline constexpr double kSingularDistance = 1e-9;

/// Planar electric field; E_z vanishes identically.
Vec2 eval_E(const FieldConfig& cfg, const Vec2& p);

/// Effective gauge potential A = (-E_y, E_x) / c^2.
Vec2 eval_A(const FieldConfig& cfg, const Vec2& p);

/// Fourth-order central-difference estimate of div E at p with step h.
double divergence_E(const FieldConfig& cfg, const Vec2& p, double h);

/// Integral of A . dr along the path, composite 3-point Gauss-Legendre with
/// `n_sub` sub-intervals per segment. SingularPoint carries the segment index.
double line_integral_A(const FieldConfig& cfg, const PlanarPath& path, int n_sub = 32);

double pulse_integral_B(const PulseProfile& pulse, double t0, double t1);

}  // namespace dualab
