#include "dualab/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dualab/errors.hpp"

namespace dualab {

namespace {

constexpr double kMaxNormDrift = 1e-3;

// Classical RK4 step for y' = f(t, y), followed by a norm check and renormalisation.
template <class F>
Vec3 rk4_step(const F& f, double t, double h, const Vec3& y, double norm0) {
    const Vec3 k1 = f(t, y);
    const Vec3 k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    const Vec3 k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    const Vec3 k4 = f(t + h, y + h * k3);
    Vec3 next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (norm0 == 0.0) return next;
    const double n = next.norm();
    if (std::abs(n - norm0) > kMaxNormDrift * norm0)
        throw StepTooLarge("moment magnitude drifted by " + std::to_string(std::abs(n / norm0 - 1.0)) +
                           " in one step; reduce the step size");
    return next * (norm0 / n);
}

}  // namespace

ClassicalDipole ClassicalDipole::from_angles(double magnitude, double theta, double azimuth) {
    return ClassicalDipole(magnitude * Vec3(std::sin(theta) * std::cos(azimuth),
                                            std::sin(theta) * std::sin(azimuth), std::cos(theta)));
}

double ClassicalDipole::theta() const {
    return std::atan2(moment_.head<2>().norm(), moment_.z());
}

double ClassicalDipole::azimuth() const { return std::atan2(moment_.y(), moment_.x()); }

Vec3 ClassicalDipole::direction() const {
    const double n = moment_.norm();
    return n > 0.0 ? Vec3(moment_ / n) : Vec3::Zero();
}

ClassicalDipole ClassicalDipole::rotated_about_z(double angle) const {
    return ClassicalDipole(Eigen::AngleAxisd(angle, Vec3::UnitZ()) * moment_);
}

KinematicPath KinematicPath::uniform(PlanarPath path, double speed) {
    KinematicPath kin{std::move(path), {}};
    kin.speeds.assign(kin.path.segment_count(), speed);
    return kin;
}

void KinematicPath::validate() const {
    path.validate();
    if (speeds.size() != path.segment_count())
        throw DomainError("kinematic path needs one speed per segment");
    for (double s : speeds)
        if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("segment speeds must be > 0");
}

double KinematicPath::duration() const {
    double t = 0.0;
    for (std::size_t i = 0; i < speeds.size(); ++i)
        t += (path.vertices[i + 1] - path.vertices[i]).norm() / speeds[i];
    return t;
}

Precession precess_sab_closed_form(const ClassicalDipole& d, const PulseProfile& pulse, double t,
                                   const UnitSystem& units) {
    if (t < 0.0) throw DomainError("time must be >= 0");
    const double gamma = -units.gyromagnetic * pulse_integral_B(pulse, 0.0, t);
    return {d.rotated_about_z(gamma), gamma};
}

ClassicalDipole integrate_precession_sab(const ClassicalDipole& d, const PulseProfile& pulse,
                                         double t0, double t1, double dt, const UnitSystem& units) {
    if (!(dt > 0.0)) throw DomainError("dt must be > 0");
    if (t1 < t0) throw DomainError("integration interval must satisfy t0 <= t1");

    std::vector<double> cuts{t0};
    for (double b : pulse.breakpoints())
        if (b > t0 && b < t1) cuts.push_back(b);
    cuts.push_back(t1);

    const double gyro = units.gyromagnetic;
    const double norm0 = d.magnitude();
    Vec3 mu = d.moment();
    for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
        const double a = cuts[piece];
        const double b = cuts[piece + 1];
        if (!(b > a)) continue;
        // One-sided field values at the piece ends so a jump is never sampled on the wrong side.
        const double a_in = std::nextafter(a, b);
        const double b_in = std::nextafter(b, a);
        auto rhs = [&](double t, const Vec3& m) {
            const double field = pulse(std::clamp(t, a_in, b_in));
            return Vec3(gyro * field * m.y(), -gyro * field * m.x(), 0.0);
        };
        const auto steps = static_cast<long>(std::ceil((b - a) / dt));
        const double h = (b - a) / static_cast<double>(steps);
        for (long k = 0; k < steps; ++k) mu = rk4_step(rhs, a + k * h, h, mu, norm0);
    }
    return ClassicalDipole(mu);
}

double default_sab_step(const PulseProfile& pulse, const UnitSystem& units) {
    const double rate = std::abs(units.gyromagnetic * pulse.amplitude());
    const double span = std::max(pulse.t_off() - pulse.t_on(), 1e-3);
    return rate > 0.0 ? std::min(0.01 / rate, span) : span;
}

Precession precess_ac_closed_form(const ClassicalDipole& d, const FieldConfig& cfg,
                                  const PlanarPath& path, int n_sub) {
    const double gamma = -cfg.units.gyromagnetic * line_integral_A(cfg, path, n_sub);
    return {d.rotated_about_z(gamma), gamma};
}

ClassicalDipole integrate_precession_ac(const ClassicalDipole& d, const FieldConfig& cfg,
                                        const KinematicPath& kin, double ds) {
    kin.validate();
    if (!(ds > 0.0)) throw DomainError("ds must be > 0");

    const double coupling = -cfg.units.gyromagnetic / (cfg.units.c * cfg.units.c);
    const double norm0 = d.magnitude();
    Vec3 mu = d.moment();
    for (std::size_t s = 0; s < kin.speeds.size(); ++s) {
        const Vec2 start = kin.path.vertices[s];
        const Vec2 delta = kin.path.vertices[s + 1] - start;
        const double len = delta.norm();
        if (len == 0.0) continue;
        const Vec2 vel = delta * (kin.speeds[s] / len);
        const Vec3 vel3 = lift(vel);
        const double duration = len / kin.speeds[s];
        auto rhs = [&](double t, const Vec3& m) {
            const Vec3 e = lift(eval_E(cfg, start + vel * t));
            return Vec3(coupling * m.cross(vel3.cross(e)));
        };
        const auto steps = static_cast<long>(std::ceil(len / ds));
        const double h = duration / static_cast<double>(steps);
        try {
            for (long k = 0; k < steps; ++k) mu = rk4_step(rhs, k * h, h, mu, norm0);
        } catch (const SingularPoint&) {
            throw SingularPoint("trajectory hits a line charge", s);
        }
    }
    return ClassicalDipole(mu);
}

Vec3 ac_force(const ClassicalDipole& d, const FieldConfig& cfg, const Vec2& p, const Vec2& v,
              double h) {
    if (!(h > 0.0)) throw DomainError("h must be > 0");
    const Vec3& mu = d.moment();
    const Vec2 dEdx = (eval_E(cfg, p + Vec2(h, 0.0)) - eval_E(cfg, p - Vec2(h, 0.0))) / (2.0 * h);
    const Vec2 dEdy = (eval_E(cfg, p + Vec2(0.0, h)) - eval_E(cfg, p - Vec2(0.0, h))) / (2.0 * h);
    // E has no z component and no z dependence, so mu_z contributes nothing.
    const Vec3 directional = lift(mu.x() * dEdx + mu.y() * dEdy);
    const double c2 = cfg.units.c * cfg.units.c;
    return -lift(v).cross(directional) / c2;
}

}  // namespace dualab
