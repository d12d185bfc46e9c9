#include "dualab/quantum.hpp"

#include <algorithm>
#include <cmath>

#include "dualab/errors.hpp"

namespace dualab {

Spinor Spinor::normalized() const {
    const double n = norm();
    if (n == 0.0) throw NotNormalized("cannot normalise the zero spinor");
    return {up / n, down / n};
}

Complex inner(const Spinor& a, const Spinor& b) {
    return std::conj(a.up) * b.up + std::conj(a.down) * b.down;
}

Spinor spinor_from_angles(double theta, double azimuth) {
    return {Complex(std::cos(0.5 * theta), 0.0), std::polar(std::sin(0.5 * theta), azimuth)};
}

Spinor rotate_z(const Spinor& s, double gamma) {
    const Complex phase = std::polar(1.0, -0.5 * gamma);
    return {s.up * phase, s.down * std::conj(phase)};
}

BlochVector bloch_of(const Spinor& s) {
    if (std::abs(s.norm() - 1.0) > 1e-9) throw NotNormalized("spinor norm deviates from 1");
    const Complex cross = std::conj(s.up) * s.down;
    return {Vec3(2.0 * cross.real(), 2.0 * cross.imag(), std::norm(s.up) - std::norm(s.down))};
}

double sab_precession_angle(const PulseProfile& pulse, double t, const UnitSystem& units) {
    if (t < 0.0) throw DomainError("time must be >= 0");
    return -2.0 * units.mu / units.hbar * pulse_integral_B(pulse, 0.0, t);
}

double ac_precession_angle(const FieldConfig& cfg, const PlanarPath& path, int n_sub) {
    return -2.0 * cfg.units.mu / cfg.units.hbar * line_integral_A(cfg, path, n_sub);
}

double ideal_ac_phase(double enclosed_lambda, const UnitSystem& units) {
    return units.mu * enclosed_lambda / (units.hbar * units.eps0 * units.c * units.c);
}

double verify_gauge_cancellation(const FieldConfig& cfg, const PlanarPath& path,
                                 const GaugeCheckOptions& opts) {
    path.validate();
    if (!(opts.fd_step > 0.0) || opts.samples_per_segment < 1)
        throw DomainError("gauge check needs fd_step > 0 and at least one sample per segment");

    const double h = opts.fd_step;
    const auto& units = cfg.units;
    double worst = 0.0;

    for (std::size_t s = 0; s + 1 < path.vertices.size(); ++s) {
        // Sub-path from the start through vertex s, then straight to the probe point.
        PlanarPath sub{{path.vertices.begin(), path.vertices.begin() + static_cast<long>(s) + 1}, false};
        sub.vertices.push_back(Vec2::Zero());
        auto gamma_at = [&](const Vec2& x) {
            sub.vertices.back() = x;
            return ac_precession_angle(cfg, sub, opts.n_sub);
        };

        const Vec2 a = path.vertices[s];
        const Vec2 b = path.vertices[s + 1];
        for (int k = 1; k <= opts.samples_per_segment; ++k) {
            const Vec2 x = a + (b - a) * (static_cast<double>(k) / opts.samples_per_segment);
            Vec2 grad;
            try {
                grad.x() = (gamma_at(x + Vec2(h, 0.0)) - gamma_at(x - Vec2(h, 0.0))) / (2.0 * h);
                grad.y() = (gamma_at(x + Vec2(0.0, h)) - gamma_at(x - Vec2(0.0, h))) / (2.0 * h);
            } catch (const SingularPoint&) {
                throw SingularPoint("gauge check probe hits a line charge", s);
            }
            const Vec2 residual = 0.5 * units.hbar * grad + units.mu * eval_A(cfg, x);
            worst = std::max(worst, residual.norm());
        }
    }
    return worst;
}

}  // namespace dualab
