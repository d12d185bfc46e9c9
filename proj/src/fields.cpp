#include "dualab/fields.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dualab/errors.hpp"

namespace dualab {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

double bump_value(const PulseProfile::SmoothBump& b, double t) {
    if (t < b.t_on || t > b.t_off) return 0.0;
    if (t < b.t_on + b.ramp) return b.amplitude * smooth_step((t - b.t_on) / b.ramp);
    if (t > b.t_off - b.ramp) return b.amplitude * smooth_step((b.t_off - t) / b.ramp);
    return b.amplitude;
}

// Overlap length of [a0, a1] and [b0, b1].
double overlap(double a0, double a1, double b0, double b1) {
    return std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
}

double ramp_integral(const PulseProfile::SmoothBump& b, double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    auto f = [&b](double t) { return bump_value(b, t); };
    return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, lo, hi, 20, 1e-13);
}

}  // namespace

double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

PulseProfile PulseProfile::rectangular(double amplitude, double t_on, double t_off) {
    if (!(t_off >= t_on)) throw DomainError("pulse requires t_on <= t_off");
    return PulseProfile(Rectangular{amplitude, t_on, t_off});
}

PulseProfile PulseProfile::smooth_bump(double amplitude, double t_on, double t_off, double ramp) {
    if (!(t_off > t_on)) throw DomainError("pulse requires t_on < t_off");
    if (!(ramp > 0.0) || 2.0 * ramp > t_off - t_on)
        throw DomainError("smooth-bump ramp must satisfy 0 < ramp <= (t_off - t_on)/2");
    return PulseProfile(SmoothBump{amplitude, t_on, t_off, ramp});
}

double PulseProfile::operator()(double t) const {
    return std::visit(overloaded{[t](const Rectangular& r) {
                                     return (t >= r.t_on && t <= r.t_off) ? r.amplitude : 0.0;
                                 },
                                 [t](const SmoothBump& b) { return bump_value(b, t); }},
                      shape_);
}

double PulseProfile::integral(double t0, double t1) const {
    if (t1 < t0) return -integral(t1, t0);
    return std::visit(
        overloaded{[&](const Rectangular& r) { return r.amplitude * overlap(t0, t1, r.t_on, r.t_off); },
                   [&](const SmoothBump& b) {
                       const double rise_end = b.t_on + b.ramp;
                       const double fall_start = b.t_off - b.ramp;
                       double sum = b.amplitude * overlap(t0, t1, rise_end, fall_start);
                       sum += ramp_integral(b, std::max(t0, b.t_on), std::min(t1, rise_end));
                       sum += ramp_integral(b, std::max(t0, fall_start), std::min(t1, b.t_off));
                       return sum;
                   }},
        shape_);
}

double PulseProfile::amplitude() const {
    return std::visit([](const auto& s) { return s.amplitude; }, shape_);
}
double PulseProfile::t_on() const {
    return std::visit([](const auto& s) { return s.t_on; }, shape_);
}
double PulseProfile::t_off() const {
    return std::visit([](const auto& s) { return s.t_off; }, shape_);
}

std::vector<double> PulseProfile::breakpoints() const {
    return std::visit(overloaded{[](const Rectangular& r) { return std::vector<double>{r.t_on, r.t_off}; },
                                 [](const SmoothBump& b) {
                                     return std::vector<double>{b.t_on, b.t_on + b.ramp,
                                                                b.t_off - b.ramp, b.t_off};
                                 }},
                      shape_);
}

void PlanarPath::validate() const {
    if (vertices.size() < 2) throw DomainError("path needs at least two vertices");
    if (closed && (vertices.front() - vertices.back()).norm() > 1e-12)
        throw DomainError("closed path must end at its first vertex");
}

double PlanarPath::length() const {
    double len = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) len += (vertices[i] - vertices[i - 1]).norm();
    return len;
}

PlanarPath PlanarPath::reversed() const {
    return PlanarPath{{vertices.rbegin(), vertices.rend()}, closed};
}

PlanarPath PlanarPath::polygon(const Vec2& center, double radius, int sides, double phase) {
    if (sides < 3) throw DomainError("polygon needs at least three sides");
    PlanarPath path;
    path.closed = true;
    for (int k = 0; k < sides; ++k) {
        const double a = phase + kTwoPi * k / sides;
        path.vertices.push_back(center + radius * Vec2(std::cos(a), std::sin(a)));
    }
    path.vertices.push_back(path.vertices.front());
    return path;
}

Vec2 eval_E(const FieldConfig& cfg, const Vec2& p) {
    Vec2 e = Vec2::Zero();
    const double k = 1.0 / (kTwoPi * cfg.units.eps0);
    for (const auto& q : cfg.charges) {
        const Vec2 r = p - q.position;
        const double r2 = r.squaredNorm();
        if (r2 < kSingularDistance * kSingularDistance)
            throw SingularPoint("field evaluated at a line-charge position");
        e += (k * q.lambda / r2) * r;
    }
    if (cfg.extra_field) e += cfg.extra_field(p);
    return e;
}

Vec2 eval_A(const FieldConfig& cfg, const Vec2& p) {
    const Vec2 e = eval_E(cfg, p);
    const double c2 = cfg.units.c * cfg.units.c;
    return Vec2(-e.y(), e.x()) / c2;
}

double divergence_E(const FieldConfig& cfg, const Vec2& p, double h) {
    const Vec2 dx(h, 0.0), dy(0.0, h);
    auto d = [&](const Vec2& step, int comp) {
        return (-eval_E(cfg, p + 2.0 * step)[comp] + 8.0 * eval_E(cfg, p + step)[comp] -
                8.0 * eval_E(cfg, p - step)[comp] + eval_E(cfg, p - 2.0 * step)[comp]) /
               (12.0 * h);
    };
    return d(dx, 0) + d(dy, 1);
}

double line_integral_A(const FieldConfig& cfg, const PlanarPath& path, int n_sub) {
    path.validate();
    if (n_sub < 1) throw DomainError("n_sub must be >= 1");

    // Three-point Gauss-Legendre on [0, 1].
    static const double g = std::sqrt(0.6);
    static const std::array<double, 3> nodes{0.5 * (1.0 - g), 0.5, 0.5 * (1.0 + g)};
    static const std::array<double, 3> weights{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

    double total = 0.0;
    for (std::size_t s = 0; s + 1 < path.vertices.size(); ++s) {
        const Vec2 a = path.vertices[s];
        const Vec2 d = path.vertices[s + 1] - a;
        const double len2 = d.squaredNorm();
        for (const auto& q : cfg.charges) {
            const double t = len2 > 0.0 ? std::clamp((q.position - a).dot(d) / len2, 0.0, 1.0) : 0.0;
            if ((a + t * d - q.position).norm() < kSingularDistance)
                throw SingularPoint("path passes through a line charge", s);
        }
        double seg = 0.0;
        try {
            for (int k = 0; k < n_sub; ++k) {
                for (std::size_t j = 0; j < nodes.size(); ++j) {
                    const double t = (k + nodes[j]) / n_sub;
                    seg += weights[j] * eval_A(cfg, a + t * d).dot(d);
                }
            }
        } catch (const SingularPoint&) {
            throw SingularPoint("path sample hits a line charge", s);
        }
        total += seg / n_sub;
    }
    return total;
}

double pulse_integral_B(const PulseProfile& pulse, double t0, double t1) {
    if (t1 < t0) throw DomainError("pulse_integral_B requires t0 <= t1");
    return pulse.integral(t0, t1);
}

}  // namespace dualab
