#pragma once
// Reference computations used only by the tests. None of these call into the
// code paths they check.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

constexpr double pi = std::numbers::pi;

/// Recursive adaptive Simpson quadrature.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                               int depth = 60) {
    std::function<double(double, double, double, double, double, double, double, int)> rec;
    rec = [&](double a0, double b0, double fa, double fm, double fb, double whole, double eps, int d) {
        const double m = 0.5 * (a0 + b0);
        const double lm = 0.5 * (a0 + m), rm = 0.5 * (m + b0);
        const double flm = f(lm), frm = f(rm);
        const double left = (m - a0) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b0 - m) / 6.0 * (fm + 4.0 * frm + fb);
        if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
            return left + right + (left + right - whole) / 15.0;
        return rec(a0, m, fa, flm, fm, left, 0.5 * eps, d - 1) + rec(m, b0, fm, frm, fb, right, 0.5 * eps, d - 1);
    };
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return rec(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;
using Vec2c = std::array<cplx, 2>;

/// exp(-i sigma_z g / 2) written out as a diagonal 2x2 matrix.
inline Mat2 rz_matrix(double g) {
    return {{{std::exp(cplx(0, -g / 2)), 0.0}, {0.0, std::exp(cplx(0, g / 2))}}};
}

inline Vec2c mat_apply(const Mat2& m, const Vec2c& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

inline cplx braket(const Vec2c& a, const Vec2c& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

/// Pauli expectation values by explicit matrix products.
inline std::array<double, 3> pauli_expectations(const Vec2c& s) {
    const Mat2 sx{{{0.0, 1.0}, {1.0, 0.0}}};
    const Mat2 sy{{{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}};
    const Mat2 sz{{{1.0, 0.0}, {0.0, -1.0}}};
    return {braket(s, mat_apply(sx, s)).real(), braket(s, mat_apply(sy, s)).real(), braket(s, mat_apply(sz, s)).real()};
}

inline Vec2c spin_state(double theta, double azimuth) {
    return {std::cos(theta / 2), std::polar(std::sin(theta / 2), azimuth)};
}

/// <s_d|s_u> for arms rotated by gamma_u, gamma_d from the tilted state.
inline cplx arm_overlap(double theta, double gamma_u, double gamma_d) {
    const auto s0 = spin_state(theta, 0.0);
    return braket(mat_apply(rz_matrix(gamma_d), s0), mat_apply(rz_matrix(gamma_u), s0));
}

/// Area (unsigned) between a latitude arc at polar angle theta spanning azimuth
/// delta (|delta| < pi) and the great circle through its end points, from
/// the polar-cap sector minus the isosceles spherical triangle at the pole.
inline double lens_area(double theta, double delta) {
    const double d = std::abs(delta);
    const double t = theta <= pi / 2 ? theta : pi - theta;
    const double base_angle = std::atan2(1.0, std::cos(t) * std::tan(d / 2));
    return pi - 2.0 * base_angle - d * std::cos(t);
}

struct V3 {
    double x, y, z;
};
inline V3 sub(V3 a, V3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline double dot(V3 a, V3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline V3 cross(V3 a, V3 b) { return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x}; }
inline V3 unit(V3 a) {
    const double n = std::sqrt(dot(a, a));
    return {a.x / n, a.y / n, a.z / n};
}

/// Signed area of a simple spherical polygon (smaller than a hemisphere) by
/// Gauss-Bonnet: the turning angles of a counterclockwise loop sum to 2 pi minus
/// the enclosed area, those of a clockwise loop to -(2 pi - area).
inline double girard_area(const std::vector<V3>& poly) {
    const std::size_t n = poly.size();
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const V3 prev = poly[(i + n - 1) % n], cur = poly[i], next = poly[(i + 1) % n];
        // Tangent directions at `cur` toward prev and next.
        const V3 t_in = unit(cross(cross(cur, prev), cur));
        const V3 t_out = unit(cross(cross(cur, next), cur));
        const V3 back = {-t_in.x, -t_in.y, -t_in.z};
        turning += std::atan2(dot(cur, cross(back, t_out)), dot(back, t_out));
    }
    return turning >= 0.0 ? 2.0 * pi - turning : -(2.0 * pi + turning);
}

}  // namespace oracle
