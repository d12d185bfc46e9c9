#include "dualab/interferometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dualab/csv.hpp"
#include "dualab/errors.hpp"

namespace dualab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

Vec3 on_sphere(double theta, double azimuth) {
    return {std::sin(theta) * std::cos(azimuth), std::sin(theta) * std::sin(azimuth), std::cos(theta)};
}

// Signed solid angle of the spherical triangle (apex, a, b).
double triangle_solid_angle(const Vec3& apex, const Vec3& a, const Vec3& b) {
    const double num = apex.dot(a.cross(b));
    const double den = 1.0 + apex.dot(a) + apex.dot(b) + a.dot(b);
    return 2.0 * std::atan2(num, den);
}

void push_unique(std::vector<double>& v, double x, double tol) {
    for (double y : v)
        if (circular_distance(x, y) < tol) return;
    v.push_back(x);
}

}  // namespace

Fringe pancharatnam(const Spinor& s_d, const Spinor& s_u) {
    const Complex z = inner(s_d, s_u);
    Fringe f;
    f.visibility = std::abs(z);
    if (f.visibility >= kVisibilityFloor) f.phi = wrap_angle(std::arg(z));
    return f;
}

double nonideal_visibility(double theta, double phi_D) {
    // |<s_d|s_u>| = sqrt(1 - sin^2 theta sin^2 phi_D), evaluated as a modulus to keep
    // full relative accuracy when cos phi_D is small.
    return std::min(1.0, std::hypot(std::cos(phi_D), std::cos(theta) * std::sin(phi_D)));
}

double nonideal_phase(double theta, double phi_D) {
    if (nonideal_visibility(theta, phi_D) < kVisibilityFloor)
        throw UndefinedPhase("interference phase undefined: visibility vanishes");
    // Re<s_d|s_u> = cos phi_D, Im<s_d|s_u> = cos theta sin phi_D.
    return wrap_angle(std::atan2(std::cos(theta) * std::sin(phi_D), std::cos(phi_D)));
}

DetectorProbabilities detector_probabilities(double phi, double nu, double chi) {
    const double p1 = 0.5 * (1.0 + nu * std::cos(phi + chi));
    return {p1, 1.0 - p1};
}

Inversion invert_observables(double phi, double nu) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double nc = nu * std::abs(c);
    if (nc < 1e-12) throw SingularInversion("nu |cos phi| too small to invert");

    Inversion inv;
    // 1 - nu^2 cos^2 phi written as a sum of non-negative terms: exact at nu = 1.
    const double nu_s2 = nu * nu * s * s;
    const double one_minus_nu2 = std::max(0.0, 1.0 - nu * nu);
    const double sin2_phiD = nu_s2 + one_minus_nu2;
    const double cos2_phiD = nc * nc;
    inv.tan2_phi_D = sin2_phiD / cos2_phiD;
    inv.phi_D_principal = std::atan2(std::sqrt(sin2_phiD), nc);
    if (sin2_phiD > 1e-14) {
        inv.cos2_theta = clamp_unit(nu_s2 / sin2_phiD);
        inv.theta_principal = std::atan2(std::sqrt(one_minus_nu2), nu * std::abs(s));
    }
    return inv;
}

std::vector<Inversion::Candidate> Inversion::preimages() const {
    std::vector<double> phis;
    const double a = phi_D_principal;
    for (double x : {a, -a, kPi - a, a - kPi}) push_unique(phis, wrap_angle(x), 1e-15);

    std::vector<double> thetas;
    if (theta_principal) {
        thetas.push_back(*theta_principal);
        if (std::abs(kPi - 2.0 * *theta_principal) > 1e-15) thetas.push_back(kPi - *theta_principal);
    } else {
        thetas.push_back(kNaN);
    }

    std::vector<Candidate> out;
    for (double t : thetas)
        for (double p : phis) out.push_back({t, p});
    return out;
}

std::vector<Inversion::Candidate> Inversion::consistent(double phi, double nu, double tol) const {
    std::vector<Candidate> out;
    for (const auto& cand : preimages()) {
        const double theta = std::isnan(cand.theta) ? 0.0 : cand.theta;
        const double v = nonideal_visibility(theta, cand.phi_D);
        if (std::abs(v - nu) > tol || v < kVisibilityFloor) continue;
        if (circular_distance(nonideal_phase(theta, cand.phi_D), phi) > tol) continue;
        out.push_back(cand);
    }
    return out;
}

PhaseSplit decompose_phase(double theta, double phi_D) {
    const double phi = nonideal_phase(theta, phi_D);
    const double dyn = phi_D * std::cos(theta);
    return {dyn, phi - dyn};
}

double solid_angle_geodesic_closed(double theta, double delta_azimuth, int n_steps) {
    if (n_steps < 2) throw DomainError("solid angle needs n_steps >= 2");
    if (delta_azimuth == 0.0 || std::sin(theta) == 0.0) return 0.0;

    const Vec3 start = on_sphere(theta, 0.0);
    const Vec3 end = on_sphere(theta, delta_azimuth);
    const double cos_sep = std::clamp(start.dot(end), -1.0, 1.0);
    if (cos_sep < -1.0 + 1e-9) throw GeodesicAmbiguous("spin path endpoints are antipodal");
    const double sep = std::acos(cos_sep);

    std::vector<Vec3> loop;
    loop.reserve(2 * static_cast<std::size_t>(n_steps));
    // Shortest geodesic start -> end.
    for (int k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) / n_steps;
        if (sep > 1e-6) {
            loop.push_back((std::sin((1.0 - t) * sep) * start + std::sin(t * sep) * end) / std::sin(sep));
        } else {
            loop.push_back(((1.0 - t) * start + t * end).normalized());
        }
    }
    // Back along the spin path end -> start.
    for (int k = 0; k < n_steps; ++k)
        loop.push_back(on_sphere(theta, delta_azimuth * (1.0 - static_cast<double>(k) / n_steps)));

    Vec3 apex = Vec3::Zero();
    for (const auto& v : loop) apex += v;
    apex = apex.norm() > 1e-12 ? Vec3(apex.normalized()) : Vec3(Vec3::UnitZ());

    double omega = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i)
        omega += triangle_solid_angle(apex, loop[i], loop[(i + 1) % loop.size()]);
    return omega;
}

InterferenceResult interfere(double theta, double phi_D, int n_steps) {
    InterferenceResult r;
    r.theta = theta;
    r.phi_D = phi_D;
    r.visibility = nonideal_visibility(theta, phi_D);
    r.gamma_dyn = phi_D * std::cos(theta);
    if (r.visibility >= kVisibilityFloor) {
        r.phi = nonideal_phase(theta, phi_D);
        r.gamma_geo = *r.phi - *r.gamma_dyn;
    }
    try {
        r.omega_gc = solid_angle_geodesic_closed(theta, 2.0 * phi_D, n_steps);
    } catch (const GeodesicAmbiguous&) {
        r.omega_gc.reset();
    }
    return r;
}

std::string interference_csv_header() { return "theta,phi_D,phi,visibility,gamma_dyn,gamma_geo,omega_gc"; }

std::string to_csv_row(const InterferenceResult& r) {
    return format_number(r.theta) + ',' + format_number(r.phi_D) + ',' + format_number(r.phi) + ',' +
           format_number(r.visibility) + ',' + format_number(r.gamma_dyn) + ',' +
           format_number(r.gamma_geo) + ',' + format_number(r.omega_gc);
}

}  // namespace dualab
