#include "dualab/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dualab/csv.hpp"
#include "dualab/errors.hpp"

namespace dualab {

void GaussianPacket::validate() const {
    if (!(sigma0 > 0.0)) throw DomainError("packet width sigma0 must be > 0");
    if (!(mass > 0.0)) throw DomainError("packet mass must be > 0");
    if (!(hbar >= 0.0)) throw DomainError("packet hbar must be >= 0");
}

double GaussianPacket::width(double t) const {
    const double spread = hbar * t / (2.0 * mass * sigma0 * sigma0);
    return sigma0 * std::sqrt(1.0 + spread * spread);
}

PacketState packet_at(const GaussianPacket& p, double t) {
    p.validate();
    if (t < 0.0) throw DomainError("time must be >= 0");
    return {p.center(t), p.width(t)};
}

void RegionInterval::validate() const {
    if (!(x_min < x_max)) throw DomainError("region needs x_min < x_max");
}

bool contained_during_pulse(const GaussianPacket& p, const RegionInterval& region,
                            const PulseProfile& pulse, double k_sigma, int samples) {
    p.validate();
    region.validate();
    // Closed interval, with a few ulps of slack on the region scale.
    const double slack = 4.0 * std::numeric_limits<double>::epsilon() *
                         std::max({1.0, std::abs(region.x_min), std::abs(region.x_max)});
    auto inside = [&](double t) {
        const double c = p.center(t);
        const double half = k_sigma * p.width(t);
        return c - half >= region.x_min - slack && c + half <= region.x_max + slack;
    };
    const double t0 = pulse.t_on();
    const double t1 = pulse.t_off();
    if (!inside(t0) || !inside(t1)) return false;
    for (int k = 1; k < samples; ++k)
        if (!inside(t0 + (t1 - t0) * k / samples)) return false;
    return true;
}

std::vector<SweepRow> nondispersivity_sweep(const GaussianPacket& tmpl,
                                            const std::vector<double>& velocities,
                                            const RegionInterval& region, const PulseProfile& pulse,
                                            const UnitSystem& units, double k_sigma) {
    std::vector<SweepRow> rows;
    rows.reserve(velocities.size());
    for (double v : velocities) {
        GaussianPacket p = tmpl;
        p.velocity = v;
        const bool ok = contained_during_pulse(p, region, pulse, k_sigma);
        const double gamma = -2.0 * units.mu / units.hbar * pulse.total_integral();
        rows.push_back({v, ok, gamma, ok});
    }
    return rows;
}

std::string sweep_csv_header() { return "velocity,contained,gamma,valid"; }

std::string to_csv_row(const SweepRow& row) {
    return format_number(row.velocity) + ',' + (row.contained ? "true" : "false") + ',' +
           format_number(row.gamma) + ',' + (row.valid ? "true" : "false");
}

}  // namespace dualab
