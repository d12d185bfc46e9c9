#pragma once

#include <string>
#include <vector>

#include "dualab/fields.hpp"
#include "dualab/units.hpp"

namespace dualab {

/// Free 1D Gaussian wave packet moving along the beam axis. hbar = 0 gives
/// the classical (non-spreading) limit.
struct GaussianPacket {
    double x0 = 0.0;
    double velocity = 0.0;
    double sigma0 = 1.0;
    double mass = 1.0;
    double hbar = 1.0;

    void validate() const;
    double center(double t) const { return x0 + velocity * t; }
    /// sigma0 sqrt(1 + (hbar t / (2 m sigma0^2))^2)
    double width(double t) const;
};

struct PacketState {
    double center;
    double width;
};

PacketState packet_at(const GaussianPacket& p, double t);

/// Extent of the field region along the beam.
struct RegionInterval {
    double x_min = 0.0;
    double x_max = 1.0;
    void validate() const;
};

inline constexpr double kDefaultContainment = 5.0;

/// True when [center - k sigma, center + k sigma] stays inside the closed region
/// for every t in [t_on, t_off]; checked on `samples` uniform times plus both ends.
bool contained_during_pulse(const GaussianPacket& p, const RegionInterval& region,
                            const PulseProfile& pulse, double k_sigma = kDefaultContainment,
                            int samples = 256);

struct SweepRow {
    double velocity;
    bool contained;
    double gamma;
    bool valid;
};

/// For each velocity, the containment flag and the SAB precession angle over the whole pulse.
/// The angle depends on the pulse alone, so the gamma column is identical across rows;
/// rows where the packet leaves the region are flagged invalid.
std::vector<SweepRow> nondispersivity_sweep(const GaussianPacket& tmpl,
                                            const std::vector<double>& velocities,
                                            const RegionInterval& region, const PulseProfile& pulse,
                                            const UnitSystem& units,
                                            double k_sigma = kDefaultContainment);

std::string sweep_csv_header();
std::string to_csv_row(const SweepRow& row);

}  // namespace dualab
