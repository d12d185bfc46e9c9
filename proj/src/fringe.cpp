#include "dualab/fringe.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "dualab/errors.hpp"

namespace dualab {

namespace {

// Largest arc of the circle not containing any sample; coverage is 2 pi minus it.
double largest_gap(std::vector<double> angles) {
    for (double& a : angles) a = std::fmod(std::fmod(a, kTwoPi) + kTwoPi, kTwoPi);
    std::sort(angles.begin(), angles.end());
    double gap = angles.front() + kTwoPi - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
    return gap;
}

}  // namespace

std::vector<FringeSample> chi_scan(double phi, double nu, int n_samples) {
    if (n_samples < 1) throw DomainError("chi scan needs at least one sample");
    std::vector<FringeSample> out;
    out.reserve(static_cast<std::size_t>(n_samples));
    for (int k = 0; k < n_samples; ++k) {
        const double chi = kTwoPi * k / n_samples;
        out.push_back({chi, detector_probabilities(phi, nu, chi).p1});
    }
    return out;
}

Fringe fit_fringe(std::span<const FringeSample> samples) {
    if (samples.size() < 3) throw InsufficientSamples("fringe fit needs at least 3 samples");
    std::vector<double> chis;
    chis.reserve(samples.size());
    for (const auto& s : samples) chis.push_back(s.chi);
    {
        std::vector<double> reduced;
        for (double c : chis) {
            const double r = wrap_angle(c);
            if (std::none_of(reduced.begin(), reduced.end(),
                             [r](double x) { return circular_distance(x, r) < 1e-12; }))
                reduced.push_back(r);
        }
        if (reduced.size() < 3) throw InsufficientSamples("fringe fit needs 3 distinct chi values");
    }
    if (kTwoPi - largest_gap(chis) < kPi - 1e-12)
        throw InsufficientSamples("chi samples must cover at least half a period");

    const auto n = static_cast<Eigen::Index>(samples.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        design(i, 0) = std::cos(s.chi);
        design(i, 1) = std::sin(s.chi);
        rhs(i) = s.p1 - 0.5;
    }
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);

    Fringe f;
    f.visibility = 2.0 * std::hypot(coef(0), coef(1));
    if (f.visibility >= kVisibilityFloor) f.phi = wrap_angle(std::atan2(-coef(1), coef(0)));
    return f;
}

}  // namespace dualab
