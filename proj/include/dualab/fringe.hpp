#pragma once

#include <span>
#include <vector>

#include "dualab/interferometry.hpp"

namespace dualab {

struct FringeSample {
    double chi;
    double p1;
};

/// Detector-1 probabilities over the auxiliary phase chi (uniform on [0, 2 pi)).
std::vector<FringeSample> chi_scan(double phi, double nu, int n_samples);

/// Least-squares fit of P1 = 1/2 + a cos chi + b sin chi, giving
/// nu = 2 sqrt(a^2 + b^2) and phi = atan2(-b, a). Needs at least three distinct
/// chi values spanning half a period or more; otherwise InsufficientSamples.
Fringe fit_fringe(std::span<const FringeSample> samples);

}  // namespace dualab
