#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sinqpe/protocol.hpp"

namespace sinqpe {

struct ErrorStats {
  Complex sharpness{0.0, 0.0};   // <e^{i error}>
  double holevo = 0.0;           // |sharpness|^{-2} - 1
  double holevo_unbiased = 0.0;  // <cos error>^{-2} - 1
  double cost_luis = 0.0;        // 2 (1 - <cos error>), in [0, 4]
  std::int64_t sample_count = 0; // 0 for exact, distribution-based statistics
};

// Closed-form error density of the sine-window state,
// (1/(pi(N+2))) * (cos(theta(N+2)/2) sin(pi/(N+2)) / (cos(pi/(N+2)) - cos theta))^2,
// switching to the direct Fourier sum where the denominator vanishes.
double pdf_optimal(double theta, std::int64_t max_index);

// Error density of the uniform state,
// sin^2((N+1)theta/2) / (2 pi (N+1) sin^2(theta/2)), limit (N+1)/(2 pi) at 0.
double pdf_uniform(double theta, std::int64_t max_index);

// tan^2(pi/(N+2)): the smallest Holevo variance any N-excitation state attains.
double min_holevo_variance(std::int64_t max_index);

// sum_n a_n a_{n+1}: sharpness under the exact covariant grid measurement.
double sharpness_canonical(std::span<const double> amps);

ErrorStats stats_from_samples(std::span<const MeasurementRecord> records);
ErrorStats stats_from_distribution(const OutcomeDistribution& dist, double phi);

using DistributionBackend =
    std::function<OutcomeDistribution(const SineStateParams&, double, double, StateKind)>;

// Exact statistics averaged over a 64-point uniform grid of measurement
// offsets spanning one grid cell [0, 2*pi/2^m). After the outcome sum the
// only surviving offset frequencies are 0 and +/-2^m, so this fixed grid is
// exact for every m. Default backend: canonical_distribution.
ErrorStats stats_offset_averaged(const SineStateParams& params, double phi,
                                 StateKind kind, const DistributionBackend& backend = {});

struct DensityCurve {
  std::vector<double> thetas;
  std::vector<double> densities;
};

// Densities on an evenly spaced theta grid over [-pi, pi], endpoints included.
DensityCurve density_curve(std::int64_t max_index, int points, StateKind kind);

double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace sinqpe
