#include "sinqpe/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sinqpe {

namespace {

constexpr double kDenominatorGuard = 1e-8;
constexpr double kSharpnessFloor = 1e-12;
constexpr int kOffsetGridPoints = 64;

// Direct density (1/2pi) |sum_n a_n e^{i n theta}|^2; exact fallback for the
// closed forms at their removable singularities.
double fourier_density(double theta, std::span<const double> amps) {
  Complex sum{0.0, 0.0};
  for (std::size_t n = 0; n < amps.size(); ++n) {
    sum += amps[n] * std::polar(1.0, static_cast<double>(n) * theta);
  }
  return std::norm(sum) / kTwoPi;
}

ErrorStats stats_from_moment(Complex sharpness, std::int64_t sample_count) {
  ErrorStats stats;
  stats.sharpness = sharpness;
  stats.sample_count = sample_count;
  const double mag = std::abs(sharpness);
  const double cos_mean = sharpness.real();
  stats.holevo = mag < kSharpnessFloor ? std::numeric_limits<double>::infinity()
                                       : 1.0 / (mag * mag) - 1.0;
  stats.holevo_unbiased = std::abs(cos_mean) < kSharpnessFloor
                              ? std::numeric_limits<double>::infinity()
                              : 1.0 / (cos_mean * cos_mean) - 1.0;
  stats.cost_luis = 2.0 * (1.0 - cos_mean);
  return stats;
}

}  // namespace

double pdf_optimal(double theta, std::int64_t max_index) {
  if (max_index < 1) throw std::invalid_argument("max_index must be at least 1");
  const double window = static_cast<double>(max_index) + 2.0;
  const double denom = std::cos(kPi / window) - std::cos(theta);
  if (std::abs(denom) < kDenominatorGuard) {
    return fourier_density(theta, sine_amplitudes(max_index));
  }
  const double ratio = std::cos(0.5 * theta * window) * std::sin(kPi / window) / denom;
  return ratio * ratio / (kPi * window);
}

double pdf_uniform(double theta, std::int64_t max_index) {
  if (max_index < 1) throw std::invalid_argument("max_index must be at least 1");
  const double levels = static_cast<double>(max_index) + 1.0;
  const double half_sin = std::sin(0.5 * theta);
  if (std::abs(half_sin) < kDenominatorGuard) {
    const std::vector<double> amps(static_cast<std::size_t>(max_index) + 1,
                                   1.0 / std::sqrt(levels));
    return fourier_density(theta, amps);
  }
  const double ratio = std::sin(0.5 * levels * theta) / half_sin;
  return ratio * ratio / (kTwoPi * levels);
}

double min_holevo_variance(std::int64_t max_index) {
  if (max_index < 1) throw std::invalid_argument("max_index must be at least 1");
  const double t = std::tan(kPi / (static_cast<double>(max_index) + 2.0));
  return t * t;
}

double sharpness_canonical(std::span<const double> amps) {
  double sum = 0.0;
  for (std::size_t n = 0; n + 1 < amps.size(); ++n) sum += amps[n] * amps[n + 1];
  return sum;
}

ErrorStats stats_from_samples(std::span<const MeasurementRecord> records) {
  if (records.empty()) throw std::invalid_argument("no samples");
  Complex sum{0.0, 0.0};
  for (const auto& record : records) {
    sum += std::polar(1.0, record.error);
  }
  return stats_from_moment(sum / static_cast<double>(records.size()),
                           static_cast<std::int64_t>(records.size()));
}

ErrorStats stats_from_distribution(const OutcomeDistribution& dist, double phi) {
  if (dist.probabilities.size() != dist.grid.size() || dist.probabilities.empty()) {
    throw std::invalid_argument("malformed distribution");
  }
  Complex sum{0.0, 0.0};
  for (std::size_t k = 0; k < dist.probabilities.size(); ++k) {
    sum += dist.probabilities[k] * std::polar(1.0, dist.grid[k] - phi);
  }
  return stats_from_moment(sum, 0);
}

ErrorStats stats_offset_averaged(const SineStateParams& params, double phi,
                                 StateKind kind, const DistributionBackend& backend) {
  const DistributionBackend& compute =
      backend ? backend : DistributionBackend(canonical_distribution);
  const double cell = kTwoPi / static_cast<double>(params.dim());
  Complex sum{0.0, 0.0};
  for (int t = 0; t < kOffsetGridPoints; ++t) {
    const double offset = cell * (static_cast<double>(t) + 0.5) / kOffsetGridPoints;
    const OutcomeDistribution dist = compute(params, phi, offset, kind);
    sum += stats_from_distribution(dist, phi).sharpness;
  }
  return stats_from_moment(sum / static_cast<double>(kOffsetGridPoints), 0);
}

DensityCurve density_curve(std::int64_t max_index, int points, StateKind kind) {
  if (points < 2) throw std::invalid_argument("need at least two grid points");
  DensityCurve curve;
  curve.thetas.resize(static_cast<std::size_t>(points));
  curve.densities.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double theta = -kPi + kTwoPi * static_cast<double>(i) / (points - 1);
    curve.thetas[static_cast<std::size_t>(i)] = theta;
    curve.densities[static_cast<std::size_t>(i)] = kind == StateKind::optimal
                                                       ? pdf_optimal(theta, max_index)
                                                       : pdf_uniform(theta, max_index);
  }
  return curve;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("need matching grids of at least two points");
  }
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    area += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
  }
  return area;
}

}  // namespace sinqpe
