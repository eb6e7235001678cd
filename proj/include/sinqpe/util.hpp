#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace sinqpe {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

// Wrap an angle into [0, 2*pi).
inline double wrap_two_pi(double x) {
  double y = std::fmod(x, kTwoPi);
  return y < 0.0 ? y + kTwoPi : y;
}

// Wrap an angle into (-pi, pi].
inline double wrap_pm_pi(double x) {
  double y = std::fmod(x + kPi, kTwoPi);
  if (y <= 0.0) y += kTwoPi;
  return y - kPi;
}

// One SplitMix64 round; used to spread seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Independent generator for one trial, derived from (master seed, trial index).
// Results are therefore identical no matter how trials are partitioned.
inline std::mt19937_64 trial_engine(std::uint64_t master_seed, std::uint64_t trial) {
  return std::mt19937_64{splitmix64(master_seed ^ splitmix64(trial))};
}

// Uniform double in [0, 1) from the top 53 bits of the generator output.
// std::uniform_real_distribution is implementation-defined; this is not.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace sinqpe
