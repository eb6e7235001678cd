#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "sinqpe/sinestate.hpp"

namespace sinqpe {

enum class StateKind { optimal, uniform };

struct ProtocolConfig {
  SineStateParams params;
  double true_phase = 0.0;  // phi; wrapped into [0, 2*pi) on use
  StateKind state_kind = StateKind::optimal;
  bool covariant = false;
  double offset = 0.0;       // delta-phi in [0, 2*pi/2^m); used only when covariant
  std::uint64_t seed = 0;    // master seed for run_trials
};

struct MeasurementRecord {
  std::vector<int> bits;         // bits[j-1] = b_j, measured from qubit j
  std::vector<double> feedback;  // rotation angle applied before measuring qubit j
  std::uint64_t outcome = 0;     // k = sum_j b_j 2^{m-j}
  double estimate = 0.0;         // 2*pi*k/2^m + offset
  double error = 0.0;            // wrap(estimate - true_phase), in (-pi, pi]
  int max_live_qubits = 0;       // high-water mark of the streaming register
};

struct OutcomeDistribution {
  SineStateParams params;
  std::vector<double> probabilities;  // indexed by k
  std::vector<double> grid;           // estimate for each k
  int max_live_qubits = 0;            // set by the streaming enumeration only
};

// Builds the full m-qubit register in one go: all qubits in |+>, the
// two-qubit growth gates from the top level down, then the flag fix on
// qubit 1. Matches amplitudes() including global phase.
StateVector prepare_full(const SineStateParams& params);

// Feedback rotation angle before measuring qubit j, given the bits already
// measured from qubits j+1..m (in that order): -pi * 0.b_{j+1}b_{j+2}... in
// binary. Empty span (first measurement) gives 0.
double feedback_angle(std::span<const int> later_bits);

// One full sampled run: qubits are produced, kicked by 2^{j-1}(phi - offset),
// rotated by the feedback angle, Hadamard-measured and discarded from the top
// qubit down, with at most two qubits ever alive.
MeasurementRecord run_streaming(const ProtocolConfig& config, std::mt19937_64& rng);

// Independent trials with per-trial generators derived from config.seed, so
// the result is identical for any thread count. In covariant mode each trial
// draws its own offset uniformly from [0, 2*pi/2^m).
std::vector<MeasurementRecord> run_trials(const ProtocolConfig& config,
                                          std::int64_t trials, int threads = 1);

// Exact outcome distribution of the streaming protocol: follows both branches
// of every measurement. 2^m leaves; zero-probability branches keep explicit
// zero weight. Requires m <= 14.
OutcomeDistribution enumerate_branches(const ProtocolConfig& config);

// Reference distribution from the projective grid measurement:
// P(k) = (1/2^m) |sum_n a_n e^{i n (phi - grid_k)}|^2, grid_k = 2*pi*k/2^m + offset.
OutcomeDistribution canonical_distribution(const SineStateParams& params, double phi,
                                           double offset, StateKind kind);

// Reference distribution from the dense inverse-QFT matrix applied to the
// fully kicked register. Requires m <= 12.
OutcomeDistribution inverse_qft_reference(const SineStateParams& params, double phi,
                                          double offset, StateKind kind);

}  // namespace sinqpe
