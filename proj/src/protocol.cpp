#include "sinqpe/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <utility>

namespace sinqpe {

namespace {

// Hadamard after a phase rotation of the |1> amplitude: H * diag(1, e^{i*theta}).
Gate measurement_rotation(double theta) {
  const double h = 1.0 / std::sqrt(2.0);
  const Complex r = std::polar(h, theta);
  return Gate::one_qubit({Complex{h, 0.0}, r, Complex{h, 0.0}, -r});
}

double effective_offset(const ProtocolConfig& config) {
  return config.covariant ? config.offset : 0.0;
}

std::uint64_t outcome_index(std::span<const int> bits) {
  const int m = static_cast<int>(bits.size());
  std::uint64_t k = 0;
  for (int j = 1; j <= m; ++j) {
    if (bits[j - 1]) k |= std::uint64_t{1} << (m - j);
  }
  return k;
}

double grid_estimate(const SineStateParams& params, std::uint64_t k, double offset) {
  return kTwoPi * static_cast<double>(k) / static_cast<double>(params.dim()) + offset;
}

// Distinguishes the two live-register layouts: the sine state needs the
// two-qubit growth gates, the uniform baseline (and the one-qubit sine state,
// which is just |+>) streams independent qubits.
bool uses_growth_gates(const ProtocolConfig& config) {
  return config.state_kind == StateKind::optimal && config.params.num_qubits >= 2;
}

std::vector<double> state_amplitudes(const SineStateParams& params, StateKind kind) {
  if (kind == StateKind::optimal) return amplitudes(params);
  return std::vector<double>(params.dim(), std::pow(2.0, -0.5 * params.num_qubits));
}

}  // namespace

StateVector prepare_full(const SineStateParams& params) {
  StateVector state = StateVector::plus_states(params.num_qubits);
  for (int level = params.num_qubits - 1; level >= 1; --level) {
    state = apply_gate(state, build_preparation_unitary(params, level), level, 0);
  }
  return apply_gate(state, flag_fix_gate(), 0);
}

double feedback_angle(std::span<const int> later_bits) {
  double fraction = 0.0;
  double weight = 0.5;
  for (const int bit : later_bits) {
    if (bit) fraction += weight;
    weight *= 0.5;
  }
  return -kPi * fraction;
}

MeasurementRecord run_streaming(const ProtocolConfig& config, std::mt19937_64& rng) {
  const int m = config.params.num_qubits;
  const double offset = effective_offset(config);
  const double kick = config.true_phase - offset;

  MeasurementRecord record;
  record.bits.assign(m, 0);
  record.feedback.assign(m, 0.0);

  const std::span<const int> bits(record.bits);
  auto measure_round = [&](StateVector& live, int j) {
    live = phase_kick(live, 0, std::ldexp(kick, j - 1));
    const double theta = feedback_angle(bits.subspan(j));
    record.feedback[j - 1] = theta;
    record.max_live_qubits = std::max(record.max_live_qubits, live.num_qubits());
    if (live.num_qubits() > 2) throw std::logic_error("live register exceeded two qubits");
    MeasurementOutcome out = measure_qubit(live, 0, measurement_rotation(theta), rng);
    record.bits[j - 1] = out.bit;
    live = std::move(out.post);
  };

  if (uses_growth_gates(config)) {
    StateVector live =
        tensor_product(StateVector::plus_states(1), StateVector::plus_states(1));
    live = apply_gate(live, build_preparation_unitary(config.params, m - 1), 0, 1);
    for (int j = m; j >= 2; --j) {
      measure_round(live, j);  // leaves the flag qubit alone at bit 0
      if (j > 2) {
        live = tensor_product(StateVector::plus_states(1), live);
        live = apply_gate(live, build_preparation_unitary(config.params, j - 2), 0, 1);
      }
    }
    live = apply_gate(live, flag_fix_gate(), 0);
    measure_round(live, 1);
  } else {
    for (int j = m; j >= 1; --j) {
      StateVector live = StateVector::plus_states(1);
      if (config.state_kind == StateKind::optimal) {
        live = apply_gate(live, flag_fix_gate(), 0);  // m == 1: acts on |+> trivially
      }
      measure_round(live, j);
    }
  }

  record.outcome = outcome_index(record.bits);
  record.estimate = grid_estimate(config.params, record.outcome, offset);
  record.error = wrap_pm_pi(record.estimate - config.true_phase);
  return record;
}

std::vector<MeasurementRecord> run_trials(const ProtocolConfig& config,
                                          std::int64_t trials, int threads) {
  if (trials < 1) throw std::invalid_argument("trial count must be positive");
  std::vector<MeasurementRecord> records(static_cast<std::size_t>(trials));
  const double cell = kTwoPi / static_cast<double>(config.params.dim());

  auto run_range = [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t t = begin; t < end; ++t) {
      std::mt19937_64 rng = trial_engine(config.seed, static_cast<std::uint64_t>(t));
      ProtocolConfig trial_config = config;
      if (config.covariant) trial_config.offset = uniform01(rng) * cell;
      records[static_cast<std::size_t>(t)] = run_streaming(trial_config, rng);
    }
  };

  const int workers = std::clamp<int>(threads, 1, 64);
  if (workers == 1 || trials < 2 * workers) {
    run_range(0, trials);
    return records;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::int64_t chunk = (trials + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min<std::int64_t>(begin + chunk, trials);
    if (begin >= end) break;
    pool.emplace_back(run_range, begin, end);
  }
  for (auto& th : pool) th.join();
  return records;
}

namespace {

struct BranchEnumerator {
  const ProtocolConfig& config;
  double kick = 0.0;
  std::vector<int> bits;
  std::vector<double>* probabilities = nullptr;
  int max_live = 0;

  void record_leaf(double probability) {
    (*probabilities)[outcome_index(bits)] += probability;
  }

  // Walks both outcomes of round j; `live` holds the data qubit at bit 0
  // (plus the flag above it while growth gates are still pending).
  void walk(const StateVector& live_in, int j, double probability) {
    StateVector live = live_in;
    if (j == 1 && config.state_kind == StateKind::optimal) {
      live = apply_gate(live, flag_fix_gate(), 0);
    }
    live = phase_kick(live, 0, std::ldexp(kick, j - 1));
    const double theta = feedback_angle(std::span<const int>(bits).subspan(j));
    max_live = std::max(max_live, live.num_qubits());
    auto branches = branch_qubit(live, 0, measurement_rotation(theta));
    for (int bit = 0; bit < 2; ++bit) {
      bits[j - 1] = bit;
      const double weight = probability * branches[bit].probability;
      if (j == 1) {
        record_leaf(weight);
        continue;
      }
      if (branches[bit].probability == 0.0) {
        // Entire subtree carries zero weight; the leaves stay at their
        // explicit zeros.
        continue;
      }
      if (!uses_growth_gates(config)) {
        walk(StateVector::plus_states(1), j - 1, weight);
      } else if (j == 2) {
        walk(branches[bit].post, 1, weight);  // only the flag qubit remains
      } else {
        StateVector next =
            tensor_product(StateVector::plus_states(1), branches[bit].post);
        next = apply_gate(next, build_preparation_unitary(config.params, j - 2), 0, 1);
        walk(next, j - 1, weight);
      }
    }
    bits[j - 1] = 0;
  }
};

}  // namespace

OutcomeDistribution enumerate_branches(const ProtocolConfig& config) {
  const int m = config.params.num_qubits;
  const double offset = effective_offset(config);

  OutcomeDistribution dist;
  dist.params = config.params;
  dist.probabilities.assign(config.params.dim(), 0.0);
  dist.grid.resize(config.params.dim());
  for (std::size_t k = 0; k < dist.grid.size(); ++k) {
    dist.grid[k] = grid_estimate(config.params, k, offset);
  }

  BranchEnumerator walker{config, config.true_phase - offset, std::vector<int>(m, 0),
                          &dist.probabilities, 0};
  if (uses_growth_gates(config)) {
    StateVector live =
        tensor_product(StateVector::plus_states(1), StateVector::plus_states(1));
    live = apply_gate(live, build_preparation_unitary(config.params, m - 1), 0, 1);
    walker.walk(live, m, 1.0);
  } else {
    // Product pipeline; walk() applies the flag fix itself at j == 1.
    walker.walk(StateVector::plus_states(1), m, 1.0);
  }
  dist.max_live_qubits = walker.max_live;
  return dist;
}

OutcomeDistribution canonical_distribution(const SineStateParams& params, double phi,
                                           double offset, StateKind kind) {
  const std::vector<double> amps = state_amplitudes(params, kind);
  const std::size_t dim = params.dim();

  OutcomeDistribution dist;
  dist.params = params;
  dist.probabilities.resize(dim);
  dist.grid.resize(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double estimate = grid_estimate(params, k, offset);
    const double delta = phi - estimate;
    Complex sum{0.0, 0.0};
    for (std::size_t n = 0; n < dim; ++n) {
      sum += amps[n] * std::polar(1.0, static_cast<double>(n) * delta);
    }
    dist.probabilities[k] = std::norm(sum) / static_cast<double>(dim);
    dist.grid[k] = estimate;
  }
  return dist;
}

OutcomeDistribution inverse_qft_reference(const SineStateParams& params, double phi,
                                          double offset, StateKind kind) {
  if (params.num_qubits > 12) throw std::invalid_argument("dense reference limited to 12 qubits");
  const std::size_t dim = params.dim();

  // Phase-kick the register qubit by qubit, exercising the gate machinery
  // rather than multiplying amplitudes directly.
  std::vector<double> amps = state_amplitudes(params, kind);
  StateVector state = StateVector::from_amplitudes(
      std::vector<Complex>(amps.begin(), amps.end()));
  for (int j = 1; j <= params.num_qubits; ++j) {
    state = phase_kick(state, j - 1, std::ldexp(phi - offset, j - 1));
  }

  OutcomeDistribution dist;
  dist.params = params;
  dist.probabilities.resize(dim);
  dist.grid.resize(dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  const double unit = -kTwoPi / static_cast<double>(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    Complex sum{0.0, 0.0};
    for (std::size_t n = 0; n < dim; ++n) {
      sum += std::polar(scale, unit * static_cast<double>(k * n % dim)) * state[n];
    }
    dist.probabilities[k] = std::norm(sum);
    dist.grid[k] = grid_estimate(params, k, offset);
  }
  return dist;
}

}  // namespace sinqpe
