// Acceptance gate: one line of output per criterion, exit 0 only if every
// executed criterion passes. `--criterion N` runs a single criterion.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "sinqpe/verify.hpp"

namespace {

using namespace sinqpe;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return std::string(buf);
}

OutcomeDistribution streaming_backend(const SineStateParams& params, double phi,
                                      double offset, StateKind kind) {
  ProtocolConfig config;
  config.params = params;
  config.true_phase = phi;
  config.state_kind = kind;
  config.covariant = true;
  config.offset = offset;
  return enumerate_branches(config);
}

// Criterion 1: the sequential two-qubit preparation reproduces the window
// state to fidelity 1 - 1e-10 for every register size up to ten qubits,
// within one second overall.
Outcome criterion1() {
  const auto start = Clock::now();
  double min_fidelity = 1.0;
  for (int m = 1; m <= 10; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    const std::vector<double> target = amplitudes(params);
    const StateVector state = prepare_full(params);
    const StateVector reference = StateVector::from_amplitudes(
        std::vector<Complex>(target.begin(), target.end()));
    min_fidelity = std::min(min_fidelity, fidelity_up_to_global_phase(state, reference));
  }
  const double elapsed = seconds_since(start);
  const bool pass = min_fidelity >= 1.0 - 1e-10 && elapsed < 1.0;
  return {pass, fmt("min_fidelity=%.17g elapsed=%.3fs", min_fidelity, elapsed)};
}

// Criterion 2: the streaming enumeration, the projective grid formula and the
// dense inverse-transform reference agree to 1e-10 on every outcome, for all
// register sizes up to eight qubits, sixteen phases, both states, with and
// without a grid offset, never holding more than two qubits; thirty seconds.
Outcome criterion2() {
  const auto start = Clock::now();
  double worst = 0.0;
  int max_live = 0;
  for (int m = 1; m <= 8; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    const double cell = kTwoPi / static_cast<double>(params.dim());
    for (int t = 0; t < 16; ++t) {
      const double phi = kTwoPi * static_cast<double>(t) / 16.0;
      for (const StateKind kind : {StateKind::optimal, StateKind::uniform}) {
        for (const double offset : {0.0, 0.37 * cell}) {
          ProtocolConfig config;
          config.params = params;
          config.true_phase = phi;
          config.state_kind = kind;
          config.covariant = offset != 0.0;
          config.offset = offset;
          const OutcomeDistribution streamed = enumerate_branches(config);
          const OutcomeDistribution canonical =
              canonical_distribution(params, phi, offset, kind);
          const OutcomeDistribution dense =
              inverse_qft_reference(params, phi, offset, kind);
          max_live = std::max(max_live, streamed.max_live_qubits);
          for (std::size_t k = 0; k < params.dim(); ++k) {
            worst = std::max(
                {worst,
                 std::abs(streamed.probabilities[k] - canonical.probabilities[k]),
                 std::abs(streamed.probabilities[k] - dense.probabilities[k])});
          }
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = worst <= 1e-10 && max_live <= 2 && elapsed < 30.0;
  return {pass, fmt("worst_gap=%.3g max_live=%d elapsed=%.3fs", worst, max_live, elapsed)};
}

// Criterion 3: averaging the streaming protocol over a uniform cell of grid
// offsets attains the optimal Holevo variance tan^2(pi/(N+2)) to 1e-8 for
// m = 1..10, and the closed-form sharpness identity holds to 1e-12.
Outcome criterion3() {
  double worst_streaming = 0.0;
  double worst_identity = 0.0;
  for (int m = 1; m <= 10; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    const double bound = min_holevo_variance(params.max_index);
    const ErrorStats averaged =
        stats_offset_averaged(params, 0.7, StateKind::optimal, streaming_backend);
    worst_streaming = std::max(worst_streaming, std::abs(averaged.holevo - bound));
    const double s = sharpness_canonical(amplitudes(params));
    worst_identity = std::max(worst_identity, std::abs(1.0 / (s * s) - 1.0 - bound));
  }
  const bool pass = worst_streaming <= 1e-8 && worst_identity <= 1e-12;
  return {pass, fmt("worst_streaming_gap=%.3g worst_identity_gap=%.3g", worst_streaming,
                    worst_identity)};
}

// Criterion 4: 1e5 covariant six-qubit trials land within 5% of the reference
// variance 0.00226918, are identical for one and four worker threads, and
// finish in under ten seconds.
Outcome criterion4() {
  const auto start = Clock::now();
  ProtocolConfig config;
  config.params = SineStateParams::for_qubits(6);
  config.true_phase = 0.7;
  config.state_kind = StateKind::optimal;
  config.covariant = true;
  config.seed = 12345;
  const std::int64_t trials = 100000;
  const ErrorStats serial = stats_from_samples(run_trials(config, trials, 1));
  const double elapsed = seconds_since(start);
  const ErrorStats threaded = stats_from_samples(run_trials(config, trials, 4));
  const double reference = 0.00226918;
  const double rel = std::abs(serial.holevo_unbiased - reference) / reference;
  const bool deterministic = serial.holevo_unbiased == threaded.holevo_unbiased;
  const bool pass = rel <= 0.05 && deterministic && elapsed < 10.0;
  return {pass, fmt("holevo_unbiased=%.17g rel_gap=%.4f deterministic=%d elapsed=%.3fs",
                    serial.holevo_unbiased, rel, deterministic ? 1 : 0, elapsed)};
}

// Criterion 5: at N = 10 the window density peaks at 1.53043 (1e-4), the
// uniform density at 1.750704 (1e-6), both normalize to one (1e-6), and the
// window density stays below the uniform one at every tabulated |theta| >=
// pi/4.
Outcome criterion5() {
  const double peak_opt = pdf_optimal(0.0, 10);
  const double peak_uni = pdf_uniform(0.0, 10);
  const bool peaks_ok = std::abs(peak_opt - 1.53043) <= 1e-4 &&
                        std::abs(peak_uni - 1.750704) <= 1e-6;

  const DensityCurve optimal = density_curve(10, 20001, StateKind::optimal);
  const DensityCurve uniform = density_curve(10, 20001, StateKind::uniform);
  const double int_opt = trapezoid(optimal.thetas, optimal.densities);
  const double int_uni = trapezoid(uniform.thetas, uniform.densities);
  const bool norm_ok = std::abs(int_opt - 1.0) <= 1e-6 && std::abs(int_uni - 1.0) <= 1e-6;

  int violations = 0;
  double first_violation = 0.0;
  double tail_opt = 0.0;
  double tail_uni = 0.0;
  const double step = optimal.thetas[1] - optimal.thetas[0];
  for (std::size_t i = 0; i < optimal.thetas.size(); ++i) {
    if (std::abs(optimal.thetas[i]) < kPi / 4.0) continue;
    tail_opt += optimal.densities[i] * step;
    tail_uni += uniform.densities[i] * step;
    if (optimal.densities[i] >= uniform.densities[i]) {
      if (violations == 0) first_violation = optimal.thetas[i];
      ++violations;
    }
  }
  const bool tail_ok = violations == 0;
  const bool pass = peaks_ok && norm_ok && tail_ok;
  return {pass,
          fmt("peak_opt=%.17g peak_uni=%.17g int_opt=%.8f int_uni=%.8f "
              "tail_violations=%d first_violation_theta=%.6f tail_mass_opt=%.5f "
              "tail_mass_uni=%.5f",
              peak_opt, peak_uni, int_opt, int_uni, violations, first_violation,
              tail_opt, tail_uni)};
}

// Criterion 6: the full invariant suite passes on registers up to ten qubits.
Outcome criterion6() {
  VerifyOptions options;
  options.max_qubits = 10;
  const auto results = run_invariant_suite(options);
  int failed = 0;
  double worst_ratio = 0.0;
  std::string worst_name;
  for (const auto& r : results) {
    if (!r.passed) ++failed;
    const double ratio = r.worst / r.tolerance;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_name = r.name;
    }
  }
  const bool pass = failed == 0;
  return {pass, fmt("checks=%zu failed=%d tightest_margin=%s at %.3f of tolerance",
                    results.size(), failed, worst_name.c_str(), worst_ratio)};
}

// Criterion 7: the offset-averaged uniform-state variance equals
// (2^m/(2^m-1))^2 - 1 to 1e-10 and sits strictly above the optimal bound for
// m = 2..10.
Outcome criterion7() {
  double worst = 0.0;
  bool separated = true;
  for (int m = 2; m <= 10; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    const ErrorStats averaged =
        stats_offset_averaged(params, 0.7, StateKind::uniform, streaming_backend);
    const double n = static_cast<double>(params.max_index);
    const double expected = ((n + 1.0) / n) * ((n + 1.0) / n) - 1.0;
    worst = std::max(worst, std::abs(averaged.holevo - expected));
    if (averaged.holevo <= min_holevo_variance(params.max_index)) separated = false;
  }
  const bool pass = worst <= 1e-10 && separated;
  return {pass, fmt("worst_gap=%.3g separated=%d", worst, separated ? 1 : 0)};
}

struct Entry {
  int id;
  const char* label;
  Outcome (*run)();
};

constexpr Entry kEntries[] = {
    {1, "two-qubit sequential preparation reaches the window state", criterion1},
    {2, "all three measurement backends agree everywhere", criterion2},
    {3, "offset-averaged streaming attains the optimal variance", criterion3},
    {4, "six-qubit monte carlo reproduces the reference variance", criterion4},
    {5, "window density dominates the uniform tail pointwise", criterion5},
    {6, "invariant suite passes on ten-qubit registers", criterion6},
    {7, "uniform baseline variance is exact and strictly worse", criterion7},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
      if (only < 1 || only > 7) {
        std::fprintf(stderr, "criterion must be between 1 and 7\n");
        return 2;
      }
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 2;
    }
  }

  bool all_pass = true;
  for (const Entry& entry : kEntries) {
    if (only != 0 && entry.id != only) continue;
    const Outcome outcome = entry.run();
    std::printf("%s criterion%d: %s [%s]\n", outcome.pass ? "PASS" : "FAIL", entry.id,
                entry.label, outcome.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
