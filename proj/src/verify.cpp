#include "sinqpe/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <vector>

namespace sinqpe {

namespace {

constexpr double kTight = 1e-12;
constexpr double kLoose = 1e-10;

std::string format_detail(const char* fmt, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return std::string(buf);
}

struct CheckBuilder {
  CheckResult result;

  explicit CheckBuilder(std::string name, double tolerance) {
    result.name = std::move(name);
    result.tolerance = tolerance;
  }

  void observe(double deviation) {
    result.worst = std::max(result.worst, std::abs(deviation));
  }

  CheckResult finish(std::string detail) {
    result.passed = result.worst <= result.tolerance;
    result.detail = std::move(detail);
    return std::move(result);
  }
};

double max_elementwise_gap(const StateVector& a, const StateVector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

StateVector plus_state() { return StateVector::plus_states(1); }

StateVector minus_state() {
  return StateVector::from_amplitudes(
      {Complex{1.0 / std::sqrt(2.0), 0.0}, Complex{-1.0 / std::sqrt(2.0), 0.0}});
}

CheckResult check_sine_normalization(int max_qubits) {
  CheckBuilder check("sine_normalization", kTight);
  for (int m = 1; m <= max_qubits; ++m) {
    const auto amps = amplitudes(SineStateParams::for_qubits(m));
    double sum = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      sum += amps[i] * amps[i];
      check.observe(amps[i] - amps[amps.size() - 1 - i]);  // palindrome
      if (amps[i] <= 0.0) check.observe(1.0);
    }
    check.observe(sum - 1.0);
  }
  return check.finish("unit norm, positivity and palindrome of the window amplitudes");
}

CheckResult check_qubit_factor_overlap(int max_qubits) {
  CheckBuilder check("qubit_factor_overlap", kTight);
  for (int m = 1; m <= max_qubits; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    for (int j = 1; j <= m; ++j) {
      const auto p = phi_qubit_state(params, j, +1);
      const auto q = phi_qubit_state(params, j, -1);
      const Complex overlap = std::conj(q[0]) * p[0] + std::conj(q[1]) * p[1];
      const double expected =
          std::cos(kPi * std::ldexp(1.0, j - 1) / static_cast<double>(params.window));
      check.observe(overlap.real() - expected);
      check.observe(overlap.imag());
      check.observe(std::norm(p[0]) + std::norm(p[1]) - 1.0);
    }
  }
  return check.finish("pairwise factor overlap is the real cosine of the doubled angle");
}

CheckResult check_branch_orthogonality(int max_qubits) {
  CheckBuilder check("branch_orthogonality", kTight);
  for (int m = 1; m <= max_qubits; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    for (int level = 1; level <= m; ++level) {
      const auto plus = big_phi_state(params, level, +1, false);
      const auto minus = big_phi_state(params, level, -1, false);
      check.observe(std::abs(inner_product(minus, plus)));
    }
  }
  return check.finish("sum and difference branch states are orthogonal at every level");
}

CheckResult check_branch_norms(int max_qubits) {
  CheckBuilder check("branch_norms", kTight);
  for (int m = 1; m <= max_qubits; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    for (int level = 1; level <= m; ++level) {
      const double c = overlap_product(params, level);
      check.observe(big_phi_state(params, level, +1, false).norm_squared() - (2.0 + 2.0 * c));
      check.observe(big_phi_state(params, level, -1, false).norm_squared() - (2.0 - 2.0 * c));
      check.observe(big_phi_state(params, level, +1, true).norm_squared() - 1.0);
      check.observe(big_phi_state(params, level, -1, true).norm_squared() - 1.0);
    }
  }
  return check.finish("squared branch norms equal 2 +/- 2 C_l");
}

CheckResult check_base_flag_states(int max_qubits) {
  CheckBuilder check("base_flag_states", kTight);
  for (int m = 1; m <= max_qubits; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    const auto plus = big_phi_state(params, 1, +1, true);
    const auto minus = big_phi_state(params, 1, -1, true);
    const double r = 1.0 / std::sqrt(2.0);
    check.observe(std::abs(plus[0] - Complex{r, 0.0}));
    check.observe(std::abs(plus[1] - Complex{r, 0.0}));
    check.observe(std::abs(minus[0] - Complex{0.0, r}));
    check.observe(std::abs(minus[1] - Complex{0.0, -r}));
  }
  return check.finish("level-1 branch states are |+> and i|->");
}

CheckResult check_mu_column_norms(int max_qubits) {
  CheckBuilder check("mu_column_norms", kTight);
  for (int m = 2; m <= max_qubits; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    for (int level = 1; level < m; ++level) {
      const auto mu = mu_coeffs(params, level);
      check.observe(std::norm(mu.mu0_plus) + std::norm(mu.mu1_plus) - 1.0);
      check.observe(std::norm(mu.mu0_minus) + std::norm(mu.mu1_minus) - 1.0);
      check.observe(mu.mu0_plus.imag());
      check.observe(mu.mu0_minus.imag());
      check.observe(mu.mu1_plus.real());
      check.observe(mu.mu1_minus.real());
    }
  }
  return check.finish("growth coefficients are normalized, mu0 real and mu1 imaginary");
}

CheckResult check_recursion_step(int max_qubits, double tamper_mu) {
  CheckBuilder check("recursion_step", kTight);
  for (int m = 2; m <= max_qubits; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    for (int level = 1; level < m; ++level) {
      RecursionCoeffs mu = mu_coeffs(params, level);
      mu.mu0_plus += Complex{tamper_mu, 0.0};
      const auto phi_p = big_phi_state(params, level, +1, true);
      const auto phi_m = big_phi_state(params, level, -1, true);
      const auto lhs_p = big_phi_state(params, level + 1, +1, true);
      const auto lhs_m = big_phi_state(params, level + 1, -1, true);
      const std::size_t low_dim = phi_p.dim();
      const double r = 1.0 / std::sqrt(2.0);
      for (std::size_t idx = 0; idx < 2 * low_dim; ++idx) {
        const std::size_t low = idx % low_dim;
        const double fresh_sign = idx < low_dim ? 1.0 : -1.0;  // |+> vs |-> component
        const Complex rhs_p =
            mu.mu0_plus * r * phi_p[low] + mu.mu1_plus * r * fresh_sign * phi_m[low];
        const Complex rhs_m =
            mu.mu0_minus * r * phi_m[low] + mu.mu1_minus * r * fresh_sign * phi_p[low];
        check.observe(std::abs(lhs_p[idx] - rhs_p));
        check.observe(std::abs(lhs_m[idx] - rhs_m));
      }
    }
  }
  return check.finish(
      "each level's branch states decompose through the growth coefficients");
}

CheckResult check_overlap_telescoping(int max_qubits) {
  CheckBuilder check("overlap_telescoping", kTight);
  for (int m = 1; m <= max_qubits; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    check.observe(overlap_product(params, m) * std::ldexp(1.0, m) - 1.0);
    for (int level = 1; level <= m; ++level) {
      check.observe(overlap_product(params, level) + overlap_complement(params, level) - 1.0);
    }
  }
  return check.finish("cosine products telescope to 2^-m and match their complements");
}

CheckResult check_product_decomposition(int max_qubits) {
  CheckBuilder check("product_decomposition", kTight);
  for (int m = 1; m <= max_qubits; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    const auto target = amplitudes(params);
    const auto sum = big_phi_state(params, m, +1, false);
    const double scale =
        std::sqrt(std::ldexp(1.0, m - 1) / static_cast<double>(params.window));
    for (std::size_t n = 0; n < sum.dim(); ++n) {
      check.observe(std::abs(scale * sum[n] - Complex{target[n], 0.0}));
    }
  }
  return check.finish("scaled sum of the two product branches equals the window state");
}

CheckResult check_preparation_unitaries(int max_qubits) {
  CheckBuilder check("preparation_unitaries", kTight);
  for (int m = 2; m <= max_qubits; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    for (int level = 1; level < m; ++level) {
      const Gate controlled = build_preparation_unitary(params, level);
      const Gate completed = build_preparation_unitary_gram_schmidt(params, level);
      const auto mu = mu_coeffs(params, level);
      const std::array<StateVector, 2> flags = {plus_state(), minus_state()};
      for (int g = 0; g < 2; ++g) {
        // Fresh |+> on the high bit, incoming flag on the low bit.
        const StateVector input = tensor_product(flags[g], plus_state());
        const StateVector via_controlled = apply_gate(input, controlled, 1, 0);
        const StateVector via_completed = apply_gate(input, completed, 1, 0);
        check.observe(max_elementwise_gap(via_controlled, via_completed));
        // Constrained column, written out in the computational basis:
        // flag + -> mu0+ |++> + mu1+ |-->; flag - -> mu0- |+,-> + mu1- |-,+>.
        std::vector<Complex> expect(4);
        for (std::size_t idx = 0; idx < 4; ++idx) {
          const double s_fresh = (idx >> 1) ? -1.0 : 1.0;
          const double s_flag = (idx & 1) ? -1.0 : 1.0;
          expect[idx] = g == 0 ? 0.5 * (mu.mu0_plus + mu.mu1_plus * s_fresh * s_flag)
                               : 0.5 * (mu.mu0_minus * s_flag + mu.mu1_minus * s_fresh);
        }
        const StateVector target = StateVector::from_amplitudes(std::move(expect));
        check.observe(max_elementwise_gap(via_controlled, target));
      }
    }
  }
  return check.finish("controlled realization and completed unitary agree on both columns");
}

CheckResult check_flag_fix(int) {
  CheckBuilder check("flag_fix_action", kTight);
  const Gate fix = flag_fix_gate();
  const StateVector plus_out = apply_gate(plus_state(), fix, 0);
  const StateVector minus_out = apply_gate(minus_state(), fix, 0);
  const double r = 1.0 / std::sqrt(2.0);
  check.observe(std::abs(plus_out[0] - Complex{r, 0.0}));
  check.observe(std::abs(plus_out[1] - Complex{r, 0.0}));
  check.observe(std::abs(minus_out[0] - Complex{0.0, r}));
  check.observe(std::abs(minus_out[1] - Complex{0.0, -r}));
  return check.finish("final correction leaves |+> alone and phases |-> by i");
}

CheckResult check_preparation_fidelity(int max_qubits) {
  CheckBuilder check("preparation_fidelity", kTight);
  for (int m = 1; m <= max_qubits; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    const StateVector prepared = prepare_full(params);
    const auto target = amplitudes(params);
    for (std::size_t n = 0; n < prepared.dim(); ++n) {
      check.observe(std::abs(prepared[n] - Complex{target[n], 0.0}));
    }
  }
  return check.finish("gate-by-gate preparation reproduces the window amplitudes exactly");
}

CheckResult check_feedback_angles(int) {
  CheckBuilder check("feedback_angles", 1e-13);
  const int m = 8;
  std::vector<int> bits(m, 0);
  for (int pattern = 0; pattern < (1 << m); ++pattern) {
    for (int i = 0; i < m; ++i) bits[i] = (pattern >> i) & 1;
    for (int j = 1; j <= m; ++j) {
      // Integer form: theta_j = -pi * (sum_{i>j} b_i 2^{m-i}) / 2^{m-j}.
      std::int64_t tail = 0;
      for (int i = j + 1; i <= m; ++i) tail += std::int64_t{bits[i - 1]} << (m - i);
      const double expected = -kPi * static_cast<double>(tail) / std::ldexp(1.0, m - j);
      check.observe(feedback_angle(std::span<const int>(bits).subspan(j)) - expected);
    }
  }
  return check.finish("binary-fraction feedback matches the integer tail formula");
}

CheckResult check_measurement_equivalence(int max_qubits) {
  CheckBuilder check("measurement_equivalence", kLoose);
  const int cap = std::min(max_qubits, 8);
  int worst_live = 0;
  for (int m = 1; m <= cap; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    const double cell = kTwoPi / static_cast<double>(params.dim());
    for (const double phi : {0.0, 0.7, kTwoPi * 5.0 / 16.0, kPi}) {
      for (const StateKind kind : {StateKind::optimal, StateKind::uniform}) {
        for (const double offset : {0.0, 0.37 * cell}) {
          ProtocolConfig config;
          config.params = params;
          config.true_phase = phi;
          config.state_kind = kind;
          config.covariant = offset != 0.0;
          config.offset = offset;
          const auto streamed = enumerate_branches(config);
          const auto canonical = canonical_distribution(params, phi, offset, kind);
          const auto dense = inverse_qft_reference(params, phi, offset, kind);
          worst_live = std::max(worst_live, streamed.max_live_qubits);
          double total = 0.0;
          for (std::size_t k = 0; k < params.dim(); ++k) {
            check.observe(streamed.probabilities[k] - canonical.probabilities[k]);
            check.observe(streamed.probabilities[k] - dense.probabilities[k]);
            total += streamed.probabilities[k];
          }
          check.observe(total - 1.0);
          if (streamed.max_live_qubits > 2) check.observe(1.0);
        }
      }
    }
  }
  return check.finish(format_detail(
      "streaming, projective-grid and dense transform backends agree; <= %.0f live qubits",
      static_cast<double>(worst_live)));
}

CheckResult check_distribution_density_link(int max_qubits) {
  CheckBuilder check("distribution_density_link", kLoose);
  for (int m = 1; m <= std::min(max_qubits, 8); ++m) {
    const auto params = SineStateParams::for_qubits(m);
    const double cell = kTwoPi / static_cast<double>(params.dim());
    const double phi = 0.7;
    const double offset = 0.2 * cell;
    for (const StateKind kind : {StateKind::optimal, StateKind::uniform}) {
      const auto dist = canonical_distribution(params, phi, offset, kind);
      for (std::size_t k = 0; k < params.dim(); ++k) {
        const double theta = wrap_pm_pi(dist.grid[k] - phi);
        const double density = kind == StateKind::optimal
                                   ? pdf_optimal(theta, params.max_index)
                                   : pdf_uniform(theta, params.max_index);
        check.observe(dist.probabilities[k] - cell * density);
      }
    }
  }
  return check.finish("grid outcome weights equal cell width times the error density");
}

CheckResult check_holevo_identities(int max_qubits) {
  CheckBuilder check("holevo_identities", 1e-8);
  const DistributionBackend streaming_backend =
      [](const SineStateParams& p, double phi, double offset, StateKind kind) {
        ProtocolConfig config;
        config.params = p;
        config.true_phase = phi;
        config.state_kind = kind;
        config.covariant = true;
        config.offset = offset;
        return enumerate_branches(config);
      };
  for (int m = 1; m <= max_qubits; ++m) {
    const auto params = SineStateParams::for_qubits(m);
    const double bound = min_holevo_variance(params.max_index);
    const double sharp = sharpness_canonical(amplitudes(params));
    check.observe((1.0 / (sharp * sharp) - 1.0 - bound) / bound);
    check.observe(sharp - std::cos(kPi / static_cast<double>(params.window)));

    const auto averaged = stats_offset_averaged(params, 0.45, StateKind::optimal);
    check.observe((averaged.holevo - bound) / bound);

    const auto uniform = stats_offset_averaged(params, 0.45, StateKind::uniform);
    const double levels = static_cast<double>(params.max_index) + 1.0;
    const double expected =
        levels * levels / static_cast<double>(params.max_index * params.max_index) - 1.0;
    check.observe((uniform.holevo - expected) / expected);
    if (m <= 6) {
      const auto via_streaming =
          stats_offset_averaged(params, 0.45, StateKind::optimal, streaming_backend);
      check.observe((via_streaming.holevo - bound) / bound);
    }
  }
  return check.finish(
      "offset-averaged spread matches the window bound and the closed-form baseline");
}

CheckResult check_phase_covariance(int max_qubits) {
  CheckBuilder check("phase_covariance", 1e-9);
  for (int m = 1; m <= std::min(max_qubits, 6); ++m) {
    const auto params = SineStateParams::for_qubits(m);
    for (const StateKind kind : {StateKind::optimal, StateKind::uniform}) {
      const auto a = stats_offset_averaged(params, 0.35, kind);
      const auto b = stats_offset_averaged(params, 2.0, kind);
      check.observe(a.holevo - b.holevo);
      check.observe(std::abs(a.sharpness) - std::abs(b.sharpness));
    }
  }
  return check.finish("offset-averaged statistics do not depend on the true phase");
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const VerifyOptions& options) {
  const int max_qubits = std::clamp(options.max_qubits, 1, 12);
  std::vector<CheckResult> results;
  results.push_back(check_sine_normalization(max_qubits));
  results.push_back(check_qubit_factor_overlap(max_qubits));
  results.push_back(check_branch_orthogonality(max_qubits));
  results.push_back(check_branch_norms(max_qubits));
  results.push_back(check_base_flag_states(max_qubits));
  results.push_back(check_mu_column_norms(max_qubits));
  results.push_back(check_recursion_step(max_qubits, options.tamper_mu));
  results.push_back(check_overlap_telescoping(max_qubits));
  results.push_back(check_product_decomposition(max_qubits));
  results.push_back(check_preparation_unitaries(max_qubits));
  results.push_back(check_flag_fix(max_qubits));
  results.push_back(check_preparation_fidelity(max_qubits));
  results.push_back(check_feedback_angles(max_qubits));
  results.push_back(check_measurement_equivalence(max_qubits));
  results.push_back(check_distribution_density_link(max_qubits));
  results.push_back(check_holevo_identities(max_qubits));
  results.push_back(check_phase_covariance(max_qubits));
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

}  // namespace sinqpe
