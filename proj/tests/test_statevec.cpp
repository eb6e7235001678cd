#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sinqpe/statevec.hpp"

namespace {

using namespace sinqpe;

// diag(e^{i alpha}, 1) * [[cos t, -sin t], [sin t, cos t]] * diag(e^{i beta}, 1)
Gate random_unitary(std::mt19937_64& rng) {
  const double t = uniform01(rng) * kTwoPi;
  const double alpha = uniform01(rng) * kTwoPi;
  const double beta = uniform01(rng) * kTwoPi;
  const double c = std::cos(t);
  const double s = std::sin(t);
  return Gate::one_qubit({std::polar(c, alpha + beta), std::polar(-s, alpha),
                          std::polar(s, beta), Complex{c, 0.0}});
}

}  // namespace

TEST_SUITE("statevec") {

TEST_CASE("plus state is uniform and real") {
  const StateVector s = StateVector::plus_states(3);
  REQUIRE(s.dim() == 8);
  const double expect = 1.0 / std::sqrt(8.0);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    CHECK(s[i].real() == doctest::Approx(expect).epsilon(1e-14));
    CHECK(s[i].imag() == 0.0);
  }
  CHECK(s.approx_normalized(1e-12));
}

TEST_CASE("basis state places a single unit amplitude") {
  const StateVector s = StateVector::basis_state(2, 3);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    CHECK(std::abs(s[i] - (i == 3 ? Complex{1.0, 0.0} : Complex{})) == 0.0);
  }
  CHECK_THROWS_AS(StateVector::basis_state(2, 4), std::invalid_argument);
}

TEST_CASE("from_amplitudes requires a power-of-two count") {
  CHECK_THROWS_AS(StateVector::from_amplitudes({Complex{1.0, 0.0}, {}, {}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(StateVector::from_amplitudes({}), std::invalid_argument);
  CHECK(StateVector::from_amplitudes({Complex{1.0, 0.0}, {}}).num_qubits() == 1);
}

TEST_CASE("hadamard acts on the addressed qubit only") {
  const StateVector s = apply_gate(StateVector(2), Gate::hadamard(), 1);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s[0] - Complex{h, 0.0}) < 1e-15);
  CHECK(std::abs(s[1]) == 0.0);
  CHECK(std::abs(s[2] - Complex{h, 0.0}) < 1e-15);
  CHECK(std::abs(s[3]) == 0.0);
}

TEST_CASE("two-qubit gate index convention: first target is the high gate bit") {
  // Permutation gate: flips the second target iff the first target is 1.
  std::array<Complex, 16> flip{};
  flip[0 * 4 + 0] = Complex{1.0, 0.0};
  flip[1 * 4 + 1] = Complex{1.0, 0.0};
  flip[2 * 4 + 3] = Complex{1.0, 0.0};
  flip[3 * 4 + 2] = Complex{1.0, 0.0};
  const Gate g = Gate::two_qubit(flip);

  // Register of 3 qubits, targets (first=2, second=0). |100> -> |101>.
  const StateVector on = apply_gate(StateVector::basis_state(3, 4), g, 2, 0);
  CHECK(std::abs(on[5] - Complex{1.0, 0.0}) < 1e-15);
  // First target clear: |001> stays put.
  const StateVector off = apply_gate(StateVector::basis_state(3, 1), g, 2, 0);
  CHECK(std::abs(off[1] - Complex{1.0, 0.0}) < 1e-15);
  // Swapped target order reverses the roles: |001> -> |101>.
  const StateVector rev = apply_gate(StateVector::basis_state(3, 1), g, 0, 2);
  CHECK(std::abs(rev[5] - Complex{1.0, 0.0}) < 1e-15);
}

TEST_CASE("phase kick equals the diagonal phase gate") {
  std::mt19937_64 rng(7);
  StateVector s = StateVector::plus_states(3);
  for (int i = 0; i < 5; ++i) s = apply_gate(s, random_unitary(rng), i % 3);
  const StateVector kicked = phase_kick(s, 1, 0.77);
  const StateVector gated = apply_gate(s, Gate::phase(0.77), 1);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    CHECK(std::abs(kicked[i] - gated[i]) < 1e-15);
  }
}

TEST_CASE("long random circuit preserves the norm") {
  std::mt19937_64 rng(123);
  StateVector s = StateVector::plus_states(4);
  for (int i = 0; i < 1000; ++i) {
    s = apply_gate(s, random_unitary(rng), i % 4);
    if (i % 7 == 0) s = phase_kick(s, (i / 7) % 4, uniform01(rng) * kTwoPi - kPi);
  }
  CHECK(std::abs(s.norm_squared() - 1.0) < 1e-11);
}

TEST_CASE("non-unitary matrices are rejected") {
  CHECK_THROWS_AS(
      Gate::one_qubit({Complex{1.0, 0.0}, Complex{1.0, 0.0}, {}, Complex{1.0, 0.0}}),
      std::invalid_argument);
  std::array<Complex, 16> ones;
  ones.fill(Complex{1.0, 0.0});
  CHECK_THROWS_AS(Gate::two_qubit(ones), std::invalid_argument);
}

TEST_CASE("gate application validates targets") {
  const StateVector s(2);
  CHECK_THROWS_AS(apply_gate(s, Gate::hadamard(), 2), std::invalid_argument);
  std::array<Complex, 16> id{};
  for (int i = 0; i < 4; ++i) id[static_cast<std::size_t>(i) * 4 + i] = Complex{1.0, 0.0};
  CHECK_THROWS_AS(apply_gate(s, Gate::two_qubit(id), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(apply_gate(s, Gate::two_qubit(id), 0), std::invalid_argument);
}

TEST_CASE("branching keeps both outcomes with Born weights") {
  const StateVector s =
      StateVector::from_amplitudes({Complex{0.6, 0.0}, Complex{0.0, 0.8}});
  const auto branches = branch_qubit(s, 0, Gate::identity());
  CHECK(branches[0].probability == doctest::Approx(0.36).epsilon(1e-14));
  CHECK(branches[1].probability == doctest::Approx(0.64).epsilon(1e-14));
  REQUIRE(branches[0].post.num_qubits() == 0);
  CHECK(std::abs(branches[0].post[0]) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(branches[1].post[0]) == doctest::Approx(1.0).epsilon(1e-14));

  // A deterministic state keeps its impossible branch with explicit zero weight.
  const auto sharp = branch_qubit(StateVector::basis_state(1, 0), 0, Gate::identity());
  CHECK(sharp[0].probability == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sharp[1].probability == 0.0);
}

TEST_CASE("branch posts drop the measured qubit and renumber the rest") {
  const double a3 = std::sqrt(1.0 - 0.14);
  const StateVector s = StateVector::from_amplitudes(
      {Complex{0.1, 0.0}, Complex{0.2, 0.0}, Complex{0.3, 0.0}, Complex{a3, 0.0}});

  const auto by_q0 = branch_qubit(s, 0, Gate::identity());
  CHECK(by_q0[0].probability == doctest::Approx(0.10).epsilon(1e-13));
  CHECK(by_q0[0].post[0].real() == doctest::Approx(0.1 / std::sqrt(0.10)).epsilon(1e-13));
  CHECK(by_q0[0].post[1].real() == doctest::Approx(0.3 / std::sqrt(0.10)).epsilon(1e-13));
  CHECK(by_q0[1].post[0].real() == doctest::Approx(0.2 / std::sqrt(0.90)).epsilon(1e-13));
  CHECK(by_q0[1].post[1].real() == doctest::Approx(a3 / std::sqrt(0.90)).epsilon(1e-13));

  const auto by_q1 = branch_qubit(s, 1, Gate::identity());
  CHECK(by_q1[0].probability == doctest::Approx(0.05).epsilon(1e-13));
  CHECK(by_q1[0].post[0].real() == doctest::Approx(0.1 / std::sqrt(0.05)).epsilon(1e-13));
  CHECK(by_q1[0].post[1].real() == doctest::Approx(0.2 / std::sqrt(0.05)).epsilon(1e-13));
}

TEST_CASE("basis rotation is applied before branching") {
  const auto branches = branch_qubit(StateVector::plus_states(1), 0, Gate::hadamard());
  CHECK(branches[0].probability == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(branches[1].probability < 1e-15);
}

TEST_CASE("sampled measurements follow Born statistics") {
  const StateVector s =
      StateVector::from_amplitudes({Complex{0.6, 0.0}, Complex{0.8, 0.0}});
  int ones = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_engine(2024, static_cast<std::uint64_t>(t));
    const MeasurementOutcome out = measure_qubit(s, 0, Gate::identity(), rng);
    ones += out.bit;
    CHECK(out.post.num_qubits() == 0);
  }
  const double exp1 = 0.64 * trials;
  const double exp0 = 0.36 * trials;
  const double d1 = ones - exp1;
  const double d0 = (trials - ones) - exp0;
  const double chi2 = d1 * d1 / exp1 + d0 * d0 / exp0;
  // 0.9999 quantile of chi-square with one degree of freedom.
  CHECK(chi2 < 15.1367);
}

TEST_CASE("inner product and global-phase fidelity") {
  const StateVector s = StateVector::plus_states(2);
  std::vector<Complex> rotated(s.amplitudes().begin(), s.amplitudes().end());
  for (auto& a : rotated) a *= std::polar(1.0, 0.9);
  const StateVector t = StateVector::from_amplitudes(std::move(rotated));
  CHECK(std::abs(inner_product(s, s) - Complex{1.0, 0.0}) < 1e-14);
  CHECK(fidelity_up_to_global_phase(s, t) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fidelity_up_to_global_phase(StateVector::basis_state(1, 0),
                                    StateVector::basis_state(1, 1)) == 0.0);
}

TEST_CASE("tensor product places low factor on low bits") {
  const StateVector low =
      StateVector::from_amplitudes({Complex{0.6, 0.0}, Complex{0.8, 0.0}});
  const StateVector high =
      StateVector::from_amplitudes({Complex{0.0, 0.0}, Complex{1.0, 0.0}});
  const StateVector prod = tensor_product(low, high);
  REQUIRE(prod.dim() == 4);
  CHECK(std::abs(prod[0]) == 0.0);
  CHECK(std::abs(prod[1]) == 0.0);
  CHECK(prod[2].real() == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(prod[3].real() == doctest::Approx(0.8).epsilon(1e-14));
}

}  // TEST_SUITE
