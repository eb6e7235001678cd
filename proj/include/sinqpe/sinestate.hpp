#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sinqpe/statevec.hpp"

namespace sinqpe {

// Parameters of the sine-window control register: m qubits index the values
// 0..N with N = 2^m - 1; the window denominator is M = N + 2 = 2^m + 1.
struct SineStateParams {
  int num_qubits = 1;          // m
  std::int64_t max_index = 1;  // N
  std::int64_t window = 3;     // M

  static SineStateParams for_qubits(int m);
  std::size_t dim() const { return std::size_t{1} << num_qubits; }
};

// a_n = sqrt(2/(N+2)) * sin(pi (n+1)/(N+2)) for n = 0..N. Works for any
// N >= 1, not only N = 2^m - 1; the density formulas reuse it.
std::vector<double> sine_amplitudes(std::int64_t max_index);
std::vector<double> amplitudes(const SineStateParams& params);

// Single-qubit factor of the rank-2 product split of the sine state:
// (e^{+i s pi 2^{j-2}/M} |0> + e^{-i s pi 2^{j-2}/M} |1>) / sqrt(2), s = sign.
std::array<Complex, 2> phi_qubit_state(const SineStateParams& params, int j, int sign);

// C_l = prod_{j=1..l} cos(pi 2^{j-1}/M); telescopes to C_m = 2^{-m}.
double overlap_product(const SineStateParams& params, int level);

// 1 - C_l computed without cancellation (needed by the recursion ratios
// when C_l is within a few ulp of 1).
double overlap_complement(const SineStateParams& params, int level);

// Sum (sign=+1) or difference (sign=-1) of the two product branches on
// qubits 1..level. Unnormalized squared norms are 2 + 2*C_level and
// 2 - 2*C_level; pass normalized=true to divide them out.
StateVector big_phi_state(const SineStateParams& params, int level, int sign,
                          bool normalized);

// Coefficients of the two-qubit growth step at a given level: the same-sign
// branch keeps the outgoing qubit in |+> with weight mu0, the crossed branch
// flips it to |-> with weight mu1. mu0_* are real, mu1_* purely imaginary,
// and each column satisfies |mu0|^2 + |mu1|^2 = 1.
struct RecursionCoeffs {
  int level = 0;
  Complex mu0_plus, mu1_plus, mu0_minus, mu1_minus;
};
RecursionCoeffs mu_coeffs(const SineStateParams& params, int level);

// Two-qubit preparation gate for one growth step, acting on (fresh qubit,
// incoming flag qubit) with the fresh qubit as the first matrix factor.
// Built as a flag-controlled rotation of the fresh qubit followed by a
// plus-basis CNOT that copies the fresh qubit onto the outgoing data qubit.
Gate build_preparation_unitary(const SineStateParams& params, int level);

// Same constrained columns, completed by modified Gram-Schmidt instead;
// cross-check for the controlled realization.
Gate build_preparation_unitary_gram_schmidt(const SineStateParams& params, int level);

// Final single-qubit correction mapping the leftover flag basis onto the
// physical states it stands for: |+> -> |+>, |-> -> i|->.
Gate flag_fix_gate();

}  // namespace sinqpe
