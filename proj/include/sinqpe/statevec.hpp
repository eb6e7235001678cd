#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "sinqpe/util.hpp"

namespace sinqpe {

// Unitary on one or two qubits, row-major. For a two-qubit gate applied to
// targets (first, second) the matrix index is 2*bit(first) + bit(second).
// Unitarity is validated at construction (tolerance 1e-10).
class Gate {
 public:
  static Gate one_qubit(const std::array<Complex, 4>& row_major);
  static Gate two_qubit(const std::array<Complex, 16>& row_major);
  static Gate identity();
  static Gate hadamard();
  static Gate phase(double angle);  // diag(1, e^{i*angle})

  int arity() const { return arity_; }
  int dim() const { return arity_ == 1 ? 2 : 4; }
  Complex entry(int row, int col) const { return mat_[static_cast<std::size_t>(row) * dim() + col]; }

 private:
  Gate(int arity, std::vector<Complex> mat);

  int arity_;
  std::vector<Complex> mat_;
};

// Dense register state. Qubit q occupies bit q of the flat index, so the
// basis ket with per-qubit bits n_q has index sum_q n_q 2^q. A register with
// zero qubits is the scalar left over once everything has been measured.
// Operations never mutate their input; they return new states.
class StateVector {
 public:
  explicit StateVector(int num_qubits);  // |0...0>
  static StateVector plus_states(int num_qubits);
  static StateVector basis_state(int num_qubits, std::uint64_t index);
  static StateVector from_amplitudes(std::vector<Complex> amps);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const Complex> amplitudes() const { return amps_; }
  double norm_squared() const;
  bool approx_normalized(double tol = 1e-9) const;

  static constexpr int kMaxQubits = 14;

 private:
  StateVector(int num_qubits, std::vector<Complex> amps);

  int num_qubits_;
  std::vector<Complex> amps_;

  friend StateVector apply_gate(const StateVector&, const Gate&, int);
  friend StateVector apply_gate(const StateVector&, const Gate&, int, int);
  friend StateVector phase_kick(const StateVector&, int, double);
  friend StateVector tensor_product(const StateVector&, const StateVector&);
  friend struct StateVectorAccess;
};

StateVector apply_gate(const StateVector& state, const Gate& gate, int target);
StateVector apply_gate(const StateVector& state, const Gate& gate, int first, int second);

// Multiplies every |1> component of the qubit by e^{i*angle}.
StateVector phase_kick(const StateVector& state, int qubit, double angle);

struct MeasurementOutcome {
  int bit = 0;
  double probability = 0.0;
  StateVector post;  // measured qubit removed, renormalized
};

// Applies basis_rotation to the qubit, samples the outcome with Born
// probabilities, collapses, renormalizes, and removes the measured qubit.
MeasurementOutcome measure_qubit(const StateVector& state, int qubit,
                                 const Gate& basis_rotation, std::mt19937_64& rng);

struct Branch {
  double probability = 0.0;
  StateVector post;
};

// Both measurement branches; a zero-probability branch is kept with explicit
// zero weight (its post state is the unnormalized zero vector).
std::array<Branch, 2> branch_qubit(const StateVector& state, int qubit,
                                   const Gate& basis_rotation);

Complex inner_product(const StateVector& a, const StateVector& b);  // <a|b>
double fidelity_up_to_global_phase(const StateVector& a, const StateVector& b);

// low occupies the low bits of the result, high the high bits.
StateVector tensor_product(const StateVector& low, const StateVector& high);

}  // namespace sinqpe
