#include "sinqpe/statevec.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace sinqpe {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kProbUnderflow = 1e-15;

void check_unitary(const std::vector<Complex>& mat, int dim) {
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      Complex dot{0.0, 0.0};
      for (int k = 0; k < dim; ++k) {
        dot += std::conj(mat[static_cast<std::size_t>(k) * dim + i]) *
               mat[static_cast<std::size_t>(k) * dim + j];
      }
      const Complex expect = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      if (std::abs(dot - expect) > kUnitaryTol) {
        throw std::invalid_argument("gate matrix is not unitary");
      }
    }
  }
}

}  // namespace

struct StateVectorAccess {
  static StateVector make(int num_qubits, std::vector<Complex> amps) {
    return StateVector(num_qubits, std::move(amps));
  }
};

Gate::Gate(int arity, std::vector<Complex> mat) : arity_(arity), mat_(std::move(mat)) {
  check_unitary(mat_, dim());
}

Gate Gate::one_qubit(const std::array<Complex, 4>& row_major) {
  return Gate(1, std::vector<Complex>(row_major.begin(), row_major.end()));
}

Gate Gate::two_qubit(const std::array<Complex, 16>& row_major) {
  return Gate(2, std::vector<Complex>(row_major.begin(), row_major.end()));
}

Gate Gate::identity() {
  return one_qubit({Complex{1.0, 0.0}, {}, {}, Complex{1.0, 0.0}});
}

Gate Gate::hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  return one_qubit({Complex{h, 0.0}, Complex{h, 0.0}, Complex{h, 0.0}, Complex{-h, 0.0}});
}

Gate Gate::phase(double angle) {
  return one_qubit({Complex{1.0, 0.0}, {}, {}, std::polar(1.0, angle)});
}

StateVector::StateVector(int num_qubits, std::vector<Complex> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count out of range");
  }
  amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
  amps_[0] = Complex{1.0, 0.0};
}

StateVector StateVector::plus_states(int num_qubits) {
  StateVector s(num_qubits);
  const double a = std::pow(2.0, -0.5 * num_qubits);
  for (auto& amp : s.amps_) amp = Complex{a, 0.0};
  return s;
}

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index) {
  StateVector s(num_qubits);
  if (index >= s.dim()) throw std::invalid_argument("basis index out of range");
  s.amps_[0] = Complex{0.0, 0.0};
  s.amps_[index] = Complex{1.0, 0.0};
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amps) {
  if (amps.empty()) throw std::invalid_argument("empty amplitude vector");
  int nq = 0;
  while ((std::size_t{1} << nq) < amps.size()) ++nq;
  if ((std::size_t{1} << nq) != amps.size() || nq > kMaxQubits) {
    throw std::invalid_argument("amplitude count must be a power of two within range");
  }
  return StateVector(nq, std::move(amps));
}

double StateVector::norm_squared() const {
  double n = 0.0;
  for (const auto& a : amps_) n += std::norm(a);
  return n;
}

bool StateVector::approx_normalized(double tol) const {
  return std::abs(norm_squared() - 1.0) <= tol;
}

namespace {

void check_target(const StateVector& state, int target) {
  if (target < 0 || target >= state.num_qubits()) {
    throw std::invalid_argument("target qubit out of range");
  }
}

}  // namespace

StateVector apply_gate(const StateVector& state, const Gate& gate, int target) {
  if (gate.arity() != 1) throw std::invalid_argument("expected a one-qubit gate");
  check_target(state, target);
  std::vector<Complex> out(state.amps_);
  const std::size_t step = std::size_t{1} << target;
  const std::size_t block = step << 1;
  for (std::size_t base = 0; base < out.size(); base += block) {
    for (std::size_t i = base; i < base + step; ++i) {
      const Complex a0 = out[i];
      const Complex a1 = out[i + step];
      out[i] = gate.entry(0, 0) * a0 + gate.entry(0, 1) * a1;
      out[i + step] = gate.entry(1, 0) * a0 + gate.entry(1, 1) * a1;
    }
  }
  return StateVectorAccess::make(state.num_qubits(), std::move(out));
}

StateVector apply_gate(const StateVector& state, const Gate& gate, int first, int second) {
  if (gate.arity() != 2) throw std::invalid_argument("expected a two-qubit gate");
  check_target(state, first);
  check_target(state, second);
  if (first == second) throw std::invalid_argument("target qubits must differ");
  std::vector<Complex> out(state.amps_);
  const std::size_t mf = std::size_t{1} << first;   // high gate bit
  const std::size_t ms = std::size_t{1} << second;  // low gate bit
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    if ((idx & mf) || (idx & ms)) continue;
    std::size_t pos[4];
    Complex in[4];
    for (int g = 0; g < 4; ++g) {
      pos[g] = idx | ((g & 2) ? mf : 0) | ((g & 1) ? ms : 0);
      in[g] = out[pos[g]];
    }
    for (int g = 0; g < 4; ++g) {
      Complex acc{0.0, 0.0};
      for (int h = 0; h < 4; ++h) acc += gate.entry(g, h) * in[h];
      out[pos[g]] = acc;
    }
  }
  return StateVectorAccess::make(state.num_qubits(), std::move(out));
}

StateVector phase_kick(const StateVector& state, int qubit, double angle) {
  check_target(state, qubit);
  std::vector<Complex> out(state.amps_);
  const Complex factor = std::polar(1.0, angle);
  const std::size_t mask = std::size_t{1} << qubit;
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    if (idx & mask) out[idx] *= factor;
  }
  return StateVectorAccess::make(state.num_qubits(), std::move(out));
}

namespace {

// Drops the measured qubit: keeps entries whose bit equals `bit` and
// compacts the index.
std::vector<Complex> collapse(const StateVector& state, int qubit, int bit) {
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t low = mask - 1;
  std::vector<Complex> out(state.dim() >> 1);
  for (std::size_t idx = 0; idx < state.dim(); ++idx) {
    if (((idx & mask) != 0) != (bit != 0)) continue;
    out[(idx & low) | ((idx >> 1) & ~low)] = state[idx];
  }
  return out;
}

}  // namespace

std::array<Branch, 2> branch_qubit(const StateVector& state, int qubit,
                                   const Gate& basis_rotation) {
  check_target(state, qubit);
  const StateVector rotated = apply_gate(state, basis_rotation, qubit);
  const std::size_t mask = std::size_t{1} << qubit;
  double raw[2] = {0.0, 0.0};
  for (std::size_t idx = 0; idx < rotated.dim(); ++idx) {
    raw[(idx & mask) ? 1 : 0] += std::norm(rotated[idx]);
  }
  const double total = raw[0] + raw[1];
  if (total < kProbUnderflow) throw std::runtime_error("measurement probability underflow");
  auto make_branch = [&](int bit) {
    std::vector<Complex> amps = collapse(rotated, qubit, bit);
    if (raw[bit] > 0.0) {
      const double scale = 1.0 / std::sqrt(raw[bit]);
      for (auto& a : amps) a *= scale;
    }
    return Branch{raw[bit] / total,
                  StateVectorAccess::make(state.num_qubits() - 1, std::move(amps))};
  };
  return {make_branch(0), make_branch(1)};
}

MeasurementOutcome measure_qubit(const StateVector& state, int qubit,
                                 const Gate& basis_rotation, std::mt19937_64& rng) {
  auto branches = branch_qubit(state, qubit, basis_rotation);
  const int bit = uniform01(rng) < branches[0].probability ? 0 : 1;
  return MeasurementOutcome{bit, branches[bit].probability, std::move(branches[bit].post)};
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double fidelity_up_to_global_phase(const StateVector& a, const StateVector& b) {
  const Complex ip = inner_product(a, b);
  return std::norm(ip);
}

StateVector tensor_product(const StateVector& low, const StateVector& high) {
  const int nq = low.num_qubits() + high.num_qubits();
  if (nq > StateVector::kMaxQubits) throw std::invalid_argument("combined register too large");
  std::vector<Complex> out(low.dim() * high.dim());
  for (std::size_t h = 0; h < high.dim(); ++h) {
    for (std::size_t l = 0; l < low.dim(); ++l) {
      out[h * low.dim() + l] = low[l] * high[h];
    }
  }
  return StateVectorAccess::make(nq, std::move(out));
}

}  // namespace sinqpe
