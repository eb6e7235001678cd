#include "sinqpe/sinestate.hpp"

#include <cmath>
#include <stdexcept>

namespace sinqpe {

namespace {

void check_level(const SineStateParams& params, int level, int max_level) {
  if (level < 1 || level > max_level) throw std::invalid_argument("level out of range");
  if (params.num_qubits < 1) throw std::invalid_argument("invalid parameters");
}

// Half-angle of the qubit-j factor: pi * 2^(j-2) / M.
double factor_angle(const SineStateParams& params, int j) {
  return kPi * std::ldexp(1.0, j - 2) / static_cast<double>(params.window);
}

using Mat4 = std::array<Complex, 16>;

Mat4 matmul4(const Mat4& a, const Mat4& b) {
  Mat4 out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Complex acc{0.0, 0.0};
      for (int k = 0; k < 4; ++k) acc += a[i * 4 + k] * b[k * 4 + j];
      out[i * 4 + j] = acc;
    }
  }
  return out;
}

Mat4 hadamard_pair() {
  Mat4 hh{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int sign = ((i & 1) & (j & 1)) + ((i >> 1) & (j >> 1));
      hh[i * 4 + j] = Complex{(sign & 1) ? -0.5 : 0.5, 0.0};
    }
  }
  return hh;
}

// Conjugates a matrix given in the |+>/|-> product basis into the
// computational basis (H tensor H on both sides).
Gate to_computational(const Mat4& pm_basis) {
  const Mat4 hh = hadamard_pair();
  return Gate::two_qubit(matmul4(hh, matmul4(pm_basis, hh)));
}

}  // namespace

SineStateParams SineStateParams::for_qubits(int m) {
  if (m < 1 || m > StateVector::kMaxQubits) {
    throw std::invalid_argument("qubit count out of range");
  }
  SineStateParams p;
  p.num_qubits = m;
  p.max_index = (std::int64_t{1} << m) - 1;
  p.window = p.max_index + 2;
  return p;
}

std::vector<double> sine_amplitudes(std::int64_t max_index) {
  if (max_index < 1) throw std::invalid_argument("max_index must be at least 1");
  const double denom = static_cast<double>(max_index) + 2.0;
  const double scale = std::sqrt(2.0 / denom);
  std::vector<double> amps(static_cast<std::size_t>(max_index) + 1);
  for (std::int64_t n = 0; n <= max_index; ++n) {
    amps[static_cast<std::size_t>(n)] =
        scale * std::sin(kPi * static_cast<double>(n + 1) / denom);
  }
  return amps;
}

std::vector<double> amplitudes(const SineStateParams& params) {
  return sine_amplitudes(params.max_index);
}

std::array<Complex, 2> phi_qubit_state(const SineStateParams& params, int j, int sign) {
  check_level(params, j, params.num_qubits);
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const double x = sign * factor_angle(params, j);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  return {std::polar(inv_sqrt2, x), std::polar(inv_sqrt2, -x)};
}

double overlap_product(const SineStateParams& params, int level) {
  check_level(params, level, params.num_qubits);
  double c = 1.0;
  for (int j = 1; j <= level; ++j) c *= std::cos(2.0 * factor_angle(params, j));
  return c;
}

double overlap_complement(const SineStateParams& params, int level) {
  check_level(params, level, params.num_qubits);
  double d = 0.0;  // 1 - C_j, grown without forming the difference
  for (int j = 1; j <= level; ++j) {
    const double s = std::sin(factor_angle(params, j));
    const double v = 2.0 * s * s;  // 1 - cos of the full factor angle
    d = d + v - d * v;
  }
  return d;
}

StateVector big_phi_state(const SineStateParams& params, int level, int sign,
                          bool normalized) {
  check_level(params, level, params.num_qubits);
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const std::size_t dim = std::size_t{1} << level;
  const double amp_scale = std::pow(2.0, -0.5 * level);
  std::vector<Complex> amps(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    double phase = 0.0;
    for (int j = 1; j <= level; ++j) {
      const int bit = static_cast<int>((n >> (j - 1)) & 1u);
      phase += factor_angle(params, j) * (1 - 2 * bit);
    }
    const Complex plus = std::polar(amp_scale, phase);
    const Complex minus = std::polar(amp_scale, -phase);
    amps[n] = plus + static_cast<double>(sign) * minus;
  }
  if (normalized) {
    const double norm_sq = sign > 0 ? 2.0 + 2.0 * overlap_product(params, level)
                                    : 2.0 * overlap_complement(params, level);
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amps) a *= scale;
  }
  return StateVector::from_amplitudes(std::move(amps));
}

RecursionCoeffs mu_coeffs(const SineStateParams& params, int level) {
  check_level(params, level, params.num_qubits - 1);
  const double x = 2.0 * factor_angle(params, level);  // pi 2^(level-1) / M
  const double c = overlap_product(params, level);
  const double d = overlap_complement(params, level);
  const double denom_plus = 1.0 + overlap_product(params, level + 1);
  const double denom_minus = overlap_complement(params, level + 1);
  RecursionCoeffs out;
  out.level = level;
  out.mu0_plus = Complex{std::cos(x) * std::sqrt((1.0 + c) / denom_plus), 0.0};
  out.mu1_plus = Complex{0.0, std::sin(x) * std::sqrt(d / denom_plus)};
  out.mu0_minus = Complex{std::cos(x) * std::sqrt(d / denom_minus), 0.0};
  out.mu1_minus = Complex{0.0, std::sin(x) * std::sqrt((1.0 + c) / denom_minus)};
  return out;
}

Gate build_preparation_unitary(const SineStateParams& params, int level) {
  const RecursionCoeffs mu = mu_coeffs(params, level);

  // Rotations of the fresh qubit in the |+>/|-> basis, selected by the flag.
  // Only the first column of each is constrained; the second is the unique
  // completion orthogonal to it (mu0 real, mu1 imaginary).
  const Complex vp[4] = {mu.mu0_plus, mu.mu1_plus,    // row +
                         mu.mu1_plus, mu.mu0_plus};   // row -
  const Complex vm[4] = {mu.mu0_minus, -mu.mu1_minus,
                         mu.mu1_minus, -mu.mu0_minus};

  // Basis index is 2*fresh + flag; the flag (low bit) selects which rotation
  // hits the fresh qubit (high bit).
  Mat4 ctrl{};
  for (int g = 0; g < 2; ++g) {
    const Complex* v = g == 0 ? vp : vm;
    for (int fr = 0; fr < 2; ++fr) {
      for (int fc = 0; fc < 2; ++fc) {
        ctrl[(2 * fr + g) * 4 + (2 * fc + g)] = v[fr * 2 + fc];
      }
    }
  }

  // CNOT in the same basis: the fresh qubit flips the flag between + and -.
  Mat4 cx{};
  for (int f = 0; f < 2; ++f) {
    for (int g = 0; g < 2; ++g) {
      cx[(2 * f + (g ^ f)) * 4 + (2 * f + g)] = Complex{1.0, 0.0};
    }
  }

  return to_computational(matmul4(cx, ctrl));
}

Gate build_preparation_unitary_gram_schmidt(const SineStateParams& params, int level) {
  const RecursionCoeffs mu = mu_coeffs(params, level);
  // Column-major working set; the two constrained columns come first.
  std::array<std::array<Complex, 4>, 4> cols{};
  cols[0] = std::array<Complex, 4>{mu.mu0_plus, Complex{}, Complex{}, mu.mu1_plus};
  cols[1] = std::array<Complex, 4>{Complex{}, mu.mu0_minus, mu.mu1_minus, Complex{}};
  int filled = 2;
  for (int seed = 0; seed < 4 && filled < 4; ++seed) {
    std::array<Complex, 4> cand{};
    cand[seed] = Complex{1.0, 0.0};
    for (int k = 0; k < filled; ++k) {
      Complex proj{0.0, 0.0};
      for (int i = 0; i < 4; ++i) proj += std::conj(cols[k][i]) * cand[i];
      for (int i = 0; i < 4; ++i) cand[i] -= proj * cols[k][i];
    }
    double norm_sq = 0.0;
    for (const auto& c : cand) norm_sq += std::norm(c);
    if (norm_sq < 0.25) continue;  // seed already spanned
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& c : cand) c *= inv;
    cols[filled++] = cand;
  }
  if (filled != 4) throw std::logic_error("failed to complete unitary");
  Mat4 pm{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) pm[i * 4 + j] = cols[j][i];
  }
  return to_computational(pm);
}

Gate flag_fix_gate() {
  return Gate::one_qubit({Complex{0.5, 0.5}, Complex{0.5, -0.5},
                          Complex{0.5, -0.5}, Complex{0.5, 0.5}});
}

}  // namespace sinqpe
