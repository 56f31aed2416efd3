#include "dnaswap/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "dnaswap/error.hpp"

namespace dnaswap {

namespace {

int log2_exact(Eigen::Index size) {
  if (size < 2 || (size & (size - 1)) != 0) {
    throw InvalidArgument("amplitude count must be a power of two >= 2, got " + std::to_string(size));
  }
  return std::countr_zero(static_cast<std::uint64_t>(size));
}

void check_qubit(int qubit, int num_qubits) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw InvalidArgument("qubit index " + std::to_string(qubit) + " out of range for " +
                          std::to_string(num_qubits) + " qubits");
  }
}

std::uint64_t mask_of(int qubit, int num_qubits) { return std::uint64_t{1} << (num_qubits - 1 - qubit); }

}  // namespace

std::uint64_t basis_index(std::string_view bits) {
  if (bits.empty() || bits.size() > 63) throw InvalidArgument("basis string must have 1..63 bits");
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidArgument("basis string may only contain 0 and 1: " + std::string(bits));
    index = (index << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return index;
}

std::string basis_string(std::uint64_t index, int num_qubits) {
  std::string s(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q) {
    if (index & mask_of(q, num_qubits)) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

int bit_of(std::uint64_t index, int qubit, int num_qubits) {
  return (index & mask_of(qubit, num_qubits)) ? 1 : 0;
}

int popcount(std::uint64_t index) { return std::popcount(index); }

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw InvalidArgument("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  const auto dim = std::uint64_t{1} << num_qubits;
  if (index >= dim) throw InvalidArgument("basis index out of range");
  Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(dim));
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(num_qubits, std::move(amps));
}

StateVector StateVector::from_bits(std::string_view bits) {
  return basis(static_cast<int>(bits.size()), basis_index(bits));
}

StateVector StateVector::from_amplitudes(Amplitudes amplitudes) {
  const int n = log2_exact(amplitudes.size());
  if (n > kMaxQubits) throw InvalidArgument("state exceeds the qubit cap");
  const double norm = amplitudes.norm();
  if (std::abs(norm * norm - 1.0) > kNormTolerance) {
    throw InvalidArgument("state is not normalized (norm^2 = " + std::to_string(norm * norm) + ")");
  }
  return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::normalized(Amplitudes amplitudes) {
  const double norm = amplitudes.norm();
  if (norm < 1e-300) throw InvalidArgument("cannot normalize the zero vector");
  amplitudes /= norm;
  return from_amplitudes(std::move(amplitudes));
}

Complex StateVector::amplitude(std::string_view bits) const {
  if (static_cast<int>(bits.size()) != num_qubits_) {
    throw InvalidArgument("basis string length does not match qubit count");
  }
  return amplitude(basis_index(bits));
}

std::vector<std::uint64_t> StateVector::support(double threshold) const {
  std::vector<std::uint64_t> out;
  for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
    if (std::norm(amplitudes_(i)) > threshold) out.push_back(static_cast<std::uint64_t>(i));
  }
  return out;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) throw InvalidArgument("inner product of states with different sizes");
  return a.amplitudes().dot(b.amplitudes());  // Eigen conjugates the left operand
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner_product(a, b)); }

double max_amplitude_distance(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) throw InvalidArgument("comparing states with different sizes");
  return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

StateVector tensor(const StateVector& a, const StateVector& b, int max_qubits) {
  const int n = a.num_qubits() + b.num_qubits();
  if (n > max_qubits) {
    throw InvalidArgument("tensor product needs " + std::to_string(n) + " qubits, cap is " +
                          std::to_string(max_qubits));
  }
  const Eigen::Index db = b.amplitudes().size();
  Amplitudes out(a.amplitudes().size() * db);
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
    out.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
  }
  return StateVector::normalized(std::move(out));
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
  std::vector<int> inv(perm.size(), -1);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const int p = perm[i];
    if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || inv[static_cast<std::size_t>(p)] != -1) {
      throw InvalidArgument("qubit permutation is not a bijection");
    }
    inv[static_cast<std::size_t>(p)] = static_cast<int>(i);
  }
  return inv;
}

StateVector permute_qubits(const StateVector& state, std::span<const int> perm) {
  const int n = state.num_qubits();
  if (static_cast<int>(perm.size()) != n) throw InvalidArgument("permutation length does not match qubit count");
  inverse_permutation(perm);  // validates bijectivity
  Amplitudes out(state.amplitudes().size());
  for (std::uint64_t in = 0; in < state.dimension(); ++in) {
    std::uint64_t target = 0;
    for (int i = 0; i < n; ++i) {
      if (bit_of(in, perm[static_cast<std::size_t>(i)], n)) target |= mask_of(i, n);
    }
    out(static_cast<Eigen::Index>(target)) = state.amplitude(in);
  }
  return StateVector::from_amplitudes(std::move(out));
}

Matrix reduced_density_matrix(const StateVector& state, std::span<const int> qubits) {
  const int n = state.num_qubits();
  std::vector<bool> in_cut(static_cast<std::size_t>(n), false);
  for (int q : qubits) {
    check_qubit(q, n);
    if (in_cut[static_cast<std::size_t>(q)]) throw InvalidArgument("duplicate qubit in subsystem");
    in_cut[static_cast<std::size_t>(q)] = true;
  }
  if (qubits.empty()) throw InvalidArgument("subsystem must be nonempty");
  std::vector<int> rest;
  for (int q = 0; q < n; ++q) {
    if (!in_cut[static_cast<std::size_t>(q)]) rest.push_back(q);
  }
  const int m = static_cast<int>(qubits.size());
  const int r = static_cast<int>(rest.size());
  // Amplitude matrix: rows indexed by the subsystem bits, columns by the rest.
  Matrix psi = Matrix::Zero(Eigen::Index{1} << m, Eigen::Index{1} << r);
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    for (int k = 0; k < m; ++k) row = (row << 1) | static_cast<std::uint64_t>(bit_of(i, qubits[static_cast<std::size_t>(k)], n));
    for (int k = 0; k < r; ++k) col = (col << 1) | static_cast<std::uint64_t>(bit_of(i, rest[static_cast<std::size_t>(k)], n));
    psi(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = state.amplitude(i);
  }
  return psi * psi.adjoint();
}

double entanglement_entropy(const StateVector& state, std::span<const int> cut) {
  if (cut.empty() || static_cast<int>(cut.size()) >= state.num_qubits()) {
    throw InvalidArgument("entropy cut must be a nonempty proper subset of the qubits");
  }
  const Matrix rho = reduced_density_matrix(state, cut);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double p = solver.eigenvalues()(i);
    if (p > 1e-15) entropy -= p * std::log2(p);
  }
  return std::max(entropy, 0.0);
}

void MeasurementRecord::add(std::string label, int qubit, int bit) {
  if (bit != 0 && bit != 1) throw InvalidArgument("measurement outcome must be 0 or 1");
  outcomes.push_back({qubit, bit});
  labels.push_back(std::move(label));
}

int MeasurementRecord::bit(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return outcomes[i].bit;
  }
  throw InvalidArgument("no measurement labelled " + std::string(label));
}

double probability_one(const StateVector& state, int qubit) {
  check_qubit(qubit, state.num_qubits());
  const auto mask = mask_of(qubit, state.num_qubits());
  double p = 0.0;
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    if (i & mask) p += std::norm(state.amplitude(i));
  }
  return p;
}

StateVector project_qubit(const StateVector& state, int qubit, int bit) {
  check_qubit(qubit, state.num_qubits());
  if (bit != 0 && bit != 1) throw InvalidArgument("projection outcome must be 0 or 1");
  const auto mask = mask_of(qubit, state.num_qubits());
  Amplitudes out = state.amplitudes();
  double p = 0.0;
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    const bool one = (i & mask) != 0;
    if (one != (bit == 1)) {
      out(static_cast<Eigen::Index>(i)) = 0.0;
    } else {
      p += std::norm(out(static_cast<Eigen::Index>(i)));
    }
  }
  if (p < kZeroProbability) {
    throw InvariantViolation("measurement branch " + std::to_string(bit) + " on qubit " + std::to_string(qubit) +
                             " has zero probability");
  }
  out /= std::sqrt(p);
  return StateVector::from_amplitudes(std::move(out));
}

MeasureResult measure_qubit(const StateVector& state, int qubit, Rng& rng) {
  const double p1 = probability_one(state, qubit);
  const double p0 = state.amplitudes().squaredNorm() - p1;
  if (p0 < kZeroProbability && p1 < kZeroProbability) {
    throw InvariantViolation("state has no weight on either measurement outcome");
  }
  const double u = rng.uniform();
  int bit;
  if (p1 < kZeroProbability) {
    bit = 0;
  } else if (p0 < kZeroProbability) {
    bit = 1;
  } else {
    bit = u < p1 ? 1 : 0;
  }
  return {bit, project_qubit(state, qubit, bit)};
}

MeasureResult measure_qubit(const StateVector& state, int qubit, std::uint64_t seed) {
  Rng rng(seed);
  return measure_qubit(state, qubit, rng);
}

}  // namespace dnaswap
