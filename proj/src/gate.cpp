#include "dnaswap/gate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dnaswap/error.hpp"

namespace dnaswap {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::PauliX: return "X";
    case GateKind::PauliY: return "Y";
    case GateKind::PauliZ: return "Z";
    case GateKind::Hadamard: return "H";
    case GateKind::Rotation: return "R";
    case GateKind::SP: return "SP";
    case GateKind::SPPrime: return "SP'";
    case GateKind::Swap: return "SWAP";
    case GateKind::Custom: return "custom";
  }
  return "?";
}

std::string_view to_string(ChemTag tag) {
  switch (tag) {
    case ChemTag::ProtonTunneling: return "proton-tunneling";
    case ChemTag::HydrogenBonding: return "hydrogen-bonding";
    case ChemTag::Antibonding: return "antibonding";
    case ChemTag::Composite: return "composite";
  }
  return "?";
}

Matrix rotation_matrix(double theta) {
  Matrix m(2, 2);
  m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return m;
}

namespace {

Matrix pauli_z_matrix() {
  Matrix z(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  return z;
}

}  // namespace

Matrix sp_matrix(double theta) { return rotation_matrix(theta) * pauli_z_matrix(); }

Matrix sp_prime_matrix(double theta) { return pauli_z_matrix() * rotation_matrix(theta); }

double unitarity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

GateOp::GateOp(GateKind kind, std::vector<int> targets, Matrix matrix, ChemTag tag, std::string label, double angle)
    : kind_(kind),
      targets_(std::move(targets)),
      matrix_(std::make_shared<const Matrix>(std::move(matrix))),
      tag_(tag),
      label_(std::move(label)),
      angle_(angle) {
  validate_indices();
}

void GateOp::validate_indices() const {
  if (targets_.empty()) throw InvalidArgument("gate needs at least one target");
  std::vector<int> all = targets_;
  all.insert(all.end(), controls_.begin(), controls_.end());
  for (int q : all) {
    if (q < 0 || q >= kMaxQubits) throw InvalidArgument("gate qubit index out of range: " + std::to_string(q));
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw InvalidArgument("gate targets and controls must be distinct");
  }
  const auto dim = Eigen::Index{1} << targets_.size();
  if (matrix_->rows() != dim || matrix_->cols() != dim) {
    throw InvalidArgument("gate matrix size does not match its target count");
  }
}

GateOp GateOp::pauli_x(int target) {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return GateOp(GateKind::PauliX, {target}, m, ChemTag::ProtonTunneling, "X");
}

GateOp GateOp::pauli_y(int target) {
  Matrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return GateOp(GateKind::PauliY, {target}, m, ChemTag::Composite, "Y");
}

GateOp GateOp::pauli_z(int target) {
  return GateOp(GateKind::PauliZ, {target}, pauli_z_matrix(), ChemTag::Composite, "Z");
}

GateOp GateOp::hadamard(int target) {
  // H = SP(pi/4)
  return GateOp(GateKind::Hadamard, {target}, sp_matrix(std::numbers::pi / 4), ChemTag::HydrogenBonding, "H");
}

GateOp GateOp::rotation(int target, double theta) {
  return GateOp(GateKind::Rotation, {target}, rotation_matrix(theta), ChemTag::HydrogenBonding, "R", theta);
}

GateOp GateOp::sp(int target, double theta) {
  return GateOp(GateKind::SP, {target}, sp_matrix(theta), ChemTag::HydrogenBonding, "SP", theta);
}

GateOp GateOp::sp_prime(int target, double theta) {
  return GateOp(GateKind::SPPrime, {target}, sp_prime_matrix(theta), ChemTag::HydrogenBonding, "SP'", theta);
}

GateOp GateOp::swap(int a, int b) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  return GateOp(GateKind::Swap, {a, b}, m, ChemTag::ProtonTunneling, "SWAP");
}

GateOp GateOp::cnot(int control, int target) { return pauli_x(target).controlled_by({control}).with_label("CNOT"); }

GateOp GateOp::custom(std::vector<int> targets, Matrix matrix, ChemTag tag, std::string label) {
  if (matrix.rows() != matrix.cols()) throw InvalidArgument("custom gate matrix must be square");
  const double defect = unitarity_defect(matrix);
  if (!(defect < kUnitaryTolerance)) {
    throw InvalidArgument("custom gate '" + label + "' is not unitary (defect " + std::to_string(defect) + ")");
  }
  return GateOp(GateKind::Custom, std::move(targets), std::move(matrix), tag, std::move(label));
}

GateOp GateOp::custom_trusted(std::vector<int> targets, Matrix matrix, ChemTag tag, std::string label) {
  return GateOp(GateKind::Custom, std::move(targets), std::move(matrix), tag, std::move(label));
}

GateOp GateOp::controlled_by(std::vector<int> extra_controls) const {
  GateOp copy = *this;
  copy.controls_.insert(copy.controls_.end(), extra_controls.begin(), extra_controls.end());
  copy.validate_indices();
  return copy;
}

GateOp GateOp::shifted(int offset) const {
  GateOp copy = *this;
  for (int& q : copy.targets_) q += offset;
  for (int& q : copy.controls_) q += offset;
  copy.validate_indices();
  return copy;
}

GateOp GateOp::with_tag(ChemTag tag) const {
  GateOp copy = *this;
  copy.tag_ = tag;
  return copy;
}

GateOp GateOp::with_label(std::string label) const {
  GateOp copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

int GateOp::span_qubits() const {
  int hi = 0;
  for (int q : targets_) hi = std::max(hi, q);
  for (int q : controls_) hi = std::max(hi, q);
  return hi + 1;
}

StateVector apply_gate(const StateVector& state, const GateOp& gate) {
  const int n = state.num_qubits();
  if (gate.span_qubits() > n) {
    throw InvalidArgument("gate '" + gate.label() + "' touches qubit " + std::to_string(gate.span_qubits() - 1) +
                          " of a " + std::to_string(n) + "-qubit register");
  }
  auto mask = [n](int q) { return std::uint64_t{1} << (n - 1 - q); };
  const auto& targets = gate.targets();
  const int m = static_cast<int>(targets.size());
  const std::size_t sub_dim = std::size_t{1} << m;

  std::vector<std::uint64_t> offsets(sub_dim, 0);
  std::uint64_t target_mask = 0;
  for (std::size_t j = 0; j < sub_dim; ++j) {
    for (int k = 0; k < m; ++k) {
      if ((j >> (m - 1 - k)) & 1U) offsets[j] |= mask(targets[static_cast<std::size_t>(k)]);
    }
  }
  for (int t : targets) target_mask |= mask(t);
  std::uint64_t control_mask = 0;
  for (int c : gate.controls()) control_mask |= mask(c);

  const Matrix& u = gate.target_matrix();
  Amplitudes out = state.amplitudes();
  Amplitudes gathered(static_cast<Eigen::Index>(sub_dim));
  Amplitudes result(static_cast<Eigen::Index>(sub_dim));
  for (std::uint64_t base = 0; base < state.dimension(); ++base) {
    if ((base & target_mask) != 0 || (base & control_mask) != control_mask) continue;
    for (std::size_t j = 0; j < sub_dim; ++j) gathered(static_cast<Eigen::Index>(j)) = state.amplitude(base | offsets[j]);
    result.noalias() = u * gathered;
    for (std::size_t j = 0; j < sub_dim; ++j) out(static_cast<Eigen::Index>(base | offsets[j])) = result(static_cast<Eigen::Index>(j));
  }
  return StateVector::from_amplitudes(std::move(out));
}

StateVector apply_circuit(const StateVector& state, std::span<const GateOp> gates) {
  StateVector current = state;
  for (const auto& g : gates) current = apply_gate(current, g);
  return current;
}

Matrix circuit_matrix(std::span<const GateOp> gates, int num_qubits) {
  const auto dim = std::uint64_t{1} << num_qubits;
  Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t col = 0; col < dim; ++col) {
    m.col(static_cast<Eigen::Index>(col)) = apply_circuit(StateVector::basis(num_qubits, col), gates).amplitudes();
  }
  return m;
}

std::vector<GateOp> permutation_circuit(std::span<const int> perm) {
  inverse_permutation(perm);
  std::vector<int> current(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) current[i] = static_cast<int>(i);
  std::vector<GateOp> gates;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const auto j = static_cast<std::size_t>(std::find(current.begin(), current.end(), perm[i]) - current.begin());
    if (j != i) {
      gates.push_back(GateOp::swap(static_cast<int>(i), static_cast<int>(j)));
      std::swap(current[i], current[j]);
    }
  }
  return gates;
}

std::vector<GateOp> shift_circuit(std::span<const GateOp> gates, int offset) {
  std::vector<GateOp> out;
  out.reserve(gates.size());
  for (const auto& g : gates) out.push_back(g.shifted(offset));
  return out;
}

}  // namespace dnaswap
