#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnaswap/state_vector.hpp"

namespace dnaswap {

enum class GateKind { PauliX, PauliY, PauliZ, Hadamard, Rotation, SP, SPPrime, Swap, Custom };

/// Chemical reading of a gate acting on nucleobase/enzyme atoms.
enum class ChemTag { ProtonTunneling, HydrogenBonding, Antibonding, Composite };

std::string_view to_string(GateKind kind);
std::string_view to_string(ChemTag tag);

/// Unitarity tolerance for gate matrices.
inline constexpr double kUnitaryTolerance = 1e-12;

/// R(theta) = [[cos, -sin], [sin, cos]]
Matrix rotation_matrix(double theta);
/// SP(theta) = R(theta) * Z
Matrix sp_matrix(double theta);
/// SP'(theta) = Z * R(theta)
Matrix sp_prime_matrix(double theta);

/// max |(M^dagger M - I)_ij|
double unitarity_defect(const Matrix& m);

/// A unitary primitive on `targets`, controlled on every qubit in
/// `controls` being |1>. The first target is the most significant bit of
/// the target matrix. Instances are immutable and validated on creation.
class GateOp {
 public:
  static GateOp pauli_x(int target);
  static GateOp pauli_y(int target);
  static GateOp pauli_z(int target);
  static GateOp hadamard(int target);
  static GateOp rotation(int target, double theta);
  static GateOp sp(int target, double theta);
  static GateOp sp_prime(int target, double theta);
  static GateOp swap(int a, int b);
  static GateOp cnot(int control, int target);
  /// Throws InvalidArgument if `matrix` is not unitary within
  /// kUnitaryTolerance or its size does not match the targets.
  static GateOp custom(std::vector<int> targets, Matrix matrix, ChemTag tag = ChemTag::Composite,
                       std::string label = "custom");
  /// Skips the O(d^3) unitarity check; for operators that are unitary by
  /// construction and too large to audit on every build.
  static GateOp custom_trusted(std::vector<int> targets, Matrix matrix, ChemTag tag, std::string label);

  /// Copy with extra controls appended.
  GateOp controlled_by(std::vector<int> extra_controls) const;
  /// Copy with every qubit index shifted by `offset`.
  GateOp shifted(int offset) const;
  GateOp with_tag(ChemTag tag) const;
  GateOp with_label(std::string label) const;

  GateKind kind() const { return kind_; }
  const std::vector<int>& targets() const { return targets_; }
  const std::vector<int>& controls() const { return controls_; }
  double angle() const { return angle_; }
  ChemTag tag() const { return tag_; }
  const std::string& label() const { return label_; }
  /// Unitary on the target qubits only.
  const Matrix& target_matrix() const { return *matrix_; }
  /// Highest qubit index touched plus one.
  int span_qubits() const;

 private:
  GateOp(GateKind kind, std::vector<int> targets, Matrix matrix, ChemTag tag, std::string label, double angle = 0.0);
  void validate_indices() const;

  GateKind kind_;
  std::vector<int> targets_;
  std::vector<int> controls_;
  std::shared_ptr<const Matrix> matrix_;  // shared: lifted gates can be large
  ChemTag tag_;
  std::string label_;
  double angle_;
};

/// Applies `gate` to `state`; throws InvalidArgument for indices outside the
/// register.
StateVector apply_gate(const StateVector& state, const GateOp& gate);

StateVector apply_circuit(const StateVector& state, std::span<const GateOp> gates);

/// Dense 2^n x 2^n matrix of a gate sequence on n qubits, assembled column
/// by column through apply_gate.
Matrix circuit_matrix(std::span<const GateOp> gates, int num_qubits);

/// Gate sequence (swaps) realizing permute_qubits(., perm).
std::vector<GateOp> permutation_circuit(std::span<const int> perm);

std::vector<GateOp> shift_circuit(std::span<const GateOp> gates, int offset);

}  // namespace dnaswap
