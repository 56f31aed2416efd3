#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnaswap/gate.hpp"
#include "dnaswap/replication.hpp"
#include "dnaswap/state_vector.hpp"

namespace dnaswap {

/// Enzyme active site: q acceptors (|0>) followed by k - q donors (|1>).
struct EnzymeSite {
  int q = 2;
  int k = 4;

  /// Throws InvalidArgument unless 0 <= q <= k and 1 <= k <= kMaxEnzymeQubits.
  void validate() const;
  StateVector state() const;
  /// 2q - k
  int lambda() const { return 2 * q - k; }

  static constexpr int kMaxEnzymeQubits = 6;
};

struct NoiseSector {
  int K;
  int lambda;

  /// Throws InvalidArgument for a parity mismatch or |lambda| > K.
  void validate() const;
  /// C(K, (K - lambda) / 2)
  std::uint64_t dimension() const;
};

/// (#0) - (#1) of a bit string.
int lambda_of(std::string_view bits);
int lambda_of(std::uint64_t index, int num_qubits);

/// Distinct lambda values (ascending) carrying probability above `threshold`.
std::vector<int> sector_support(const StateVector& state, double threshold = 1e-12);

/// Multiplies each amplitude by exp(i phi #1).
StateVector weak_dephase(const StateVector& state, double phi);

/// Mean of |<psi| D(phi) |psi>|^2 over `shots` phases drawn uniformly from
/// [0, 2 pi): the fidelity of the averaged dephasing channel.
double dephasing_fidelity(const StateVector& state, int shots, std::uint64_t seed);

/// True iff m has no entries (above tol) between basis states of
/// different Hamming weight.
bool is_sector_block_diagonal(const Matrix& m, double tol = 1e-12);

enum class PauliAxis { X, Y, Z };
std::string to_string(PauliAxis axis);
PauliAxis parse_pauli_axis(std::string_view name);

inline constexpr int kMaxCollectiveQubits = 10;

/// n-fold tensor power of one Pauli matrix on qubits 0..n-1, as a single
/// dense gate. n <= kMaxCollectiveQubits.
GateOp collective_pauli(PauliAxis axis, int n);
/// Same operator as n single-qubit gates, for any register size.
std::vector<GateOp> collective_pauli_circuit(PauliAxis axis, int n);

/// Lifts `gate` (acting on base qubits) to a gate on base + enzyme, the
/// enzyme occupying qubits enzyme_offset .. +k-1. The enzyme ladder
/// |0^(k-n) 1^n> absorbs every proton the base gate removes and supplies
/// every proton it adds; the shift is cyclic on the ladder, so total proton
/// number is conserved whenever the ladder has room. Off-ladder enzyme
/// states are left alone. Throws when targets + controls + k exceed 12.
GateOp lift_to_enzyme(const GateOp& gate, const EnzymeSite& site, int enzyme_offset);
std::vector<GateOp> joint_realization(std::span<const GateOp> gates, const EnzymeSite& site, int enzyme_offset);

struct AuditStep {
  std::size_t index;
  std::string gate;
  std::vector<int> support;
  bool changed;
};

struct AuditReport {
  std::vector<int> initial_support;
  std::vector<AuditStep> steps;
  bool passed = true;
  std::optional<std::size_t> first_violation;
};

/// Applies `gates` in order and records the lambda support after each.
AuditReport audit_circuit(std::span<const GateOp> gates, const StateVector& initial);

/// Inserts a bare Pauli-X on `qubit` before position `at`.
std::vector<GateOp> inject_bare_x(std::span<const GateOp> gates, std::size_t at, int qubit);

struct JointAudit {
  std::vector<GateOp> base_gates;
  StateVector initial;
  AuditReport report;
};

/// Audit of the whole pairing path (both recognitions, interleaving and the
/// resolved protocol run with `seed`) lifted onto base + enzyme.
JointAudit audit_pairing(const Polymerase& polymerase, Nucleobase template_base, Nucleobase candidate,
                         const EnzymeSite& site, std::uint64_t seed,
                         std::optional<std::size_t> fault_at = std::nullopt);

/// Audit of the recognition circuit alone on one base + enzyme.
JointAudit audit_recognition(const Polymerase& polymerase, Nucleobase base, const EnzymeSite& site);

}  // namespace dnaswap
