#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dnaswap/basecode.hpp"
#include "dnaswap/bell.hpp"
#include "dnaswap/gate.hpp"
#include "dnaswap/state_vector.hpp"

namespace dnaswap {

/// Recognition angles in radians, both in the open interval (0, pi/2).
struct Angles {
  double theta;
  double phi;

  /// theta = arccos(1/sqrt(3)), phi = arccos(1/sqrt(2)).
  static Angles defaults();
  /// Throws InvalidArgument when either angle is outside (0, pi/2).
  void validate() const;
};

struct TautomerAmplitude {
  TautomerMark mark;
  double amplitude;
};

/// Amplitudes of the tautomer WC basis states in the recognized state:
///   A = sin(phi)|011> - cos(phi)|101>
///   T = cos(phi)|010> - sin(phi)|100>
///   G = cos(theta)cos(phi)|011> + cos(theta)sin(phi)|101> - sin(theta)|110>
///   C = -cos(theta)cos(phi)|100> - cos(theta)sin(phi)|010> + sin(theta)|001>
std::vector<TautomerAmplitude> tautomer_amplitudes(Nucleobase base, const Angles& angles);

/// WC-edge basis state of the usual form, before recognition.
StateVector input_state(Nucleobase base);

/// 8x8 recognition unitary: sends each usual WC basis state to its
/// recognized superposition, block-diagonal in Hamming weight.
Matrix recognition_unitary(const Angles& angles);

/// Gate-level realization of recognition_unitary on qubits 0..2 built from
/// CNOT and controlled-rotation gates.
std::vector<GateOp> recognition_circuit(const Angles& angles);

struct RecognizedState {
  Nucleobase base;
  StateVector state;
  Angles angles;
};

RecognizedState recognize(Nucleobase base, const Angles& angles = Angles::defaults());

/// Output position i of an assembled pair holds input qubit kInterleave[i]:
/// (t1 c1 t2 c2 t3 c3).
inline constexpr std::array<int, 6> kInterleave{0, 3, 1, 4, 2, 5};

enum class Stage { Assembled, AfterV, AfterBell, Final };
std::string to_string(Stage stage);

struct PairState {
  Nucleobase template_base;
  Nucleobase candidate;
  StateVector state;
  Stage stage;
};

/// Tensor product of template and candidate followed by interleaving.
PairState assemble_pair(const RecognizedState& template_state, const RecognizedState& candidate_state);

bool is_proper_pair(Nucleobase template_base, Nucleobase candidate);

/// Image of an assembled pair under V: Bell state of (q0 q1), Bell state
/// of (q2 q3), computational state |bit4 bit5> of (q4 q5).
struct VSlot {
  BellLabel pair1;
  BellLabel pair2;
  int bit4;
  int bit5;

  friend bool operator==(const VSlot&, const VSlot&) = default;
};

VSlot v_image_slot(Nucleobase template_base, Nucleobase candidate);
StateVector v_slot_state(const VSlot& slot);

/// Proton count (number of ones) of a recognized WC state: 2 for A and G,
/// 1 for T and C.
int proton_count(Nucleobase base);

/// Distinct total one-counts in the support of the slot state, ascending.
std::vector<int> slot_counts(const VSlot& slot);

/// 64x64 unitary mapping each assembled pair to its slot state, completed
/// by pairing Gram-Schmidt complements of inputs and images.
Matrix v_matrix(const Angles& angles);

/// Orthonormal basis of the complement of the span of `columns`
/// (orthonormal), Gram-Schmidt over e_0, e_1, ... in index order.
Matrix orthonormal_complement(const Matrix& columns);

enum class BellVariant { A, B };

/// beta11 for A, beta01 for B.
BellLabel variant_target(BellVariant variant);

struct BellMeasurement {
  /// (M1, M2) read as a Bell label: the Bell state found before correction.
  BellLabel measured;
  StateVector state;
  MeasurementRecord record;
  std::vector<GateOp> applied;
};

/// Non-destructive Bell measurement of (qa, qb) followed by X corrections
/// that leave the pair in variant_target(variant) on every branch.
BellMeasurement modified_bell(const StateVector& state, int qa, int qb, BellVariant variant, Rng& rng,
                              const std::string& label_prefix = "");
BellMeasurement modified_bell(const StateVector& state, int qa, int qb, BellVariant variant, std::uint64_t seed);
/// Same circuit with the outcome (m1, m2) post-selected instead of sampled.
BellMeasurement modified_bell_branch(const StateVector& state, int qa, int qb, BellVariant variant, int m1, int m2);

enum class Verdict { Proper, Improper };
std::string to_string(Verdict verdict);

/// Per atom pair: the Bell state it occupies, or nullopt when it is not in a
/// Bell state.
using Bond = std::optional<BellLabel>;
using BondSignature = std::array<Bond, 3>;

std::string to_string(const Bond& bond);
/// "b01,b01,b11"
std::string to_string(const BondSignature& bonds);

BondSignature classify_bonds(const StateVector& six_qubit_state);
Verdict verdict_of(const BondSignature& bonds);
/// (b01, b01, b11) for A/T templates, (b01, b01, b01) for G/C.
BondSignature proper_signature(Nucleobase template_base);

struct PairingOutcome {
  Verdict verdict;
  BondSignature bonds;
  MeasurementRecord transcript;
  bool released = false;
  /// Gates actually applied by the protocol, measurement-conditioned
  /// corrections resolved by the transcript.
  std::vector<GateOp> applied_gates;
};

struct PairingResult {
  PairState pair;
  PairingOutcome outcome;
};

/// Pauli-X on q5 of an improper pair, moving the last atom pair into the
/// odd-parity sector; throws InvalidArgument for a proper outcome.
PairingResult release_improper(const PairingOutcome& outcome, const PairState& pair);

/// Recognition and swapping machinery for one angle setting. Holds the
/// precomputed U and V; const methods are safe to call concurrently.
class Polymerase {
 public:
  explicit Polymerase(Angles angles = Angles::defaults());

  const Angles& angles() const { return angles_; }
  const Matrix& u_matrix() const { return u_; }
  const GateOp& v_gate() const { return v_; }
  /// Gate-level U on qubits 0..2.
  const std::vector<GateOp>& u_circuit() const { return u_circuit_; }

  RecognizedState recognize(Nucleobase base) const;
  PairState assemble(Nucleobase template_base, Nucleobase candidate) const;

  /// Stage Assembled -> AfterV.
  PairState transform_v(const PairState& pair) const;

  /// V, q5 measurement, modified Bell A/B on pairs 1 and 2, then H on q4
  /// and CNOT q4 -> q5. Requires stage Assembled.
  PairingResult swap_protocol(const PairState& pair, std::uint64_t seed) const;

  /// recognize x2, assemble and swap.
  PairingResult pair(Nucleobase template_base, Nucleobase candidate, std::uint64_t seed) const;

  /// Whole base-level gate path from |template>_I |candidate>_I: both
  /// recognition circuits, interleaving swaps, then the resolved protocol
  /// gates of `outcome`.
  std::vector<GateOp> pairing_circuit(const PairingOutcome& outcome) const;

 private:
  Angles angles_;
  Matrix u_;
  GateOp v_;
  std::vector<GateOp> u_circuit_;
};

}  // namespace dnaswap
