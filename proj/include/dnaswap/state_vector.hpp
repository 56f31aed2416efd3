#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dnaswap/rng.hpp"

namespace dnaswap {

using Complex = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxQubits = 24;

/// Tolerance used when validating that a state has unit norm.
inline constexpr double kNormTolerance = 1e-10;

/// Below this, a measurement branch is treated as impossible.
inline constexpr double kZeroProbability = 1e-14;

/// Qubit 0 is the most significant bit of a basis index, so the basis
/// string "011" on three qubits is index 3.
std::uint64_t basis_index(std::string_view bits);
std::string basis_string(std::uint64_t index, int num_qubits);
int bit_of(std::uint64_t index, int qubit, int num_qubits);
int popcount(std::uint64_t index);

/// Dense normalized state over num_qubits qubits. Immutable; every
/// operation returns a new state.
class StateVector {
 public:
  /// Computational basis state |index>.
  static StateVector basis(int num_qubits, std::uint64_t index);
  /// Computational basis state from a string such as "011".
  static StateVector from_bits(std::string_view bits);
  /// Takes ownership of amplitudes; length must be a power of two and the
  /// norm must be 1 within kNormTolerance.
  static StateVector from_amplitudes(Amplitudes amplitudes);
  /// Same as from_amplitudes but rescales to unit norm first.
  static StateVector normalized(Amplitudes amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::uint64_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }
  Complex amplitude(std::string_view bits) const;
  double norm() const { return amplitudes_.norm(); }

  /// Indices whose probability exceeds `threshold`.
  std::vector<std::uint64_t> support(double threshold = 1e-24) const;

 private:
  StateVector(int num_qubits, Amplitudes amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

  int num_qubits_;
  Amplitudes amplitudes_;
};

/// <a|b>
Complex inner_product(const StateVector& a, const StateVector& b);
/// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);
/// Largest per-amplitude difference.
double max_amplitude_distance(const StateVector& a, const StateVector& b);

/// Kronecker product; a's qubits precede b's.
StateVector tensor(const StateVector& a, const StateVector& b, int max_qubits = kMaxQubits);

/// Reorders qubits: output qubit i carries input qubit perm[i], i.e. the
/// output amplitude of bit string b equals the input amplitude of the string
/// whose bit perm[i] is b[i].
StateVector permute_qubits(const StateVector& state, std::span<const int> perm);
std::vector<int> inverse_permutation(std::span<const int> perm);

/// Reduced density matrix over `qubits` (ordered as given).
Matrix reduced_density_matrix(const StateVector& state, std::span<const int> qubits);

/// Base-2 von Neumann entropy of the reduced state on `cut`.
double entanglement_entropy(const StateVector& state, std::span<const int> cut);

struct MeasurementRecord {
  struct Outcome {
    int qubit;
    int bit;
  };
  std::vector<Outcome> outcomes;
  std::vector<std::string> labels;
  std::uint64_t rng_seed = 0;

  void add(std::string label, int qubit, int bit);
  /// Bit recorded under `label`; throws if absent.
  int bit(std::string_view label) const;
};

struct MeasureResult {
  int bit;
  StateVector state;
};

/// Probability of reading 1 on `qubit`.
double probability_one(const StateVector& state, int qubit);

/// Projective computational-basis measurement of one qubit with Born
/// probabilities; post-measurement state is renormalized.
MeasureResult measure_qubit(const StateVector& state, int qubit, Rng& rng);
MeasureResult measure_qubit(const StateVector& state, int qubit, std::uint64_t seed);

/// Post-selects `bit` on `qubit`; throws InvariantViolation when the branch
/// has probability below kZeroProbability.
StateVector project_qubit(const StateVector& state, int qubit, int bit);

}  // namespace dnaswap
