#pragma once

#include <array>
#include <optional>
#include <string>

#include "dnaswap/state_vector.hpp"

namespace dnaswap {

/// Names the Bell state beta_ij = (|0 j> + (-1)^i |1 (1-j)>) / sqrt(2).
struct BellLabel {
  int phase_bit = 0;
  int amplitude_bit = 0;

  friend bool operator==(const BellLabel&, const BellLabel&) = default;
};

inline constexpr BellLabel kBeta00{0, 0};
inline constexpr BellLabel kBeta01{0, 1};
inline constexpr BellLabel kBeta10{1, 0};
inline constexpr BellLabel kBeta11{1, 1};
inline constexpr std::array<BellLabel, 4> kAllBellLabels{kBeta00, kBeta01, kBeta10, kBeta11};

/// "b01" style name.
std::string to_string(const BellLabel& label);
BellLabel parse_bell_label(const std::string& name);

StateVector bell_state(const BellLabel& label);

/// Tolerance used when declaring an atom pair to be in a Bell state.
inline constexpr double kBondTolerance = 1e-9;

/// The Bell state the pair (qa, qb) occupies with fidelity above
/// 1 - tolerance, or nullopt (not a Bell state).
std::optional<BellLabel> classify_bell_pair(const StateVector& state, int qa, int qb,
                                            double tolerance = kBondTolerance);

}  // namespace dnaswap
