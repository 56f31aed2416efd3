#include "dnaswap/bell.hpp"

#include <cmath>
#include <numbers>

#include "dnaswap/error.hpp"

namespace dnaswap {

std::string to_string(const BellLabel& label) {
  return "b" + std::to_string(label.phase_bit) + std::to_string(label.amplitude_bit);
}

BellLabel parse_bell_label(const std::string& name) {
  for (const auto& label : kAllBellLabels) {
    if (to_string(label) == name) return label;
  }
  throw InvalidArgument("unknown Bell label: " + name);
}

StateVector bell_state(const BellLabel& label) {
  if ((label.phase_bit != 0 && label.phase_bit != 1) || (label.amplitude_bit != 0 && label.amplitude_bit != 1)) {
    throw InvalidArgument("Bell label bits must be 0 or 1");
  }
  Amplitudes amps = Amplitudes::Zero(4);
  const double s = (1.0 / std::numbers::sqrt2);
  const int j = label.amplitude_bit;
  amps(j) = s;                                          // |0 j>
  amps(2 + (1 - j)) = label.phase_bit ? -s : s;         // |1 j-bar>
  return StateVector::from_amplitudes(std::move(amps));
}

std::optional<BellLabel> classify_bell_pair(const StateVector& state, int qa, int qb, double tolerance) {
  const std::array<int, 2> pair{qa, qb};
  const Matrix rho = reduced_density_matrix(state, pair);
  for (const auto& label : kAllBellLabels) {
    const StateVector bell = bell_state(label);
    const Amplitudes& b = bell.amplitudes();
    const double f = std::real(b.dot(rho * b));
    if (f > 1.0 - tolerance) return label;
  }
  return std::nullopt;
}

}  // namespace dnaswap
