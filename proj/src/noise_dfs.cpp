#include "dnaswap/noise_dfs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "dnaswap/error.hpp"

namespace dnaswap {

void EnzymeSite::validate() const {
  if (k < 1 || k > kMaxEnzymeQubits || q < 0 || q > k) {
    throw InvalidArgument("enzyme site needs 0 <= q <= k and 1 <= k <= " + std::to_string(kMaxEnzymeQubits) +
                          ", got q=" + std::to_string(q) + " k=" + std::to_string(k));
  }
}

StateVector EnzymeSite::state() const {
  validate();
  return StateVector::from_bits(std::string(static_cast<std::size_t>(q), '0') +
                                std::string(static_cast<std::size_t>(k - q), '1'));
}

void NoiseSector::validate() const {
  if (K < 1 || std::abs(lambda) > K || ((K - lambda) % 2) != 0) {
    throw InvalidArgument("no sector with K=" + std::to_string(K) + " lambda=" + std::to_string(lambda));
  }
}

std::uint64_t NoiseSector::dimension() const {
  validate();
  const int ones = (K - lambda) / 2;
  std::uint64_t c = 1;
  for (int i = 1; i <= ones; ++i) c = c * static_cast<std::uint64_t>(K - ones + i) / static_cast<std::uint64_t>(i);
  return c;
}

int lambda_of(std::string_view bits) {
  int lambda = 0;
  for (char c : bits) {
    if (c == '0') ++lambda;
    else if (c == '1') --lambda;
    else throw InvalidArgument("basis string may only contain 0 and 1: " + std::string(bits));
  }
  return lambda;
}

int lambda_of(std::uint64_t index, int num_qubits) { return num_qubits - 2 * popcount(index); }

std::vector<int> sector_support(const StateVector& state, double threshold) {
  std::set<int> out;
  const int n = state.num_qubits();
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    if (std::norm(state.amplitude(i)) > threshold) out.insert(lambda_of(i, n));
  }
  return {out.begin(), out.end()};
}

StateVector weak_dephase(const StateVector& state, double phi) {
  Amplitudes out = state.amplitudes();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out(i) *= std::polar(1.0, phi * popcount(static_cast<std::uint64_t>(i)));
  }
  return StateVector::from_amplitudes(std::move(out));
}

double dephasing_fidelity(const StateVector& state, int shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("shots must be >= 1");
  Rng rng(seed);
  double sum = 0.0;
  for (int s = 0; s < shots; ++s) sum += fidelity(state, weak_dephase(state, 2 * std::numbers::pi * rng.uniform()));
  return sum / shots;
}

bool is_sector_block_diagonal(const Matrix& m, double tol) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (popcount(static_cast<std::uint64_t>(r)) != popcount(static_cast<std::uint64_t>(c)) &&
          std::abs(m(r, c)) > tol) {
        return false;
      }
    }
  }
  return true;
}

std::string to_string(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X: return "x";
    case PauliAxis::Y: return "y";
    case PauliAxis::Z: return "z";
  }
  return "?";
}

PauliAxis parse_pauli_axis(std::string_view name) {
  if (name == "x" || name == "X") return PauliAxis::X;
  if (name == "y" || name == "Y") return PauliAxis::Y;
  if (name == "z" || name == "Z") return PauliAxis::Z;
  throw InvalidArgument("pauli axis must be x, y or z, got '" + std::string(name) + "'");
}

namespace {

GateOp single_pauli(PauliAxis axis, int q) {
  switch (axis) {
    case PauliAxis::X: return GateOp::pauli_x(q);
    case PauliAxis::Y: return GateOp::pauli_y(q);
    case PauliAxis::Z: return GateOp::pauli_z(q);
  }
  throw InvalidArgument("invalid pauli axis");
}

// Permutation of enzyme basis indices realizing S^m on the ladder
// e_n = |0^(k-n) 1^n>; states off the ladder are fixed.
std::vector<std::uint64_t> ladder_shift(int k, int m) {
  const auto dim = std::uint64_t{1} << k;
  std::vector<std::uint64_t> perm(dim);
  for (std::uint64_t e = 0; e < dim; ++e) perm[e] = e;
  const int len = k + 1;
  const int step = ((m % len) + len) % len;
  for (int n = 0; n <= k; ++n) {
    const int to = (n + step) % len;
    perm[(std::uint64_t{1} << n) - 1] = (std::uint64_t{1} << to) - 1;
  }
  return perm;
}

}  // namespace

GateOp collective_pauli(PauliAxis axis, int n) {
  if (n < 1 || n > kMaxCollectiveQubits) {
    throw InvalidArgument("collective_pauli supports 1.." + std::to_string(kMaxCollectiveQubits) + " qubits");
  }
  const Matrix p = single_pauli(axis, 0).target_matrix();
  Matrix m = p;
  for (int i = 1; i < n; ++i) {
    Matrix next = Matrix::Zero(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < 2; ++r) {
      for (Eigen::Index c = 0; c < 2; ++c) next.block(r * m.rows(), c * m.cols(), m.rows(), m.cols()) = p(r, c) * m;
    }
    m = std::move(next);
  }
  std::vector<int> targets(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) targets[static_cast<std::size_t>(i)] = i;
  return GateOp::custom_trusted(std::move(targets), std::move(m), ChemTag::Composite, "S" + to_string(axis));
}

std::vector<GateOp> collective_pauli_circuit(PauliAxis axis, int n) {
  std::vector<GateOp> gates;
  for (int q = 0; q < n; ++q) gates.push_back(single_pauli(axis, q));
  return gates;
}

GateOp lift_to_enzyme(const GateOp& gate, const EnzymeSite& site, int enzyme_offset) {
  site.validate();
  const int t = static_cast<int>(gate.targets().size());
  const int c = static_cast<int>(gate.controls().size());
  const int local = t + c;
  const int k = site.k;
  if (local + k > 12) throw InvalidArgument("lifted gate '" + gate.label() + "' would exceed 12 qubits");

  // Local operator on (targets, controls), controls least significant.
  const Eigen::Index ldim = Eigen::Index{1} << local;
  const Eigen::Index cmask = (Eigen::Index{1} << c) - 1;
  const Matrix& u = gate.target_matrix();
  Matrix w = Matrix::Identity(ldim, ldim);
  for (Eigen::Index tr = 0; tr < (Eigen::Index{1} << t); ++tr) {
    for (Eigen::Index tc = 0; tc < (Eigen::Index{1} << t); ++tc) w((tr << c) | cmask, (tc << c) | cmask) = u(tr, tc);
  }

  const Eigen::Index edim = Eigen::Index{1} << k;
  std::vector<std::vector<std::uint64_t>> shifts;
  for (int m = -local; m <= local; ++m) shifts.push_back(ladder_shift(k, m));

  Matrix j = Matrix::Zero(ldim * edim, ldim * edim);
  for (Eigen::Index y = 0; y < ldim; ++y) {
    for (Eigen::Index x = 0; x < ldim; ++x) {
      const Complex v = w(x, y);
      if (v == Complex(0.0)) continue;
      const int m = popcount(static_cast<std::uint64_t>(y)) - popcount(static_cast<std::uint64_t>(x));
      const auto& perm = shifts[static_cast<std::size_t>(m + local)];
      for (Eigen::Index e = 0; e < edim; ++e) {
        j(x * edim + static_cast<Eigen::Index>(perm[static_cast<std::size_t>(e)]), y * edim + e) = v;
      }
    }
  }

  std::vector<int> targets = gate.targets();
  targets.insert(targets.end(), gate.controls().begin(), gate.controls().end());
  for (int i = 0; i < k; ++i) targets.push_back(enzyme_offset + i);
  return GateOp::custom_trusted(std::move(targets), std::move(j), gate.tag(), gate.label() + "+enzyme");
}

std::vector<GateOp> joint_realization(std::span<const GateOp> gates, const EnzymeSite& site, int enzyme_offset) {
  std::vector<GateOp> out;
  out.reserve(gates.size());
  for (const auto& g : gates) out.push_back(lift_to_enzyme(g, site, enzyme_offset));
  return out;
}

AuditReport audit_circuit(std::span<const GateOp> gates, const StateVector& initial) {
  AuditReport report;
  report.initial_support = sector_support(initial);
  StateVector current = initial;
  const std::vector<int>* previous = &report.initial_support;
  report.steps.reserve(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    current = apply_gate(current, gates[i]);
    AuditStep step{i, gates[i].label(), sector_support(current), false};
    step.changed = step.support != *previous;
    if (step.changed && !report.first_violation) report.first_violation = i;
    report.steps.push_back(std::move(step));
    previous = &report.steps.back().support;
  }
  report.passed = !report.first_violation && report.initial_support.size() == 1;
  return report;
}

std::vector<GateOp> inject_bare_x(std::span<const GateOp> gates, std::size_t at, int qubit) {
  if (at > gates.size()) throw InvalidArgument("fault position beyond the end of the circuit");
  std::vector<GateOp> out(gates.begin(), gates.end());
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), GateOp::pauli_x(qubit).with_label("fault-X"));
  return out;
}

JointAudit audit_pairing(const Polymerase& polymerase, Nucleobase template_base, Nucleobase candidate,
                         const EnzymeSite& site, std::uint64_t seed, std::optional<std::size_t> fault_at) {
  const auto result = polymerase.pair(template_base, candidate, seed);
  std::vector<GateOp> base = polymerase.pairing_circuit(result.outcome);
  std::vector<GateOp> lifted = joint_realization(base, site, 6);
  if (fault_at) {
    base = inject_bare_x(base, *fault_at, 0);
    lifted = inject_bare_x(lifted, *fault_at, 0);
  }
  StateVector initial = tensor(tensor(input_state(template_base), input_state(candidate)), site.state());
  auto report = audit_circuit(lifted, initial);
  return {std::move(base), std::move(initial), std::move(report)};
}

JointAudit audit_recognition(const Polymerase& polymerase, Nucleobase base, const EnzymeSite& site) {
  std::vector<GateOp> gates = polymerase.u_circuit();
  const auto lifted = joint_realization(gates, site, 3);
  StateVector initial = tensor(input_state(base), site.state());
  auto report = audit_circuit(lifted, initial);
  return {std::move(gates), std::move(initial), std::move(report)};
}

}  // namespace dnaswap
