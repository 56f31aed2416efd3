#include "dnaswap/replication.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <utility>

#include "dnaswap/error.hpp"

namespace dnaswap {

namespace {

struct Term {
  const char* bits;
  double amplitude;
};

std::array<Term, 3> recognized_terms(Nucleobase base, const Angles& a, int& count) {
  const double ct = std::cos(a.theta), st = std::sin(a.theta);
  const double cp = std::cos(a.phi), sp = std::sin(a.phi);
  switch (base) {
    case Nucleobase::A:
      count = 2;
      return {{{"011", sp}, {"101", -cp}, {"000", 0.0}}};
    case Nucleobase::T:
      count = 2;
      return {{{"010", cp}, {"100", -sp}, {"000", 0.0}}};
    case Nucleobase::G:
      count = 3;
      return {{{"011", ct * cp}, {"101", ct * sp}, {"110", -st}}};
    case Nucleobase::C:
      count = 3;
      return {{{"100", -ct * cp}, {"010", -ct * sp}, {"001", st}}};
  }
  throw InvalidArgument("invalid nucleobase");
}

Amplitudes recognized_amplitudes(Nucleobase base, const Angles& angles) {
  int count = 0;
  const auto terms = recognized_terms(base, angles, count);
  Amplitudes v = Amplitudes::Zero(8);
  for (int i = 0; i < count; ++i) v(static_cast<Eigen::Index>(basis_index(terms[i].bits))) = terms[i].amplitude;
  return v;
}

constexpr std::array<Eigen::Index, 3> kWeightOne{1, 2, 4};    // 001 010 100
constexpr std::array<Eigen::Index, 3> kWeightTwo{3, 5, 6};    // 011 101 110

using Real3 = Eigen::Matrix3d;

Real3 sector_block(const Matrix& m, const std::array<Eigen::Index, 3>& idx) {
  Real3 b;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) b(r, c) = m(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]).real();
  }
  return b;
}

struct PlaneRotation {
  int i;
  int j;
  double angle;
};

// Rotations R_1..R_m with M = R_1 * ... * R_m for M in SO(3), each acting on
// coordinates (i, j) as e_i -> cos e_i + sin e_j. Returned in application
// order (R_m first).
std::vector<PlaneRotation> so3_factors(Real3 m) {
  std::vector<std::pair<int, int>> steps{{0, 1}, {0, 2}, {1, 2}};
  std::vector<PlaneRotation> givens;  // G_1, G_2, G_3 with G_3 G_2 G_1 M = I
  for (auto [i, j] : steps) {
    const int col = i;
    const double xi = m(i, col), xj = m(j, col);
    const double r = std::hypot(xi, xj);
    if (r == 0.0) continue;
    const double c = xi / r, s = xj / r;
    Real3 g = Real3::Identity();
    g(i, i) = c;
    g(i, j) = s;
    g(j, i) = -s;
    g(j, j) = c;
    m = g * m;
    givens.push_back({i, j, std::atan2(s, c)});
  }
  // M = G_1^T G_2^T G_3^T; G^T rotates e_i -> c e_i + s e_j.
  std::vector<PlaneRotation> out(givens.rbegin(), givens.rend());
  return out;
}

// Two-level rotation between 3-qubit basis states s0 and s1 of equal weight:
// CNOT(a -> b), R on a controlled by b (and `extra`), CNOT(a -> b).
void append_two_level(std::vector<GateOp>& gates, std::uint64_t s0, std::uint64_t s1, double angle,
                      const std::vector<int>& extra) {
  if (std::abs(angle) < 1e-15) return;
  int a = -1, b = -1;
  for (int q = 0; q < 3; ++q) {
    const int x = bit_of(s0, q, 3), y = bit_of(s1, q, 3);
    if (x == 0 && y == 1) a = q;
    if (x == 1 && y == 0) b = q;
  }
  if (a < 0 || b < 0) throw InvariantViolation("two-level rotation needs states differing in two bits");
  std::vector<int> controls{b};
  controls.insert(controls.end(), extra.begin(), extra.end());
  gates.push_back(GateOp::cnot(a, b));
  gates.push_back(GateOp::rotation(a, angle).controlled_by(controls));
  gates.push_back(GateOp::cnot(a, b));
}

// Common qubit of a weight-2 sector pair (set in both states).
int common_one(std::uint64_t s0, std::uint64_t s1) {
  for (int q = 0; q < 3; ++q) {
    if (bit_of(s0, q, 3) == 1 && bit_of(s1, q, 3) == 1) return q;
  }
  throw InvariantViolation("weight-2 states share no qubit");
}

std::uint64_t uindex(Eigen::Index i) { return static_cast<std::uint64_t>(i); }

StateVector recognized_state(Nucleobase base, const Angles& angles) {
  return StateVector::from_amplitudes(recognized_amplitudes(base, angles));
}

}  // namespace

Angles Angles::defaults() { return {std::acos(1.0 / std::sqrt(3.0)), std::acos(1.0 / std::sqrt(2.0))}; }

void Angles::validate() const {
  auto ok = [](double x) { return std::isfinite(x) && x > 0.0 && x < std::numbers::pi / 2; };
  if (!ok(theta) || !ok(phi)) {
    throw InvalidArgument("angles must lie in (0, pi/2), got theta=" + std::to_string(theta) +
                          " phi=" + std::to_string(phi));
  }
}

std::vector<TautomerAmplitude> tautomer_amplitudes(Nucleobase base, const Angles& angles) {
  const Amplitudes v = recognized_amplitudes(base, angles);
  std::vector<TautomerAmplitude> out;
  for (auto mark : allowed_marks(base)) {
    const auto bits = encode({base, mark}, Edge::WC);
    out.push_back({mark, v(static_cast<Eigen::Index>(basis_index(bits))).real()});
  }
  return out;
}

StateVector input_state(Nucleobase base) { return StateVector::from_bits(encode({base}, Edge::WC)); }

Matrix recognition_unitary(const Angles& angles) {
  angles.validate();
  Matrix u = Matrix::Zero(8, 8);
  u(0, 0) = 1.0;
  u(7, 7) = 1.0;
  for (auto base : kAllBases) {
    const auto col = static_cast<Eigen::Index>(basis_index(encode({base}, Edge::WC)));
    u.col(col) = recognized_amplitudes(base, angles);
  }
  // Completion of each sector: the leftover input (001 or 110) is sent to
  // the Gram-Schmidt residual of the sector basis, signed so det = +1.
  for (const auto* sector : {&kWeightOne, &kWeightTwo}) {
    Eigen::Index free_col = -1;
    for (auto idx : *sector) {
      if (u.col(idx).norm() == 0.0) free_col = idx;
    }
    Eigen::VectorXd best;
    for (auto idx : *sector) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(8);
      v(idx) = 1.0;
      for (auto other : *sector) {
        if (other == free_col) continue;
        const Eigen::VectorXd w = u.col(other).real();
        v -= w.dot(v) * w;
      }
      if (v.norm() > 1e-8) {
        best = v / v.norm();
        break;
      }
    }
    u.col(free_col) = best.cast<Complex>();
    if (sector_block(u, *sector).determinant() < 0) u.col(free_col) *= -1.0;
  }
  return u;
}

std::vector<GateOp> recognition_circuit(const Angles& angles) {
  const Matrix u = recognition_unitary(angles);
  std::vector<GateOp> gates;

  for (const auto& r : so3_factors(sector_block(u, kWeightOne))) {
    append_two_level(gates, uindex(kWeightOne[static_cast<std::size_t>(r.i)]),
                     uindex(kWeightOne[static_cast<std::size_t>(r.j)]), r.angle, {});
  }
  // The uncontrolled rotations also act on the weight-2 sector; undo that
  // with rotations controlled on the qubit both weight-2 states share.
  const Real3 side = sector_block(circuit_matrix(gates, 3), kWeightTwo);
  const Real3 fix = sector_block(u, kWeightTwo) * side.transpose();
  for (const auto& r : so3_factors(fix)) {
    const auto s0 = uindex(kWeightTwo[static_cast<std::size_t>(r.i)]);
    const auto s1 = uindex(kWeightTwo[static_cast<std::size_t>(r.j)]);
    append_two_level(gates, s0, s1, r.angle, {common_one(s0, s1)});
  }

  const double err = (circuit_matrix(gates, 3) - u).cwiseAbs().maxCoeff();
  if (!(err < 1e-12)) {
    throw InvariantViolation("recognition circuit deviates from U by " + std::to_string(err));
  }
  return gates;
}

RecognizedState recognize(Nucleobase base, const Angles& angles) {
  angles.validate();
  return {base, recognized_state(base, angles), angles};
}

std::string to_string(Stage stage) {
  switch (stage) {
    case Stage::Assembled: return "assembled";
    case Stage::AfterV: return "after-v";
    case Stage::AfterBell: return "after-bell";
    case Stage::Final: return "final";
  }
  return "?";
}

PairState assemble_pair(const RecognizedState& template_state, const RecognizedState& candidate_state) {
  if (template_state.state.num_qubits() != 3 || candidate_state.state.num_qubits() != 3) {
    throw InvalidArgument("assemble_pair needs two 3-qubit states");
  }
  const StateVector joint = tensor(template_state.state, candidate_state.state);
  return {template_state.base, candidate_state.base, permute_qubits(joint, kInterleave), Stage::Assembled};
}

bool is_proper_pair(Nucleobase template_base, Nucleobase candidate) { return complement(template_base) == candidate; }

int proton_count(Nucleobase base) {
  const auto bits = encode({base}, Edge::WC);
  return static_cast<int>(std::count(bits.begin(), bits.end(), '1'));
}

std::vector<int> slot_counts(const VSlot& slot) {
  auto bell_counts = [](const BellLabel& b) { return b.amplitude_bit == 1 ? std::vector<int>{1} : std::vector<int>{0, 2}; };
  std::set<int> out;
  for (int x : bell_counts(slot.pair1)) {
    for (int y : bell_counts(slot.pair2)) out.insert(x + y + slot.bit4 + slot.bit5);
  }
  return {out.begin(), out.end()};
}

namespace {

struct Combo {
  Nucleobase t;
  Nucleobase c;
};

std::vector<Combo> all_combos() {
  std::vector<Combo> out;
  for (auto t : kAllBases) {
    for (auto c : kAllBases) out.push_back({t, c});
  }
  return out;
}

VSlot proper_slot(Nucleobase t) {
  switch (t) {
    case Nucleobase::A: return {kBeta01, kBeta01, 1, 1};
    case Nucleobase::T: return {kBeta01, kBeta11, 1, 1};
    case Nucleobase::G: return {kBeta01, kBeta01, 0, 1};
    case Nucleobase::C: return {kBeta01, kBeta11, 0, 1};
  }
  throw InvalidArgument("invalid nucleobase");
}

std::vector<std::pair<Combo, VSlot>> build_slot_table() {
  std::vector<std::pair<Combo, VSlot>> table;
  std::vector<VSlot> used;
  for (const auto& combo : all_combos()) {
    if (is_proper_pair(combo.t, combo.c)) used.push_back(proper_slot(combo.t));
  }
  for (const auto& combo : all_combos()) {
    if (is_proper_pair(combo.t, combo.c)) {
      table.push_back({combo, proper_slot(combo.t)});
      continue;
    }
    const int target = proton_count(combo.t) + proton_count(combo.c);
    std::optional<VSlot> best;
    int best_cost = std::numeric_limits<int>::max();
    for (const auto& p1 : kAllBellLabels) {
      for (const auto& p2 : kAllBellLabels) {
        for (int m = 0; m < 2; ++m) {
          const VSlot slot{p1, p2, m, 0};
          if (std::find(used.begin(), used.end(), slot) != used.end()) continue;
          int cost = 0;
          for (int n : slot_counts(slot)) cost = std::max(cost, std::abs(n - target));
          if (cost < best_cost) {
            best_cost = cost;
            best = slot;
          }
        }
      }
    }
    if (!best) throw InvariantViolation("no free V slot");
    used.push_back(*best);
    table.push_back({combo, *best});
  }
  return table;
}

const std::vector<std::pair<Combo, VSlot>>& slot_table() {
  static const auto table = build_slot_table();
  return table;
}

}  // namespace

VSlot v_image_slot(Nucleobase template_base, Nucleobase candidate) {
  for (const auto& [combo, slot] : slot_table()) {
    if (combo.t == template_base && combo.c == candidate) return slot;
  }
  throw InvalidArgument("invalid nucleobase pair");
}

StateVector v_slot_state(const VSlot& slot) {
  const std::string tail{static_cast<char>('0' + slot.bit4), static_cast<char>('0' + slot.bit5)};
  return tensor(bell_state(slot.pair1), tensor(bell_state(slot.pair2), StateVector::from_bits(tail)));
}

Matrix orthonormal_complement(const Matrix& columns) {
  const Eigen::Index dim = columns.rows();
  Matrix basis = columns;
  std::vector<Amplitudes> extra;
  for (Eigen::Index e = 0; e < dim && basis.cols() < dim; ++e) {
    Amplitudes v = Amplitudes::Zero(dim);
    v(e) = 1.0;
    for (int pass = 0; pass < 2; ++pass) v -= basis * (basis.adjoint() * v);
    const double n = v.norm();
    if (n < 1e-8) continue;
    v /= n;
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = v;
    extra.push_back(v);
  }
  Matrix out(dim, static_cast<Eigen::Index>(extra.size()));
  for (std::size_t i = 0; i < extra.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = extra[i];
  return out;
}

Matrix v_matrix(const Angles& angles) {
  angles.validate();
  const auto combos = all_combos();
  const auto n = static_cast<Eigen::Index>(combos.size());
  Matrix inputs(64, n), images(64, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& combo = combos[static_cast<std::size_t>(i)];
    inputs.col(i) = assemble_pair(recognize(combo.t, angles), recognize(combo.c, angles)).state.amplitudes();
    images.col(i) = v_slot_state(v_image_slot(combo.t, combo.c)).amplitudes();
  }
  Matrix in_full(64, 64), out_full(64, 64);
  in_full << inputs, orthonormal_complement(inputs);
  out_full << images, orthonormal_complement(images);
  return out_full * in_full.adjoint();
}

BellLabel variant_target(BellVariant variant) { return variant == BellVariant::A ? kBeta11 : kBeta01; }

namespace {

template <typename Measure>
BellMeasurement run_modified_bell(const StateVector& state, int qa, int qb, BellVariant variant,
                                  const std::string& prefix, Measure&& measure) {
  BellMeasurement out{kBeta00, state, {}, {}};
  auto apply = [&](GateOp g) {
    out.state = apply_gate(out.state, g);
    out.applied.push_back(std::move(g));
  };
  apply(GateOp::cnot(qa, qb));
  apply(GateOp::hadamard(qa));
  const int m1 = measure(out.state, qa);
  out.record.add(prefix + "M1", qa, m1);
  const int m2 = measure(out.state, qb);
  out.record.add(prefix + "M2", qb, m2);
  out.measured = {m1, m2};
  const BellLabel t = variant_target(variant);
  if (m1 != t.phase_bit) apply(GateOp::pauli_x(qa));
  if (m2 != t.amplitude_bit) apply(GateOp::pauli_x(qb));
  apply(GateOp::hadamard(qa));
  apply(GateOp::cnot(qa, qb));
  return out;
}

}  // namespace

BellMeasurement modified_bell(const StateVector& state, int qa, int qb, BellVariant variant, Rng& rng,
                              const std::string& label_prefix) {
  auto out = run_modified_bell(state, qa, qb, variant, label_prefix, [&rng](StateVector& s, int q) {
    auto r = measure_qubit(s, q, rng);
    s = std::move(r.state);
    return r.bit;
  });
  out.record.rng_seed = rng.seed();
  return out;
}

BellMeasurement modified_bell(const StateVector& state, int qa, int qb, BellVariant variant, std::uint64_t seed) {
  Rng rng(seed);
  return modified_bell(state, qa, qb, variant, rng);
}

BellMeasurement modified_bell_branch(const StateVector& state, int qa, int qb, BellVariant variant, int m1, int m2) {
  return run_modified_bell(state, qa, qb, variant, "", [&](StateVector& s, int q) {
    const int bit = q == qa ? m1 : m2;
    s = project_qubit(s, q, bit);
    return bit;
  });
}

std::string to_string(Verdict verdict) { return verdict == Verdict::Proper ? "proper" : "improper"; }

std::string to_string(const Bond& bond) { return bond ? to_string(*bond) : "not-bell"; }

std::string to_string(const BondSignature& bonds) {
  return to_string(bonds[0]) + "," + to_string(bonds[1]) + "," + to_string(bonds[2]);
}

BondSignature classify_bonds(const StateVector& six_qubit_state) {
  if (six_qubit_state.num_qubits() != 6) throw InvalidArgument("bond classification needs 6 qubits");
  return {classify_bell_pair(six_qubit_state, 0, 1), classify_bell_pair(six_qubit_state, 2, 3),
          classify_bell_pair(six_qubit_state, 4, 5)};
}

BondSignature proper_signature(Nucleobase template_base) {
  const bool at = template_base == Nucleobase::A || template_base == Nucleobase::T;
  return {kBeta01, kBeta01, at ? kBeta11 : kBeta01};
}

Verdict verdict_of(const BondSignature& bonds) {
  const bool ok = bonds[0] == kBeta01 && bonds[1] == kBeta01 && (bonds[2] == kBeta01 || bonds[2] == kBeta11);
  return ok ? Verdict::Proper : Verdict::Improper;
}

PairingResult release_improper(const PairingOutcome& outcome, const PairState& pair) {
  if (outcome.verdict != Verdict::Improper) throw InvalidArgument("release_improper called on a proper pair");
  PairingResult r{pair, outcome};
  const GateOp x = GateOp::pauli_x(5);
  r.pair.state = apply_gate(pair.state, x);
  r.outcome.applied_gates.push_back(x);
  r.outcome.bonds = classify_bonds(r.pair.state);
  r.outcome.released = true;
  return r;
}

Polymerase::Polymerase(Angles angles)
    : angles_(angles),
      u_(recognition_unitary(angles)),
      v_(GateOp::custom({0, 1, 2, 3, 4, 5}, v_matrix(angles), ChemTag::Composite, "V")),
      u_circuit_(recognition_circuit(angles)) {}

RecognizedState Polymerase::recognize(Nucleobase base) const { return {base, recognized_state(base, angles_), angles_}; }

PairState Polymerase::assemble(Nucleobase template_base, Nucleobase candidate) const {
  return assemble_pair(recognize(template_base), recognize(candidate));
}

PairState Polymerase::transform_v(const PairState& pair) const {
  if (pair.stage != Stage::Assembled) {
    throw InvariantViolation("transform_v needs an assembled pair, got stage " + to_string(pair.stage));
  }
  return {pair.template_base, pair.candidate, apply_gate(pair.state, v_), Stage::AfterV};
}

PairingResult Polymerase::swap_protocol(const PairState& pair, std::uint64_t seed) const {
  if (pair.stage != Stage::Assembled) {
    throw InvariantViolation("swap_protocol needs an assembled pair, got stage " + to_string(pair.stage));
  }
  PairingOutcome outcome{Verdict::Improper, {}, {}, false, {}};
  outcome.transcript.rng_seed = seed;
  Rng rng(seed);

  PairState current = transform_v(pair);
  outcome.applied_gates.push_back(v_);

  auto q6 = measure_qubit(current.state, 5, rng);
  current.state = std::move(q6.state);
  outcome.transcript.add("q6", 5, q6.bit);
  const BellVariant variant = q6.bit == 0 ? BellVariant::A : BellVariant::B;

  for (int p = 0; p < 2; ++p) {
    auto bm = modified_bell(current.state, 2 * p, 2 * p + 1, variant, rng, "pair" + std::to_string(p + 1) + ".");
    current.state = std::move(bm.state);
    for (std::size_t i = 0; i < bm.record.outcomes.size(); ++i) {
      outcome.transcript.add(bm.record.labels[i], bm.record.outcomes[i].qubit, bm.record.outcomes[i].bit);
    }
    for (auto& g : bm.applied) outcome.applied_gates.push_back(std::move(g));
  }
  current.stage = Stage::AfterBell;

  for (const auto& g : {GateOp::hadamard(4), GateOp::cnot(4, 5)}) {
    current.state = apply_gate(current.state, g);
    outcome.applied_gates.push_back(g);
  }
  current.stage = Stage::Final;

  outcome.bonds = classify_bonds(current.state);
  outcome.verdict = verdict_of(outcome.bonds);
  return {std::move(current), std::move(outcome)};
}

PairingResult Polymerase::pair(Nucleobase template_base, Nucleobase candidate, std::uint64_t seed) const {
  return swap_protocol(assemble(template_base, candidate), seed);
}

std::vector<GateOp> Polymerase::pairing_circuit(const PairingOutcome& outcome) const {
  std::vector<GateOp> gates = u_circuit_;
  for (const auto& g : u_circuit_) gates.push_back(g.shifted(3));
  for (auto& g : permutation_circuit(kInterleave)) gates.push_back(std::move(g));
  gates.insert(gates.end(), outcome.applied_gates.begin(), outcome.applied_gates.end());
  return gates;
}

}  // namespace dnaswap
