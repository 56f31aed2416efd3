#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dnaswap/bell.hpp"
#include "dnaswap/error.hpp"
#include "dnaswap/gate.hpp"
#include "dnaswap/state_vector.hpp"
#include "oracle.hpp"

using namespace dnaswap;

namespace {

StateVector sv(const oracle::Vec& v) { return StateVector::from_amplitudes(v); }

GateOp random_gate(int n, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> kind(0, 9), qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  const int a = qubit(gen);
  int b = qubit(gen);
  while (n > 1 && b == a) b = qubit(gen);
  switch (n > 1 ? kind(gen) : kind(gen) % 7) {
    case 0: return GateOp::pauli_x(a);
    case 1: return GateOp::pauli_y(a);
    case 2: return GateOp::pauli_z(a);
    case 3: return GateOp::hadamard(a);
    case 4: return GateOp::rotation(a, angle(gen));
    case 5: return GateOp::sp(a, angle(gen));
    case 6: return GateOp::sp_prime(a, angle(gen));
    case 7: return GateOp::swap(a, b);
    case 8: return GateOp::cnot(a, b);
    default: return GateOp::rotation(a, angle(gen)).controlled_by({b});
  }
}

}  // namespace

TEST(basis, index_and_string_round_trip) {
  EXPECT_EQ(basis_index("011"), 3u);
  EXPECT_EQ(basis_index("100"), 4u);
  EXPECT_EQ(basis_string(5, 3), "101");
  EXPECT_EQ(bit_of(basis_index("010"), 1, 3), 1);
  EXPECT_THROW(basis_index("012"), InvalidArgument);
}

TEST(state_vector, rejects_bad_amplitudes) {
  EXPECT_THROW(StateVector::from_amplitudes(oracle::Vec::Ones(3) / std::sqrt(3.0)), InvalidArgument);
  EXPECT_THROW(StateVector::from_amplitudes(oracle::Vec::Ones(4)), InvalidArgument);
  EXPECT_NO_THROW(StateVector::normalized(oracle::Vec::Ones(4)));
  EXPECT_THROW(StateVector::basis(kMaxQubits + 1, 0), InvalidArgument);
}

TEST(apply_gate, pauli_x_flips) {
  const auto out = apply_gate(StateVector::from_bits("0"), GateOp::pauli_x(0));
  EXPECT_EQ(out.amplitude("1"), Complex(1.0));
}

TEST(apply_gate, hadamard_then_cnot_makes_beta01) {
  const auto out = apply_circuit(StateVector::from_bits("01"), std::vector{GateOp::hadamard(0), GateOp::cnot(0, 1)});
  const oracle::Mat m = oracle::cnot(0, 1, 2) * oracle::kron(oracle::H(), oracle::I2());
  EXPECT_LT(oracle::max_diff(out.amplitudes(), m * oracle::ket("01")), 1e-12);
  EXPECT_LT(oracle::max_diff(out.amplitudes(), oracle::bell(0, 1)), 1e-12);
  // |00> gives beta00
  const auto b00 = apply_circuit(StateVector::from_bits("00"), std::vector{GateOp::hadamard(0), GateOp::cnot(0, 1)});
  EXPECT_LT(oracle::max_diff(b00.amplitudes(), oracle::bell(0, 0)), 1e-12);
}

TEST(apply_gate, sp_of_pi_over_4_is_equal_superposition) {
  const auto out = apply_gate(StateVector::from_bits("0"), GateOp::sp(0, std::acos(1 / std::sqrt(2.0))));
  EXPECT_NEAR(out.amplitude("0").real(), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(out.amplitude("1").real(), 1 / std::sqrt(2.0), 1e-12);
}

TEST(apply_gate, errors) {
  EXPECT_THROW(apply_gate(StateVector::from_bits("00"), GateOp::pauli_x(2)), InvalidArgument);
  EXPECT_THROW(GateOp::cnot(1, 1), InvalidArgument);
  EXPECT_THROW(GateOp::pauli_x(-1), InvalidArgument);
  EXPECT_THROW(GateOp::custom({0}, oracle::Mat::Ones(2, 2)), InvalidArgument);
  EXPECT_THROW(GateOp::custom({0, 1}, oracle::Mat::Identity(2, 2)), InvalidArgument);
}

TEST(apply_gate, norm_preserved_over_random_sequences) {
  std::mt19937_64 gen(42);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 6;
    StateVector s = sv(oracle::random_state(n, gen));
    for (int g = 0; g < 50; ++g) s = apply_gate(s, random_gate(n, gen));
    worst = std::max(worst, std::abs(s.norm() * s.norm() - 1.0));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(apply_gate, matches_dense_oracle_on_random_circuits) {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<GateOp> gates;
    for (int g = 0; g < 12; ++g) gates.push_back(random_gate(n, gen));
    const oracle::Vec in = oracle::random_state(n, gen);
    const auto out = apply_circuit(sv(in), gates);
    ASSERT_LT(oracle::max_diff(out.amplitudes(), oracle::expand(gates, n) * in), 1e-10) << "trial " << trial;
  }
}

TEST(apply_gate, multi_target_custom_matches_oracle) {
  std::mt19937_64 gen(3);
  const oracle::Mat q = oracle::Mat::Random(8, 8).householderQr().householderQ();
  const auto g = GateOp::custom({3, 0, 4}, q).controlled_by({1});
  const oracle::Vec in = oracle::random_state(5, gen);
  EXPECT_LT(oracle::max_diff(apply_gate(sv(in), g).amplitudes(), oracle::expand(g, 5) * in), 1e-12);
}

TEST(gate, every_kind_is_unitary_when_expanded) {
  std::vector<GateOp> gates{GateOp::pauli_x(1),      GateOp::pauli_y(0),         GateOp::pauli_z(2),
                            GateOp::hadamard(1),     GateOp::rotation(0, 0.3),   GateOp::sp(2, 1.1),
                            GateOp::sp_prime(1, -0.7), GateOp::swap(0, 2),       GateOp::cnot(2, 0),
                            GateOp::rotation(1, 0.9).controlled_by({0, 2})};
  for (const auto& g : gates) {
    const auto m = oracle::expand(g, 3);
    EXPECT_LT(unitarity_defect(m), 1e-12) << to_string(g.kind());
  }
}

TEST(gate, sp_identities_for_random_angles) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> angle(-2 * std::numbers::pi, 2 * std::numbers::pi);
  for (int i = 0; i < 100; ++i) {
    const double t = angle(gen);
    const Matrix sp = sp_matrix(t);
    EXPECT_LT(oracle::max_diff(sp * sp.adjoint(), oracle::I2()), 1e-12);
    EXPECT_LT(oracle::max_diff(sp, rotation_matrix(t) * oracle::Z()), 1e-12);
    EXPECT_LT(oracle::max_diff(sp_prime_matrix(t), oracle::Z() * rotation_matrix(t)), 1e-12);
    EXPECT_LT(oracle::max_diff(sp_prime_matrix(t), oracle::Z() * sp * oracle::Z().adjoint()), 1e-12);
  }
}

TEST(gate, hadamard_is_sp_of_quarter_pi) {
  EXPECT_LT(oracle::max_diff(GateOp::hadamard(0).target_matrix(), oracle::H()), 1e-15);
}

TEST(gate, default_chemistry_tags) {
  EXPECT_EQ(GateOp::pauli_x(0).tag(), ChemTag::ProtonTunneling);
  EXPECT_EQ(GateOp::cnot(0, 1).tag(), ChemTag::ProtonTunneling);
  EXPECT_EQ(GateOp::hadamard(0).tag(), ChemTag::HydrogenBonding);
  EXPECT_EQ(GateOp::rotation(0, 1.0).with_tag(ChemTag::Antibonding).tag(), ChemTag::Antibonding);
}

TEST(measure, eigenstate_is_certain) {
  const auto r = measure_qubit(StateVector::from_bits("1"), 0, std::uint64_t{5});
  EXPECT_EQ(r.bit, 1);
  EXPECT_EQ(r.state.amplitude("1"), Complex(1.0));
}

TEST(measure, born_statistics_over_seeds) {
  const auto plus = apply_gate(StateVector::from_bits("0"), GateOp::hadamard(0));
  int ones = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) ones += measure_qubit(plus, 0, seed).bit;
  EXPECT_NEAR(ones / 10000.0, 0.5, 0.02);
}

TEST(measure, collapses_partner) {
  const auto b01 = sv(oracle::bell(0, 1));
  const auto s = project_qubit(b01, 1, 1);
  EXPECT_NEAR(std::abs(s.amplitude("01")), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(probability_one(s, 0), 0.0);
  EXPECT_THROW(project_qubit(StateVector::from_bits("00"), 0, 1), InvariantViolation);
}

TEST(measure, deterministic_given_seed) {
  std::mt19937_64 gen(1);
  const auto s = sv(oracle::random_state(4, gen));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a = measure_qubit(s, 2, seed);
    const auto b = measure_qubit(s, 2, seed);
    EXPECT_EQ(a.bit, b.bit);
    EXPECT_EQ(a.state.amplitudes(), b.state.amplitudes());
  }
}

TEST(permute, identity_and_pair_interleaving) {
  std::mt19937_64 gen(2);
  const auto s = sv(oracle::random_state(3, gen));
  const std::vector<int> id{0, 1, 2};
  EXPECT_EQ(permute_qubits(s, id).amplitudes(), s.amplitudes());

  const std::vector<int> perm{0, 3, 1, 4, 2, 5};
  const auto joined = tensor(StateVector::from_bits("011"), StateVector::from_bits("010"));
  EXPECT_EQ(permute_qubits(joined, perm).amplitude("001110"), Complex(1.0));
}

TEST(permute, inverse_round_trip_and_oracle) {
  std::mt19937_64 gen(9);
  const std::vector<int> perm{2, 0, 3, 1};
  const oracle::Vec in = oracle::random_state(4, gen);
  const auto out = permute_qubits(sv(in), perm);
  EXPECT_LT(oracle::max_diff(out.amplitudes(), oracle::permute(in, perm)), 1e-15);
  const auto back = permute_qubits(out, inverse_permutation(perm));
  EXPECT_EQ(back.amplitudes(), in);
  const auto via_swaps = apply_circuit(sv(in), permutation_circuit(perm));
  EXPECT_LT(oracle::max_diff(via_swaps.amplitudes(), out.amplitudes()), 1e-15);
}

TEST(permute, rejects_non_bijection) {
  const auto s = StateVector::from_bits("000");
  EXPECT_THROW(permute_qubits(s, std::vector<int>{0, 0, 1}), InvalidArgument);
  EXPECT_THROW(permute_qubits(s, std::vector<int>{0, 1}), InvalidArgument);
  EXPECT_THROW(permute_qubits(s, std::vector<int>{0, 1, 3}), InvalidArgument);
}

TEST(permute, preserves_entropy_of_mapped_cuts) {
  std::mt19937_64 gen(4);
  const std::vector<int> perm{3, 1, 0, 2};
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = sv(oracle::random_state(4, gen));
    const auto p = permute_qubits(s, perm);
    // output qubit i carries input qubit perm[i]
    for (int q = 0; q < 4; ++q) {
      const int out_cut[] = {q};
      const int in_cut[] = {perm[static_cast<std::size_t>(q)]};
      EXPECT_NEAR(entanglement_entropy(p, out_cut), entanglement_entropy(s, in_cut), 1e-10);
    }
    const int pair_out[] = {0, 1};
    const int pair_in[] = {perm[0], perm[1]};
    EXPECT_NEAR(entanglement_entropy(p, pair_out), entanglement_entropy(s, pair_in), 1e-10);
  }
}

TEST(tensor, kronecker_and_cap) {
  EXPECT_EQ(tensor(StateVector::from_bits("0"), StateVector::from_bits("1")).amplitude("01"), Complex(1.0));
  std::mt19937_64 gen(5);
  const oracle::Vec a = oracle::random_state(2, gen), b = oracle::random_state(3, gen);
  const auto t = tensor(sv(a), sv(b));
  EXPECT_LT(oracle::max_diff(t.amplitudes(), oracle::kron(a, b)), 1e-15);
  EXPECT_NEAR(t.norm(), 1.0, 1e-12);
  EXPECT_THROW(tensor(StateVector::basis(3, 0), StateVector::basis(3, 0), 5), InvalidArgument);
}

TEST(entropy, examples) {
  const int first[] = {0};
  EXPECT_NEAR(entanglement_entropy(StateVector::from_bits("00"), first), 0.0, 1e-12);
  EXPECT_NEAR(entanglement_entropy(sv(oracle::bell(0, 1)), first), 1.0, 1e-12);
  const int none[] = {0, 1};
  EXPECT_THROW(entanglement_entropy(StateVector::from_bits("00"), none), InvalidArgument);
}

TEST(entropy, symmetric_under_complementing_the_cut) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = sv(oracle::random_state(5, gen));
    const int cut[] = {0, 3};
    const int rest[] = {1, 2, 4};
    EXPECT_NEAR(entanglement_entropy(s, cut), entanglement_entropy(s, rest), 1e-10);
  }
}

TEST(bell, states_follow_definition) {
  for (const auto& label : kAllBellLabels) {
    EXPECT_LT(oracle::max_diff(bell_state(label).amplitudes(), oracle::bell(label.phase_bit, label.amplitude_bit)),
              1e-15);
    EXPECT_EQ(parse_bell_label(to_string(label)), label);
  }
  EXPECT_EQ(to_string(kBeta01), "b01");
}

TEST(bell, classification) {
  const auto joint = tensor(bell_state(kBeta11), bell_state(kBeta00));
  EXPECT_EQ(classify_bell_pair(joint, 0, 1), kBeta11);
  EXPECT_EQ(classify_bell_pair(joint, 2, 3), kBeta00);
  EXPECT_FALSE(classify_bell_pair(joint, 1, 2).has_value());
  EXPECT_FALSE(classify_bell_pair(StateVector::from_bits("01"), 0, 1).has_value());
}

TEST(rng, reproducible_and_split) {
  Rng a(17), b(17);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(derive_seed(17, 0), derive_seed(17, 1));
  Rng c(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(c.below(7), 7u);
  }
}

TEST(measurement_record, labels_and_bits) {
  MeasurementRecord r;
  r.add("M1", 0, 1);
  r.add("M2", 1, 0);
  EXPECT_EQ(r.bit("M1"), 1);
  EXPECT_EQ(r.bit("M2"), 0);
  EXPECT_EQ(r.labels.size(), r.outcomes.size());
  EXPECT_THROW(r.bit("M3"), InvalidArgument);
  EXPECT_THROW(r.add("bad", 0, 2), InvalidArgument);
}
