#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dnaswap/error.hpp"
#include "dnaswap/replication.hpp"
#include "oracle.hpp"

using namespace dnaswap;

namespace {

constexpr auto A = Nucleobase::A;
constexpr auto T = Nucleobase::T;
constexpr auto G = Nucleobase::G;
constexpr auto C = Nucleobase::C;

const double r2 = std::sqrt(2.0);
const double r6 = std::sqrt(6.0);

oracle::Vec expected_recognized(Nucleobase b) {
  using oracle::superpose;
  switch (b) {
    case A: return superpose({{1 / r2, "011"}, {-1 / r2, "101"}});
    case T: return superpose({{1 / r2, "010"}, {-1 / r2, "100"}});
    case G: return superpose({{1 / r6, "011"}, {1 / r6, "101"}, {-2 / r6, "110"}});
    case C: return superpose({{-1 / r6, "100"}, {-1 / r6, "010"}, {2 / r6, "001"}});
  }
  return {};
}

oracle::Vec six_qubit_product(const BellLabel& a, const BellLabel& b, const BellLabel& c) {
  return oracle::kron(oracle::kron(oracle::bell(a.phase_bit, a.amplitude_bit), oracle::bell(b.phase_bit, b.amplitude_bit)),
                      oracle::bell(c.phase_bit, c.amplitude_bit));
}

const Polymerase& pol() {
  static const Polymerase p;
  return p;
}

}  // namespace

TEST(recognize, default_angles_exact) {
  for (auto b : kAllBases) {
    const auto s = recognize(b);
    EXPECT_LT(oracle::max_diff(s.state.amplitudes(), expected_recognized(b)), 1e-12) << to_char(b);
  }
}

TEST(recognize, orthonormal_at_random_angles) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> a(0.01, std::numbers::pi / 2 - 0.01);
  for (int i = 0; i < 100; ++i) {
    const Angles ang{a(gen), a(gen)};
    for (auto x : kAllBases) {
      for (auto y : kAllBases) {
        const auto ip = std::abs(inner_product(recognize(x, ang).state, recognize(y, ang).state));
        EXPECT_NEAR(ip, x == y ? 1.0 : 0.0, 1e-12);
      }
    }
  }
}

TEST(recognize, rejects_angles_outside_open_quarter_turn) {
  EXPECT_THROW(recognize(A, Angles{0.0, 0.5}), InvalidArgument);
  EXPECT_THROW(recognize(A, Angles{0.5, std::numbers::pi / 2}), InvalidArgument);
  EXPECT_THROW(Polymerase(Angles{-0.1, 0.5}), InvalidArgument);
}

TEST(recognize, entanglement_entropies) {
  const auto a = recognize(A).state;
  EXPECT_NEAR(entanglement_entropy(a, std::vector{2}), 0.0, 1e-12);
  EXPECT_NEAR(entanglement_entropy(a, std::vector{0}), 1.0, 1e-12);
  // G: qubit 2 carries |1> with weight 1/3 + 1/3 = 2/3
  const auto g = recognize(G).state;
  const double h = -(2.0 / 3) * std::log2(2.0 / 3) - (1.0 / 3) * std::log2(1.0 / 3);
  EXPECT_NEAR(entanglement_entropy(g, std::vector{2}), h, 1e-12);
}

TEST(recognition_unitary, unitary_and_weight_preserving) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> a(0.01, std::numbers::pi / 2 - 0.01);
  for (int i = 0; i < 50; ++i) {
    const Angles ang{a(gen), a(gen)};
    const Matrix u = recognition_unitary(ang);
    EXPECT_LT(unitarity_defect(u), 1e-12);
    for (Eigen::Index r = 0; r < 8; ++r) {
      for (Eigen::Index c = 0; c < 8; ++c) {
        if (popcount(static_cast<std::uint64_t>(r)) != popcount(static_cast<std::uint64_t>(c))) {
          EXPECT_LT(std::abs(u(r, c)), 1e-12);
        }
      }
    }
    for (auto b : kAllBases) {
      EXPECT_LT(oracle::max_diff(u * input_state(b).amplitudes(), recognize(b, ang).state.amplitudes()), 1e-12);
    }
  }
}

TEST(recognition_circuit, matches_unitary_via_oracle) {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> a(0.01, std::numbers::pi / 2 - 0.01);
  for (int i = 0; i < 50; ++i) {
    const Angles ang{a(gen), a(gen)};
    const auto gates = recognition_circuit(ang);
    EXPECT_LT(oracle::max_diff(oracle::expand(gates, 3), recognition_unitary(ang)), 1e-10);
  }
}

TEST(assemble_pair, a_t_four_terms) {
  const auto p = pol().assemble(A, T);
  const oracle::Vec want = oracle::superpose(
      {{0.5, "001110"}, {-0.5, "011010"}, {-0.5, "100110"}, {0.5, "110010"}});
  EXPECT_LT(oracle::max_diff(p.state.amplitudes(), want), 1e-12);
  EXPECT_EQ(p.stage, Stage::Assembled);
}

TEST(assemble_pair, g_c_is_interleaved_kronecker_product) {
  const auto p = pol().assemble(G, C);
  const oracle::Vec prod = oracle::kron(expected_recognized(G), expected_recognized(C));
  EXPECT_LT(oracle::max_diff(p.state.amplitudes(), oracle::permute(prod, {0, 3, 1, 4, 2, 5})), 1e-12);
  // the normalized product has overall factor -2/3 on {1/4, 1/2, 1}
  EXPECT_NEAR(p.state.amplitude("101001").real(), -2.0 / 3.0, 1e-12);
  EXPECT_NEAR(p.state.amplitude("011010").real(), -1.0 / 6.0, 1e-12);
  EXPECT_NEAR(p.state.norm(), 1.0, 1e-12);
}

TEST(v_matrix, unitary_and_maps_inputs_to_slots) {
  const Matrix v = v_matrix(pol().angles());
  EXPECT_LT(unitarity_defect(v), 1e-10);
  for (auto t : kAllBases) {
    for (auto c : kAllBases) {
      const auto in = pol().assemble(t, c).state.amplitudes();
      const auto slot = v_slot_state(v_image_slot(t, c)).amplitudes();
      EXPECT_LT(oracle::max_diff(v * in, slot), 1e-10) << to_char(t) << to_char(c);
    }
  }
}

TEST(v_matrix, proper_slots) {
  EXPECT_EQ(v_image_slot(A, T), (VSlot{kBeta01, kBeta01, 1, 1}));
  EXPECT_EQ(v_image_slot(T, A), (VSlot{kBeta01, kBeta11, 1, 1}));
  EXPECT_EQ(v_image_slot(G, C), (VSlot{kBeta01, kBeta01, 0, 1}));
  EXPECT_EQ(v_image_slot(C, G), (VSlot{kBeta01, kBeta11, 0, 1}));
  for (auto t : kAllBases) {
    for (auto c : kAllBases) {
      if (!is_proper_pair(t, c)) EXPECT_EQ(v_image_slot(t, c).bit5, 0);
    }
  }
}

TEST(v_matrix, slot_images_pairwise_orthogonal) {
  std::vector<StateVector> slots;
  for (auto t : kAllBases) {
    for (auto c : kAllBases) slots.push_back(v_slot_state(v_image_slot(t, c)));
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    for (std::size_t j = i + 1; j < slots.size(); ++j) EXPECT_LT(std::abs(inner_product(slots[i], slots[j])), 1e-12);
  }
}

TEST(orthonormal_complement, completes_to_unitary) {
  std::mt19937_64 gen(21);
  oracle::Mat cols(8, 3);
  for (int j = 0; j < 3; ++j) cols.col(j) = oracle::random_state(3, gen);
  const oracle::Mat q = cols.householderQr().householderQ() * oracle::Mat::Identity(8, 3);
  const Matrix comp = orthonormal_complement(q);
  ASSERT_EQ(comp.cols(), 5);
  Matrix full(8, 8);
  full << q, comp;
  EXPECT_LT(unitarity_defect(full), 1e-12);
}

TEST(modified_bell, every_reachable_branch_gives_target) {
  for (auto variant : {BellVariant::A, BellVariant::B}) {
    for (const auto& in : kAllBellLabels) {
      const auto state = bell_state(in);
      int reachable = 0;
      for (int m1 = 0; m1 < 2; ++m1) {
        for (int m2 = 0; m2 < 2; ++m2) {
          if (m1 != in.phase_bit || m2 != in.amplitude_bit) {
            EXPECT_THROW(modified_bell_branch(state, 0, 1, variant, m1, m2), InvariantViolation);
            continue;
          }
          ++reachable;
          const auto r = modified_bell_branch(state, 0, 1, variant, m1, m2);
          EXPECT_EQ(r.measured, in);
          EXPECT_NEAR(fidelity(r.state, bell_state(variant_target(variant))), 1.0, 1e-12);
        }
      }
      EXPECT_EQ(reachable, 1);
    }
  }
}

TEST(modified_bell, random_inputs_every_branch) {
  std::mt19937_64 gen(31);
  for (int i = 0; i < 100; ++i) {
    const auto s = StateVector::from_amplitudes(oracle::random_state(2, gen));
    for (auto variant : {BellVariant::A, BellVariant::B}) {
      for (int m1 = 0; m1 < 2; ++m1) {
        for (int m2 = 0; m2 < 2; ++m2) {
          const auto r = modified_bell_branch(s, 0, 1, variant, m1, m2);
          EXPECT_NEAR(fidelity(r.state, bell_state(variant_target(variant))), 1.0, 1e-12);
        }
      }
    }
  }
}

TEST(modified_bell, embedded_pair_keeps_spectators) {
  // pair on (2, 3) of a 4-qubit product; qubits 0, 1 untouched
  std::mt19937_64 gen(4);
  const auto spect = StateVector::from_amplitudes(oracle::random_state(2, gen));
  const auto full = tensor(spect, bell_state(kBeta10));
  const auto r = modified_bell(full, 2, 3, BellVariant::B, std::uint64_t{8});
  const oracle::Vec want = oracle::kron(spect.amplitudes(), oracle::bell(0, 1));
  EXPECT_NEAR(std::abs(r.state.amplitudes().dot(want)), 1.0, 1e-12);
  EXPECT_EQ(r.measured, kBeta10);
}

TEST(swap_protocol, proper_pairs_are_deterministic_over_seeds) {
  const auto at = six_qubit_product(kBeta01, kBeta01, kBeta11);
  const auto gc = six_qubit_product(kBeta01, kBeta01, kBeta01);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    for (auto [t, c] : {std::pair{A, T}, std::pair{T, A}, std::pair{G, C}, std::pair{C, G}}) {
      const auto r = pol().pair(t, c, seed);
      const auto& want = (t == A || t == T) ? at : gc;
      ASSERT_LT(oracle::max_diff(r.pair.state.amplitudes(), want), 1e-10) << to_char(t) << to_char(c) << seed;
      ASSERT_EQ(r.outcome.verdict, Verdict::Proper);
      ASSERT_EQ(r.outcome.bonds, proper_signature(t));
      ASSERT_EQ(r.pair.stage, Stage::Final);
    }
  }
}

TEST(swap_protocol, improper_matrix) {
  for (auto t : kAllBases) {
    for (auto c : kAllBases) {
      if (is_proper_pair(t, c)) continue;
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto r = pol().pair(t, c, seed);
        EXPECT_EQ(r.outcome.verdict, Verdict::Improper);
        EXPECT_EQ(r.outcome.bonds[0], kBeta11);
        EXPECT_EQ(r.outcome.bonds[1], kBeta11);
        ASSERT_TRUE(r.outcome.bonds[2].has_value());
        EXPECT_TRUE(*r.outcome.bonds[2] == kBeta00 || *r.outcome.bonds[2] == kBeta10);
        EXPECT_EQ(r.outcome.transcript.bit("q6"), 0);
      }
    }
  }
}

TEST(swap_protocol, requires_assembled_stage) {
  const auto p = pol().transform_v(pol().assemble(A, T));
  EXPECT_THROW(pol().swap_protocol(p, 1), InvariantViolation);
  EXPECT_THROW(pol().transform_v(p), InvariantViolation);
}

TEST(swap_protocol, pairing_circuit_replays_outcome) {
  for (auto t : kAllBases) {
    for (auto c : kAllBases) {
      const auto r = pol().pair(t, c, 17);
      const auto gates = pol().pairing_circuit(r.outcome);
      const auto start = tensor(input_state(t), input_state(c));
      const auto replay = apply_circuit(start, gates);
      // measurement projections are dropped, so compare up to normalization
      EXPECT_NEAR(std::abs(inner_product(replay, r.pair.state)), 1.0, 1e-10) << to_char(t) << to_char(c);
    }
  }
}

TEST(release_improper, flips_q5_parity) {
  const auto r = pol().pair(A, G, 3);
  const auto released = release_improper(r.outcome, r.pair);
  EXPECT_TRUE(released.outcome.released);
  ASSERT_TRUE(released.outcome.bonds[2].has_value());
  EXPECT_EQ(released.outcome.bonds[2]->amplitude_bit, 1);
  const auto good = pol().pair(A, T, 3);
  EXPECT_THROW(release_improper(good.outcome, good.pair), InvalidArgument);
}

TEST(classify_bonds, signatures) {
  const auto s = StateVector::from_amplitudes(six_qubit_product(kBeta01, kBeta10, kBeta11));
  const auto b = classify_bonds(s);
  EXPECT_EQ(to_string(b), "b01,b10,b11");
  EXPECT_EQ(verdict_of(b), Verdict::Improper);
  EXPECT_EQ(verdict_of(proper_signature(G)), Verdict::Proper);
  const auto prod = StateVector::from_bits("000000");
  EXPECT_EQ(to_string(classify_bonds(prod)), "not-bell,not-bell,not-bell");
}
