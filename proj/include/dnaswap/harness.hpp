#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dnaswap/basecode.hpp"
#include "dnaswap/noise_dfs.hpp"
#include "dnaswap/replication.hpp"

namespace dnaswap {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportVersion = 1;

using Json = nlohmann::ordered_json;

enum class CandidateOrder { Fixed, Shuffled };
std::string to_string(CandidateOrder order);
CandidateOrder parse_candidate_order(std::string_view name);

/// "q,k"
EnzymeSite parse_enzyme(std::string_view text);

struct RunConfig {
  std::uint64_t seed = 0;
  int shots = 1;
  Angles angles = Angles::defaults();
  EnzymeSite enzyme{};
  /// states: bases to dump (empty = all four); pair: template, candidate;
  /// replicate: template strand.
  std::vector<Nucleobase> bases;
  CandidateOrder order = CandidateOrder::Fixed;
  std::string relaxation = "none";
  bool inject_fault = false;

  /// Throws InvalidArgument on values the command cannot run with.
  void validate(std::string_view command) const;
  Json to_json(std::string_view command) const;
};

struct InvariantCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct Report {
  std::string command;
  Json config;
  Json results;
  std::vector<InvariantCheck> checks;
  /// Human-readable summary for stdout.
  std::string text;

  bool ok() const;
  Json to_json() const;
};

/// Writes `report.to_json()` with two-space indentation; throws Error when
/// the file cannot be written.
void write_report(const Report& report, const std::string& path);

// Relaxation of an accepted pair.

struct RelaxationResult {
  TautomerMark mark;
  /// "G*.C*"
  std::string configuration;
  bool mutation;
  /// Post-selected Born probability of each allowed mark, in
  /// allowed_marks(template) order.
  std::vector<double> probabilities;
};

/// Plug-in point for post-pairing relaxation models.
class RelaxationModel {
 public:
  virtual ~RelaxationModel() = default;
  virtual std::string id() const = 0;
  virtual RelaxationResult relax(Nucleobase template_base, const StateVector& final_state, Rng& rng) const = 0;
};

/// Projects the final pair onto its allowed tautomer-pair configurations
/// (N^m . complement(N)^m in interleaved WC layout), renormalizes and samples.
/// A star or sharp outcome counts as a mutation.
class UniformCollapse final : public RelaxationModel {
 public:
  std::string id() const override { return "uniform-collapse"; }
  RelaxationResult relax(Nucleobase template_base, const StateVector& final_state, Rng& rng) const override;
};

/// nullptr for "none"; throws InvalidArgument for unknown ids.
std::unique_ptr<RelaxationModel> make_relaxation(std::string_view id);

/// Interleaved 6-qubit basis state of the tautomer pair (N^mark, Nbar^mark).
StateVector tautomer_pair_state(Nucleobase template_base, TautomerMark mark);

// Strand replication.

struct Rejection {
  Nucleobase candidate;
  BondSignature bonds;
  std::uint64_t seed;
};

struct PositionRecord {
  Nucleobase template_base;
  std::vector<Nucleobase> tried;
  std::vector<Rejection> rejected;
  std::optional<Nucleobase> accepted;
  std::uint64_t accepted_seed = 0;
  std::optional<RelaxationResult> relaxation;
};

struct ReplicationRun {
  std::vector<PositionRecord> positions;
  /// Fraction of positions whose accepted base is the complement.
  double fidelity = 0.0;
  double mean_rejections = 0.0;
  int mutations = 0;
};

/// Position i uses seed derive_seed(seed, i); candidate order, pairing
/// attempts and relaxation draw from independent child streams of it.
ReplicationRun replicate_strand(const Polymerase& polymerase, std::span<const Nucleobase> strand, CandidateOrder order,
                                const RelaxationModel* relaxation, std::uint64_t seed);

// Formatting.

/// "+1/sqrt(2)", "-2/sqrt(6)", ... for the exact values that appear in the
/// recognized states; empty when none matches within 1e-12.
std::string symbolic_amplitude(double value);
/// "%+.6f"
std::string format_fixed(double value);

// Commands.

Report cmd_states(const RunConfig& config);
Report cmd_pair(const RunConfig& config);
Report cmd_replicate(const RunConfig& config);
Report cmd_dfs_audit(const RunConfig& config);

/// Dispatches on "states", "pair", "replicate", "dfs-audit".
Report run_command(std::string_view command, const RunConfig& config);

}  // namespace dnaswap
