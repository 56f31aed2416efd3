// dnaswap: command-line driver for the pairing simulator.
//
// Exit codes: 0 success, 1 invariant violation detected, 2 bad input.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "dnaswap/error.hpp"
#include "dnaswap/harness.hpp"

namespace {

struct Options {
  std::uint64_t seed = 0;
  int shots = 1;
  double theta = dnaswap::Angles::defaults().theta;
  double phi = dnaswap::Angles::defaults().phi;
  std::string json_path;
  std::string enzyme = "2,4";
  std::string bases;
  std::string template_base;
  std::string candidate;
  std::string sequence;
  std::string sequence_file;
  std::string order = "fixed";
  std::string relaxation = "none";
  bool inject_fault = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--shots", o.shots, "Repetitions")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--theta", o.theta, "Recognition angle theta (radians)");
  cmd->add_option("--phi", o.phi, "Recognition angle phi (radians)");
  cmd->add_option("--json", o.json_path, "Write the JSON report to this path");
  cmd->add_option("--enzyme", o.enzyme, "Enzyme site as q,k")->capture_default_str();
}

std::string read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dnaswap::InvalidArgument("cannot read sequence file '" + path + "'");
  std::ostringstream buf;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '>') continue;  // FASTA header
    buf << line << '\n';
  }
  return buf.str();
}

dnaswap::RunConfig make_config(const std::string& command, const Options& o) {
  dnaswap::RunConfig c;
  c.seed = o.seed;
  c.shots = o.shots;
  c.angles = {o.theta, o.phi};
  c.enzyme = dnaswap::parse_enzyme(o.enzyme);
  c.order = dnaswap::parse_candidate_order(o.order);
  c.relaxation = o.relaxation;
  c.inject_fault = o.inject_fault;
  if (command == "states") c.bases = dnaswap::parse_sequence(o.bases);
  if (command == "pair") {
    if (o.template_base.size() != 1 || o.candidate.size() != 1) {
      throw dnaswap::InvalidArgument("pair takes two single base letters");
    }
    c.bases = {dnaswap::parse_base(o.template_base[0]), dnaswap::parse_base(o.candidate[0])};
  }
  if (command == "replicate") {
    if (!o.sequence.empty() && !o.sequence_file.empty()) {
      throw dnaswap::InvalidArgument("give either --sequence or --sequence-file, not both");
    }
    c.bases = dnaswap::parse_sequence(o.sequence_file.empty() ? o.sequence : read_sequence_file(o.sequence_file));
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement-swapping base pairing simulator"};
  app.set_version_flag("--version", dnaswap::kToolVersion);
  app.require_subcommand(1);
  Options o;

  auto* states = app.add_subcommand("states", "Dump input and recognized WC-edge states");
  add_common(states, o);
  states->add_option("bases", o.bases, "Bases to dump (default ATGC)");

  auto* pair = app.add_subcommand("pair", "Run the swapping protocol on one template/candidate pair");
  add_common(pair, o);
  pair->add_option("template", o.template_base, "Template base")->required();
  pair->add_option("candidate", o.candidate, "Candidate base")->required();

  auto* replicate = app.add_subcommand("replicate", "Replicate a template strand");
  add_common(replicate, o);
  replicate->add_option("--sequence", o.sequence, "Template sequence over ATGC");
  replicate->add_option("--sequence-file", o.sequence_file, "File holding the template sequence");
  replicate->add_option("--order", o.order, "Candidate order")
      ->check(CLI::IsMember({"fixed", "shuffled"}))
      ->capture_default_str();
  replicate->add_option("--relaxation", o.relaxation, "Post-pairing relaxation model")
      ->check(CLI::IsMember({"none", "uniform-collapse"}))
      ->capture_default_str();

  auto* audit = app.add_subcommand("dfs-audit", "Audit lambda sectors along the joint base+enzyme circuits");
  add_common(audit, o);
  audit->add_flag("--inject-fault", o.inject_fault, "Insert an uncompensated X into the A.T audit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto config = make_config(command, o);
    const auto report = dnaswap::run_command(command, config);
    std::cout << report.text;
    if (!o.json_path.empty()) dnaswap::write_report(report, o.json_path);
    return report.ok() ? 0 : 1;
  } catch (const dnaswap::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const dnaswap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
