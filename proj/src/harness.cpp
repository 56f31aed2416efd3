#include "dnaswap/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "dnaswap/error.hpp"

namespace dnaswap {

std::string to_string(CandidateOrder order) { return order == CandidateOrder::Fixed ? "fixed" : "shuffled"; }

CandidateOrder parse_candidate_order(std::string_view name) {
  if (name == "fixed") return CandidateOrder::Fixed;
  if (name == "shuffled") return CandidateOrder::Shuffled;
  throw InvalidArgument("order must be fixed or shuffled, got '" + std::string(name) + "'");
}

EnzymeSite parse_enzyme(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw InvalidArgument("enzyme must be given as q,k");
  EnzymeSite site;
  try {
    std::size_t used = 0;
    const std::string q(text.substr(0, comma)), k(text.substr(comma + 1));
    site.q = std::stoi(q, &used);
    if (used != q.size()) throw InvalidArgument("bad q");
    site.k = std::stoi(k, &used);
    if (used != k.size()) throw InvalidArgument("bad k");
  } catch (const std::logic_error&) {
    throw InvalidArgument("enzyme must be given as q,k with integers, got '" + std::string(text) + "'");
  }
  site.validate();
  return site;
}

void RunConfig::validate(std::string_view command) const {
  if (shots < 1) throw InvalidArgument("shots must be >= 1");
  angles.validate();
  enzyme.validate();
  if (command == "pair" && bases.size() != 2) throw InvalidArgument("pair needs a template and a candidate base");
  if (command == "replicate" && bases.empty()) throw InvalidArgument("replicate needs a nonempty template sequence");
  make_relaxation(relaxation);
}

namespace {

std::string letters(std::span<const Nucleobase> bases) {
  std::string s;
  for (auto b : bases) s += to_char(b);
  return s;
}

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

Json amplitude_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Json state_json(const StateVector& state) {
  Json terms = Json::array();
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    const Complex a = state.amplitude(i);
    if (std::abs(a) < 1e-15) continue;
    terms.push_back({{"basis", basis_string(i, state.num_qubits())},
                     {"amplitude", amplitude_json(a)},
                     {"symbol", std::abs(a.imag()) < 1e-15 ? symbolic_amplitude(a.real()) : ""}});
  }
  return terms;
}

void state_text(std::ostringstream& out, const StateVector& state) {
  out << "    basis   amplitude   symbol\n";
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    const Complex a = state.amplitude(i);
    if (std::abs(a) < 1e-15) continue;
    out << "    " << basis_string(i, state.num_qubits()) << "   " << format_fixed(a.real());
    if (std::abs(a.imag()) > 1e-15) out << " " << format_fixed(a.imag()) << "i";
    out << "   " << symbolic_amplitude(a.real()) << "\n";
  }
}

Json int_list(const std::vector<int>& v) { return Json(v); }

std::string join(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

void check(Report& r, std::string name, bool passed, std::string detail = "") {
  r.checks.push_back({std::move(name), passed, std::move(detail)});
}

void append_checks_text(std::ostringstream& out, const Report& r) {
  out << "invariant checks:\n";
  for (const auto& c : r.checks) {
    out << "  " << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << "\n";
  }
}

Report new_report(std::string_view command, const RunConfig& config) {
  Report r;
  r.command = std::string(command);
  r.config = config.to_json(command);
  return r;
}

StateVector expected_final(Nucleobase template_base) {
  const auto sig = proper_signature(template_base);
  return tensor(bell_state(*sig[0]), tensor(bell_state(*sig[1]), bell_state(*sig[2])));
}

Json bonds_json(const BondSignature& bonds) {
  return Json::array({to_string(bonds[0]), to_string(bonds[1]), to_string(bonds[2])});
}

Json audit_json(const AuditReport& audit) {
  Json steps = Json::array();
  for (const auto& s : audit.steps) {
    steps.push_back({{"index", s.index}, {"gate", s.gate}, {"support", int_list(s.support)}, {"changed", s.changed}});
  }
  Json j = {{"passed", audit.passed}, {"initial_support", int_list(audit.initial_support)}};
  j["first_violation"] = audit.first_violation ? Json(*audit.first_violation) : Json(nullptr);
  j["steps"] = std::move(steps);
  return j;
}

}  // namespace

Json RunConfig::to_json(std::string_view command) const {
  Json j = {{"command", std::string(command)},
            {"seed", seed},
            {"shots", shots},
            {"theta", angles.theta},
            {"phi", angles.phi},
            {"enzyme", {{"q", enzyme.q}, {"k", enzyme.k}}}};
  if (command == "states") j["bases"] = letters(bases.empty() ? std::span<const Nucleobase>(kAllBases) : bases);
  if (command == "pair") j["bases"] = letters(bases);
  if (command == "replicate") {
    j["sequence"] = letters(bases);
    j["order"] = to_string(order);
    j["relaxation"] = relaxation;
  }
  if (command == "dfs-audit") j["inject_fault"] = inject_fault;
  return j;
}

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.passed; });
}

Json Report::to_json() const {
  Json inv = Json::array();
  for (const auto& c : checks) inv.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"version", kReportVersion},
          {"tool_version", kToolVersion},
          {"command", command},
          {"config", config},
          {"results", results},
          {"invariant_checks", std::move(inv)}};
}

void write_report(const Report& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open report file '" + path + "' for writing");
  out << report.to_json().dump(2) << "\n";
  if (!out) throw Error("failed writing report file '" + path + "'");
}

StateVector tautomer_pair_state(Nucleobase template_base, TautomerMark mark) {
  const auto t = encode({template_base, mark}, Edge::WC);
  const auto c = encode({complement(template_base), mark}, Edge::WC);
  std::string bits;
  for (std::size_t i = 0; i < 3; ++i) {
    bits += t[i];
    bits += c[i];
  }
  return StateVector::from_bits(bits);
}

RelaxationResult UniformCollapse::relax(Nucleobase template_base, const StateVector& final_state, Rng& rng) const {
  // Complement marks follow the template: only (N^m, Nbar^m) with both
  // forms allowed are candidate configurations.
  std::vector<TautomerMark> marks;
  for (auto m : allowed_marks(template_base)) {
    if (is_allowed({complement(template_base), m})) marks.push_back(m);
  }
  std::vector<double> weights;
  double total = 0.0;
  for (auto m : marks) {
    weights.push_back(fidelity(tautomer_pair_state(template_base, m), final_state));
    total += weights.back();
  }
  if (!(total > kZeroProbability)) {
    throw InvariantViolation("final pair has no weight on its tautomer-pair configurations");
  }
  for (auto& w : weights) w /= total;
  const double u = rng.uniform();
  std::size_t pick = marks.size() - 1;
  double acc = 0.0;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    acc += weights[i];
    if (u < acc) {
      pick = i;
      break;
    }
  }
  const TautomerMark mark = marks[pick];
  return {mark, to_string(TautomerForm{template_base, mark}) + "." + to_string(TautomerForm{complement(template_base), mark}),
          mark != TautomerMark::Usual, weights};
}

std::unique_ptr<RelaxationModel> make_relaxation(std::string_view id) {
  if (id == "none") return nullptr;
  if (id == "uniform-collapse") return std::make_unique<UniformCollapse>();
  throw InvalidArgument("relaxation must be none or uniform-collapse, got '" + std::string(id) + "'");
}

ReplicationRun replicate_strand(const Polymerase& polymerase, std::span<const Nucleobase> strand, CandidateOrder order,
                                const RelaxationModel* relaxation, std::uint64_t seed) {
  ReplicationRun run;
  run.positions.reserve(strand.size());
  std::size_t correct = 0, rejections = 0;
  for (std::size_t i = 0; i < strand.size(); ++i) {
    const std::uint64_t pos_seed = derive_seed(seed, i);
    PositionRecord rec{strand[i], {}, {}, std::nullopt, 0, std::nullopt};
    std::vector<Nucleobase> candidates(std::begin(kAllBases), std::end(kAllBases));
    if (order == CandidateOrder::Shuffled) {
      Rng rng(derive_seed(pos_seed, 0));
      for (std::size_t j = candidates.size() - 1; j > 0; --j) std::swap(candidates[j], candidates[rng.below(j + 1)]);
    }
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      const std::uint64_t attempt_seed = derive_seed(pos_seed, 1 + j);
      rec.tried.push_back(candidates[j]);
      auto result = polymerase.pair(strand[i], candidates[j], attempt_seed);
      if (result.outcome.verdict == Verdict::Proper) {
        rec.accepted = candidates[j];
        rec.accepted_seed = attempt_seed;
        if (relaxation) {
          Rng rng(derive_seed(pos_seed, 1000));
          rec.relaxation = relaxation->relax(strand[i], result.pair.state, rng);
          if (rec.relaxation->mutation) ++run.mutations;
        }
        break;
      }
      const auto released = release_improper(result.outcome, result.pair);
      rec.rejected.push_back({candidates[j], released.outcome.bonds, attempt_seed});
    }
    if (rec.accepted && *rec.accepted == complement(strand[i])) ++correct;
    rejections += rec.rejected.size();
    run.positions.push_back(std::move(rec));
  }
  if (!strand.empty()) {
    run.fidelity = static_cast<double>(correct) / static_cast<double>(strand.size());
    run.mean_rejections = static_cast<double>(rejections) / static_cast<double>(strand.size());
  }
  return run;
}

std::string symbolic_amplitude(double value) {
  struct Known {
    double v;
    const char* name;
  };
  static const Known known[] = {
      {1.0, "1"},
      {1.0 / std::sqrt(2.0), "1/sqrt(2)"},
      {1.0 / std::sqrt(6.0), "1/sqrt(6)"},
      {2.0 / std::sqrt(6.0), "2/sqrt(6)"},
      {1.0 / std::sqrt(3.0), "1/sqrt(3)"},
      {0.5, "1/2"},
  };
  if (std::abs(value) < 1e-12) return "0";
  for (const auto& k : known) {
    if (std::abs(std::abs(value) - k.v) < 1e-12) return std::string(value < 0 ? "-" : "+") + k.name;
  }
  return "";
}

std::string format_fixed(double value) {
  if (std::abs(value) < 5e-7) value = 0.0;  // no "-0.000000"
  return fmt("%+.6f", value);
}

Report cmd_states(const RunConfig& config) {
  config.validate("states");
  Report r = new_report("states", config);
  const std::vector<Nucleobase> bases =
      config.bases.empty() ? std::vector<Nucleobase>(std::begin(kAllBases), std::end(kAllBases)) : config.bases;
  std::ostringstream text;
  text << "theta " << format_fixed(config.angles.theta) << "  phi " << format_fixed(config.angles.phi) << "\n";

  Json list = Json::array();
  std::vector<StateVector> recognized;
  for (auto base : bases) {
    const auto in = input_state(base);
    const auto rs = recognize(base, config.angles);
    recognized.push_back(rs.state);
    const auto sector = sector_support(rs.state);
    Json entropy = Json::object();
    std::vector<double> ent;
    for (int q = 0; q < 3; ++q) {
      const int cut[] = {q};
      ent.push_back(entanglement_entropy(rs.state, cut));
      entropy["q" + std::to_string(q)] = ent.back();
    }
    Json tautomers = Json::array();
    for (const auto& ta : tautomer_amplitudes(base, config.angles)) {
      tautomers.push_back({{"form", to_string(TautomerForm{base, ta.mark})}, {"amplitude", ta.amplitude}});
    }
    list.push_back({{"base", std::string(1, to_char(base))},
                    {"input", state_json(in)},
                    {"recognized", state_json(rs.state)},
                    {"lambda_support", int_list(sector)},
                    {"entropy", std::move(entropy)},
                    {"tautomers", std::move(tautomers)},
                    {"norm", rs.state.norm()}});

    text << "\n" << to_char(base) << "  input " << encode({base}, Edge::WC) << "  lambda " << join(sector) << "\n";
    state_text(text, rs.state);
    text << "    entropy q0 " << fmt("%.6f", ent[0]) << "  q1 " << fmt("%.6f", ent[1]) << "  q2 " << fmt("%.6f", ent[2])
         << "\n";

    const std::string b(1, to_char(base));
    check(r, "states." + b + ".norm", std::abs(rs.state.norm() - 1.0) < 1e-12);
    check(r, "states." + b + ".single_sector", sector.size() == 1, "lambda " + join(sector));
  }
  if (bases.size() > 1) {
    double defect = 0.0;
    for (std::size_t i = 0; i < recognized.size(); ++i) {
      for (std::size_t j = 0; j < recognized.size(); ++j) {
        const double want = bases[i] == bases[j] ? 1.0 : 0.0;
        defect = std::max(defect, std::abs(inner_product(recognized[i], recognized[j]) - want));
      }
    }
    check(r, "states.orthonormal", defect < 1e-12, "max defect " + fmt("%.3e", defect));
  }
  r.results = {{"states", std::move(list)}};
  append_checks_text(text, r);
  r.text = text.str();
  return r;
}

Report cmd_pair(const RunConfig& config) {
  config.validate("pair");
  Report r = new_report("pair", config);
  const Polymerase pol(config.angles);
  const Nucleobase t = config.bases[0], c = config.bases[1];
  const bool proper = is_proper_pair(t, c);

  std::map<std::string, int> histogram;
  int proper_count = 0, q6_one = 0;
  double min_fidelity = 1.0;
  bool signature_ok = true;
  const StateVector expected = proper ? expected_final(t) : StateVector::basis(6, 0);
  const auto base_pair = pol.assemble(t, c);
  Json first_transcript;
  std::size_t protocol_gates = 0;
  for (int s = 0; s < config.shots; ++s) {
    const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(s));
    const auto result = pol.swap_protocol(base_pair, seed);
    const auto& o = result.outcome;
    ++histogram[to_string(o.bonds)];
    if (o.verdict == Verdict::Proper) ++proper_count;
    if (o.transcript.bit("q6") == 1) ++q6_one;
    if (proper) {
      min_fidelity = std::min(min_fidelity, fidelity(result.pair.state, expected));
      signature_ok = signature_ok && o.bonds == proper_signature(t);
    } else {
      const bool ok = o.bonds[0] == kBeta11 && o.bonds[1] == kBeta11 && (o.bonds[2] == kBeta00 || o.bonds[2] == kBeta10);
      signature_ok = signature_ok && ok;
    }
    if (s == 0) {
      protocol_gates = o.applied_gates.size();
      Json tr = Json::array();
      for (std::size_t i = 0; i < o.transcript.outcomes.size(); ++i) {
        tr.push_back({{"label", o.transcript.labels[i]},
                      {"qubit", o.transcript.outcomes[i].qubit},
                      {"bit", o.transcript.outcomes[i].bit}});
      }
      first_transcript = {{"seed", seed}, {"outcomes", std::move(tr)}, {"final_state", state_json(result.pair.state)}};
    }
  }

  Json hist = Json::array();
  for (const auto& [sig, n] : histogram) hist.push_back({{"bonds", sig}, {"count", n}});
  r.results = {{"template", std::string(1, to_char(t))},
               {"candidate", std::string(1, to_char(c))},
               {"expected_verdict", proper ? "proper" : "improper"},
               {"shots", config.shots},
               {"proper", proper_count},
               {"improper", config.shots - proper_count},
               {"histogram", std::move(hist)},
               {"gate_counts", {{"recognition_circuit", pol.u_circuit().size()}, {"protocol", protocol_gates}}},
               {"first_shot", std::move(first_transcript)}};
  if (proper) r.results["min_final_fidelity"] = min_fidelity;

  std::ostringstream text;
  text << to_char(t) << "." << to_char(c) << "  shots " << config.shots << "  expected " << (proper ? "proper" : "improper")
       << "\n  bonds                 count  fraction\n";
  for (const auto& [sig, n] : histogram) {
    char line[96];
    std::snprintf(line, sizeof line, "  %-20s %6d  %.4f\n", sig.c_str(), n, static_cast<double>(n) / config.shots);
    text << line;
  }
  text << "  verdict proper " << proper_count << "  improper " << config.shots - proper_count << "\n";

  check(r, "pair.verdict", proper ? proper_count == config.shots : proper_count == 0);
  check(r, "pair.bond_signature", signature_ok);
  if (proper) {
    check(r, "pair.final_state", min_fidelity >= 1.0 - 1e-9, "min fidelity " + fmt("%.12f", min_fidelity));
  } else {
    check(r, "pair.q6_zero_after_v", q6_one == 0, std::to_string(q6_one) + " shots read q6 = 1");
  }
  append_checks_text(text, r);
  r.text = text.str();
  return r;
}

Report cmd_replicate(const RunConfig& config) {
  config.validate("replicate");
  Report r = new_report("replicate", config);
  const Polymerase pol(config.angles);
  const auto relaxation = make_relaxation(config.relaxation);

  double fidelity_sum = 0.0, rejection_sum = 0.0;
  int mutations = 0;
  bool all_accepted = true, complement_ok = true;
  std::map<std::string, int> configurations;
  Json positions = Json::array();
  std::string output;
  for (int s = 0; s < config.shots; ++s) {
    const auto run = replicate_strand(pol, config.bases, config.order, relaxation.get(),
                                      derive_seed(config.seed, static_cast<std::uint64_t>(s)));
    fidelity_sum += run.fidelity;
    rejection_sum += run.mean_rejections;
    mutations += run.mutations;
    for (std::size_t i = 0; i < run.positions.size(); ++i) {
      const auto& p = run.positions[i];
      all_accepted = all_accepted && p.accepted.has_value();
      complement_ok = complement_ok && p.accepted && *p.accepted == complement(p.template_base);
      if (p.relaxation) ++configurations[p.relaxation->configuration];
      if (s != 0) continue;
      output += p.accepted ? to_char(*p.accepted) : '-';
      Json tried = Json::array(), rejected = Json::array();
      for (auto b : p.tried) tried.push_back(std::string(1, to_char(b)));
      for (const auto& rj : p.rejected) {
        rejected.push_back({{"candidate", std::string(1, to_char(rj.candidate))}, {"bonds", bonds_json(rj.bonds)}, {"seed", rj.seed}});
      }
      Json rec = {{"index", i},
                  {"template", std::string(1, to_char(p.template_base))},
                  {"tried", std::move(tried)},
                  {"rejected", std::move(rejected)}};
      rec["accepted"] = p.accepted ? Json(std::string(1, to_char(*p.accepted))) : Json(nullptr);
      rec["accepted_seed"] = p.accepted_seed;
      if (p.relaxation) {
        rec["relaxation"] = {{"configuration", p.relaxation->configuration},
                             {"mutation", p.relaxation->mutation},
                             {"probabilities", p.relaxation->probabilities}};
      }
      positions.push_back(std::move(rec));
    }
  }
  const double fidelity = fidelity_sum / config.shots;
  const double mean_rejections = rejection_sum / config.shots;

  Json freq = Json::array();
  for (const auto& [name, n] : configurations) {
    freq.push_back({{"configuration", name}, {"count", n}});
  }
  r.results = {{"positions", std::move(positions)},
               {"aggregate",
                {{"length", config.bases.size()},
                 {"shots", config.shots},
                 {"output_strand", output},
                 {"fidelity", fidelity},
                 {"mean_rejections", mean_rejections},
                 {"mutations", mutations},
                 {"configurations", std::move(freq)}}}};

  std::ostringstream text;
  const auto preview = [](const std::string& s) { return s.size() > 60 ? s.substr(0, 60) + "..." : s; };
  text << "template  " << preview(letters(config.bases)) << "\n"
       << "output    " << preview(output) << "\n"
       << "length " << config.bases.size() << "  shots " << config.shots << "  order " << to_string(config.order)
       << "  relaxation " << config.relaxation << "\n"
       << "fidelity " << fmt("%.6f", fidelity) << "  mean rejections " << fmt("%.4f", mean_rejections) << "  mutations "
       << mutations << "\n";
  for (const auto& [name, n] : configurations) text << "  " << name << "  " << n << "\n";

  check(r, "replicate.all_positions_accepted", all_accepted);
  check(r, "replicate.accepted_is_complement", complement_ok);
  if (!relaxation) check(r, "replicate.no_mutations", mutations == 0, std::to_string(mutations) + " mutations");
  append_checks_text(text, r);
  r.text = text.str();
  return r;
}

Report cmd_dfs_audit(const RunConfig& config) {
  config.validate("dfs-audit");
  Report r = new_report("dfs-audit", config);
  const Polymerase pol(config.angles);
  const EnzymeSite& site = config.enzyme;
  std::ostringstream text;
  text << "enzyme q " << site.q << "  k " << site.k << "  lambda " << site.lambda() << "\n";

  Json recognition = Json::array();
  bool recognition_ok = true;
  for (auto base : kAllBases) {
    const auto audit = audit_recognition(pol, base, site);
    recognition_ok = recognition_ok && audit.report.passed;
    Json j = audit_json(audit.report);
    j["base"] = std::string(1, to_char(base));
    recognition.push_back(std::move(j));
    text << "U  " << to_char(base) << "      " << (audit.report.passed ? "PASS" : "FAIL") << "  lambda "
         << join(audit.report.initial_support) << "  steps " << audit.report.steps.size() << "\n";
  }

  Json pairs = Json::array();
  bool pairs_ok = true;
  std::uint64_t index = 0;
  for (auto t : kAllBases) {
    for (auto c : kAllBases) {
      const auto audit = audit_pairing(pol, t, c, site, derive_seed(config.seed, index++));
      pairs_ok = pairs_ok && audit.report.passed;
      Json j = audit_json(audit.report);
      j["template"] = std::string(1, to_char(t));
      j["candidate"] = std::string(1, to_char(c));
      pairs.push_back(std::move(j));
      text << "U+S " << to_char(t) << "." << to_char(c) << "  " << (audit.report.passed ? "PASS" : "FAIL") << "  lambda "
           << join(audit.report.initial_support) << "  steps " << audit.report.steps.size();
      if (audit.report.first_violation) text << "  first violation at step " << *audit.report.first_violation;
      text << "\n";
    }
  }

  Json dephase = Json::array();
  double worst = 1.0;
  for (auto base : kAllBases) {
    const auto rs = recognize(base, config.angles);
    Json fids = Json::array();
    for (int k = 0; k <= 8; ++k) {
      const double phi = k * std::numbers::pi / 4;
      const double f = fidelity(rs.state, weak_dephase(rs.state, phi));
      worst = std::min(worst, f);
      fids.push_back({{"phi", phi}, {"fidelity", f}});
    }
    dephase.push_back({{"base", std::string(1, to_char(base))}, {"sweep", std::move(fids)}});
  }
  text << "weak dephasing sweep: min fidelity " << fmt("%.12f", worst) << "\n";

  r.results = {{"enzyme", {{"q", site.q}, {"k", site.k}, {"lambda", site.lambda()}}},
               {"recognition", std::move(recognition)},
               {"pairs", std::move(pairs)},
               {"weak_dephase", std::move(dephase)}};

  check(r, "dfs.recognition_constant_lambda", recognition_ok);
  check(r, "dfs.pairing_constant_lambda", pairs_ok);
  check(r, "dfs.weak_dephase_invariant", std::abs(worst - 1.0) < 1e-12, "min fidelity " + fmt("%.15f", worst));

  if (config.inject_fault) {
    const auto clean = audit_pairing(pol, Nucleobase::A, Nucleobase::T, site, config.seed);
    const std::size_t at = clean.base_gates.size() / 2;
    const auto faulty = audit_pairing(pol, Nucleobase::A, Nucleobase::T, site, config.seed, at);
    Json j = audit_json(faulty.report);
    j["fault_step"] = at;
    r.results["fault"] = std::move(j);
    text << "fault X on q0 at step " << at << "  " << (faulty.report.passed ? "PASS" : "FAIL");
    if (faulty.report.first_violation) text << "  first violation at step " << *faulty.report.first_violation;
    text << "\n";
    check(r, "dfs.fault_audit", faulty.report.passed, "bare X injected at step " + std::to_string(at));
    check(r, "dfs.fault_flagged_at_fault_step", faulty.report.first_violation == at);
  }
  append_checks_text(text, r);
  r.text = text.str();
  return r;
}

Report run_command(std::string_view command, const RunConfig& config) {
  if (command == "states") return cmd_states(config);
  if (command == "pair") return cmd_pair(config);
  if (command == "replicate") return cmd_replicate(config);
  if (command == "dfs-audit") return cmd_dfs_audit(config);
  throw InvalidArgument("unknown command '" + std::string(command) + "'");
}

}  // namespace dnaswap
