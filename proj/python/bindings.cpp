#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dnaswap/error.hpp"
#include "dnaswap/harness.hpp"

namespace py = pybind11;
using namespace dnaswap;

namespace {

Nucleobase base_of(const std::string& s) {
  if (s.size() != 1) throw InvalidArgument("expected one base letter, got '" + s + "'");
  return parse_base(s[0]);
}

TautomerForm form_of(const std::string& s) {
  if (s.empty() || s.size() > 2) throw InvalidArgument("expected a tautomer form such as A, A* or G#");
  TautomerForm f{parse_base(s[0])};
  if (s.size() == 2) {
    if (s[1] == '*') f.mark = TautomerMark::Star;
    else if (s[1] == '#') f.mark = TautomerMark::Sharp;
    else throw InvalidArgument("tautomer mark must be * or #");
  }
  return f;
}

Edge edge_of(const std::string& s) {
  if (s == "H") return Edge::H;
  if (s == "WC") return Edge::WC;
  if (s == "S") return Edge::S;
  throw InvalidArgument("edge must be H, WC or S");
}

Angles angles_of(std::optional<double> theta, std::optional<double> phi) {
  Angles a = Angles::defaults();
  if (theta) a.theta = *theta;
  if (phi) a.phi = *phi;
  return a;
}

StateVector state_of(const Amplitudes& amps) { return StateVector::from_amplitudes(amps); }

py::list transcript_of(const MeasurementRecord& r) {
  py::list out;
  for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
    out.append(py::make_tuple(r.labels[i], r.outcomes[i].qubit, r.outcomes[i].bit));
  }
  return out;
}

py::list bonds_of(const BondSignature& b) {
  py::list out;
  for (const auto& bond : b) out.append(to_string(bond));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entanglement-swapping base pairing simulator";
  m.attr("__version__") = kToolVersion;

  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  m.def("encode", [](const std::string& form, const std::string& edge) {
    return std::string(encode(form_of(form), edge_of(edge)));
  }, py::arg("form"), py::arg("edge"));
  m.def("complement", [](const std::string& b) { return std::string(1, to_char(complement(base_of(b)))); });
  m.def("pairable", [](const std::string& a, const std::string& b) { return pairable(a, b); });

  m.def("default_angles", [] {
    const auto a = Angles::defaults();
    return py::make_tuple(a.theta, a.phi);
  });
  m.def("recognize", [](const std::string& b, std::optional<double> theta, std::optional<double> phi) {
    return Amplitudes(recognize(base_of(b), angles_of(theta, phi)).state.amplitudes());
  }, py::arg("base"), py::arg("theta") = py::none(), py::arg("phi") = py::none());
  m.def("recognition_unitary", [](std::optional<double> theta, std::optional<double> phi) {
    return recognition_unitary(angles_of(theta, phi));
  }, py::arg("theta") = py::none(), py::arg("phi") = py::none());

  m.def("pair", [](const std::string& t, const std::string& c, std::uint64_t seed, std::optional<double> theta,
                   std::optional<double> phi) {
    const Polymerase pol(angles_of(theta, phi));
    const auto r = pol.pair(base_of(t), base_of(c), seed);
    py::dict out;
    out["verdict"] = to_string(r.outcome.verdict);
    out["bonds"] = bonds_of(r.outcome.bonds);
    out["transcript"] = transcript_of(r.outcome.transcript);
    out["final_state"] = Amplitudes(r.pair.state.amplitudes());
    return out;
  }, py::arg("template"), py::arg("candidate"), py::arg("seed") = 0, py::arg("theta") = py::none(),
     py::arg("phi") = py::none());

  m.def("modified_bell", [](const Amplitudes& amps, int qa, int qb, const std::string& variant, std::uint64_t seed) {
    if (variant != "A" && variant != "B") throw InvalidArgument("variant must be A or B");
    const auto r = modified_bell(state_of(amps), qa, qb, variant == "A" ? BellVariant::A : BellVariant::B, seed);
    return py::make_tuple(to_string(r.measured), Amplitudes(r.state.amplitudes()));
  }, py::arg("state"), py::arg("qa"), py::arg("qb"), py::arg("variant"), py::arg("seed") = 0);

  m.def("bell_state", [](const std::string& label) { return Amplitudes(bell_state(parse_bell_label(label)).amplitudes()); });
  m.def("lambda_of", [](const std::string& bits) { return lambda_of(bits); });
  m.def("sector_support", [](const Amplitudes& amps) { return sector_support(state_of(amps)); });
  m.def("weak_dephase", [](const Amplitudes& amps, double phi) {
    return Amplitudes(weak_dephase(state_of(amps), phi).amplitudes());
  });
  m.def("entanglement_entropy", [](const Amplitudes& amps, std::vector<int> cut) {
    return entanglement_entropy(state_of(amps), cut);
  });

  m.def("run_json", [](const std::string& command, const std::string& bases, std::uint64_t seed, int shots,
                       std::optional<double> theta, std::optional<double> phi, const std::string& enzyme,
                       const std::string& order, const std::string& relaxation, bool inject_fault) {
    RunConfig c;
    c.seed = seed;
    c.shots = shots;
    c.angles = angles_of(theta, phi);
    c.enzyme = parse_enzyme(enzyme);
    c.bases = parse_sequence(bases);
    c.order = parse_candidate_order(order);
    c.relaxation = relaxation;
    c.inject_fault = inject_fault;
    const auto report = run_command(command, c);
    return py::make_tuple(report.to_json().dump(2), report.ok());
  }, py::arg("command"), py::arg("bases") = "", py::arg("seed") = 0, py::arg("shots") = 1,
     py::arg("theta") = py::none(), py::arg("phi") = py::none(), py::arg("enzyme") = "2,4",
     py::arg("order") = "fixed", py::arg("relaxation") = "none", py::arg("inject_fault") = false);
}
