#include "dnaswap/basecode.hpp"

#include <array>
#include <cctype>

#include "dnaswap/error.hpp"

namespace dnaswap {

namespace {

struct Row {
  TautomerForm form;
  std::string_view h;
  std::string_view wc;
  std::string_view s;
};

// Qubit 1 = proton present (donor), 0 = absent (acceptor).
constexpr std::array<Row, 10> kTable{{
    {{Nucleobase::A, TautomerMark::Usual}, "01", "101", "10"},
    {{Nucleobase::A, TautomerMark::Star}, "00", "011", "10"},
    {{Nucleobase::T, TautomerMark::Usual}, "10", "010", "0"},
    {{Nucleobase::T, TautomerMark::Star}, "11", "100", "0"},
    {{Nucleobase::G, TautomerMark::Usual}, "00", "011", "10"},
    {{Nucleobase::G, TautomerMark::Star}, "01", "101", "10"},
    {{Nucleobase::G, TautomerMark::Sharp}, "01", "110", "00"},
    {{Nucleobase::C, TautomerMark::Usual}, "11", "100", "0"},
    {{Nucleobase::C, TautomerMark::Star}, "10", "010", "0"},
    {{Nucleobase::C, TautomerMark::Sharp}, "10", "001", "1"},
}};

constexpr std::array<TautomerForm, 10> kForms{{
    kTable[0].form, kTable[1].form, kTable[2].form, kTable[3].form, kTable[4].form,
    kTable[5].form, kTable[6].form, kTable[7].form, kTable[8].form, kTable[9].form,
}};

constexpr std::array<TautomerMark, 2> kTwoMarks{TautomerMark::Usual, TautomerMark::Star};
constexpr std::array<TautomerMark, 3> kThreeMarks{TautomerMark::Usual, TautomerMark::Star, TautomerMark::Sharp};

void check_h_code(std::string_view code) {
  if (code.size() != 2 || (code[0] != '0' && code[0] != '1') || (code[1] != '0' && code[1] != '1')) {
    throw InvalidArgument("H-edge code must be two bits, got '" + std::string(code) + "'");
  }
}

}  // namespace

Family family(Nucleobase base) {
  return (base == Nucleobase::A || base == Nucleobase::G) ? Family::Purine : Family::Pyrimidine;
}

Nucleobase complement(Nucleobase base) {
  switch (base) {
    case Nucleobase::A: return Nucleobase::T;
    case Nucleobase::T: return Nucleobase::A;
    case Nucleobase::G: return Nucleobase::C;
    case Nucleobase::C: return Nucleobase::G;
  }
  throw InvalidArgument("invalid nucleobase");
}

char to_char(Nucleobase base) {
  switch (base) {
    case Nucleobase::A: return 'A';
    case Nucleobase::T: return 'T';
    case Nucleobase::G: return 'G';
    case Nucleobase::C: return 'C';
  }
  return '?';
}

Nucleobase parse_base(char letter) {
  switch (std::toupper(static_cast<unsigned char>(letter))) {
    case 'A': return Nucleobase::A;
    case 'T': return Nucleobase::T;
    case 'G': return Nucleobase::G;
    case 'C': return Nucleobase::C;
    default: break;
  }
  throw InvalidArgument(std::string("not a nucleobase letter: '") + letter + "'");
}

std::vector<Nucleobase> parse_sequence(std::string_view letters) {
  std::vector<Nucleobase> out;
  out.reserve(letters.size());
  for (char c : letters) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    out.push_back(parse_base(c));
  }
  return out;
}

std::string to_string(Family f) { return f == Family::Purine ? "purine" : "pyrimidine"; }

std::string to_string(Edge edge) {
  switch (edge) {
    case Edge::H: return "H";
    case Edge::WC: return "WC";
    case Edge::S: return "S";
  }
  return "?";
}

std::string to_string(TautomerMark mark) {
  switch (mark) {
    case TautomerMark::Usual: return "usual";
    case TautomerMark::Star: return "star";
    case TautomerMark::Sharp: return "sharp";
  }
  return "?";
}

std::string to_string(const TautomerForm& form) {
  std::string s(1, to_char(form.base));
  if (form.mark == TautomerMark::Star) s += '*';
  if (form.mark == TautomerMark::Sharp) s += '#';
  return s;
}

std::span<const TautomerMark> allowed_marks(Nucleobase base) {
  if (base == Nucleobase::G || base == Nucleobase::C) return kThreeMarks;
  return kTwoMarks;
}

bool is_allowed(const TautomerForm& form) {
  for (auto m : allowed_marks(form.base)) {
    if (m == form.mark) return true;
  }
  return false;
}

std::span<const TautomerForm> all_tautomer_forms() { return kForms; }

std::string_view encode(const TautomerForm& form, Edge edge) {
  for (const auto& row : kTable) {
    if (row.form == form) {
      switch (edge) {
        case Edge::H: return row.h;
        case Edge::WC: return row.wc;
        case Edge::S: return row.s;
      }
    }
  }
  throw InvalidArgument("tautomer form " + to_string(form) + " is not reachable by the allowed transitions");
}

HEdgeReadout h_edge_readout(std::string_view code) {
  check_h_code(code);
  HEdgeReadout out{code[0] == '0' ? Family::Purine : Family::Pyrimidine, code[1] - '0', {}};
  for (const auto& row : kTable) {
    if (row.h == code) out.matches.push_back(row.form);
  }
  return out;
}

bool pairable(std::string_view a, std::string_view b) {
  check_h_code(a);
  check_h_code(b);
  return a[0] != b[0] && a[1] != b[1];
}

std::vector<std::pair<TautomerForm, TautomerForm>> mispair_catalogue() {
  std::vector<std::pair<TautomerForm, TautomerForm>> out;
  for (const auto& usual : kTable) {
    if (usual.form.mark != TautomerMark::Usual) continue;
    for (const auto& other : kTable) {
      if (other.form.mark == TautomerMark::Usual) continue;
      if (pairable(usual.h, other.h)) out.emplace_back(usual.form, other.form);
    }
  }
  return out;
}

}  // namespace dnaswap
