#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dnaswap {

enum class Nucleobase { A, T, G, C };
enum class Family { Purine, Pyrimidine };
enum class TautomerMark { Usual, Star, Sharp };

/// Hoogsteen, Watson-Crick and sugar edges of a base.
enum class Edge { H, WC, S };

inline constexpr Nucleobase kAllBases[] = {Nucleobase::A, Nucleobase::T, Nucleobase::G, Nucleobase::C};

Family family(Nucleobase base);
Nucleobase complement(Nucleobase base);
char to_char(Nucleobase base);
/// Accepts A, T, G, C in either case; throws InvalidArgument otherwise.
Nucleobase parse_base(char letter);
std::vector<Nucleobase> parse_sequence(std::string_view letters);
std::string to_string(Family family);
std::string to_string(Edge edge);
std::string to_string(TautomerMark mark);

struct TautomerForm {
  Nucleobase base;
  TautomerMark mark = TautomerMark::Usual;

  friend bool operator==(const TautomerForm&, const TautomerForm&) = default;
};

/// "A", "A*", "G#"
std::string to_string(const TautomerForm& form);

/// Tautomer marks reachable by the allowed transitions: A and T have the
/// usual and star forms, G and C additionally the sharp form.
std::span<const TautomerMark> allowed_marks(Nucleobase base);
bool is_allowed(const TautomerForm& form);

/// The ten valid tautomer forms in table order.
std::span<const TautomerForm> all_tautomer_forms();

/// Qubit string of one edge of a tautomer form: H edge 2 bits, WC edge 3
/// bits, S edge 1 or 2 bits (kept unpadded). Throws InvalidArgument for
/// forms outside the allowed transitions (A#, T#).
std::string_view encode(const TautomerForm& form, Edge edge);

struct HEdgeReadout {
  Family family;
  /// Second H-edge bit. Reported as an opaque label: the mapping of its two
  /// values onto imino and enol forms is not fixed here.
  int imino_enol_bit;
  std::vector<TautomerForm> matches;
};

/// Reads a 2-bit H-edge code: first bit 0 means purine, 1 pyrimidine.
HEdgeReadout h_edge_readout(std::string_view code);

/// True iff `b` is the bitwise complement of `a` (both 2-bit codes).
bool pairable(std::string_view a, std::string_view b);

/// (usual form, unusual form) pairs whose H-edge codes are pairable, in
/// table order.
std::vector<std::pair<TautomerForm, TautomerForm>> mispair_catalogue();

}  // namespace dnaswap
