#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>

#include "floq/algebra.hpp"

namespace floq {

struct TannerGraph {
  std::size_t num_qubits = 0;
  // One entry per check: the qubits it acts on.
  std::vector<std::vector<std::size_t>> check_support;
  std::vector<char> check_type;  // 'X', 'Z', or 'P' (generic Pauli)
  // Adjacency: checks per qubit.
  std::vector<std::vector<std::size_t>> checks_of_qubit;
};

struct LogicalBasis {
  // k symplectically paired logicals.
  std::vector<std::pair<PauliString, PauliString>> pairs;
  std::size_t k() const { return pairs.size(); }
};

// Optional geometry carried by builtin codes: doubled integer coordinates so
// edge midpoints stay integral, periodic wrap per axis (0 = open), a
// sublattice tag per site, and the family's canonical bond directions.
struct LatticeInfo {
  std::vector<std::array<int, 3>> site_pos;
  std::array<int, 3> period{0, 0, 0};  // in doubled units
  std::vector<int> sublattice;         // per site, -1 when untagged
  struct Dir {
    std::array<int, 3> delta;  // doubled units, as seen from sublattice 0
    std::string label;
  };
  std::vector<Dir> canonical_dirs;
  // Small layouts may list their bonds outright instead of via directions.
  std::vector<std::tuple<int, int, std::string>> explicit_bonds;
  // Translation generators (doubled units) defining orbit identification.
  std::vector<std::array<int, 3>> translations;

  std::array<int, 3> wrapped_delta(std::size_t from_site, std::size_t to_site) const;
};

struct StabilizerCode {
  std::size_t n = 0;
  std::vector<PauliString> checks;
  // Present iff the code is CSS: per-check type.
  std::optional<std::vector<char>> css_split;
  std::vector<int> site_of;  // qubit -> site id
  std::string name;
  std::optional<LatticeInfo> lattice;

  std::size_t num_sites() const;
  std::size_t qubits_per_site() const;  // m, uniform by construction
  std::vector<std::size_t> site_qubits(int site) const;

  std::size_t check_rank() const;
  std::size_t k() const { return n - check_rank(); }

  // Throws unless all checks pairwise commute and any CSS split is sound.
  void validate() const;

  BinaryMatrix check_matrix() const;  // checks as (x|z) rows
};

TannerGraph tanner_graph(const StabilizerCode& code);

LogicalBasis logical_basis(const StabilizerCode& code);

struct DistanceResult {
  bool exact = false;
  std::size_t value = 0;  // exact distance, or w_max+1 as a lower bound
  PauliString witness;    // minimal-weight logical when exact
};
DistanceResult code_distance(const StabilizerCode& code, std::size_t w_max,
                             unsigned threads = 1);

// Line-oriented text format: "n k name", one check per line over {I,X,Y,Z},
// then an optional SITE block. Bit-exact round trip.
void write_code(std::ostream& os, const StabilizerCode& code);
StabilizerCode read_code(std::istream& is);

}  // namespace floq
