#pragma once

#include "floq/algebra.hpp"

namespace floq {

enum class EncodingMode { clifford, css };

// Leg layout of one gadget: columns run [in m | per-direction legs | out m].
struct GadgetShape {
  std::size_t m = 1;
  struct Dir {
    std::string label;
    std::size_t legs = 1;
    bool operator==(const Dir&) const = default;
  };
  std::vector<Dir> dirs;

  std::size_t n_legs() const {
    std::size_t t = 0;
    for (const auto& d : dirs) t += d.legs;
    return t;
  }
  std::size_t total() const { return 2 * m + n_legs(); }
  std::size_t in_col(std::size_t i) const { return i; }
  std::size_t leg_col(std::size_t dir, std::size_t leg) const {
    std::size_t c = m;
    for (std::size_t d = 0; d < dir; ++d) c += dirs[d].legs;
    return c + leg;
  }
  std::size_t out_col(std::size_t i) const { return m + n_legs() + i; }
  long dir_of_col(std::size_t col) const;  // -1 for in/out columns
  long dir_index(const std::string& label) const;

  bool operator==(const GadgetShape&) const = default;
};

// A gadget encoding: the stabilizer rows of the local encoder over
// in (x) bond (x) out legs, plus any internal completions.
struct GadgetTableau {
  std::string id;
  GadgetShape shape;
  EncodingMode mode = EncodingMode::clifford;
  std::vector<PauliString> rows;
  std::vector<std::string> row_tags;
  std::vector<PauliString> extra_internal;  // also appended to rows

  std::size_t n_legs() const { return shape.n_legs(); }

  // All rows including completions.
  std::vector<PauliString> all_rows() const;
  BinaryMatrix row_matrix() const;  // (x|z) rows, completions included

  // r per the encoding mode, and 2m + n_L - r.
  std::pair<std::size_t, std::size_t> completeness_rank() const;
  bool is_complete() const { return completeness_rank().second == 0; }

  // Pairwise row commutation plus CSS typing when in css mode.
  void validate() const;

  void add_internal(const PauliString& p, const std::string& tag = "internal");

  // Restriction of a row to a direction's legs, as a short PauliString.
  PauliString bond_op(const PauliString& row, std::size_t dir) const;

  // Swap the roles of incoming and outgoing legs.
  GadgetTableau dagger() const;
};

// Sequential composition: a's outgoing legs contract with b's incoming legs.
// Directions of both gadgets are kept, with legs per direction concatenated
// (a's first). Both inputs must be complete; the result is complete.
GadgetTableau gadget_compose(const GadgetTableau& a, const GadgetTableau& b);

// Registry of the worked-example gadgets. Every tableau is validated at
// construction: rows commute, rank is maximal, mode condition holds.
GadgetTableau builtin_gadget(const std::string& id);
std::vector<std::string> builtin_gadget_ids();

// Gadget solution file blocks; bit-exact round trip.
void write_gadget(std::ostream& os, const GadgetTableau& g);
GadgetTableau read_gadget(std::istream& is);

}  // namespace floq
