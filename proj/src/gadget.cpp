#include "floq/gadget.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace floq {

long GadgetShape::dir_of_col(std::size_t col) const {
  if (col < m || col >= m + n_legs()) return -1;
  std::size_t c = m;
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    if (col < c + dirs[d].legs) return long(d);
    c += dirs[d].legs;
  }
  return -1;
}

long GadgetShape::dir_index(const std::string& label) const {
  for (std::size_t d = 0; d < dirs.size(); ++d)
    if (dirs[d].label == label) return long(d);
  return -1;
}

std::vector<PauliString> GadgetTableau::all_rows() const { return rows; }

BinaryMatrix GadgetTableau::row_matrix() const {
  BinaryMatrix m(0, 2 * shape.total());
  for (const auto& r : rows) m.append_row(pauli_to_row(r));
  return m;
}

std::pair<std::size_t, std::size_t> GadgetTableau::completeness_rank() const {
  std::size_t r = 0;
  if (mode == EncodingMode::css) {
    BinaryMatrix hx(0, shape.total()), hz(0, shape.total());
    for (const auto& row : rows) {
      if (row.is_identity()) continue;
      if (row.z.none())
        hx.append_row(row.x);
      else if (row.x.none())
        hz.append_row(row.z);
      else
        throw std::logic_error("css gadget has a mixed row");
    }
    r = rank(hx) + rank(hz);
  } else {
    r = rank(row_matrix());
  }
  std::size_t full = shape.total();
  return {r, full - r};
}

void GadgetTableau::validate() const {
  for (const auto& row : rows)
    if (row.num_qubits() != shape.total())
      throw std::invalid_argument(id + ": row width mismatch");
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (symplectic_product(rows[i], rows[j]))
        throw std::invalid_argument(id + ": rows " + std::to_string(i) + "," +
                                    std::to_string(j) + " anticommute");
  if (mode == EncodingMode::css)
    for (const auto& row : rows)
      if (!row.x.none() && !row.z.none())
        throw std::invalid_argument(id + ": css gadget has a mixed row");
}

void GadgetTableau::add_internal(const PauliString& p, const std::string& tag) {
  for (std::size_t i = 0; i < shape.m; ++i)
    if (p.at(shape.in_col(i)) || p.at(shape.out_col(i)))
      throw std::invalid_argument("internal stabilizer touches in/out legs");
  rows.push_back(p);
  row_tags.push_back(tag);
  extra_internal.push_back(p);
}

PauliString GadgetTableau::bond_op(const PauliString& row, std::size_t dir) const {
  PauliString out(shape.dirs[dir].legs);
  for (std::size_t l = 0; l < shape.dirs[dir].legs; ++l)
    out.set(l, row.at(shape.leg_col(dir, l)));
  return out;
}

GadgetTableau GadgetTableau::dagger() const {
  GadgetTableau d = *this;
  d.id = id + "_dagger";
  for (auto& row : d.rows) {
    for (std::size_t i = 0; i < shape.m; ++i) {
      int a = row.at(shape.in_col(i)), b = row.at(shape.out_col(i));
      row.set(shape.in_col(i), b);
      row.set(shape.out_col(i), a);
    }
  }
  return d;
}

GadgetTableau gadget_compose(const GadgetTableau& a, const GadgetTableau& b) {
  if (a.shape.m != b.shape.m)
    throw std::invalid_argument("gadget_compose: m mismatch");
  if (a.shape.dirs.size() != b.shape.dirs.size())
    throw std::invalid_argument("gadget_compose: direction sets differ");
  for (std::size_t d = 0; d < a.shape.dirs.size(); ++d)
    if (a.shape.dirs[d].label != b.shape.dirs[d].label)
      throw std::invalid_argument("gadget_compose: direction labels differ");

  const std::size_t m = a.shape.m;
  GadgetShape shape;
  shape.m = m;
  for (std::size_t d = 0; d < a.shape.dirs.size(); ++d)
    shape.dirs.push_back(
        {a.shape.dirs[d].label, a.shape.dirs[d].legs + b.shape.dirs[d].legs});

  // Joint register: [composed columns][wireA m][wireB m].
  std::size_t base = shape.total();
  std::size_t joint = base + 2 * m;
  auto embed_a = [&](const PauliString& row) {
    PauliString out(joint);
    for (std::size_t i = 0; i < m; ++i) {
      out.set(shape.in_col(i), row.at(a.shape.in_col(i)));
      out.set(base + i, row.at(a.shape.out_col(i)));  // wireA
    }
    for (std::size_t d = 0; d < a.shape.dirs.size(); ++d)
      for (std::size_t l = 0; l < a.shape.dirs[d].legs; ++l)
        out.set(shape.leg_col(d, l), row.at(a.shape.leg_col(d, l)));
    return out;
  };
  auto embed_b = [&](const PauliString& row) {
    PauliString out(joint);
    for (std::size_t i = 0; i < m; ++i) {
      out.set(base + m + i, row.at(b.shape.in_col(i)));  // wireB
      out.set(shape.out_col(i), row.at(b.shape.out_col(i)));
    }
    for (std::size_t d = 0; d < b.shape.dirs.size(); ++d)
      for (std::size_t l = 0; l < b.shape.dirs[d].legs; ++l)
        out.set(shape.leg_col(d, a.shape.dirs[d].legs + l),
                row.at(b.shape.leg_col(d, l)));
    return out;
  };

  std::vector<PauliString> gens;
  for (const auto& r : a.rows) gens.push_back(embed_a(r));
  for (const auto& r : b.rows) gens.push_back(embed_b(r));
  for (std::size_t i = 0; i < m; ++i) {
    PauliString cup_x(joint), cup_z(joint);
    cup_x.x.set(base + i, true);
    cup_x.x.set(base + m + i, true);
    cup_z.z.set(base + i, true);
    cup_z.z.set(base + m + i, true);
    gens.push_back(cup_x);
    gens.push_back(cup_z);
  }

  // Subgroup acting trivially on the wires, projected onto the base columns.
  BinaryMatrix wire_part(0, 4 * m);
  for (const auto& g : gens) {
    BitVec v(4 * m);
    for (std::size_t i = 0; i < 2 * m; ++i) {
      v.set(i, g.x.get(base + i));
      v.set(2 * m + i, g.z.get(base + i));
    }
    wire_part.append_row(v);
  }
  BinaryMatrix combos = kernel(wire_part.transposed());
  GadgetTableau out;
  out.id = a.id + "*" + b.id;
  out.shape = shape;
  out.mode = (a.mode == EncodingMode::css && b.mode == EncodingMode::css)
                 ? EncodingMode::css
                 : EncodingMode::clifford;
  RowSpace seen(2 * base);
  for (std::size_t w = 0; w < combos.rows(); ++w) {
    PauliString acc(joint);
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (combos.get(w, i)) acc.mul(gens[i]);
    PauliString proj(base);
    for (std::size_t c = 0; c < base; ++c) proj.set(c, acc.at(c));
    if (seen.add(pauli_to_row(proj))) {
      out.rows.push_back(proj);
      out.row_tags.push_back("composed");
    }
  }
  if (out.mode == EncodingMode::css)
    for (const auto& r : out.rows)
      if (!r.x.none() && !r.z.none()) {
        out.mode = EncodingMode::clifford;
        break;
      }
  out.validate();
  return out;
}

namespace {

struct GadgetSpec {
  const char* id;
  std::size_t m;
  std::vector<GadgetShape::Dir> dirs;
  EncodingMode mode;
  std::vector<std::pair<const char*, const char*>> rows;  // (tag, pauli)
  std::vector<const char*> extras;
};

GadgetTableau make_gadget(const GadgetSpec& spec) {
  GadgetTableau g;
  g.id = spec.id;
  g.shape.m = spec.m;
  g.shape.dirs = spec.dirs;
  g.mode = spec.mode;
  for (auto [tag, pauli] : spec.rows) {
    g.rows.push_back(PauliString::from_str(pauli));
    g.row_tags.emplace_back(tag);
  }
  for (const char* pauli : spec.extras)
    g.add_internal(PauliString::from_str(pauli));
  g.validate();
  auto [r, deficiency] = g.completeness_rank();
  if (deficiency != 0)
    throw std::logic_error(g.id + ": builtin gadget incomplete, r=" +
                           std::to_string(r));
  return g;
}

std::vector<GadgetShape::Dir> uniform_dirs(std::initializer_list<const char*> labels,
                                           std::size_t legs) {
  std::vector<GadgetShape::Dir> out;
  for (const char* l : labels) out.push_back({l, legs});
  return out;
}

// Columns for the Haah gadget: [in q1,q2 | dirs 1..6 x 2 legs | out q1,q2].
GadgetTableau make_haah_gadget() {
  GadgetTableau g;
  g.id = "haah";
  g.shape.m = 2;
  g.shape.dirs = uniform_dirs({"1", "2", "3", "4", "5", "6"}, 2);
  g.mode = EncodingMode::css;
  // Stencil rows: cube corner label on the in/out legs plus per-direction
  // bond operators; solution values from the two-leg CSS assignment.
  // X symbols: A=00 B=10 C=11 D=01; barred: A=00 B=11 C=01 D=10.
  // Z symbols: A=01 B=10 C=11 D=00; barred: A=10 B=11 C=01 D=00.
  struct Sym { int b0, b1; };
  std::map<std::string, Sym> val = {
      {"AX", {0, 0}}, {"BX", {1, 0}}, {"CX", {1, 1}}, {"DX", {0, 1}},
      {"aX", {0, 0}}, {"bX", {1, 1}}, {"cX", {0, 1}}, {"dX", {1, 0}},
      {"AZ", {0, 1}}, {"BZ", {1, 0}}, {"CZ", {1, 1}}, {"DZ", {0, 0}},
      {"aZ", {1, 0}}, {"bZ", {1, 1}}, {"cZ", {0, 1}}, {"dZ", {0, 0}}};
  struct RowSpec {
    char type;        // 'X' or 'Z'
    bool outgoing;
    int q0, q1;       // corner label bits
    std::vector<std::pair<int, const char*>> slots;  // (direction 1..6, symbol)
  };
  const std::vector<RowSpec> table = {
      {'X', false, 0, 0, {{1, "AX"}, {4, "AX"}, {6, "AX"}}},
      {'X', false, 1, 0, {{1, "BX"}, {3, "AX"}, {6, "CX"}}},
      {'X', false, 1, 0, {{2, "AX"}, {4, "CX"}, {6, "BX"}}},
      {'X', false, 1, 0, {{1, "CX"}, {4, "BX"}, {5, "AX"}}},
      {'X', false, 0, 1, {{1, "DX"}, {3, "BX"}, {5, "CX"}}},
      {'X', false, 0, 1, {{2, "CX"}, {4, "DX"}, {5, "BX"}}},
      {'X', false, 0, 1, {{2, "BX"}, {3, "CX"}, {6, "DX"}}},
      {'X', false, 1, 1, {{2, "DX"}, {3, "DX"}, {5, "DX"}}},
      {'X', true, 0, 0, {{1, "aX"}, {4, "aX"}, {6, "aX"}}},
      {'X', true, 1, 0, {{1, "bX"}, {3, "aX"}, {6, "cX"}}},
      {'X', true, 1, 0, {{2, "aX"}, {4, "cX"}, {6, "bX"}}},
      {'X', true, 1, 0, {{1, "cX"}, {4, "bX"}, {5, "aX"}}},
      {'X', true, 0, 1, {{1, "dX"}, {3, "bX"}, {5, "cX"}}},
      {'X', true, 0, 1, {{2, "cX"}, {4, "dX"}, {5, "bX"}}},
      {'X', true, 0, 1, {{2, "bX"}, {3, "cX"}, {6, "dX"}}},
      {'X', true, 1, 1, {{2, "dX"}, {3, "dX"}, {5, "dX"}}},
      {'Z', false, 1, 1, {{1, "AZ"}, {4, "AZ"}, {6, "AZ"}}},
      {'Z', false, 1, 0, {{1, "BZ"}, {3, "AZ"}, {6, "CZ"}}},
      {'Z', false, 1, 0, {{2, "AZ"}, {4, "CZ"}, {6, "BZ"}}},
      {'Z', false, 1, 0, {{1, "CZ"}, {4, "BZ"}, {5, "AZ"}}},
      {'Z', false, 0, 1, {{1, "DZ"}, {3, "BZ"}, {5, "CZ"}}},
      {'Z', false, 0, 1, {{2, "CZ"}, {4, "DZ"}, {5, "BZ"}}},
      {'Z', false, 0, 1, {{2, "BZ"}, {3, "CZ"}, {6, "DZ"}}},
      {'Z', false, 0, 0, {{2, "DZ"}, {3, "DZ"}, {5, "DZ"}}},
      {'Z', true, 1, 1, {{1, "aZ"}, {4, "aZ"}, {6, "aZ"}}},
      {'Z', true, 1, 0, {{1, "bZ"}, {3, "aZ"}, {6, "cZ"}}},
      {'Z', true, 1, 0, {{2, "aZ"}, {4, "cZ"}, {6, "bZ"}}},
      {'Z', true, 1, 0, {{1, "cZ"}, {4, "bZ"}, {5, "aZ"}}},
      {'Z', true, 0, 1, {{1, "dZ"}, {3, "bZ"}, {5, "cZ"}}},
      {'Z', true, 0, 1, {{2, "cZ"}, {4, "dZ"}, {5, "bZ"}}},
      {'Z', true, 0, 1, {{2, "bZ"}, {3, "cZ"}, {6, "dZ"}}},
      {'Z', true, 0, 0, {{2, "dZ"}, {3, "dZ"}, {5, "dZ"}}},
  };
  for (const auto& rs : table) {
    PauliString row(g.shape.total());
    auto put = [&](std::size_t col, char t) {
      if (t == 'X') row.x.set(col, true);
      else row.z.set(col, true);
    };
    std::size_t base = rs.outgoing ? g.shape.out_col(0) : g.shape.in_col(0);
    if (rs.q0) put(base + 0, rs.type);
    if (rs.q1) put(base + 1, rs.type);
    for (auto [dir, sym] : rs.slots) {
      Sym v = val.at(sym);
      if (v.b0) put(g.shape.leg_col(std::size_t(dir - 1), 0), rs.type);
      if (v.b1) put(g.shape.leg_col(std::size_t(dir - 1), 1), rs.type);
    }
    if (row.is_identity()) continue;  // vacuous corner rows (A_X = 00 etc.)
    g.rows.push_back(row);
    g.row_tags.push_back(std::string(rs.outgoing ? "out" : "in") + rs.type);
  }
  g.validate();
  auto [r, deficiency] = g.completeness_rank();
  if (deficiency != 0)
    throw std::logic_error("haah gadget incomplete, r=" + std::to_string(r));
  return g;
}

// Column layout of the BB gadget: diagonal directions carry two legs.
GadgetTableau make_bb_gadget() {
  GadgetTableau g;
  g.id = "bb";
  g.shape.m = 1;
  for (int alpha = 1; alpha <= 3; ++alpha)
    for (int beta = 1; beta <= 3; ++beta)
      g.shape.dirs.push_back({"(" + std::to_string(alpha) + "," + std::to_string(beta) + ")",
                              alpha == beta ? std::size_t(2) : std::size_t(1)});
  g.mode = EncodingMode::clifford;
  auto dir = [&](int alpha, int beta) { return std::size_t((alpha - 1) * 3 + (beta - 1)); };
  auto put = [&](PauliString& row, std::size_t col, char t) {
    if (t == 'X' || t == 'Y') row.x.set(col, true);
    if (t == 'Z' || t == 'Y') row.z.set(col, true);
  };
  // Incoming X (rows of A^X): diagonal XI, off-diagonal X.
  for (int alpha = 1; alpha <= 3; ++alpha) {
    PauliString row(g.shape.total());
    put(row, g.shape.in_col(0), 'X');
    for (int beta = 1; beta <= 3; ++beta)
      put(row, g.shape.leg_col(dir(alpha, beta), 0), 'X');
    g.rows.push_back(row);
    g.row_tags.push_back("inX" + std::to_string(alpha));
  }
  // Incoming Z (columns of A^Z): diagonal ZI, off-diagonal Z.
  for (int beta = 1; beta <= 3; ++beta) {
    PauliString row(g.shape.total());
    put(row, g.shape.in_col(0), 'Z');
    for (int alpha = 1; alpha <= 3; ++alpha)
      put(row, g.shape.leg_col(dir(alpha, beta), 0), 'Z');
    g.rows.push_back(row);
    g.row_tags.push_back("inZ" + std::to_string(beta));
  }
  // Outgoing X (rows of \bar A^X): diagonal IZ, off-diagonal Z.
  for (int alpha = 1; alpha <= 3; ++alpha) {
    PauliString row(g.shape.total());
    put(row, g.shape.out_col(0), 'X');
    for (int beta = 1; beta <= 3; ++beta)
      put(row, g.shape.leg_col(dir(alpha, beta), alpha == beta ? 1 : 0), 'Z');
    g.rows.push_back(row);
    g.row_tags.push_back("outX" + std::to_string(alpha));
  }
  // Outgoing Z (columns of \bar A^Z): diagonal IX, off-diagonal X.
  for (int beta = 1; beta <= 3; ++beta) {
    PauliString row(g.shape.total());
    put(row, g.shape.out_col(0), 'Z');
    for (int alpha = 1; alpha <= 3; ++alpha)
      put(row, g.shape.leg_col(dir(alpha, beta), alpha == beta ? 1 : 0), 'X');
    g.rows.push_back(row);
    g.row_tags.push_back("outZ" + std::to_string(beta));
  }
  // The two additional stabilizers.
  {
    PauliString ex(g.shape.total()), ez(g.shape.total());
    for (std::size_t l = 0; l < 2; ++l) {
      put(ex, g.shape.leg_col(dir(1, 1), l), 'X');
      put(ex, g.shape.leg_col(dir(2, 2), l), 'X');
      put(ez, g.shape.leg_col(dir(1, 1), l), 'Z');
      put(ez, g.shape.leg_col(dir(2, 2), l), 'Z');
    }
    put(ex, g.shape.leg_col(dir(1, 2), 0), 'X');
    put(ex, g.shape.leg_col(dir(2, 1), 0), 'X');
    put(ez, g.shape.leg_col(dir(1, 2), 0), 'Z');
    put(ez, g.shape.leg_col(dir(2, 1), 0), 'Z');
    g.add_internal(ex, "extraX");
    g.add_internal(ez, "extraZ");
  }
  g.validate();
  auto [r, deficiency] = g.completeness_rank();
  if (deficiency != 0)
    throw std::logic_error("bb gadget incomplete, r=" + std::to_string(r));
  return g;
}

const std::map<std::string, GadgetTableau>& registry() {
  static const std::map<std::string, GadgetTableau> reg = [] {
    std::map<std::string, GadgetTableau> m;
    auto add = [&](GadgetTableau g) { m.emplace(g.id, std::move(g)); };

    // Toric Clifford gadget, P=X Q=Y. Columns [in|d1 d2 d3 d4|out].
    add(make_gadget({"hh_toric", 1, uniform_dirs({"1", "2", "3", "4"}, 1),
                     EncodingMode::clifford,
                     {{"inX", "XXXIII"},
                      {"inX", "XIIXXI"},
                      {"inZ", "ZIYYII"},
                      {"inZ", "ZYIIYI"},
                      {"outX", "IIIYYX"},
                      {"outX", "IYYIIX"},
                      {"outZ", "IIXXIZ"},
                      {"outZ", "IXIIXZ"}},
                     {}}));

    // CSS toric gadget with the logical-preserving completion.
    add(make_gadget({"css_toric", 1, uniform_dirs({"1", "2", "3", "4"}, 2),
                     EncodingMode::css,
                     {{"inX", "XXIXIIIIII"},
                      {"inX", "XIIIIXIXII"},
                      {"inZ", "ZIIZIZIIII"},
                      {"inZ", "ZZIIIIIZII"},
                      {"outX", "IIXIXIIIIX"},
                      {"outX", "IIIIIIXIXX"},
                      {"outZ", "IIIIZIZIIZ"},
                      {"outZ", "IIZIIIIIZZ"}},
                     {"IIIXXXXIII", "IZZZZIIIII"}}));

    // Tree-shaped gadget equivalent to the single-ancilla extraction circuit.
    add(make_gadget({"sasec_tree", 1, uniform_dirs({"1", "2", "3", "4"}, 2),
                     EncodingMode::css,
                     {{"inX", "XXIXIIIIII"},
                      {"inX", "XIIIIXIXII"},
                      {"inZ", "ZIIZZZZIII"},
                      {"inZ", "ZZZIIIIZZI"},
                      {"outX", "IXXXXIIIIX"},
                      {"outX", "IIIIIXXXXX"},
                      {"outZ", "IIIIZIZIIZ"},
                      {"outZ", "IIZIIIIIZZ"}},
                     {"IIIIXIXIII", "IZIZIIIIII"}}));

    // CSS color-code gadget. Columns [in|d1 d2 d3 x2|out].
    add(make_gadget({"color_css", 1, uniform_dirs({"1", "2", "3"}, 2),
                     EncodingMode::css,
                     {{"inX", "XXXXIIII"},
                      {"inX", "XIIXXXII"},
                      {"inX", "XXIIIXXI"},
                      {"inZ", "ZZIIZIII"},
                      {"inZ", "ZIIZIIZI"},
                      {"inZ", "ZIZIIZII"},
                      {"outX", "IXIIXIIX"},
                      {"outX", "IIIXIIXX"},
                      {"outX", "IIXIIXIX"},
                      {"outZ", "IIZZZIIZ"},
                      {"outZ", "IIIIZZZZ"},
                      {"outZ", "IZZIIIZZ"}},
                     {}}));

    // Alternate color gadget (second half of the 7-round schedule).
    add(make_gadget({"color_css_alt", 1, uniform_dirs({"1", "2", "3"}, 2),
                     EncodingMode::css,
                     {{"inX", "XXIIXIII"},
                      {"inX", "XIIXIIXI"},
                      {"inX", "XIXIIXII"},
                      {"inZ", "ZZZZIIII"},
                      {"inZ", "ZIIZZZII"},
                      {"inZ", "ZZIIIZZI"},
                      {"outX", "IIXXXIIX"},
                      {"outX", "IIIIXXXX"},
                      {"outX", "IXXIIIXX"},
                      {"outZ", "IZIIZIIZ"},
                      {"outZ", "IIIZIIZZ"},
                      {"outZ", "IIZIIZIZ"}},
                     {}}));

    // XYZ ruby gadget (Clifford).
    add(make_gadget({"xyz_ruby", 1, uniform_dirs({"1", "2", "3"}, 2),
                     EncodingMode::clifford,
                     {{"inX", "XXXXIIII"},
                      {"inX", "XIIXXXII"},
                      {"inX", "XXIIIXXI"},
                      {"inZ", "ZYIIYIII"},
                      {"inZ", "ZIIYIIYI"},
                      {"inZ", "ZIYIIYII"},
                      {"outX", "IXYYZIIX"},
                      {"outX", "IIIXYYZX"},
                      {"outX", "IYZIIXYX"},
                      {"outZ", "IXIIXIIZ"},
                      {"outZ", "IIIXIIXZ"},
                      {"outZ", "IIXIIXIZ"}},
                     {}}));

    // Steane corner gadgets: columns [in|d1 d2 x2|out].
    add(make_gadget({"steane_corner_trivial", 1, uniform_dirs({"1", "2"}, 2),
                     EncodingMode::css,
                     {{"inX", "XXXXII"},
                      {"inZ", "ZZIIZI"},
                      {"outX", "IXIIXX"},
                      {"outZ", "IIZZZZ"}},
                     {"IXXIXI", "IZIZZI"}}));
    add(make_gadget({"steane_corner_hadamard", 1, uniform_dirs({"1", "2"}, 2),
                     EncodingMode::clifford,
                     {{"inX", "XXXXII"},
                      {"inZ", "ZZIIZI"},
                      {"outX", "IXIIXX"},
                      {"outZ", "IIZZZZ"}},
                     {"IYZXYI", "IIYYII"}}));
    add(make_gadget({"steane_corner_sgate", 1, uniform_dirs({"1", "2"}, 2),
                     EncodingMode::clifford,
                     {{"inX", "XXXXII"},
                      {"inZ", "ZZIIZI"},
                      {"outX", "IXIIXX"},
                      {"outZ", "IIZZZZ"}},
                     {"IYYIYI", "IZIZZI"}}));

    // Checkerboard gadget: columns [in|d1..d6 x2|out].
    add([&] {
      GadgetTableau g;
      g.id = "checkerboard";
      g.shape.m = 1;
      g.shape.dirs = uniform_dirs({"1", "2", "3", "4", "5", "6"}, 2);
      g.mode = EncodingMode::css;
      const std::vector<std::array<int, 3>> cubes = {
          {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
      for (bool outgoing : {false, true})
        for (char type : {'X', 'Z'})
          for (const auto& dirs3 : cubes) {
            PauliString row(g.shape.total());
            std::size_t io = outgoing ? g.shape.out_col(0) : g.shape.in_col(0);
            std::size_t leg = outgoing ? 1 : 0;  // A=10 in, 01 out
            if (type == 'X') row.x.set(io, true); else row.z.set(io, true);
            for (int d : dirs3) {
              std::size_t col = g.shape.leg_col(std::size_t(d - 1), leg);
              if (type == 'X') row.x.set(col, true); else row.z.set(col, true);
            }
            g.rows.push_back(row);
            g.row_tags.push_back(std::string(outgoing ? "out" : "in") + type);
          }
      PauliString ex(g.shape.total()), ez(g.shape.total());
      for (int d : {2, 4, 6})
        for (std::size_t l = 0; l < 2; ++l) {
          ex.x.set(g.shape.leg_col(std::size_t(d - 1), l), true);
          ez.z.set(g.shape.leg_col(std::size_t(d - 1), l), true);
        }
      g.add_internal(ex, "extraX");
      g.add_internal(ez, "extraZ");
      g.validate();
      if (g.completeness_rank().second != 0)
        throw std::logic_error("checkerboard gadget incomplete");
      return g;
    }());

    // Fermionic subsystem gadget: columns [in|d1 d3 d4|out], one leg each.
    add(make_gadget({"fermion", 1,
                     {{"1", 1}, {"3", 1}, {"4", 1}},
                     EncodingMode::clifford,
                     {{"inX", "XIXXI"},
                      {"inY", "YXYII"},
                      {"inZ", "ZYIYI"},
                      {"outX", "IIYYX"},
                      {"outY", "IYXIY"},
                      {"outZ", "IXIXZ"}},
                     {}}));

    add(make_haah_gadget());
    add(make_bb_gadget());
    return m;
  }();
  return reg;
}

}  // namespace

GadgetTableau builtin_gadget(const std::string& id) {
  if (id == "hh2")
    return gadget_compose(builtin_gadget("hh_toric"), builtin_gadget("hh_toric"));
  auto it = registry().find(id);
  if (it == registry().end())
    throw std::invalid_argument("unknown builtin gadget: " + id);
  return it->second;
}

std::vector<std::string> builtin_gadget_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, g] : registry()) ids.push_back(id);
  ids.push_back("hh2");
  return ids;
}

void write_gadget(std::ostream& os, const GadgetTableau& g) {
  os << "GADGET " << g.id << " m=" << g.shape.m << " nL=" << g.n_legs()
     << " mode=" << (g.mode == EncodingMode::css ? "css" : "clifford") << " dirs=";
  for (std::size_t d = 0; d < g.shape.dirs.size(); ++d) {
    if (d) os << ';';
    os << g.shape.dirs[d].label << ':' << g.shape.dirs[d].legs;
  }
  os << '\n';
  std::size_t n_rows = g.rows.size() - g.extra_internal.size();
  for (std::size_t i = 0; i < n_rows; ++i) {
    const PauliString& row = g.rows[i];
    os << "in=";
    for (std::size_t q = 0; q < g.shape.m; ++q)
      os << "IXZY"[row.at(g.shape.in_col(q))];
    os << " bonds=";
    for (std::size_t d = 0; d < g.shape.dirs.size(); ++d) {
      if (d) os << ';';
      os << g.shape.dirs[d].label << ':' << g.bond_op(row, d).str();
    }
    os << " out=";
    for (std::size_t q = 0; q < g.shape.m; ++q)
      os << "IXZY"[row.at(g.shape.out_col(q))];
    os << '\n';
  }
  for (const auto& p : g.extra_internal) {
    os << "INTERNAL ";
    for (std::size_t d = 0; d < g.shape.dirs.size(); ++d) {
      if (d) os << ';';
      os << g.shape.dirs[d].label << ':' << g.bond_op(p, d).str();
    }
    os << '\n';
  }
}

GadgetTableau read_gadget(std::istream& is) {
  GadgetTableau g;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty gadget file");
  {
    std::istringstream hs(line);
    std::string word;
    hs >> word;
    if (word != "GADGET") throw std::runtime_error("bad gadget header");
    hs >> g.id;
    while (hs >> word) {
      auto eq = word.find('=');
      std::string key = word.substr(0, eq), value = word.substr(eq + 1);
      if (key == "m") g.shape.m = std::stoul(value);
      if (key == "mode")
        g.mode = value == "css" ? EncodingMode::css : EncodingMode::clifford;
      if (key == "dirs") {
        std::istringstream ds(value);
        std::string item;
        while (std::getline(ds, item, ';')) {
          auto colon = item.rfind(':');
          g.shape.dirs.push_back(
              {item.substr(0, colon), std::stoul(item.substr(colon + 1))});
        }
      }
    }
  }
  auto parse_bonds = [&](PauliString& row, const std::string& text) {
    std::istringstream bs(text);
    std::string item;
    while (std::getline(bs, item, ';')) {
      auto colon = item.rfind(':');
      long d = g.shape.dir_index(item.substr(0, colon));
      if (d < 0) throw std::runtime_error("unknown direction in gadget file");
      PauliString op = PauliString::from_str(item.substr(colon + 1));
      for (std::size_t l = 0; l < op.num_qubits(); ++l)
        row.set(g.shape.leg_col(std::size_t(d), l), op.at(l));
    }
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string first;
    ls >> first;
    if (first == "INTERNAL") {
      std::string bonds;
      ls >> bonds;
      PauliString row(g.shape.total());
      parse_bonds(row, bonds);
      g.add_internal(row);
      continue;
    }
    PauliString row(g.shape.total());
    std::string inp = first.substr(3), bonds, outp;
    ls >> bonds >> outp;
    bonds = bonds.substr(6);
    outp = outp.substr(4);
    PauliString pin = PauliString::from_str(inp), pout = PauliString::from_str(outp);
    for (std::size_t q = 0; q < g.shape.m; ++q) {
      row.set(g.shape.in_col(q), pin.at(q));
      row.set(g.shape.out_col(q), pout.at(q));
    }
    parse_bonds(row, bonds);
    g.rows.push_back(row);
    g.row_tags.push_back("row");
  }
  g.validate();
  return g;
}

}  // namespace floq
