#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "floq/builtin_codes.hpp"
#include "floq/layout.hpp"

using namespace floq;

TEST_CASE("toric layout: every gadget bonds to its 4 nearest opposite-type gadgets") {
  StabilizerCode c = toric_code(3);
  GadgetGraph g = build_gadget_graph(tanner_graph(c), c);
  REQUIRE(g.num_gadgets == c.n);
  for (std::size_t i = 0; i < g.num_gadgets; ++i) CHECK(g.degree(i) == 4);
  CHECK(g.sync_bipartite(c));
}

TEST_CASE("bb layout: each L gadget bonds to 9 R gadgets at monomial offsets") {
  StabilizerCode c = bb_code(bb_small_spec());
  GadgetGraph g = build_gadget_graph(tanner_graph(c), c);
  for (std::size_t i = 0; i < g.num_gadgets; ++i) CHECK(g.degree(i) == 9);
  // All bonds cross the L/R split.
  for (const auto& b : g.bonds)
    CHECK(c.lattice->sublattice[b.g1] != c.lattice->sublattice[b.g2]);
  CHECK(g.sync_bipartite(c));
}

TEST_CASE("single X check with no Z checks yields no bonds") {
  StabilizerCode c;
  c.n = 4;
  c.checks.push_back(PauliString::from_str("XXXX"));
  c.css_split = std::vector<char>{'X'};
  c.validate();
  GadgetGraph g = build_gadget_graph(tanner_graph(c), c);
  CHECK(g.bonds.empty());
}

TEST_CASE("non-CSS variant refuses nothing and matches the CSS rule on toric") {
  StabilizerCode c = toric_code(2);
  GadgetGraph g1 = build_gadget_graph(tanner_graph(c), c);
  GadgetGraph g2 = build_gadget_graph_noncss(tanner_graph(c), c);
  REQUIRE(g1.bonds.size() == g2.bonds.size());
  for (std::size_t i = 0; i < g1.bonds.size(); ++i) {
    CHECK(g1.bonds[i].g1 == g2.bonds[i].g1);
    CHECK(g1.bonds[i].g2 == g2.bonds[i].g2);
  }
}

TEST_CASE("two identical commuting checks give no bond") {
  StabilizerCode c;
  c.n = 2;
  c.checks.push_back(PauliString::from_str("ZZ"));
  c.checks.push_back(PauliString::from_str("ZZ"));
  c.validate();
  GadgetGraph g = build_gadget_graph_noncss(tanner_graph(c), c);
  CHECK(g.bonds.empty());
}

TEST_CASE("css gate on non-CSS input throws") {
  StabilizerCode c = fermion_subsystem_code(4);
  CHECK_THROWS(build_gadget_graph(tanner_graph(c), c));
}

TEST_CASE("fermion layout: canonical square-lattice bonds, raw is a superset") {
  StabilizerCode c = fermion_subsystem_code(4);
  GadgetGraph raw = build_gadget_graph_noncss(tanner_graph(c), c);
  GadgetGraph g = build_gadget_graph_noncss(tanner_graph(c), c, canonical_filter(c));
  // The G direction never co-hosts two anticommuting checks, so each gadget
  // keeps only three of the four square-lattice bonds.
  std::map<std::string, int> dirs_used;
  for (std::size_t i = 0; i < g.num_gadgets; ++i) CHECK(g.degree(i) == 3);
  for (const auto& b : g.bonds) dirs_used[b.dir]++;
  CHECK(dirs_used.size() == 3);
  CHECK(raw.bonds.size() >= g.bonds.size());
  CHECK(g.sync_bipartite(c));
}

TEST_CASE("haah canonical layout has degree 6; raw algorithm adds diagonals") {
  StabilizerCode c = haah_code(3);
  GadgetGraph raw = build_gadget_graph(tanner_graph(c), c);
  GadgetGraph masked = build_gadget_graph(tanner_graph(c), c, canonical_filter(c));
  for (std::size_t i = 0; i < masked.num_gadgets; ++i)
    CHECK(masked.degree(i) == 6);
  CHECK(raw.bonds.size() >= masked.bonds.size());
  CHECK_FALSE(masked.sync_bipartite(c));
}

TEST_CASE("checkerboard canonical layout: degree 6, bipartite") {
  StabilizerCode c = checkerboard_code(2);
  GadgetGraph g = build_gadget_graph(tanner_graph(c), c, canonical_filter(c));
  for (std::size_t i = 0; i < g.num_gadgets; ++i) CHECK(g.degree(i) == 6);
  CHECK(g.sync_bipartite(c));
}

TEST_CASE("color layout: canonical honeycomb degree 3, bipartite") {
  StabilizerCode c = color_code_torus(3);
  GadgetGraph g = build_gadget_graph(tanner_graph(c), c, canonical_filter(c));
  for (std::size_t i = 0; i < g.num_gadgets; ++i) CHECK(g.degree(i) == 3);
  CHECK(g.sync_bipartite(c));
}

TEST_CASE("steane layout: ring plus spokes") {
  StabilizerCode c = steane_code();
  GadgetGraph g = build_gadget_graph(tanner_graph(c), c, canonical_filter(c));
  CHECK(g.bonds.size() == 9);
  CHECK(g.degree(0) == 3);  // center
  for (std::size_t i = 1; i <= 3; ++i) CHECK(g.degree(i) == 3);
  for (std::size_t i = 4; i <= 6; ++i) CHECK(g.degree(i) == 2);
}

TEST_CASE("leg assignment: uniform, per-direction, and web validation") {
  StabilizerCode c = toric_code(2);
  GadgetGraph g = build_gadget_graph(tanner_graph(c), c);
  assign_leg_counts(g, c, {}, 1);
  for (std::size_t i = 0; i < g.num_gadgets; ++i) CHECK(g.total_legs(i) == 4);
  // Zeroing every direction kills the webs.
  CHECK_THROWS(assign_leg_counts(g, c, {{"1", 0}, {"2", 0}, {"3", 0}, {"4", 0}}, 0));
}

TEST_CASE("haah leg assignment: 2 per direction -> n_L = 12") {
  StabilizerCode c = haah_code(2);
  GadgetGraph g = build_gadget_graph(tanner_graph(c), c, canonical_filter(c));
  assign_leg_counts(g, c, {}, 2);
  for (std::size_t i = 0; i < g.num_gadgets; ++i) CHECK(g.total_legs(i) == 12);
}

TEST_CASE("layout determinism and dump format") {
  StabilizerCode c = toric_code(2);
  GadgetGraph g1 = build_gadget_graph(tanner_graph(c), c);
  GadgetGraph g2 = build_gadget_graph(tanner_graph(c), c);
  std::ostringstream d1, d2;
  write_gadget_graph(d1, g1, c);
  write_gadget_graph(d2, g2, c);
  CHECK(d1.str() == d2.str());
  CHECK(d1.str().find("bond") != std::string::npos);
}
