#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "floq/builtin_codes.hpp"

using namespace floq;

TEST_CASE("steane parameters") {
  StabilizerCode c = steane_code();
  CHECK(c.n == 7);
  CHECK(c.k() == 1);
  LogicalBasis lb = logical_basis(c);
  REQUIRE(lb.k() == 1);
  auto d = code_distance(c, 3);
  CHECK(d.exact);
  CHECK(d.value == 3);
}

TEST_CASE("toric torus parameters and tanner degrees") {
  for (std::size_t L : {2, 3}) {
    StabilizerCode c = toric_code(L);
    CHECK(c.n == 2 * L * L);
    CHECK(c.k() == 2);
    for (const auto& chk : c.checks) CHECK(chk.weight() == 4);
    TannerGraph g = tanner_graph(c);
    for (std::size_t q = 0; q < c.n; ++q) {
      int nx = 0, nz = 0;
      for (std::size_t ci : g.checks_of_qubit[q])
        (g.check_type[ci] == 'X' ? nx : nz)++;
      CHECK(nx == 2);
      CHECK(nz == 2);
    }
    auto d = code_distance(c, L);
    CHECK(d.exact);
    CHECK(d.value == L);
  }
}

TEST_CASE("toric logical basis is two pairs of straight lines") {
  StabilizerCode c = toric_code(3);
  LogicalBasis lb = logical_basis(c);
  REQUIRE(lb.k() == 2);
  for (auto& [lx, lz] : lb.pairs) {
    CHECK(symplectic_product(lx, lz) == 1);
    for (const auto& chk : c.checks) {
      CHECK(symplectic_product(lx, chk) == 0);
      CHECK(symplectic_product(lz, chk) == 0);
    }
  }
  CHECK(symplectic_product(lb.pairs[0].first, lb.pairs[1].second) == 0);
}

TEST_CASE("surface code d=3 is [[9,1,3]]") {
  StabilizerCode c = surface_code(3);
  CHECK(c.n == 9);
  CHECK(c.checks.size() == 8);
  CHECK(c.k() == 1);
  auto d = code_distance(c, 3);
  CHECK(d.exact);
  CHECK(d.value == 3);
}

TEST_CASE("cylinder has one logical qubit") {
  StabilizerCode c = toric_cylinder(4, 3);
  CHECK(c.n == 12);
  CHECK(c.k() == 1);
}

TEST_CASE("trivial one-qubit code has the bare logical pair") {
  StabilizerCode c;
  c.n = 1;
  c.validate();
  LogicalBasis lb = logical_basis(c);
  REQUIRE(lb.k() == 1);
  bool has_x = lb.pairs[0].first == PauliString::from_str("X") ||
               lb.pairs[0].second == PauliString::from_str("X");
  bool has_z = lb.pairs[0].first == PauliString::from_str("Z") ||
               lb.pairs[0].second == PauliString::from_str("Z");
  CHECK(has_x);
  CHECK(has_z);
}

TEST_CASE("two-qubit repetition code has distance 1") {
  StabilizerCode c;
  c.n = 2;
  c.checks.push_back(PauliString::from_str("ZZ"));
  c.css_split = std::vector<char>{'Z'};
  c.validate();
  auto d = code_distance(c, 2);
  CHECK(d.exact);
  CHECK(d.value == 1);
}

TEST_CASE("color code torus L=3 is [[18,4,?]] with weight-6 checks") {
  StabilizerCode c = color_code_torus(3);
  CHECK(c.n == 18);
  CHECK(c.k() == 4);
  for (const auto& chk : c.checks) CHECK(chk.weight() == 6);
}

TEST_CASE("bb small spec is [[72,12,6]]-family and gross is [[144,12,12]]-family") {
  StabilizerCode small = bb_code(bb_small_spec());
  CHECK(small.n == 72);
  CHECK(small.k() == 12);
  StabilizerCode gross = bb_code(bb_gross_spec());
  CHECK(gross.n == 144);
  CHECK(gross.k() == 12);
  TannerGraph g = tanner_graph(gross);
  for (std::size_t q = 0; q < gross.n; ++q) {
    int nx = 0, nz = 0;
    for (std::size_t ci : g.checks_of_qubit[q])
      (g.check_type[ci] == 'X' ? nx : nz)++;
    CHECK(nx == 3);
    CHECK(nz == 3);
  }
}

TEST_CASE("bb translation invariance: shifted checks stay in the row space") {
  BBCodeSpec spec = bb_small_spec();
  StabilizerCode c = bb_code(spec);
  RowSpace rs(2 * c.n);
  for (const auto& chk : c.checks) rs.add(pauli_to_row(chk));
  // Shifting check (0,0) by x and by y.
  // X checks are indexed first, row-major by (q, r).
  PauliString by_x = c.checks[spec.m];  // (q=1, r=0)
  PauliString by_y = c.checks[1];       // (q=0, r=1)
  CHECK(rs.contains(pauli_to_row(by_x)));
  CHECK(rs.contains(pauli_to_row(by_y)));
}

TEST_CASE("haah code parameters") {
  StabilizerCode c = haah_code(2);
  CHECK(c.n == 16);
  CHECK(c.qubits_per_site() == 2);
  // Commutation is enforced by validate() inside the builder already.
  CHECK(c.k() >= 1);
}

TEST_CASE("checkerboard L=2 collapses to two global checks") {
  StabilizerCode c = checkerboard_code(2);
  CHECK(c.n == 8);
  CHECK(c.checks.size() == 2);
  CHECK(c.k() == 6);
}

TEST_CASE("fermion subsystem stabilizer group is non-CSS and commuting") {
  StabilizerCode c = fermion_subsystem_code(4);
  CHECK(c.n == 16);
  CHECK_FALSE(c.css_split.has_value());
  for (const auto& chk : c.checks) CHECK(chk.weight() == 6);
}

TEST_CASE("k-consistency: logical basis length matches n - rank for builtins") {
  for (const char* fam : {"toric", "surface", "color_hex", "steane", "bb",
                          "checkerboard"}) {
    StabilizerCode c = builtin_code(fam, 0);
    CHECK(logical_basis(c).k() == c.k());
  }
}

TEST_CASE("css split soundness: Hx Hz^T = 0 for CSS builtins") {
  for (const char* fam : {"toric", "surface", "color_hex", "steane", "bb", "haah",
                          "checkerboard"}) {
    StabilizerCode c = builtin_code(fam, 0);
    REQUIRE(c.css_split.has_value());
    for (std::size_t i = 0; i < c.checks.size(); ++i)
      for (std::size_t j = 0; j < c.checks.size(); ++j)
        if ((*c.css_split)[i] == 'X' && (*c.css_split)[j] == 'Z')
          CHECK(BitVec::dot(c.checks[i].x, c.checks[j].z) == 0);
  }
}

TEST_CASE("bb logical family (123): orbit logicals commute and are not checks") {
  BBCodeSpec spec = bb_small_spec();
  auto fam = bb_logical_family(spec, {1, 2, 3});
  CHECK(!fam.x_logicals.empty());
  // Membership in the centralizer span: every returned logical reduces to
  // zero against [checks | logical basis] of the code.
  StabilizerCode c = bb_code(spec);
  LogicalBasis lb = logical_basis(c);
  RowSpace span(2 * c.n);
  for (const auto& chk : c.checks) span.add(pauli_to_row(chk));
  for (auto& [lx, lz] : lb.pairs) {
    span.add(pauli_to_row(lx));
    span.add(pauli_to_row(lz));
  }
  for (const auto& l : fam.x_logicals) CHECK(span.contains(pauli_to_row(l)));
  for (const auto& l : fam.z_logicals) CHECK(span.contains(pauli_to_row(l)));
}

TEST_CASE("bb gross (123) family contains 2 independent X logicals") {
  auto fam = bb_logical_family(bb_gross_spec(), {1, 2, 3});
  CHECK(fam.x_logicals.size() == 2);
}

TEST_CASE("code file round trip is bit exact") {
  for (const char* fam : {"toric", "steane", "fermion_subsystem"}) {
    StabilizerCode c = builtin_code(fam, 0);
    std::ostringstream os;
    write_code(os, c);
    std::istringstream is(os.str());
    StabilizerCode back = read_code(is);
    CHECK(back.n == c.n);
    REQUIRE(back.checks.size() == c.checks.size());
    for (std::size_t i = 0; i < c.checks.size(); ++i)
      CHECK(back.checks[i] == c.checks[i]);
    CHECK(back.site_of == c.site_of);
    std::ostringstream os2;
    write_code(os2, back);
    CHECK(os2.str() == os.str());
  }
}
