#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "floq/solver.hpp"

using namespace floq;

namespace {

Assignment named_assignment(const Stencil& s,
                            const std::map<std::string, std::string>& values) {
  Assignment a(s.symbols.size());
  for (auto& [name, pauli] : values) a[s.find_symbol(name)] = PauliString::from_str(pauli);
  return a;
}

bool canonical_member(const Stencil& s, const LegBudget& budget,
                      const Assignment& probe, const SolveOutcome& outcome) {
  Assignment key = canonical_assignment(s, budget, probe);
  auto sig = [&](const Assignment& k) {
    std::string out;
    for (const auto& p : k) out += p.str() + "|";
    return out;
  };
  for (const auto& c : outcome.canonical)
    if (sig(c) == sig(key)) return true;
  return false;
}

}  // namespace

TEST_CASE("symplectic group sizes and closure") {
  CHECK(symplectic_group(1).size() == 6);
  CHECK(symplectic_group(2).size() == 720);
}

TEST_CASE("toric clifford: one leg per bond suffices, all solutions one orbit") {
  Stencil s = toric_stencil(EncodingMode::clifford);
  auto system = build_consistency_system(s);
  CHECK(system.size() >= 16);
  SolveOutcome out = solve_min_legs(s, {uniform_budget(s, 1)});
  REQUIRE(out.feasible);
  // All bond operators single Paulis P (incoming) and Q (outgoing swapped):
  // every raw solution is bond-local equivalent to the P=X, Q=Y one.
  CHECK(out.canonical.size() == 1);
  Assignment hh = named_assignment(
      s, {{"AX", "X"}, {"BX", "X"}, {"CX", "X"}, {"DX", "X"},
          {"AZ", "Y"}, {"BZ", "Y"}, {"CZ", "Y"}, {"DZ", "Y"},
          {"aX", "Y"}, {"bX", "Y"}, {"cX", "Y"}, {"dX", "Y"},
          {"aZ", "X"}, {"bZ", "X"}, {"cZ", "X"}, {"dZ", "X"}});
  CHECK(canonical_member(s, out.budget, hh, out));
}

TEST_CASE("toric clifford solution instantiates to the builtin gadget") {
  Stencil s = toric_stencil(EncodingMode::clifford);
  Assignment hh = named_assignment(
      s, {{"AX", "X"}, {"BX", "X"}, {"CX", "X"}, {"DX", "X"},
          {"AZ", "Y"}, {"BZ", "Y"}, {"CZ", "Y"}, {"DZ", "Y"},
          {"aX", "Y"}, {"bX", "Y"}, {"cX", "Y"}, {"dX", "Y"},
          {"aZ", "X"}, {"bZ", "X"}, {"cZ", "X"}, {"dZ", "X"}});
  GadgetTableau g = stencil_gadget(s, 0, uniform_budget(s, 1), hh, "from_solver");
  GadgetTableau hh_builtin = builtin_gadget("hh_toric");
  REQUIRE(g.rows.size() == hh_builtin.rows.size());
  RowSpace rs(2 * g.shape.total());
  for (const auto& r : g.rows) rs.add(pauli_to_row(r));
  for (const auto& r : hh_builtin.rows) CHECK(rs.contains(pauli_to_row(r)));
}

TEST_CASE("toric css: infeasible at one leg, weight-2 solution at two legs") {
  Stencil s = toric_stencil(EncodingMode::css);
  SolveOutcome out = solve_min_legs(s, {uniform_budget(s, 1), uniform_budget(s, 2)});
  REQUIRE(out.feasible);
  CHECK(out.budget.at("1") == 2);
  REQUIRE(out.infeasible.size() == 1);
  CHECK_FALSE(out.infeasible[0].second.empty());
  Assignment css = named_assignment(
      s, {{"AX", "XI"}, {"BX", "XI"}, {"CX", "XI"}, {"DX", "XI"},
          {"AZ", "ZI"}, {"BZ", "ZI"}, {"CZ", "ZI"}, {"DZ", "ZI"},
          {"aX", "IX"}, {"bX", "IX"}, {"cX", "IX"}, {"dX", "IX"},
          {"aZ", "IZ"}, {"bZ", "IZ"}, {"cZ", "IZ"}, {"dZ", "IZ"}});
  CHECK(canonical_member(s, out.budget, css, out));
}

TEST_CASE("haah css: infeasible at one leg per direction, haahsol at two") {
  Stencil s = haah_stencil();
  SolveOutcome out = solve_min_legs(s, {uniform_budget(s, 1), uniform_budget(s, 2)});
  REQUIRE(out.feasible);
  CHECK(out.budget.at("1") == 2);
  REQUIRE(out.infeasible.size() == 1);
  Assignment sol = named_assignment(
      s, {{"AX", "II"}, {"BX", "XI"}, {"CX", "XX"}, {"DX", "IX"},
          {"aX", "II"}, {"bX", "XX"}, {"cX", "IX"}, {"dX", "XI"},
          {"AZ", "IZ"}, {"BZ", "ZI"}, {"CZ", "ZZ"}, {"DZ", "II"},
          {"aZ", "ZI"}, {"bZ", "ZZ"}, {"cZ", "IZ"}, {"dZ", "II"}});
  CHECK(canonical_member(s, out.budget, sol, out));
}

TEST_CASE("checkerboard css: cbsol at two legs per direction") {
  Stencil s = checkerboard_stencil();
  SolveOutcome out = solve_min_legs(s, {uniform_budget(s, 1), uniform_budget(s, 2)});
  REQUIRE(out.feasible);
  CHECK(out.budget.at("1") == 2);
  Assignment sol = named_assignment(
      s, {{"AX", "XI"}, {"AZ", "ZI"}, {"aX", "IX"}, {"aZ", "IZ"}});
  CHECK(canonical_member(s, out.budget, sol, out));
}

TEST_CASE("color css: ccsol at two legs per direction") {
  Stencil s = color_stencil();
  SolveOutcome out = solve_min_legs(s, {uniform_budget(s, 1), uniform_budget(s, 2)});
  REQUIRE(out.feasible);
  CHECK(out.budget.at("1") == 2);
  Assignment sol = named_assignment(
      s, {{"AX", "XX"}, {"BX", "XI"}, {"AZ", "ZI"}, {"BZ", "IZ"},
          {"aX", "XI"}, {"bX", "IX"}, {"aZ", "IZ"}, {"bZ", "ZZ"}});
  CHECK(canonical_member(s, out.budget, sol, out));
}

TEST_CASE("bb: all-single-leg budget infeasible, bbsol at the diagonal budget") {
  Stencil s = bb_stencil();
  LegBudget ones = uniform_budget(s, 1);
  LegBudget diag = ones;
  diag["(1,1)"] = diag["(2,2)"] = diag["(3,3)"] = 2;
  SolveOutcome out = solve_min_legs(s, {ones, diag});
  REQUIRE(out.feasible);
  REQUIRE(out.infeasible.size() == 1);
  std::map<std::string, std::string> vals;
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      std::string suffix = std::to_string(a) + std::to_string(b);
      bool d = a == b;
      vals["AX" + suffix] = d ? "XI" : "X";
      vals["aX" + suffix] = d ? "IZ" : "Z";
      vals["AZ" + suffix] = d ? "ZI" : "Z";
      vals["aZ" + suffix] = d ? "IX" : "X";
    }
  CHECK(canonical_member(s, out.budget, named_assignment(s, vals), out));
}

TEST_CASE("fermion: single-Pauli solution") {
  Stencil s = fermion_stencil();
  SolveOutcome out = solve_min_legs(s, {uniform_budget(s, 1)});
  REQUIRE(out.feasible);
  Assignment sol = named_assignment(
      s, {{"A", "X"}, {"B", "X"}, {"F", "X"}, {"C", "Y"}, {"D", "Y"}, {"E", "Y"},
          {"a", "Y"}, {"b", "Y"}, {"f", "Y"}, {"c", "X"}, {"d", "X"}, {"e", "X"}});
  CHECK(canonical_member(s, out.budget, sol, out));
}

TEST_CASE("empty system for a single isolated check") {
  Stencil s;
  s.name = "isolated";
  s.m = 1;
  s.groups = {};
  Stencil::Row r;
  r.tag = "inX";
  r.in_out = PauliString::from_str("XI");
  s.rows.push_back(r);
  CHECK(build_consistency_system(s).empty());
}

TEST_CASE("css toric completions: the valid and the flagged pair both appear") {
  GadgetTableau bare = builtin_gadget("css_toric");
  bare.rows.resize(8);
  bare.row_tags.resize(8);
  bare.extra_internal.clear();
  auto completions = complete_with_internal_stabilizers(bare, 4);
  REQUIRE(!completions.empty());
  auto has = [&](const char* a, const char* b) {
    PauliString pa = PauliString::from_str(a), pb = PauliString::from_str(b);
    for (const auto& g : completions) {
      RowSpace rs(2 * g.shape.total());
      for (const auto& row : g.rows) rs.add(pauli_to_row(row));
      if (rs.contains(pauli_to_row(pa)) && rs.contains(pauli_to_row(pb))) return true;
    }
    return false;
  };
  // (XX)_2 (XX)_3 with (ZZ)_1 (ZZ)_2 preserves the logical algebra.
  CHECK(has("IIIXXXXIII", "IZZZZIIIII"));
  // (XI)_2 (XI)_3 with (IZ)_1 (IZ)_2 is the completion that measures the
  // incoming X logical; it must be found here and flagged downstream.
  CHECK(has("IIIXIXIIII", "IIZIZIIIII"));
}

TEST_CASE("deficiency-0 input returns unchanged") {
  GadgetTableau hh = builtin_gadget("hh_toric");
  auto res = complete_with_internal_stabilizers(hh);
  REQUIRE(res.size() == 1);
  CHECK(res[0].rows.size() == hh.rows.size());
}
