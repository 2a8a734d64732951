#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "floq/gadget.hpp"

using namespace floq;

TEST_CASE("every builtin gadget is complete, commuting, mode-sound") {
  for (const auto& id : builtin_gadget_ids()) {
    INFO("gadget ", id);
    GadgetTableau g = builtin_gadget(id);
    CHECK_NOTHROW(g.validate());
    auto [r, deficiency] = g.completeness_rank();
    CHECK(deficiency == 0);
    CHECK(r == g.shape.total());
  }
}

TEST_CASE("completeness ranks match the worked examples") {
  // HH: rank 6 over 2m+nL = 6.
  GadgetTableau hh = builtin_gadget("hh_toric");
  CHECK(hh.completeness_rank().first == 6);
  CHECK(hh.n_legs() == 4);

  // CSS toric without completions: r = 8 < 10 (deficiency 2).
  GadgetTableau css = builtin_gadget("css_toric");
  GadgetTableau bare = css;
  bare.rows.resize(8);
  bare.row_tags.resize(8);
  bare.extra_internal.clear();
  auto [r, deficiency] = bare.completeness_rank();
  CHECK(r == 8);
  CHECK(deficiency == 2);

  // Haah: rank(Hx)+rank(Hz) = 16 with no completions needed.
  GadgetTableau haah = builtin_gadget("haah");
  CHECK(haah.completeness_rank().first == 16);
  CHECK(haah.extra_internal.empty());

  // Checkerboard: r = 12 before the two extra stabilizers.
  GadgetTableau cb = builtin_gadget("checkerboard");
  GadgetTableau cb_bare = cb;
  cb_bare.rows.resize(cb.rows.size() - 2);
  cb_bare.extra_internal.clear();
  auto [rcb, dcb] = cb_bare.completeness_rank();
  CHECK(rcb == 12);
  CHECK(dcb == 2);

  // Color: completely fixed at r = 8 = 2 + 2*3.
  GadgetTableau color = builtin_gadget("color_css");
  CHECK(color.completeness_rank().first == 8);
  CHECK(color.extra_internal.empty());

  // BB: r = 12 before the two additional stabilizers, 14 after.
  GadgetTableau bb = builtin_gadget("bb");
  GadgetTableau bb_bare = bb;
  bb_bare.rows.resize(12);
  bb_bare.extra_internal.clear();
  CHECK(bb_bare.completeness_rank().first == 12);
  CHECK(bb.completeness_rank().first == 14);
}

TEST_CASE("hh gadget row space contains the pass-through stabilizer X|PIPI|Z") {
  GadgetTableau hh = builtin_gadget("hh_toric");
  RowSpace rs(2 * hh.shape.total());
  for (const auto& row : hh.rows) rs.add(pauli_to_row(row));
  CHECK(rs.contains(pauli_to_row(PauliString::from_str("XXIXIZ"))));
}

TEST_CASE("gadget compose: wire gadget is an identity element") {
  GadgetTableau wire;
  wire.id = "wire";
  wire.shape.m = 1;
  wire.mode = EncodingMode::css;
  wire.rows = {PauliString::from_str("XX"), PauliString::from_str("ZZ")};
  wire.row_tags = {"x", "z"};
  wire.validate();
  GadgetTableau two = gadget_compose(wire, wire);
  CHECK(two.rows.size() == 2);
  RowSpace rs(4);
  for (const auto& r : two.rows) rs.add(pauli_to_row(r));
  CHECK(rs.contains(pauli_to_row(PauliString::from_str("XX"))));
  CHECK(rs.contains(pauli_to_row(PauliString::from_str("ZZ"))));
}

TEST_CASE("hh2 doubles the legs and realizes the repeated bond operators") {
  GadgetTableau hh2 = builtin_gadget("hh2");
  CHECK(hh2.shape.m == 1);
  CHECK(hh2.n_legs() == 8);
  auto [r, deficiency] = hh2.completeness_rank();
  CHECK(deficiency == 0);
  // Repeating the solution gives A_X = PI, Abar_X = IQ etc: the incoming X
  // web of the doubled gadget acts as X|(XI)(XI)II|I on directions 1,2.
  RowSpace rs(2 * hh2.shape.total());
  for (const auto& row : hh2.rows) rs.add(pauli_to_row(row));
  CHECK(rs.contains(pauli_to_row(PauliString::from_str("XXIXIIIIII"))));
  CHECK(rs.contains(pauli_to_row(PauliString::from_str("ZIIYIYIIII"))));
  CHECK(rs.contains(pauli_to_row(PauliString::from_str("IIYIYIIIIX"))));
  CHECK(rs.contains(pauli_to_row(PauliString::from_str("IIIIXIXIIZ"))));
}

TEST_CASE("dagger swaps in and out") {
  GadgetTableau hh = builtin_gadget("hh_toric");
  GadgetTableau d = hh.dagger();
  CHECK(d.rows[0] == PauliString::from_str("IXXIIX"));
}

TEST_CASE("gadget file round trip is bit exact") {
  for (const std::string id : {"hh_toric", "css_toric", "haah", "bb"}) {
    GadgetTableau g = builtin_gadget(id);
    std::ostringstream os;
    write_gadget(os, g);
    std::istringstream is(os.str());
    GadgetTableau back = read_gadget(is);
    REQUIRE(back.rows.size() == g.rows.size());
    for (std::size_t i = 0; i < g.rows.size(); ++i) CHECK(back.rows[i] == g.rows[i]);
    std::ostringstream os2;
    write_gadget(os2, back);
    CHECK(os2.str() == os.str());
  }
}
