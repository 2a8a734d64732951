#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "floq/circuit.hpp"
#include "floq/schedule.hpp"

using namespace floq;

TEST_CASE("clifford encoder synthesis matches every builtin gadget tableau") {
  for (const auto& id : builtin_gadget_ids()) {
    GadgetTableau g = builtin_gadget(id);
    CliffordCircuit c = synthesize_clifford_encoder(g);
    INFO("gadget ", id);
    CHECK(encoder_matches_tableau(c, g));
  }
}

TEST_CASE("css encoder synthesis agrees with the clifford path") {
  for (const std::string id : {"css_toric", "sasec_tree", "color_css", "haah",
                               "checkerboard", "steane_corner_trivial"}) {
    GadgetTableau g = builtin_gadget(id);
    if (g.mode != EncodingMode::css) continue;
    CliffordCircuit c = synthesize_css_encoder(g);
    INFO("gadget ", id);
    CHECK(encoder_matches_tableau(c, g));
  }
}

TEST_CASE("random complete tableau synthesizes correctly") {
  // A handful of random complete tableaux built from random Clifford words.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 4;
    CliffordTableau t(n);
    for (int g = 0; g < 40; ++g) {
      std::size_t a = rng() % n, b = (a + 1 + rng() % (n - 1)) % n;
      switch (rng() % 4) {
        case 0: t.apply_gate(Gate::H, a); break;
        case 1: t.apply_gate(Gate::S, a); break;
        case 2: t.apply_gate(Gate::CNOT, a, b); break;
        default: t.apply_gate(Gate::CZ, a, b); break;
      }
    }
    GadgetTableau g;
    g.id = "random";
    g.shape.m = 1;
    g.shape.dirs = {{"1", 2}};  // 1 in + 2 legs + 1 out
    for (std::size_t i = 0; i < n; ++i) {
      g.rows.push_back(t.stabilizer(i));
      g.row_tags.push_back("s");
    }
    CliffordCircuit c = synthesize_clifford_encoder(g);
    CHECK(encoder_matches_tableau(c, g));
  }
}

TEST_CASE("single-row wire tableau synthesizes to a trivial circuit") {
  GadgetTableau wire;
  wire.id = "wire";
  wire.shape.m = 1;
  wire.mode = EncodingMode::css;
  wire.rows = {PauliString::from_str("XX"), PauliString::from_str("ZZ")};
  wire.row_tags = {"x", "z"};
  CliffordCircuit c = synthesize_clifford_encoder(wire);
  CHECK(encoder_matches_tableau(c, wire));
}

TEST_CASE("three-stage layout: hh has m_F=2 and two temporal steps") {
  ThreeStage ts = three_stage_layout(builtin_gadget("hh_toric"), 2);
  CHECK(ts.m_f == 2);
  CHECK(ts.n_l == 4);
  CHECK(ts.depth == 2);
  CHECK(ts.d2_estimate == 2);
}

TEST_CASE("resource report: bb depth halves when m_F doubles") {
  ResourceReport r6 = resource_report(builtin_gadget("bb"), 6);
  ResourceReport r12 = resource_report(builtin_gadget("bb"), 12);
  CHECK(r6.n_l == 12);
  CHECK(r6.d2_estimate == 2);
  CHECK(r12.d2_estimate == 1);
  CHECK(r12.depth < r6.depth);
  // Identity gadget: zeros.
  GadgetTableau wire;
  wire.shape.m = 1;
  wire.rows = {PauliString::from_str("XX"), PauliString::from_str("ZZ")};
  wire.row_tags = {"x", "z"};
  ResourceReport rw = resource_report(wire, 1);
  CHECK(rw.n_l == 0);
  CHECK(rw.depth == 0);
}

TEST_CASE("hh toric lattice schedule verifies and has the 3-round labels") {
  FloquetLattice fl = hh_toric_lattice(2);
  CHECK(fl.period.labels() == std::vector<std::string>{"gZZ", "bXX", "rYY"});
  IsgReport rep = verify_schedule(fl, 2);
  CHECK(rep.pass);
}

TEST_CASE("css toric lattice: 6 rounds, verified") {
  FloquetLattice fl = css_toric_lattice(2);
  CHECK(fl.period.labels() ==
        std::vector<std::string>{"gZZ", "bXX", "rZZ", "gXX", "bZZ", "rXX"});
  CHECK(verify_schedule(fl, 2).pass);
}

TEST_CASE("fermion lattice: 3 rounds, verified") {
  FloquetLattice fl = fermion_lattice(4);
  CHECK(fl.period.labels() == std::vector<std::string>{"gZZ", "rXX", "bYY"});
  CHECK(verify_schedule(fl, 2).pass);
}

TEST_CASE("color lattice: 4-round schedule verified, 6/7-round variants emitted") {
  FloquetLattice fl = color_lattice(3, "4");
  CHECK(fl.period.labels() == std::vector<std::string>{"gZZ", "bXX", "rZZ", "gXX"});
  CHECK(verify_schedule(fl, 2).pass);
  CHECK(color_lattice(3, "6").period.rounds.size() == 6);
  CHECK(color_lattice(3, "7").period.rounds.size() == 7);
}

TEST_CASE("steane lattice variants verify") {
  for (const char* corner : {"trivial", "hadamard", "sgate"}) {
    FloquetLattice fl = steane_lattice(corner);
    INFO("corner ", corner);
    CHECK(verify_schedule(fl, 2).pass);
  }
}

TEST_CASE("haah schedule: 5 rounds with the paper labels") {
  Schedule s = haah_schedule(2);
  CHECK(s.labels() ==
        std::vector<std::string>{"bZZ", "pXX", "CNOT_br", "rZZZ", "gXX"});
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("checkerboard schedule: 8 rounds") {
  Schedule s = checkerboard_schedule(2);
  CHECK(s.rounds.size() == 8);
  CHECK(s.labels() == std::vector<std::string>{"bZZ", "rXX", "bZZZ", "gXX", "bZZ",
                                               "gXX", "bZZZ", "rXX"});
}

TEST_CASE("bb schedule: 14 steps") {
  Schedule s = bb_schedule(bb_small_spec());
  CHECK(s.rounds.size() == 14);
}

TEST_CASE("schedule file round trip") {
  FloquetLattice fl = hh_toric_lattice(2);
  std::ostringstream os;
  write_schedule(os, fl.period);
  std::istringstream is(os.str());
  Schedule back = read_schedule(is);
  std::ostringstream os2;
  write_schedule(os2, back);
  CHECK(os.str() == os2.str());
}
