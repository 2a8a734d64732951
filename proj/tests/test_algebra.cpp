#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "floq/algebra.hpp"
#include "floq/tableau.hpp"

using namespace floq;

namespace {

PauliString random_pauli(std::size_t n, std::mt19937_64& rng) {
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) p.set(q, int(rng() % 4));
  return p;
}

BinaryMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  BinaryMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() & 1);
  return m;
}

}  // namespace

TEST_CASE("symplectic product basics") {
  CHECK(symplectic_product(PauliString::from_str("X"), PauliString::from_str("Z")) == 1);
  CHECK(symplectic_product(PauliString::from_str("XX"), PauliString::from_str("ZZ")) == 0);
  // Distinct single-qubit Paulis anticommute, e.g. bond operators P vs Q.
  CHECK(symplectic_product(PauliString::from_str("X"), PauliString::from_str("Y")) == 1);
  CHECK(symplectic_product(PauliString::from_str("Y"), PauliString::from_str("Z")) == 1);
  CHECK_THROWS(symplectic_product(PauliString::from_str("X"), PauliString::from_str("XX")));
}

TEST_CASE("symplectic bilinearity, randomized") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 1 + rng() % 9;
    PauliString a = random_pauli(n, rng), b = random_pauli(n, rng),
                c = random_pauli(n, rng);
    int lhs = symplectic_product(a * b, c);
    int rhs = symplectic_product(a, c) ^ symplectic_product(b, c);
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("rank basics and transpose invariance") {
  CHECK(rank(BinaryMatrix::identity(4)) == 4);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    BinaryMatrix m = random_matrix(r, c, rng);
    REQUIRE(rank(m) == rank(m.transposed()));
  }
}

TEST_CASE("kernel basics") {
  CHECK(kernel(BinaryMatrix::identity(3)).rows() == 0);
  BinaryMatrix m(1, 2);
  m.set(0, 0, true);
  m.set(0, 1, true);
  BinaryMatrix k = kernel(m);
  REQUIRE(k.rows() == 1);
  CHECK(k.get(0, 0));
  CHECK(k.get(0, 1));
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 8;
    BinaryMatrix m2 = random_matrix(r, c, rng);
    BinaryMatrix k2 = kernel(m2);
    REQUIRE(k2.rows() == c - rank(m2));
    for (std::size_t i = 0; i < k2.rows(); ++i)
      for (std::size_t row = 0; row < r; ++row)
        REQUIRE_FALSE(BitVec::dot(m2.row(row), k2.row(i)));
  }
}

TEST_CASE("solve_linear identity and inconsistency") {
  BinaryMatrix id = BinaryMatrix::identity(4);
  BitVec b(4);
  b.set(1, true);
  b.set(3, true);
  auto sol = solve_linear(id, b);
  REQUIRE(sol.consistent);
  CHECK(sol.particular == b);
  CHECK(sol.nullspace.rows() == 0);

  BinaryMatrix zero(1, 3);
  BitVec one(1);
  one.set(0, true);
  CHECK_FALSE(solve_linear(zero, one).consistent);
}

TEST_CASE("solve_linear randomized: solutions really solve") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 8;
    BinaryMatrix a = random_matrix(r, c, rng);
    BitVec b(r);
    for (std::size_t i = 0; i < r; ++i) b.set(i, rng() & 1);
    auto sol = solve_linear(a, b);
    if (!sol.consistent) continue;
    auto check = [&](const BitVec& x) {
      for (std::size_t i = 0; i < r; ++i)
        REQUIRE(BitVec::dot(a.row(i), x) == b.get(i));
    };
    check(sol.particular);
    for (std::size_t nv = 0; nv < sol.nullspace.rows(); ++nv)
      check(sol.particular ^ sol.nullspace.row(nv));
  }
}

TEST_CASE("tableau gates act as expected") {
  CliffordTableau t(2);
  // H on qubit 0 maps the X_0 destabilizer onto Z_0.
  t.apply_gate(Gate::H, 0);
  CHECK(t.destabilizer(0) == PauliString::from_str("ZI"));
  CHECK(t.stabilizer(0) == PauliString::from_str("XI"));

  // CNOT maps X_c -> X_c X_t.
  CliffordTableau t2(2);
  t2.apply_gate(Gate::CNOT, 0, 1);
  CHECK(t2.destabilizer(0) == PauliString::from_str("XX"));
  CHECK_THROWS(t2.apply_gate(Gate::H, 5));
}

TEST_CASE("S H S^-1 exchanges Z and Y") {
  // Conjugation is tracked through measurement outcomes: prepare the +1
  // eigenstate of Z, apply S H S S S (S^-1 = S^3), and the state should be a
  // Y eigenstate.
  CliffordTableau t(1);
  for (Gate g : {Gate::S, Gate::S, Gate::S, Gate::H, Gate::S})
    t.apply_gate(g, 0);
  auto peek = t.peek(PauliString::from_str("Y"));
  REQUIRE(peek.has_value());
  CHECK(peek->constant == 0);
}

TEST_CASE("tableau stays canonical under random 100-gate words") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + rng() % 5;
    CliffordTableau t(n);
    for (int g = 0; g < 100; ++g) {
      int kind = int(rng() % 7);
      std::size_t a = rng() % n, b = rng() % n;
      if (b == a) b = (a + 1) % n;
      switch (kind) {
        case 0: t.apply_gate(Gate::H, a); break;
        case 1: t.apply_gate(Gate::S, a); break;
        case 2: t.apply_gate(Gate::CNOT, a, b); break;
        case 3: t.apply_gate(Gate::CZ, a, b); break;
        case 4: t.apply_gate(Gate::SWAP, a, b); break;
        case 5: t.apply_gate(Gate::X, a); break;
        default: t.apply_gate(Gate::Z, a); break;
      }
    }
    REQUIRE(t.rows_canonical());
  }
}

TEST_CASE("measurement: deterministic and random cases") {
  std::mt19937_64 seed_rng(5);
  CliffordTableau t(2);
  t.seed(5);
  // Z measurements on |00> are deterministic +1.
  CHECK(t.measure(PauliString::from_str("ZI")).constant == 0);
  CHECK(t.measure(PauliString::from_str("IZ")).constant == 0);
  // X measurement collapses; then X is deterministic, and repeating agrees.
  auto m1 = t.measure(PauliString::from_str("XI"));
  auto m2 = t.measure(PauliString::from_str("XI"));
  CHECK(m1.constant == m2.constant);
  // ZZ on a Bell pair is deterministic +1.
  CliffordTableau bell(2);
  bell.apply_gate(Gate::H, 0);
  bell.apply_gate(Gate::CNOT, 0, 1);
  CHECK(bell.measure(PauliString::from_str("ZZ")).constant == 0);
  CHECK(bell.measure(PauliString::from_str("XX")).constant == 0);
}

TEST_CASE("symbolic measurements track outcome dependencies") {
  CliffordTableau t(1);
  t.set_symbolic(true);
  auto mx = t.measure(PauliString::from_str("X"));
  REQUIRE(mx.syms.size() == 1);
  // Measuring X again returns the same symbol.
  auto mx2 = t.measure(PauliString::from_str("X"));
  CHECK(mx2.syms == mx.syms);
  CHECK(mx2.constant == 0);
}
