#pragma once

#include <functional>
#include <random>

#include "floq/algebra.hpp"

namespace floq {

// XOR-affine expression over measurement-outcome symbols: constant bit plus
// a symmetric difference of symbol ids. Concrete runs never allocate symbols,
// so the expression collapses to the constant.
struct OutcomeExpr {
  int constant = 0;
  std::vector<uint32_t> syms;  // sorted, unique

  void add_sym(uint32_t s);
  void add(const OutcomeExpr& o);
  bool is_constant() const { return syms.empty(); }
  bool operator==(const OutcomeExpr& o) const = default;
};

enum class Gate { H, S, CNOT, CZ, SWAP, X, Z };

// Stabilizer tableau over n qubits in the destabilizer/stabilizer form, with
// phases tracked as i^g times an XOR of outcome symbols. Measurements of
// arbitrary Pauli operators are supported; a random result either draws from
// the RNG or mints a fresh symbol.
class CliffordTableau {
 public:
  explicit CliffordTableau(std::size_t n);

  std::size_t num_qubits() const { return n_; }

  void apply_gate(Gate g, std::size_t a, std::size_t b = SIZE_MAX);
  void apply_pauli(const PauliString& p);

  // Measures the Hermitian Pauli given by p (phase convention: Y per qubit).
  // Deterministic results return the forced expression; random results mint a
  // symbol (symbolic mode) or draw a bit (rng mode).
  OutcomeExpr measure(const PauliString& p);

  // Measure and force the post-measurement eigenvalue to +1 (a classically
  // controlled Pauli fix). Returns what the uncorrected outcome was.
  OutcomeExpr measure_and_reset(const PauliString& p);

  // Nondestructive determinism probe: outcome if p were measured now, or
  // nullopt when the result would be random.
  std::optional<OutcomeExpr> peek(const PauliString& p) const;

  // Stabilizer group row (projective, signs dropped) for rank checks.
  PauliString stabilizer(std::size_t i) const { return rows_[n_ + i].p; }
  PauliString destabilizer(std::size_t i) const { return rows_[i].p; }
  OutcomeExpr stabilizer_sign(std::size_t i) const;

  // True iff every pair of rows satisfies the canonical symplectic relations:
  // destab_i anticommutes only with stab_i, everything else commutes.
  bool rows_canonical() const;

  void seed(uint64_t s) { rng_.seed(s); }
  void set_symbolic(bool on) { symbolic_ = on; }
  uint32_t num_symbols() const { return next_sym_; }

 private:
  struct Row {
    PauliString p;
    int g = 0;  // i^g prefactor, mod 4
    std::vector<uint32_t> syms;
  };

  void row_mul(Row& dst, const Row& src);
  static int phase_quad(const PauliString& a, const PauliString& b);

  std::size_t n_;
  std::vector<Row> rows_;  // [0,n) destabilizers, [n,2n) stabilizers
  bool symbolic_ = false;
  uint32_t next_sym_ = 0;
  std::mt19937_64 rng_{0};
};

}  // namespace floq
