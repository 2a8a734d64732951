#include "floq/tableau.hpp"

#include <algorithm>

namespace floq {

void OutcomeExpr::add_sym(uint32_t s) {
  auto it = std::lower_bound(syms.begin(), syms.end(), s);
  if (it != syms.end() && *it == s)
    syms.erase(it);
  else
    syms.insert(it, s);
}

void OutcomeExpr::add(const OutcomeExpr& o) {
  constant ^= o.constant;
  std::vector<uint32_t> merged;
  std::set_symmetric_difference(syms.begin(), syms.end(), o.syms.begin(),
                                o.syms.end(), std::back_inserter(merged));
  syms = std::move(merged);
}

namespace {

std::vector<uint32_t> sym_xor(const std::vector<uint32_t>& a,
                              const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

// i^g prefactor of the canonical Hermitian form of p (one i per Y).
int hermitian_quad(const PauliString& p) {
  int y = 0;
  for (std::size_t k = 0; k < p.x.words().size(); ++k)
    y += __builtin_popcountll(p.x.words()[k] & p.z.words()[k]);
  return y & 3;
}

}  // namespace

CliffordTableau::CliffordTableau(std::size_t n) : n_(n) {
  rows_.resize(2 * n);
  for (std::size_t q = 0; q < n; ++q) {
    rows_[q].p = PauliString(n);
    rows_[q].p.x.set(q, true);  // destabilizer X_q
    rows_[n + q].p = PauliString(n);
    rows_[n + q].p.z.set(q, true);  // stabilizer Z_q
  }
}

// Phase contribution (in units of i^2) when multiplying a*b per qubit:
// X^a Z^b * X^c Z^d needs (-1)^{b c}.
int CliffordTableau::phase_quad(const PauliString& a, const PauliString& b) {
  int acc = 0;
  for (std::size_t k = 0; k < a.z.words().size(); ++k)
    acc += __builtin_popcountll(a.z.words()[k] & b.x.words()[k]);
  return (2 * acc) & 3;
}

void CliffordTableau::row_mul(Row& dst, const Row& src) {
  dst.g = (dst.g + src.g + phase_quad(dst.p, src.p)) & 3;
  dst.p.mul(src.p);
  dst.syms = sym_xor(dst.syms, src.syms);
}

void CliffordTableau::apply_gate(Gate g, std::size_t a, std::size_t b) {
  if (a >= n_ || ((g == Gate::CNOT || g == Gate::CZ || g == Gate::SWAP) && b >= n_))
    throw std::out_of_range("apply_gate: qubit index out of range");
  for (auto& row : rows_) {
    bool xa = row.p.x.get(a), za = row.p.z.get(a);
    switch (g) {
      case Gate::H:
        row.g = (row.g + 2 * (xa & za)) & 3;
        row.p.x.set(a, za);
        row.p.z.set(a, xa);
        break;
      case Gate::S:
        row.g = (row.g + xa) & 3;
        row.p.z.set(a, xa ^ za);
        break;
      case Gate::X:
        row.g = (row.g + 2 * za) & 3;
        break;
      case Gate::Z:
        row.g = (row.g + 2 * xa) & 3;
        break;
      case Gate::CNOT: {
        bool xb = row.p.x.get(b), zb = row.p.z.get(b);
        row.g = (row.g + 2 * (xa & zb & (xb ^ za ^ 1))) & 3;
        row.p.x.set(b, xb ^ xa);
        row.p.z.set(a, za ^ zb);
        break;
      }
      case Gate::CZ: {
        bool xb = row.p.x.get(b);
        row.g = (row.g + 2 * (xa & xb)) & 3;
        row.p.z.set(b, row.p.z.get(b) ^ xa);
        row.p.z.set(a, za ^ xb);
        break;
      }
      case Gate::SWAP: {
        bool xb = row.p.x.get(b), zb = row.p.z.get(b);
        row.p.x.set(a, xb);
        row.p.z.set(a, zb);
        row.p.x.set(b, xa);
        row.p.z.set(b, za);
        break;
      }
    }
  }
}

void CliffordTableau::apply_pauli(const PauliString& p) {
  for (auto& row : rows_)
    row.g = (row.g + 2 * symplectic_product(row.p, p)) & 3;
}

OutcomeExpr CliffordTableau::measure(const PauliString& p) {
  if (p.num_qubits() != n_) throw std::invalid_argument("measure: size mismatch");
  int gm = hermitian_quad(p);
  std::size_t hit = SIZE_MAX;
  for (std::size_t i = n_; i < 2 * n_; ++i)
    if (symplectic_product(rows_[i].p, p)) { hit = i; break; }

  if (hit != SIZE_MAX) {
    // Random result.
    OutcomeExpr out;
    if (symbolic_) {
      out.syms.push_back(next_sym_++);
    } else {
      out.constant = int(rng_() & 1);
    }
    for (std::size_t i = 0; i < 2 * n_; ++i)
      if (i != hit && symplectic_product(rows_[i].p, p)) row_mul(rows_[i], rows_[hit]);
    rows_[hit - n_] = rows_[hit];
    Row fresh;
    fresh.p = p;
    fresh.g = (gm + 2 * out.constant) & 3;
    fresh.syms = out.syms;
    rows_[hit] = fresh;
    return out;
  }

  // Deterministic: express p as a product of stabilizers via destabilizers.
  Row acc;
  acc.p = PauliString(n_);
  for (std::size_t i = 0; i < n_; ++i)
    if (symplectic_product(rows_[i].p, p)) row_mul(acc, rows_[n_ + i]);
  if (!(acc.p == p)) throw std::logic_error("measure: inconsistent tableau");
  OutcomeExpr out;
  out.constant = ((acc.g - gm) & 3) >> 1;
  if (((acc.g - gm) & 1) != 0) throw std::logic_error("measure: odd phase");
  out.syms = acc.syms;
  return out;
}

OutcomeExpr CliffordTableau::measure_and_reset(const PauliString& p) {
  OutcomeExpr raw = measure(p);
  if (raw.constant || !raw.syms.empty()) {
    // Fix the collapsed stabilizer sign to +1.
    int gm = hermitian_quad(p);
    for (std::size_t i = n_; i < 2 * n_; ++i)
      if (rows_[i].p == p) {
        rows_[i].g = gm;
        rows_[i].syms.clear();
        break;
      }
  }
  return raw;
}

std::optional<OutcomeExpr> CliffordTableau::peek(const PauliString& p) const {
  for (std::size_t i = n_; i < 2 * n_; ++i)
    if (symplectic_product(rows_[i].p, p)) return std::nullopt;
  CliffordTableau copy = *this;
  return copy.measure(p);
}

OutcomeExpr CliffordTableau::stabilizer_sign(std::size_t i) const {
  const Row& r = rows_[n_ + i];
  OutcomeExpr e;
  int d = (r.g - hermitian_quad(r.p)) & 3;
  e.constant = d >> 1;
  e.syms = r.syms;
  return e;
}

bool CliffordTableau::rows_canonical() const {
  for (std::size_t i = 0; i < 2 * n_; ++i)
    for (std::size_t j = i; j < 2 * n_; ++j) {
      int want = (j == i + n_ && i < n_) ? 1 : 0;
      if (symplectic_product(rows_[i].p, rows_[j].p) != want) return false;
    }
  return true;
}

}  // namespace floq
