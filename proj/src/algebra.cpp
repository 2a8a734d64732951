#include "floq/algebra.hpp"

namespace floq {

PauliString PauliString::from_str(const std::string& s) {
  PauliString p(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    switch (s[i]) {
      case 'I': case '_': break;
      case 'X': p.x.set(i, true); break;
      case 'Z': p.z.set(i, true); break;
      case 'Y': p.x.set(i, true); p.z.set(i, true); break;
      default: throw std::invalid_argument("bad Pauli character");
    }
  }
  return p;
}

std::string PauliString::str() const {
  static const char tab[4] = {'I', 'X', 'Z', 'Y'};
  std::string s(num_qubits(), 'I');
  for (std::size_t q = 0; q < num_qubits(); ++q) s[q] = tab[at(q)];
  return s;
}

int symplectic_product(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("symplectic_product: length mismatch");
  return int(BitVec::dot(a.x, b.z)) ^ int(BitVec::dot(a.z, b.x));
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
  BinaryMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BinaryMatrix BinaryMatrix::transposed() const {
  BinaryMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < wpr_; ++k) {
      uint64_t w = bits_[r * wpr_ + k];
      while (w) {
        std::size_t c = k * 64 + std::size_t(__builtin_ctzll(w));
        t.set(c, r, true);
        w &= w - 1;
      }
    }
  return t;
}

namespace {

// In-place forward elimination; returns pivot columns. Lowest-index pivot
// rule for determinism.
std::vector<long> eliminate(BinaryMatrix& m) {
  std::vector<long> pivot_of_row;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, c)) m.xor_rows(i, r);
    pivot_of_row.push_back(long(c));
    ++r;
  }
  return pivot_of_row;
}

}  // namespace

std::size_t rank(const BinaryMatrix& m) {
  BinaryMatrix work = m;
  return eliminate(work).size();
}

BinaryMatrix rref(const BinaryMatrix& m) {
  BinaryMatrix work = m;
  std::size_t r = eliminate(work).size();
  BinaryMatrix out(0, m.cols());
  for (std::size_t i = 0; i < r; ++i) out.append_row(work.row(i));
  return out;
}

BinaryMatrix kernel(const BinaryMatrix& m) {
  BinaryMatrix work = m;
  std::vector<long> pivots = eliminate(work);
  std::vector<char> is_pivot(m.cols(), 0);
  for (long c : pivots) is_pivot[std::size_t(c)] = 1;
  BinaryMatrix basis(0, m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    BitVec v(m.cols());
    v.set(c, true);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (work.get(r, c)) v.set(std::size_t(pivots[r]), true);
    basis.append_row(v);
  }
  return basis;
}

LinearSolution solve_linear(const BinaryMatrix& a, const BitVec& b) {
  if (a.rows() != b.size())
    throw std::invalid_argument("solve_linear: dimension mismatch");
  // Eliminate on the augmented matrix.
  BinaryMatrix work(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) work.set(r, c, a.get(r, c));
    work.set(r, a.cols(), b.get(r));
  }
  std::size_t r = 0;
  std::vector<long> pivots;
  for (std::size_t c = 0; c < a.cols() && r < work.rows(); ++c) {
    std::size_t p = r;
    while (p < work.rows() && !work.get(p, c)) ++p;
    if (p == work.rows()) continue;
    work.swap_rows(r, p);
    for (std::size_t i = 0; i < work.rows(); ++i)
      if (i != r && work.get(i, c)) work.xor_rows(i, r);
    pivots.push_back(long(c));
    ++r;
  }
  LinearSolution out;
  for (std::size_t i = r; i < work.rows(); ++i)
    if (work.get(i, a.cols())) return out;  // 0 = 1 row
  out.consistent = true;
  out.particular = BitVec(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (work.get(i, a.cols())) out.particular.set(std::size_t(pivots[i]), true);
  std::vector<char> is_pivot(a.cols(), 0);
  for (long c : pivots) is_pivot[std::size_t(c)] = 1;
  out.nullspace = BinaryMatrix(0, a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (is_pivot[c]) continue;
    BitVec v(a.cols());
    v.set(c, true);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (work.get(i, c)) v.set(std::size_t(pivots[i]), true);
    out.nullspace.append_row(v);
  }
  return out;
}

BitVec RowSpace::reduce(BitVec v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (v.get(std::size_t(pivots_[i]))) v ^= rows_[i];
  return v;
}

std::pair<BitVec, BitVec> RowSpace::reduce_tracked(BitVec v) const {
  if (!track_) throw std::logic_error("RowSpace built without combo tracking");
  BitVec combo(n_added_ ? n_added_ : 1);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (v.get(std::size_t(pivots_[i]))) {
      v ^= rows_[i];
      for (std::size_t k = 0; k < combos_[i].size() && k < combo.size(); ++k)
        if (combos_[i].get(k)) combo.flip(k);
    }
  return {v, combo};
}

bool RowSpace::add(const BitVec& v) {
  BitVec r = v;
  BitVec combo(track_ ? n_added_ + 1 : 0);
  if (track_) combo.set(n_added_, true);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (r.get(std::size_t(pivots_[i]))) {
      r ^= rows_[i];
      if (track_)
        for (std::size_t k = 0; k < combos_[i].size(); ++k)
          if (combos_[i].get(k)) combo.flip(k);
    }
  n_added_ += 1;
  if (track_)
    for (auto& c : combos_) {
      BitVec grown(n_added_);
      for (std::size_t k = 0; k < c.size(); ++k) grown.set(k, c.get(k));
      c = grown;
    }
  long p = r.lowest_set();
  if (p < 0) return false;
  rows_.push_back(r);
  pivots_.push_back(p);
  if (track_) {
    BitVec grown(n_added_);
    for (std::size_t k = 0; k < combo.size(); ++k) grown.set(k, combo.get(k));
    combos_.push_back(grown);
  }
  return true;
}

BitVec pauli_to_row(const PauliString& p) {
  std::size_t n = p.num_qubits();
  BitVec v(2 * n);
  for (std::size_t q = 0; q < n; ++q) {
    if (p.x.get(q)) v.set(q, true);
    if (p.z.get(q)) v.set(n + q, true);
  }
  return v;
}

PauliString row_to_pauli(const BitVec& v) {
  std::size_t n = v.size() / 2;
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) {
    p.x.set(q, v.get(q));
    p.z.set(q, v.get(n + q));
  }
  return p;
}

int symplectic_product_rows(const BitVec& a, const BitVec& b) {
  std::size_t n = a.size() / 2;
  int acc = 0;
  for (std::size_t q = 0; q < n; ++q)
    acc ^= (int(a.get(q)) & int(b.get(n + q))) ^ (int(a.get(n + q)) & int(b.get(q)));
  return acc;
}

}  // namespace floq
