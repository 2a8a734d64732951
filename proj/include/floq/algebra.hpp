#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace floq {

// Bit vector over GF(2), packed into 64-bit words. Index 0 is the lowest bit
// of word 0. Comparison is lexicographic by bit index (index 0 most
// significant) so canonical forms are reproducible.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool empty_range() const { return n_ == 0; }

  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool v) {
    uint64_t m = uint64_t(1) << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

  BitVec& operator^=(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  bool none() const {
    for (uint64_t w : w_)
      if (w) return false;
    return true;
  }
  std::size_t popcount() const {
    std::size_t c = 0;
    for (uint64_t w : w_) c += std::size_t(__builtin_popcountll(w));
    return c;
  }
  // Index of the lowest set bit, or -1.
  long lowest_set() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return long(k * 64 + std::size_t(__builtin_ctzll(w_[k])));
    return -1;
  }

  // Parity of the AND of two vectors.
  static bool dot(const BitVec& a, const BitVec& b) {
    uint64_t acc = 0;
    for (std::size_t k = 0; k < a.w_.size(); ++k) acc ^= a.w_[k] & b.w_[k];
    return __builtin_parityll(acc);
  }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  // Lexicographic: first differing index decides, 0 < 1.
  bool lex_less(const BitVec& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      uint64_t d = w_[k] ^ o.w_[k];
      if (d) return !((w_[k] >> __builtin_ctzll(d)) & 1);
    }
    return false;
  }

  const std::vector<uint64_t>& words() const { return w_; }
  std::vector<uint64_t>& words() { return w_; }

 private:
  std::size_t n_ = 0;
  std::vector<uint64_t> w_;
};

// Pauli operator modulo phase: x/z bit per qubit. Weight counts qubits with
// any nonidentity action.
struct PauliString {
  BitVec x, z;

  PauliString() = default;
  explicit PauliString(std::size_t n) : x(n), z(n) {}

  std::size_t num_qubits() const { return x.size(); }
  bool is_identity() const { return x.none() && z.none(); }
  std::size_t weight() const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < x.words().size(); ++k)
      c += std::size_t(__builtin_popcountll(x.words()[k] | z.words()[k]));
    return c;
  }

  void mul(const PauliString& o) {
    x ^= o.x;
    z ^= o.z;
  }
  friend PauliString operator*(PauliString a, const PauliString& b) {
    a.mul(b);
    return a;
  }

  // 0=I 1=X 2=Z 3=Y on one qubit.
  int at(std::size_t q) const { return int(x.get(q)) | (int(z.get(q)) << 1); }
  void set(std::size_t q, int p) {
    x.set(q, p & 1);
    z.set(q, (p >> 1) & 1);
  }

  bool operator==(const PauliString& o) const { return x == o.x && z == o.z; }
  bool lex_less(const PauliString& o) const {
    if (!(x == o.x)) return x.lex_less(o.x);
    return z.lex_less(o.z);
  }

  static PauliString from_str(const std::string& s);
  std::string str() const;
};

// 1 iff the operators anticommute.
int symplectic_product(const PauliString& a, const PauliString& b);

// Dense GF(2) matrix, row-major bit packed.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(rows * wpr_, 0) {}

  static BinaryMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    uint64_t m = uint64_t(1) << (c & 63);
    if (v)
      bits_[r * wpr_ + (c >> 6)] |= m;
    else
      bits_[r * wpr_ + (c >> 6)] &= ~m;
  }

  void xor_rows(std::size_t dst, std::size_t src) {
    uint64_t* d = &bits_[dst * wpr_];
    const uint64_t* s = &bits_[src * wpr_];
    for (std::size_t k = 0; k < wpr_; ++k) d[k] ^= s[k];
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t k = 0; k < wpr_; ++k)
      std::swap(bits_[a * wpr_ + k], bits_[b * wpr_ + k]);
  }

  BitVec row(std::size_t r) const {
    BitVec v(cols_);
    for (std::size_t k = 0; k < wpr_; ++k) v.words()[k] = bits_[r * wpr_ + k];
    return v;
  }
  void set_row(std::size_t r, const BitVec& v) {
    for (std::size_t k = 0; k < wpr_; ++k) bits_[r * wpr_ + k] = v.words()[k];
  }
  void append_row(const BitVec& v) {
    rows_ += 1;
    bits_.resize(rows_ * wpr_, 0);
    set_row(rows_ - 1, v);
  }

  BinaryMatrix transposed() const;

  bool operator==(const BinaryMatrix& o) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<uint64_t> bits_;
};

std::size_t rank(const BinaryMatrix& m);

// Unique reduced row-echelon form (zero rows dropped).
BinaryMatrix rref(const BinaryMatrix& m);

// Basis of {v : m v^T = 0}, one kernel vector per row.
BinaryMatrix kernel(const BinaryMatrix& m);

struct LinearSolution {
  bool consistent = false;
  BitVec particular;      // one solution of A x = b
  BinaryMatrix nullspace; // rows parameterize all solutions
};
LinearSolution solve_linear(const BinaryMatrix& a, const BitVec& b);

// Incremental row reducer: keeps an echelon basis of the vectors added so
// far, with optional tracking of the combination in terms of the inputs.
class RowSpace {
 public:
  explicit RowSpace(std::size_t cols, bool track_combos = false)
      : cols_(cols), track_(track_combos) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  // Reduces v against the basis; returns the residual.
  BitVec reduce(BitVec v) const;
  // Residual plus the combination of previously added vectors used.
  std::pair<BitVec, BitVec> reduce_tracked(BitVec v) const;

  bool contains(const BitVec& v) const { return reduce(v).none(); }

  // Adds v if independent; returns true when the dimension grew.
  bool add(const BitVec& v);

  std::size_t num_added() const { return n_added_; }
  const std::vector<BitVec>& basis() const { return rows_; }
  const std::vector<long>& pivots() const { return pivots_; }

 private:
  std::size_t cols_;
  bool track_;
  std::size_t n_added_ = 0;
  std::vector<BitVec> rows_;
  std::vector<BitVec> combos_;
  std::vector<long> pivots_;
};

// Symplectic (x|z) row embedding of Pauli strings over n qubits: columns
// [0,n) hold x bits, [n,2n) hold z bits.
BitVec pauli_to_row(const PauliString& p);
PauliString row_to_pauli(const BitVec& v);
// Parity of the symplectic form between two (x|z) rows.
int symplectic_product_rows(const BitVec& a, const BitVec& b);

}  // namespace floq
