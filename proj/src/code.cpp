#include "floq/code.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace floq {

std::array<int, 3> LatticeInfo::wrapped_delta(std::size_t from_site,
                                              std::size_t to_site) const {
  std::array<int, 3> d{};
  for (int a = 0; a < 3; ++a) {
    d[a] = site_pos[to_site][a] - site_pos[from_site][a];
    if (period[a] > 0) {
      d[a] %= period[a];
      if (d[a] > period[a] / 2) d[a] -= period[a];
      if (d[a] <= -period[a] / 2) d[a] += period[a];
    }
  }
  return d;
}

std::size_t StabilizerCode::num_sites() const {
  if (site_of.empty()) return n;
  int mx = -1;
  for (int s : site_of) mx = std::max(mx, s);
  return std::size_t(mx + 1);
}

std::size_t StabilizerCode::qubits_per_site() const {
  if (site_of.empty()) return 1;
  return n / num_sites();
}

std::vector<std::size_t> StabilizerCode::site_qubits(int site) const {
  std::vector<std::size_t> out;
  if (site_of.empty()) {
    out.push_back(std::size_t(site));
    return out;
  }
  for (std::size_t q = 0; q < n; ++q)
    if (site_of[q] == site) out.push_back(q);
  return out;
}

BinaryMatrix StabilizerCode::check_matrix() const {
  BinaryMatrix m(0, 2 * n);
  for (const auto& c : checks) m.append_row(pauli_to_row(c));
  return m;
}

std::size_t StabilizerCode::check_rank() const { return rank(check_matrix()); }

void StabilizerCode::validate() const {
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (checks[i].num_qubits() != n)
      throw std::invalid_argument("check length mismatch");
    for (std::size_t j = i + 1; j < checks.size(); ++j)
      if (symplectic_product(checks[i], checks[j]))
        throw std::invalid_argument("checks do not commute");
  }
  if (css_split) {
    if (css_split->size() != checks.size())
      throw std::invalid_argument("css split size mismatch");
    for (std::size_t i = 0; i < checks.size(); ++i) {
      char t = (*css_split)[i];
      if (t == 'X' && !checks[i].z.none())
        throw std::invalid_argument("X-type check has Z support");
      if (t == 'Z' && !checks[i].x.none())
        throw std::invalid_argument("Z-type check has X support");
    }
  }
  if (!site_of.empty() && site_of.size() != n)
    throw std::invalid_argument("site map size mismatch");
}

TannerGraph tanner_graph(const StabilizerCode& code) {
  TannerGraph g;
  g.num_qubits = code.n;
  g.checks_of_qubit.resize(code.n);
  for (std::size_t c = 0; c < code.checks.size(); ++c) {
    std::vector<std::size_t> sup;
    for (std::size_t q = 0; q < code.n; ++q)
      if (code.checks[c].at(q) != 0) sup.push_back(q);
    for (std::size_t q : sup) g.checks_of_qubit[q].push_back(c);
    g.check_support.push_back(std::move(sup));
    g.check_type.push_back(code.css_split ? (*code.css_split)[c] : 'P');
  }
  return g;
}

LogicalBasis logical_basis(const StabilizerCode& code) {
  // Centralizer of the check space: kernel of the checks against the
  // symplectic form, i.e. of the matrix with x/z halves swapped.
  BinaryMatrix swapped(0, 2 * code.n);
  for (const auto& c : code.checks) {
    PauliString s;
    s.x = c.z;
    s.z = c.x;
    swapped.append_row(pauli_to_row(s));
  }
  BinaryMatrix cent = kernel(swapped);

  RowSpace checks_space(2 * code.n);
  for (const auto& c : code.checks) checks_space.add(pauli_to_row(c));

  // Candidates: centralizer elements independent of the checks.
  std::vector<BitVec> cands;
  {
    RowSpace seen(2 * code.n);
    for (const auto& c : code.checks) seen.add(pauli_to_row(c));
    for (std::size_t r = 0; r < cent.rows(); ++r) {
      BitVec v = cent.row(r);
      if (seen.add(v)) cands.push_back(v);
    }
  }

  // Symplectic Gram-Schmidt pairing.
  LogicalBasis basis;
  std::vector<BitVec> pool = cands;
  while (!pool.empty()) {
    BitVec a = pool.front();
    pool.erase(pool.begin());
    std::size_t mate = SIZE_MAX;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (symplectic_product_rows(a, pool[i])) { mate = i; break; }
    if (mate == SIZE_MAX) continue;  // stabilizer-equivalent leftover
    BitVec b = pool[mate];
    pool.erase(pool.begin() + long(mate));
    for (auto& c : pool) {
      if (symplectic_product_rows(c, b)) c ^= a;
      if (symplectic_product_rows(c, a)) c ^= b;
    }
    basis.pairs.emplace_back(row_to_pauli(a), row_to_pauli(b));
  }

  // Prefer X-heavy partner first for readability.
  for (auto& [lx, lz] : basis.pairs) {
    if (lx.x.popcount() < lz.x.popcount()) std::swap(lx, lz);
  }
  return basis;
}

namespace {

// Qubit adjacency: share at least one check.
std::vector<std::vector<std::size_t>> qubit_adjacency(const TannerGraph& g) {
  std::vector<std::set<std::size_t>> adj(g.num_qubits);
  for (const auto& sup : g.check_support)
    for (std::size_t a : sup)
      for (std::size_t b : sup)
        if (a != b) adj[a].insert(b);
  std::vector<std::vector<std::size_t>> out(g.num_qubits);
  for (std::size_t q = 0; q < g.num_qubits; ++q)
    out[q] = std::vector<std::size_t>(adj[q].begin(), adj[q].end());
  return out;
}

// Enumerate connected supports of exactly `size` qubits whose minimum element
// is `root`, calling fn for each. Standard connected-subgraph growth that
// only adds qubits above the root.
void connected_supports(const std::vector<std::vector<std::size_t>>& adj,
                        std::size_t root, std::size_t size,
                        std::vector<std::size_t>& cur,
                        std::set<std::size_t>& frontier,
                        std::set<std::size_t>& used,
                        const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (cur.size() == size) {
    fn(cur);
    return;
  }
  // Copy of the frontier we may consume at this depth.
  std::vector<std::size_t> options(frontier.begin(), frontier.end());
  for (std::size_t v : options) {
    if (v <= root || used.count(v)) continue;
    // Elements consumed at this level must not be reconsidered deeper to
    // avoid duplicates.
    used.insert(v);
    std::vector<std::size_t> added;
    cur.push_back(v);
    std::set<std::size_t> new_frontier = frontier;
    new_frontier.erase(v);
    for (std::size_t w : adj[v])
      if (w > root && !used.count(w) &&
          std::find(cur.begin(), cur.end(), w) == cur.end())
        new_frontier.insert(w);
    connected_supports(adj, root, size, cur, new_frontier, used, fn);
    cur.pop_back();
  }
  for (std::size_t v : options)
    if (v > root) used.erase(v);
}

}  // namespace

DistanceResult code_distance(const StabilizerCode& code, std::size_t w_max,
                             unsigned threads) {
  TannerGraph g = tanner_graph(code);
  auto adj = qubit_adjacency(g);
  RowSpace check_space(2 * code.n);
  for (const auto& c : code.checks) check_space.add(pauli_to_row(c));

  auto try_support = [&](const std::vector<std::size_t>& sup,
                         PauliString& found) -> bool {
    std::size_t w = sup.size();
    std::size_t count = 1;
    for (std::size_t i = 0; i < w; ++i) count *= 3;
    for (std::size_t code_pt = 0; code_pt < count; ++code_pt) {
      PauliString p(code.n);
      std::size_t t = code_pt;
      for (std::size_t i = 0; i < w; ++i) {
        p.set(sup[i], int(t % 3) + 1);
        t /= 3;
      }
      bool commutes = true;
      for (const auto& chk : code.checks)
        if (symplectic_product(p, chk)) { commutes = false; break; }
      if (!commutes) continue;
      if (!check_space.contains(pauli_to_row(p))) {
        found = p;
        return true;
      }
    }
    return false;
  };

  for (std::size_t w = 1; w <= w_max; ++w) {
    std::vector<PauliString> hits(code.n);
    std::vector<char> hit(code.n, 0);
    auto run_root = [&](std::size_t root) {
      std::vector<std::size_t> cur{root};
      std::set<std::size_t> frontier;
      for (std::size_t v : adj[root])
        if (v > root) frontier.insert(v);
      std::set<std::size_t> used;
      connected_supports(adj, root, w, cur, frontier, used,
                         [&](const std::vector<std::size_t>& sup) {
                           if (hit[root]) return;
                           PauliString p;
                           if (try_support(sup, p)) {
                             hits[root] = p;
                             hit[root] = 1;
                           }
                         });
    };
    if (threads <= 1) {
      for (std::size_t root = 0; root < code.n; ++root) run_root(root);
    } else {
      std::vector<std::thread> pool;
      std::atomic<std::size_t> next{0};
      for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
          for (;;) {
            std::size_t root = next.fetch_add(1);
            if (root >= code.n) return;
            run_root(root);
          }
        });
      for (auto& t : pool) t.join();
    }
    for (std::size_t root = 0; root < code.n; ++root)
      if (hit[root]) return {true, w, hits[root]};
  }
  return {false, w_max + 1, PauliString(code.n)};
}

void write_code(std::ostream& os, const StabilizerCode& code) {
  os << code.n << ' ' << code.k() << ' '
     << (code.name.empty() ? std::string("unnamed") : code.name) << '\n';
  for (std::size_t i = 0; i < code.checks.size(); ++i) {
    os << code.checks[i].str();
    if (code.css_split) os << ' ' << (*code.css_split)[i];
    os << '\n';
  }
  if (!code.site_of.empty()) {
    os << "SITE\n";
    for (std::size_t q = 0; q < code.n; ++q)
      os << q << ' ' << code.site_of[q] << '\n';
  }
}

StabilizerCode read_code(std::istream& is) {
  StabilizerCode code;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty code file");
  {
    std::istringstream hdr(line);
    std::size_t k_claimed;
    if (!(hdr >> code.n >> k_claimed >> code.name))
      throw std::runtime_error("bad code header");
  }
  bool any_type = false;
  std::vector<char> types;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line == "SITE") {
      code.site_of.assign(code.n, 0);
      std::size_t q;
      int s;
      while (is >> q >> s) code.site_of[q] = s;
      break;
    }
    std::istringstream ls(line);
    std::string pauli, type;
    ls >> pauli >> type;
    code.checks.push_back(PauliString::from_str(pauli));
    if (!type.empty()) {
      any_type = true;
      types.push_back(type[0]);
    } else {
      types.push_back('P');
    }
  }
  if (any_type) code.css_split = types;
  code.validate();
  return code;
}

}  // namespace floq
