#include "floq/dyncode.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "floq/solver.hpp"

namespace floq {

BitVec AssembledSystem::embed(const PauliString& p, bool outgoing) const {
  BitVec v(2 * total());
  for (std::size_t q = 0; q < n; ++q) {
    std::size_t slot = outgoing ? out_slot(q) : in_slot(q);
    if (p.x.get(q)) v.set(slot, true);
    if (p.z.get(q)) v.set(total() + slot, true);
  }
  return v;
}

PauliString AssembledSystem::restrict_side(const BitVec& row, bool outgoing) const {
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) {
    std::size_t slot = outgoing ? out_slot(q) : in_slot(q);
    p.x.set(q, row.get(slot));
    p.z.set(q, row.get(total() + slot));
  }
  return p;
}

std::vector<std::vector<long>> match_dirs(const GadgetGraph& layout,
                                          const std::vector<GadgetTableau>& per_gadget) {
  std::vector<std::vector<long>> map(layout.num_gadgets);
  for (std::size_t g = 0; g < layout.num_gadgets; ++g) {
    const GadgetShape& shape = per_gadget[g].shape;
    map[g].assign(shape.dirs.size(), -1);
    for (std::size_t d = 0; d < shape.dirs.size(); ++d) {
      long found = -1;
      for (std::size_t b : layout.bonds_of[g]) {
        if (layout.bonds[b].dir != shape.dirs[d].label) continue;
        if (found >= 0)
          throw std::invalid_argument("match_dirs: ambiguous direction label " +
                                      shape.dirs[d].label);
        found = long(b);
      }
      if (found < 0 && shape.dirs[d].legs > 0)
        throw std::invalid_argument("match_dirs: no bond for direction " +
                                    shape.dirs[d].label);
      map[g][d] = found;
    }
  }
  return map;
}

AssembledSystem assemble(const StabilizerCode& code_in, const StabilizerCode& code_out,
                         const GadgetGraph& layout,
                         const std::vector<GadgetTableau>& per_gadget,
                         const std::vector<std::vector<long>>& dir_to_bond) {
  if (per_gadget.size() != layout.num_gadgets)
    throw std::invalid_argument("assemble: gadget count mismatch");
  AssembledSystem sys;
  sys.n = code_in.n;
  sys.code_in = code_in;
  sys.code_out = code_out;

  // Bond leg columns, validated against both endpoints.
  std::vector<std::size_t> bond_base(layout.bonds.size());
  std::size_t bond_cursor = 0;
  for (std::size_t b = 0; b < layout.bonds.size(); ++b) {
    bond_base[b] = bond_cursor;
    bond_cursor += layout.bonds[b].legs;
    for (std::size_t l = 0; l < layout.bonds[b].legs; ++l)
      sys.bond_cols.push_back({0, long(b), l});
  }
  sys.n_bond = bond_cursor;
  for (std::size_t g = 0; g < layout.num_gadgets; ++g) {
    const GadgetShape& shape = per_gadget[g].shape;
    for (std::size_t d = 0; d < shape.dirs.size(); ++d) {
      long b = dir_to_bond[g][d];
      if (b < 0) continue;
      if (layout.bonds[std::size_t(b)].legs != shape.dirs[d].legs)
        throw std::invalid_argument("assemble: leg-count mismatch on a bond");
    }
  }

  // Qubits of each gadget (= site), in ascending order.
  std::vector<std::vector<std::size_t>> site_qubits(layout.num_gadgets);
  for (std::size_t q = 0; q < code_in.n; ++q)
    site_qubits[std::size_t(layout.replacement[q])].push_back(q);

  sys.h = BinaryMatrix(0, 2 * sys.total());
  for (std::size_t g = 0; g < layout.num_gadgets; ++g) {
    const GadgetTableau& tab = per_gadget[g];
    if (site_qubits[g].size() != tab.shape.m)
      throw std::invalid_argument("assemble: m mismatch at gadget");
    // Independent row basis of the gadget group.
    RowSpace basis(2 * tab.shape.total());
    std::vector<PauliString> rows;
    for (const auto& r : tab.rows)
      if (basis.add(pauli_to_row(r))) rows.push_back(r);
    for (const auto& r : rows) {
      BitVec v(2 * sys.total());
      auto put = [&](std::size_t slot, int pauli) {
        if (pauli & 1) v.set(slot, true);
        if (pauli & 2) v.set(sys.total() + slot, true);
      };
      for (std::size_t i = 0; i < tab.shape.m; ++i) {
        put(sys.in_slot(site_qubits[g][i]), r.at(tab.shape.in_col(i)));
        put(sys.out_slot(site_qubits[g][i]), r.at(tab.shape.out_col(i)));
      }
      for (std::size_t d = 0; d < tab.shape.dirs.size(); ++d) {
        long b = dir_to_bond[g][d];
        for (std::size_t l = 0; l < tab.shape.dirs[d].legs; ++l) {
          int pauli = r.at(tab.shape.leg_col(d, l));
          if (pauli == 0) continue;
          if (b < 0)
            throw std::invalid_argument("assemble: leg support on unmapped direction");
          put(sys.bond_slot(bond_base[std::size_t(b)] + l), pauli);
        }
      }
      sys.h.append_row(v);
    }
  }
  return sys;
}

// Basis of row-space elements supported only on the allowed slots. Slots are
// qubit positions; both x and z bits of a disallowed slot must vanish.
std::vector<BitVec> supported_subgroup(const BinaryMatrix& h, std::size_t total,
                                       const std::vector<char>& allowed) {
  // Eliminate with disallowed bit-columns first.
  std::vector<std::size_t> cols;
  for (std::size_t s = 0; s < total; ++s)
    if (!allowed[s]) {
      cols.push_back(s);
      cols.push_back(total + s);
    }
  for (std::size_t s = 0; s < total; ++s)
    if (allowed[s]) {
      cols.push_back(s);
      cols.push_back(total + s);
    }
  BinaryMatrix work = h;
  std::size_t r = 0;
  std::size_t n_dis = 0;
  for (std::size_t s = 0; s < total; ++s)
    if (!allowed[s]) n_dis += 2;
  for (std::size_t ci = 0; ci < cols.size() && r < work.rows(); ++ci) {
    std::size_t c = cols[ci];
    std::size_t p = r;
    while (p < work.rows() && !work.get(p, c)) ++p;
    if (p == work.rows()) continue;
    work.swap_rows(r, p);
    for (std::size_t i = 0; i < work.rows(); ++i)
      if (i != r && work.get(i, c)) work.xor_rows(i, r);
    ++r;
    if (ci + 1 == n_dis) break;  // pivots past this point live in allowed cols
  }
  // Rows r.. are combinations with zero disallowed part only after full
  // elimination of the disallowed columns; gather rows with empty disallowed
  // support.
  std::vector<BitVec> out;
  for (std::size_t i = 0; i < work.rows(); ++i) {
    BitVec row = work.row(i);
    bool clean = true;
    for (std::size_t s = 0; s < total && clean; ++s)
      if (!allowed[s] && (row.get(s) || row.get(total + s))) clean = false;
    if (clean && !row.none()) out.push_back(row);
  }
  // Reduce to an independent set.
  RowSpace rs(2 * total);
  std::vector<BitVec> basis;
  for (const auto& v : out)
    if (rs.add(v)) basis.push_back(v);
  return basis;
}

BoundaryGroup boundary_group(const AssembledSystem& sys) {
  BoundaryGroup g;
  std::vector<char> in_allowed(sys.total(), 0), out_allowed(sys.total(), 0);
  for (std::size_t q = 0; q < sys.n; ++q) {
    in_allowed[sys.in_slot(q)] = 1;
    out_allowed[sys.out_slot(q)] = 1;
  }
  auto in_basis = supported_subgroup(sys.h, sys.total(), in_allowed);
  auto out_basis = supported_subgroup(sys.h, sys.total(), out_allowed);
  g.in_rank = in_basis.size();
  g.out_rank = out_basis.size();
  for (const auto& v : in_basis) g.in_generators.push_back(sys.restrict_side(v, false));
  for (const auto& v : out_basis) g.out_generators.push_back(sys.restrict_side(v, true));
  return g;
}

BkrcReport bkrc_check(const AssembledSystem& sys) {
  BkrcReport rep;
  BoundaryGroup g = boundary_group(sys);
  rep.in_rank = g.in_rank;
  rep.out_rank = g.out_rank;
  rep.expected = sys.code_in.n - sys.code_in.k();
  rep.pass = rep.in_rank == rep.expected && rep.out_rank == rep.expected;
  if (!rep.pass) {
    // A measured boundary operator outside the check group is a logical.
    RowSpace checks_in(2 * sys.n);
    for (const auto& c : sys.code_in.checks) checks_in.add(pauli_to_row(c));
    for (const auto& p : g.in_generators)
      if (!checks_in.contains(pauli_to_row(p))) {
        rep.offending_logical = p;
        break;
      }
    if (!rep.offending_logical) {
      RowSpace checks_out(2 * sys.n);
      for (const auto& c : sys.code_out.checks) checks_out.add(pauli_to_row(c));
      for (const auto& p : g.out_generators)
        if (!checks_out.contains(pauli_to_row(p))) {
          rep.offending_logical = p;
          break;
        }
    }
  }
  return rep;
}

std::optional<PauliString> map_through(const AssembledSystem& sys,
                                       const PauliString& incoming) {
  // Solve for a row combination matching `incoming` on the in slots with
  // trivial bond support; the out restriction is the image.
  std::size_t t = sys.total();
  std::size_t restricted = sys.n + sys.n_bond;  // slots [0, n + n_bond)
  BinaryMatrix m(sys.h.rows(), 2 * restricted);
  for (std::size_t r = 0; r < sys.h.rows(); ++r)
    for (std::size_t s = 0; s < restricted; ++s) {
      m.set(r, s, sys.h.get(r, s));
      m.set(r, restricted + s, sys.h.get(r, t + s));
    }
  BitVec target(2 * restricted);
  for (std::size_t q = 0; q < sys.n; ++q) {
    target.set(sys.in_slot(q), incoming.x.get(q));
    target.set(restricted + sys.in_slot(q), incoming.z.get(q));
  }
  auto sol = solve_linear(m.transposed(), target);
  if (!sol.consistent) return std::nullopt;
  BitVec full(2 * t);
  for (std::size_t r = 0; r < sys.h.rows(); ++r)
    if (sol.particular.get(r)) full ^= sys.h.row(r);
  return sys.restrict_side(full, true);
}

LogicalAutomorphism logical_action(const AssembledSystem& sys,
                                   const LogicalBasis& basis_in,
                                   const LogicalBasis& basis_out) {
  std::size_t k = basis_in.k();
  LogicalAutomorphism out;
  out.map = BinaryMatrix(2 * k, 2 * k);

  RowSpace reducer(2 * sys.n, true);
  for (const auto& c : sys.code_out.checks) reducer.add(pauli_to_row(c));
  std::size_t first_logical = reducer.num_added();
  for (const auto& [lx, lz] : basis_out.pairs) {
    reducer.add(pauli_to_row(lx));
    reducer.add(pauli_to_row(lz));
  }

  for (std::size_t j = 0; j < 2 * k; ++j) {
    const PauliString& l = (j % 2 == 0) ? basis_in.pairs[j / 2].first
                                        : basis_in.pairs[j / 2].second;
    auto image = map_through(sys, l);
    if (!image)
      throw std::runtime_error("logical_action: incoming logical not preserved");
    auto [residual, combo] = reducer.reduce_tracked(pauli_to_row(*image));
    if (!residual.none())
      throw std::runtime_error("logical_action: image outside outgoing span");
    for (std::size_t i = 0; i < 2 * k; ++i)
      out.map.set(i, j, combo.get(first_logical + i));
  }

  // Symplectic check in the (X1,Z1,X2,Z2,...) pairing.
  auto sform = [&](std::size_t a, std::size_t b) {
    return (a / 2 == b / 2 && a != b) ? 1 : 0;
  };
  out.symplectic = true;
  for (std::size_t a = 0; a < 2 * k && out.symplectic; ++a)
    for (std::size_t b = 0; b < 2 * k && out.symplectic; ++b) {
      int acc = 0;
      for (std::size_t i = 0; i < 2 * k; ++i)
        for (std::size_t j = 0; j < 2 * k; ++j)
          if (out.map.get(i, a) && out.map.get(j, b)) acc ^= sform(i, j);
      if (acc != sform(a, b)) out.symplectic = false;
    }

  // Gate recognition: pair permutation with local single-qubit symplectics.
  auto block_name = [](int m00, int m01, int m10, int m11) -> const char* {
    if (m00 == 1 && m01 == 0 && m10 == 0 && m11 == 1) return "I";
    if (m00 == 0 && m01 == 1 && m10 == 1 && m11 == 0) return "H";
    if (m00 == 1 && m01 == 0 && m10 == 1 && m11 == 1) return "S";
    if (m00 == 1 && m01 == 1 && m10 == 0 && m11 == 1) return "SHS";
    if (m00 == 1 && m01 == 1 && m10 == 1 && m11 == 0) return "HS";
    if (m00 == 0 && m01 == 1 && m10 == 1 && m11 == 1) return "SH";
    return nullptr;
  };
  bool monomial = true;
  std::vector<long> perm(k, -1);
  std::vector<std::string> names(k);
  for (std::size_t jp = 0; jp < k && monomial; ++jp) {
    long target = -1;
    for (std::size_t ip = 0; ip < k; ++ip) {
      bool touched = false;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          if (out.map.get(2 * ip + std::size_t(a), 2 * jp + std::size_t(b)))
            touched = true;
      if (!touched) continue;
      if (target >= 0) { monomial = false; break; }
      target = long(ip);
    }
    if (!monomial || target < 0) { monomial = false; break; }
    perm[jp] = target;
    const char* nm = block_name(
        out.map.get(2 * std::size_t(target), 2 * jp),
        out.map.get(2 * std::size_t(target), 2 * jp + 1),
        out.map.get(2 * std::size_t(target) + 1, 2 * jp),
        out.map.get(2 * std::size_t(target) + 1, 2 * jp + 1));
    if (!nm) { monomial = false; break; }
    names[jp] = nm;
  }
  if (monomial) {
    bool ident_perm = true, same = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (perm[i] != long(i)) ident_perm = false;
      if (names[i] != names[0]) same = false;
    }
    std::string local;
    if (same) {
      local = names.empty() ? "I" : names[0];
      if (k > 1) {
        std::string rep = local;
        local = "(" + rep;
        for (std::size_t i = 1; i < k; ++i) local += "&" + rep;
        local += ")";
      }
    } else {
      local = "(";
      for (std::size_t i = 0; i < k; ++i) local += (i ? "&" : "") + names[i];
      local += ")";
    }
    if (ident_perm) {
      out.label = local;
    } else {
      std::string p = "SWAP[";
      for (std::size_t i = 0; i < k; ++i)
        p += (i ? "," : "") + std::to_string(perm[i]);
      p += "]";
      out.label = local + "*" + p;
    }
    if (out.label == "I" || (ident_perm && k > 1 && same && names[0] == "I"))
      out.label = "I";
  } else {
    out.label = "matrix";
  }
  return out;
}

AssembledSystem compose(const AssembledSystem& a, const AssembledSystem& b) {
  if (a.n != b.n) throw std::invalid_argument("compose: size mismatch");
  if (a.code_out.checks.size() != b.code_in.checks.size())
    throw std::invalid_argument("compose: interface code mismatch");
  for (std::size_t i = 0; i < a.code_out.checks.size(); ++i)
    if (!(a.code_out.checks[i] == b.code_in.checks[i]))
      throw std::invalid_argument("compose: interface code mismatch");

  AssembledSystem sys;
  sys.n = a.n;
  sys.code_in = a.code_in;
  sys.code_out = b.code_out;
  sys.n_bond = a.n_bond + a.n + b.n_bond;
  int a_periods = 0;
  for (const auto& bc : a.bond_cols) a_periods = std::max(a_periods, bc.period + 1);
  sys.bond_cols = a.bond_cols;
  // Interface wires marked per interface index: -1000 - (left period count - 1).
  for (std::size_t q = 0; q < a.n; ++q)
    sys.bond_cols.push_back({-1000 - (a_periods - 1), long(q), 0});
  for (auto bc : b.bond_cols) {
    if (bc.period >= 0) bc.period += a_periods;
    sys.bond_cols.push_back(bc);
  }

  sys.h = BinaryMatrix(0, 2 * sys.total());
  auto emit = [&](const AssembledSystem& src, bool is_a) {
    std::size_t t_src = src.total();
    for (std::size_t r = 0; r < src.h.rows(); ++r) {
      BitVec v(2 * sys.total());
      auto put = [&](std::size_t dst_slot, bool xbit, bool zbit) {
        if (xbit) v.set(dst_slot, true);
        if (zbit) v.set(sys.total() + dst_slot, true);
      };
      for (std::size_t s = 0; s < t_src; ++s) {
        bool xb = src.h.get(r, s), zb = src.h.get(r, t_src + s);
        if (!xb && !zb) continue;
        std::size_t dst;
        if (is_a) {
          if (s < src.n)
            dst = sys.in_slot(s);
          else if (s < src.n + src.n_bond)
            dst = sys.bond_slot(s - src.n);
          else
            dst = sys.bond_slot(a.n_bond + (s - src.n - src.n_bond));  // mid
        } else {
          if (s < src.n)
            dst = sys.bond_slot(a.n_bond + s);  // mid
          else if (s < src.n + src.n_bond)
            dst = sys.bond_slot(a.n_bond + a.n + (s - src.n));
          else
            dst = sys.out_slot(s - src.n - src.n_bond);
        }
        put(dst, xb, zb);
      }
      sys.h.append_row(v);
    }
  };
  emit(a, true);
  emit(b, false);
  return sys;
}

AssembledSystem dagger(const AssembledSystem& sys) {
  AssembledSystem d = sys;
  d.code_in = sys.code_out;
  d.code_out = sys.code_in;
  std::size_t t = sys.total();
  for (std::size_t r = 0; r < d.h.rows(); ++r)
    for (std::size_t q = 0; q < sys.n; ++q) {
      bool xi = d.h.get(r, sys.in_slot(q)), zi = d.h.get(r, t + sys.in_slot(q));
      bool xo = d.h.get(r, sys.out_slot(q)), zo = d.h.get(r, t + sys.out_slot(q));
      d.h.set(r, sys.in_slot(q), xo);
      d.h.set(r, t + sys.in_slot(q), zo);
      d.h.set(r, sys.out_slot(q), xi);
      d.h.set(r, t + sys.out_slot(q), zi);
    }
  return d;
}

AssembledSystem rewind(const AssembledSystem& sys) {
  return compose(sys, dagger(sys));
}

DistanceReport spacetime_distance(const AssembledSystem& sys,
                                  const LogicalBasis& basis_in, std::size_t w_max,
                                  unsigned threads) {
  std::size_t t = sys.total();
  RowSpace stab(2 * t);
  for (std::size_t r = 0; r < sys.h.rows(); ++r) stab.add(sys.h.row(r));
  RowSpace logi(2 * t, true);
  std::size_t k2 = 2 * basis_in.k();
  for (const auto& [lx, lz] : basis_in.pairs) {
    if (!logi.add(stab.reduce(sys.embed(lx, false))))
      throw std::runtime_error("spacetime_distance: logical inside stabilizer");
    if (!logi.add(stab.reduce(sys.embed(lz, false))))
      throw std::runtime_error("spacetime_distance: logical inside stabilizer");
  }

  // Class index -> best (weight, certificate).
  std::map<std::vector<int>, std::pair<std::size_t, BitVec>> best;
  std::mutex best_mutex;

  auto classify = [&](const BitVec& e, std::size_t weight) {
    BitVec r = stab.reduce(e);
    if (r.none()) return;
    auto [r2, combo] = logi.reduce_tracked(r);
    if (!r2.none()) return;
    std::vector<int> cls(k2);
    bool any = false;
    for (std::size_t i = 0; i < k2; ++i) {
      cls[i] = combo.get(i);
      any |= cls[i];
    }
    if (!any) return;
    std::lock_guard<std::mutex> lock(best_mutex);
    auto it = best.find(cls);
    if (it == best.end() || weight < it->second.first) best[cls] = {weight, e};
  };

  // Enumerate supports of exactly w slots with nonidentity Paulis.
  for (std::size_t w = 1; w <= w_max; ++w) {
    auto run_first = [&](std::size_t first) {
      std::vector<std::size_t> slots(w);
      slots[0] = first;
      std::function<void(std::size_t)> rec = [&](std::size_t depth) {
        if (depth == w) {
          std::size_t count = 1;
          for (std::size_t i = 0; i < w; ++i) count *= 3;
          for (std::size_t pat = 0; pat < count; ++pat) {
            BitVec e(2 * t);
            std::size_t p = pat;
            for (std::size_t i = 0; i < w; ++i) {
              int code = int(p % 3) + 1;
              p /= 3;
              if (code & 1) e.set(slots[i], true);
              if (code & 2) e.set(t + slots[i], true);
            }
            classify(e, w);
          }
          return;
        }
        for (std::size_t s = slots[depth - 1] + 1; s + (w - depth) <= t + 1 && s < t; ++s) {
          slots[depth] = s;
          rec(depth + 1);
        }
      };
      rec(1);
    };
    if (threads <= 1) {
      for (std::size_t first = 0; first + w <= t; ++first) run_first(first);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < threads; ++i)
        pool.emplace_back([&] {
          for (;;) {
            std::size_t first = next.fetch_add(1);
            if (first + w > t) return;
            run_first(first);
          }
        });
      for (auto& th : pool) th.join();
    }
    // Early exit: d_st found and all basis classes resolved at this weight.
    if (!best.empty()) {
      bool all_basis = true;
      for (std::size_t j = 0; j < k2 && all_basis; ++j) {
        std::vector<int> unit(k2, 0);
        unit[j] = 1;
        if (!best.count(unit)) all_basis = false;
      }
      if (all_basis) break;
    }
  }

  DistanceReport rep;
  rep.per_logical.resize(k2);
  for (std::size_t j = 0; j < k2; ++j) {
    std::vector<int> unit(k2, 0);
    unit[j] = 1;
    auto it = best.find(unit);
    if (it != best.end()) {
      rep.per_logical[j] = {true, it->second.first, it->second.second};
    } else {
      rep.per_logical[j] = {false, w_max + 1, BitVec(2 * t)};
    }
  }
  rep.exact = !best.empty();
  if (rep.exact) {
    rep.d_st = SIZE_MAX;
    for (const auto& [cls, val] : best)
      if (val.first < rep.d_st) {
        rep.d_st = val.first;
        rep.certificate = val.second;
      }
  } else {
    rep.d_st = w_max + 1;
  }
  return rep;
}

MlscReport mlsc_check(const AssembledSystem& small_sys, const LogicalBasis& small_basis,
                      std::size_t d_small, const AssembledSystem& large_sys,
                      const LogicalBasis& large_basis, std::size_t d_large,
                      unsigned threads) {
  MlscReport rep;
  DistanceReport ds = spacetime_distance(small_sys, small_basis, d_small, threads);
  rep.d_st_small = ds.d_st;
  rep.small_exact = ds.exact;
  std::size_t probe = std::max(ds.d_st, d_large - 1);
  DistanceReport dl = spacetime_distance(large_sys, large_basis, probe, threads);
  rep.d_st_large = dl.d_st;
  rep.large_exact = dl.exact;
  bool grows = dl.d_st > ds.d_st;
  bool small_ok = ds.d_st >= d_small;
  bool large_ok = dl.d_st >= d_large;
  rep.pass = grows && small_ok && large_ok;
  return rep;
}

bool is_minimal_gadget(const GadgetTableau& g) {
  BinaryMatrix full = g.row_matrix();
  std::size_t full_rank = rank(full);
  std::size_t t = g.shape.total();
  for (std::size_t d = 0; d < g.shape.dirs.size(); ++d) {
    if (g.shape.dirs[d].legs == 0) continue;
    // Elements supported only on direction d: rank drop when its columns are
    // removed.
    BinaryMatrix rest(full.rows(), 2 * t);
    for (std::size_t r = 0; r < full.rows(); ++r)
      for (std::size_t c = 0; c < t; ++c) {
        if (g.shape.dir_of_col(c) == long(d)) continue;
        rest.set(r, c, full.get(r, c));
        rest.set(r, t + c, full.get(r, t + c));
      }
    if (rank(rest) < full_rank) return false;
  }
  return true;
}

namespace {

BitVec transform_row(const GadgetShape& shape, const BitVec& row,
                     const std::vector<BinaryMatrix>& per_dir) {
  std::size_t t = shape.total();
  BitVec out = row;
  for (std::size_t d = 0; d < shape.dirs.size(); ++d) {
    std::size_t l = shape.dirs[d].legs;
    if (l == 0) continue;
    PauliString p(l);
    for (std::size_t leg = 0; leg < l; ++leg) {
      std::size_t c = shape.leg_col(d, leg);
      p.x.set(leg, row.get(c));
      p.z.set(leg, row.get(t + c));
    }
    PauliString q = apply_symplectic(per_dir[d], p);
    for (std::size_t leg = 0; leg < l; ++leg) {
      std::size_t c = shape.leg_col(d, leg);
      out.set(c, q.x.get(leg));
      out.set(t + c, q.z.get(leg));
    }
  }
  return out;
}

std::vector<std::string> space_signature(const std::vector<BitVec>& rows,
                                         std::size_t cols) {
  BinaryMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  BinaryMatrix canon = rref(m);
  std::vector<std::string> sig;
  for (std::size_t r = 0; r < canon.rows(); ++r) {
    std::string s;
    for (std::size_t i = 0; i < cols; ++i) s += canon.get(r, i) ? '1' : '0';
    sig.push_back(s);
  }
  return sig;
}

// Projection of a row onto the in/out legs plus directions <= k (other
// columns zeroed). The per-direction action commutes with this projection.
BitVec project_prefix(const GadgetShape& shape, const BitVec& row, long k) {
  std::size_t t = shape.total();
  BitVec out(2 * t);
  for (std::size_t c = 0; c < t; ++c) {
    long d = shape.dir_of_col(c);
    if (d > k) continue;
    out.set(c, row.get(c));
    out.set(t + c, row.get(t + c));
  }
  return out;
}

const char* single_qubit_name(const BinaryMatrix& m) {
  int a = m.get(0, 0), b = m.get(0, 1), c = m.get(1, 0), d = m.get(1, 1);
  if (a == 1 && b == 0 && c == 0 && d == 1) return "I";
  if (a == 0 && b == 1 && c == 1 && d == 0) return "H";
  if (a == 1 && b == 0 && c == 1 && d == 1) return "S";
  if (a == 1 && b == 1 && c == 0 && d == 1) return "SHS";
  if (a == 1 && b == 1 && c == 1 && d == 0) return "HS";
  if (a == 0 && b == 1 && c == 1 && d == 1) return "SH";
  return "?";
}

std::string witness_label(const GadgetShape& shape,
                          const std::vector<BinaryMatrix>& per_dir) {
  // Recognize per-leg product transformations.
  std::vector<std::string> parts;
  for (std::size_t d = 0; d < shape.dirs.size(); ++d) {
    std::size_t l = shape.dirs[d].legs;
    if (l == 0) { parts.push_back("-"); continue; }
    const BinaryMatrix& m = per_dir[d];
    bool product = true;
    std::string name;
    for (std::size_t leg = 0; leg < l && product; ++leg) {
      BinaryMatrix blk(2, 2);
      blk.set(0, 0, m.get(leg, leg));
      blk.set(0, 1, m.get(leg, l + leg));
      blk.set(1, 0, m.get(l + leg, leg));
      blk.set(1, 1, m.get(l + leg, l + leg));
      // Off-block entries must vanish for a leg-local product.
      for (std::size_t r = 0; r < 2 * l && product; ++r)
        for (std::size_t c = 0; c < 2 * l && product; ++c) {
          bool in_block = (r % l) == leg && (c % l) == leg;
          if (!in_block && ((r % l) == leg || (c % l) == leg) && m.get(r, c))
            product = false;
        }
      name += (leg ? "*" : "") + std::string(single_qubit_name(blk));
    }
    parts.push_back(product ? name : "general");
  }
  bool uniform = true;
  for (const auto& p : parts)
    if (p != parts[0]) uniform = false;
  if (uniform && !parts.empty()) return parts[0] + " on every bond";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ";" : "") + parts[i];
  return out;
}

}  // namespace

BondLocalWitness bond_local_equivalent(const GadgetTableau& e1, const GadgetTableau& e2) {
  if (!(e1.shape == e2.shape))
    throw std::invalid_argument("bond_local_equivalent: layout mismatch");
  if (!is_minimal_gadget(e1) || !is_minimal_gadget(e2))
    throw std::invalid_argument("bond_local_equivalent: gadgets must be minimal");
  const GadgetShape& shape = e1.shape;
  std::size_t t = shape.total();
  std::size_t nd = shape.dirs.size();

  // Projected targets: e2's row space truncated to each direction prefix.
  std::vector<BitVec> full1, full2;
  for (const auto& r : e1.rows) full1.push_back(pauli_to_row(r));
  for (const auto& r : e2.rows) full2.push_back(pauli_to_row(r));
  std::vector<std::vector<std::string>> target(nd);
  for (std::size_t k = 0; k < nd; ++k) {
    std::vector<BitVec> proj;
    for (const auto& r : full2) proj.push_back(project_prefix(shape, r, long(k)));
    target[k] = space_signature(proj, 2 * t);
  }
  std::vector<std::string> full_target = space_signature(full2, 2 * t);

  BondLocalWitness w;
  w.per_dir.assign(nd, BinaryMatrix());
  // Identity placeholder for not-yet-assigned directions.
  std::vector<BinaryMatrix> current(nd);
  for (std::size_t d = 0; d < nd; ++d)
    current[d] = BinaryMatrix::identity(2 * std::max<std::size_t>(shape.dirs[d].legs, 1));

  std::function<bool(std::size_t)> search = [&](std::size_t d) -> bool {
    if (d == nd) {
      std::vector<BitVec> transformed;
      for (const auto& r : full1) transformed.push_back(transform_row(shape, r, current));
      if (space_signature(transformed, 2 * t) != full_target) return false;
      w.equivalent = true;
      w.per_dir = current;
      w.label = witness_label(shape, current);
      return true;
    }
    std::size_t legs = shape.dirs[d].legs;
    if (legs == 0) return search(d + 1);
    for (const auto& g : symplectic_group(legs)) {
      current[d] = g;
      // Projection prune: the transform commutes with truncation to the
      // prefix, so truncated row spaces must already agree.
      std::vector<BitVec> transformed;
      for (const auto& r : full1)
        transformed.push_back(
            project_prefix(shape, transform_row(shape, r, current), long(d)));
      if (space_signature(transformed, 2 * t) != target[d]) continue;
      if (search(d + 1)) return true;
    }
    return false;
  };
  search(0);
  return w;
}

}  // namespace floq
