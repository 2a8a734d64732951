#include "floq/solver.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace floq {

namespace {

BinaryMatrix symplectic_form(std::size_t l) {
  BinaryMatrix f(2 * l, 2 * l);
  for (std::size_t i = 0; i < l; ++i) {
    f.set(i, l + i, true);
    f.set(l + i, i, true);
  }
  return f;
}

BinaryMatrix mat_mul(const BinaryMatrix& a, const BinaryMatrix& b) {
  BinaryMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a.get(i, k))
        for (std::size_t j = 0; j < b.cols(); ++j)
          if (b.get(k, j)) c.set(i, j, c.get(i, j) ^ 1);
  return c;
}

}  // namespace

const std::vector<BinaryMatrix>& symplectic_group(std::size_t legs) {
  static std::map<std::size_t, std::vector<BinaryMatrix>> cache;
  auto it = cache.find(legs);
  if (it != cache.end()) return it->second;
  if (legs < 1 || legs > 2)
    throw std::invalid_argument("symplectic_group: supported for 1 or 2 legs");

  std::size_t l = legs;
  std::vector<BinaryMatrix> gens;
  for (std::size_t q = 0; q < l; ++q) {
    BinaryMatrix h = BinaryMatrix::identity(2 * l);  // H_q: swap x_q, z_q
    h.set(q, q, false);
    h.set(l + q, l + q, false);
    h.set(q, l + q, true);
    h.set(l + q, q, true);
    gens.push_back(h);
    BinaryMatrix s = BinaryMatrix::identity(2 * l);  // S_q: z_q += x_q
    s.set(l + q, q, true);
    gens.push_back(s);
  }
  if (l == 2) {
    BinaryMatrix cx = BinaryMatrix::identity(4);  // CNOT 0->1
    cx.set(1, 0, true);
    cx.set(2, 3, true);
    gens.push_back(cx);
  }
  std::set<std::vector<uint64_t>> seen;
  std::vector<BinaryMatrix> group{BinaryMatrix::identity(2 * l)};
  auto key = [&](const BinaryMatrix& m) {
    std::vector<uint64_t> k;
    for (std::size_t r = 0; r < m.rows(); ++r) k.push_back(m.row(r).words()[0]);
    return k;
  };
  seen.insert(key(group[0]));
  for (std::size_t head = 0; head < group.size(); ++head) {
    BinaryMatrix cur = group[head];
    for (const auto& g : gens) {
      BinaryMatrix nxt = mat_mul(g, cur);
      if (seen.insert(key(nxt)).second) group.push_back(nxt);
    }
  }
  // Sanity: symplectic form preserved and expected order.
  BinaryMatrix omega = symplectic_form(l);
  for (const auto& m : group) {
    BinaryMatrix chk = mat_mul(mat_mul(m.transposed(), omega), m);
    if (!(chk == omega)) throw std::logic_error("symplectic_group: bad element");
  }
  std::size_t expected = l == 1 ? 6 : 720;
  if (group.size() != expected) throw std::logic_error("symplectic_group: bad order");
  auto& slot = cache[legs];
  slot = std::move(group);
  return slot;
}

PauliString apply_symplectic(const BinaryMatrix& m, const PauliString& p) {
  std::size_t l = p.num_qubits();
  BitVec v(2 * l);
  for (std::size_t q = 0; q < l; ++q) {
    v.set(q, p.x.get(q));
    v.set(l + q, p.z.get(q));
  }
  BitVec w(2 * l);
  for (std::size_t r = 0; r < 2 * l; ++r) {
    bool bit = false;
    for (std::size_t c = 0; c < 2 * l; ++c)
      if (m.get(r, c) && v.get(c)) bit = !bit;
    w.set(r, bit);
  }
  PauliString out(l);
  for (std::size_t q = 0; q < l; ++q) {
    out.x.set(q, w.get(q));
    out.z.set(q, w.get(l + q));
  }
  return out;
}

std::size_t Stencil::find_symbol(const std::string& name) const {
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i].name == name) return i;
  throw std::invalid_argument("unknown symbol " + name);
}

std::vector<Constraint> build_consistency_system(const Stencil& stencil) {
  std::vector<Constraint> out;
  std::set<std::pair<std::set<std::pair<std::size_t, std::size_t>>, int>> seen;
  // Group rows by representative gadget.
  std::map<std::size_t, std::vector<std::size_t>> by_gadget;
  for (std::size_t r = 0; r < stencil.rows.size(); ++r)
    by_gadget[stencil.rows[r].gadget].push_back(r);
  for (const auto& [g, idx] : by_gadget) {
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        const auto& ra = stencil.rows[idx[a]];
        const auto& rb = stencil.rows[idx[b]];
        Constraint c;
        c.parity = symplectic_product(ra.in_out, rb.in_out);
        for (const auto& sa : ra.slots)
          for (const auto& sb : rb.slots)
            if (sa.dir == sb.dir) c.pairs.push_back({sa.symbol, sb.symbol});
        if (c.pairs.empty() && c.parity == 0) continue;
        std::set<std::pair<std::size_t, std::size_t>> norm;
        for (auto [x, y] : c.pairs) norm.insert({std::min(x, y), std::max(x, y)});
        if (!seen.insert({norm, c.parity}).second) continue;
        c.label = ra.tag + "|" + rb.tag;
        out.push_back(std::move(c));
      }
  }
  return out;
}

namespace {

// Enumeration order I < X < Z < Y per leg, leg 0 most significant.
std::vector<PauliString> symbol_domain(std::size_t legs, char css_type,
                                       bool zero_allowed) {
  static const int order[4] = {0, 1, 2, 3};  // I,X,Z,Y via at()/set() codes
  std::vector<PauliString> out;
  std::size_t count = 1;
  for (std::size_t i = 0; i < legs; ++i) count *= 4;
  for (std::size_t v = 0; v < count; ++v) {
    PauliString p(legs);
    std::size_t t = v;
    for (std::size_t leg = legs; leg-- > 0;) {
      int code = order[t % 4];
      // at()/set() encodes I=0 X=1 Z=2 Y=3 already in I<X<Z<Y order.
      p.set(leg, code);
      t /= 4;
    }
    if (p.is_identity() && !zero_allowed) continue;
    if (css_type == 'X' && !p.z.none()) continue;
    if (css_type == 'Z' && !p.x.none()) continue;
    out.push_back(p);
  }
  return out;
}

struct SolverState {
  const Stencil* stencil;
  std::vector<std::size_t> sym_legs;
  std::vector<Constraint> constraints;
  // For each symbol: constraints that become fully assigned when it is set
  // (given the chosen order).
  std::vector<std::vector<std::size_t>> ready_after;
  std::vector<std::size_t> order;
};

bool eval_constraint(const Constraint& c, const Assignment& a) {
  int acc = c.parity;
  for (auto [s1, s2] : c.pairs) acc ^= symplectic_product(a[s1], a[s2]);
  return acc == 0;
}

}  // namespace

Assignment canonical_assignment(const Stencil& stencil, const LegBudget& budget,
                                const Assignment& a) {
  // Expand to per-direction slot tuples, canonicalize each direction block
  // independently, and emit the blocks back-to-back as a comparison key.
  Assignment key;
  for (std::size_t d = 0; d < stencil.groups.size(); ++d) {
    std::size_t legs = budget.at(stencil.groups[d]);
    if (legs == 0) continue;
    std::vector<PauliString> tuple;
    for (const auto& row : stencil.rows)
      for (const auto& slot : row.slots)
        if (slot.dir == d) tuple.push_back(a[slot.symbol]);
    if (tuple.empty()) continue;
    std::vector<PauliString> best = tuple;
    bool first = true;
    for (const auto& g : symplectic_group(legs)) {
      std::vector<PauliString> cand;
      cand.reserve(tuple.size());
      for (const auto& p : tuple) cand.push_back(apply_symplectic(g, p));
      if (first || std::lexicographical_compare(
                       cand.begin(), cand.end(), best.begin(), best.end(),
                       [](const PauliString& x, const PauliString& y) {
                         return x.lex_less(y);
                       })) {
        best = cand;
        first = false;
      }
    }
    for (auto& p : best) key.push_back(p);
  }
  return key;
}

SolveOutcome solve_min_legs(const Stencil& stencil,
                            const std::vector<LegBudget>& schedule,
                            std::size_t max_solutions) {
  SolveOutcome out;
  std::vector<Constraint> constraints = build_consistency_system(stencil);

  for (const auto& budget : schedule) {
    std::vector<std::size_t> sym_legs(stencil.symbols.size(), 0);
    // A symbol's leg count comes from the directions it appears on; all its
    // slots must agree.
    for (const auto& row : stencil.rows)
      for (const auto& slot : row.slots) {
        std::size_t legs = budget.at(stencil.groups[slot.dir]);
        if (sym_legs[slot.symbol] && sym_legs[slot.symbol] != legs)
          throw std::invalid_argument("budget: symbol spans unequal leg counts");
        sym_legs[slot.symbol] = legs;
      }

    std::vector<std::vector<PauliString>> domains(stencil.symbols.size());
    for (std::size_t s = 0; s < stencil.symbols.size(); ++s)
      domains[s] = symbol_domain(sym_legs[s] ? sym_legs[s] : 1,
                                 stencil.symbols[s].css_type,
                                 stencil.symbols[s].zero_allowed);

    // Assign direction by direction so per-direction constraints prune early.
    std::vector<std::size_t> min_dir(stencil.symbols.size(), SIZE_MAX);
    for (const auto& row : stencil.rows)
      for (const auto& slot : row.slots)
        min_dir[slot.symbol] = std::min(min_dir[slot.symbol], slot.dir);
    std::vector<std::size_t> order(stencil.symbols.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return min_dir[a] < min_dir[b];
    });
    std::vector<std::size_t> pos(stencil.symbols.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;

    // Constraint becomes checkable when its last symbol (in order) is set.
    std::vector<std::vector<std::size_t>> ready(stencil.symbols.size());
    bool structurally_bad = false;
    for (std::size_t c = 0; c < constraints.size(); ++c) {
      if (constraints[c].pairs.empty()) {
        if (constraints[c].parity) {
          out.infeasible.push_back({budget, {constraints[c].label}});
          structurally_bad = true;
        }
        continue;
      }
      std::size_t last = 0;
      for (auto [s1, s2] : constraints[c].pairs)
        last = std::max({last, pos[s1], pos[s2]});
      ready[last].push_back(c);
    }
    if (structurally_bad) continue;

    std::vector<Assignment> solutions;
    std::set<std::vector<std::string>> canon_seen;
    std::vector<Assignment> canonical;

    // Every constraint is a sum of within-direction symplectic products, so
    // the per-direction Clifford action maps solutions to solutions. When no
    // symbol spans two directions the search runs over one canonical orbit
    // representative per direction tuple instead of the full orbit.
    std::vector<std::set<std::size_t>> dirs_of(stencil.symbols.size());
    for (const auto& row : stencil.rows)
      for (const auto& slot : row.slots) dirs_of[slot.symbol].insert(slot.dir);
    bool single_dir = true;
    for (const auto& ds : dirs_of)
      if (ds.size() > 1) single_dir = false;

    if (single_dir) {
      // Symbols grouped by direction, in direction order.
      std::vector<std::vector<std::size_t>> dir_syms(stencil.groups.size());
      for (std::size_t sidx = 0; sidx < stencil.symbols.size(); ++sidx)
        if (!dirs_of[sidx].empty()) dir_syms[*dirs_of[sidx].begin()].push_back(sidx);
      // Constraint is internal to direction d when all pairs live there.
      auto dir_of_pair = [&](std::size_t sym) { return *dirs_of[sym].begin(); };
      std::vector<std::vector<std::size_t>> internal_cs(stencil.groups.size());
      std::vector<std::size_t> cross_cs;
      for (std::size_t c = 0; c < constraints.size(); ++c) {
        std::set<std::size_t> touched;
        for (auto [s1, s2] : constraints[c].pairs) {
          touched.insert(dir_of_pair(s1));
          touched.insert(dir_of_pair(s2));
        }
        if (touched.size() == 1)
          internal_cs[*touched.begin()].push_back(c);
        else
          cross_cs.push_back(c);
      }
      // Per-direction canonical tuples satisfying the internal constraints.
      std::vector<std::vector<Assignment>> reps(stencil.groups.size());
      Assignment scratch(stencil.symbols.size());
      for (std::size_t d = 0; d < stencil.groups.size(); ++d) {
        const auto& syms = dir_syms[d];
        if (syms.empty()) continue;
        std::size_t legs = budget.at(stencil.groups[d]);
        const auto& grp = symplectic_group(legs ? legs : 1);
        std::set<std::vector<std::string>> rep_seen;
        std::vector<std::size_t> ix(syms.size(), 0);
        for (;;) {
          for (std::size_t i = 0; i < syms.size(); ++i)
            scratch[syms[i]] = domains[syms[i]][ix[i]];
          bool ok = true;
          for (std::size_t c : internal_cs[d])
            if (!eval_constraint(constraints[c], scratch)) { ok = false; break; }
          if (ok) {
            // Canonicalize the tuple under the direction's group.
            std::vector<PauliString> best;
            bool first = true;
            for (const auto& g : grp) {
              std::vector<PauliString> cand;
              for (std::size_t i = 0; i < syms.size(); ++i)
                cand.push_back(apply_symplectic(g, scratch[syms[i]]));
              if (first ||
                  std::lexicographical_compare(
                      cand.begin(), cand.end(), best.begin(), best.end(),
                      [](const PauliString& x, const PauliString& y) {
                        return x.lex_less(y);
                      })) {
                best = cand;
                first = false;
              }
            }
            std::vector<std::string> sig;
            for (const auto& p : best) sig.push_back(p.str());
            if (rep_seen.insert(sig).second) {
              Assignment rep(stencil.symbols.size());
              for (std::size_t i = 0; i < syms.size(); ++i) rep[syms[i]] = best[i];
              reps[d].push_back(rep);
            }
          }
          std::size_t carry = 0;
          while (carry < syms.size() && ++ix[carry] == domains[syms[carry]].size()) {
            ix[carry] = 0;
            ++carry;
          }
          if (carry == syms.size()) break;
        }
      }
      // Assemble directions left to right, checking cross constraints as soon
      // as all their directions are placed.
      std::vector<std::vector<std::size_t>> cross_ready(stencil.groups.size());
      for (std::size_t c : cross_cs) {
        std::size_t last = 0;
        for (auto [s1, s2] : constraints[c].pairs)
          last = std::max({last, dir_of_pair(s1), dir_of_pair(s2)});
        cross_ready[last].push_back(c);
      }
      Assignment current(stencil.symbols.size());
      std::function<void(std::size_t)> recurse_dirs = [&](std::size_t d) {
        if (d == stencil.groups.size()) {
          if (solutions.size() < max_solutions) solutions.push_back(current);
          std::vector<std::string> sig;
          Assignment ckey = canonical_assignment(stencil, budget, current);
          for (const auto& p : ckey) sig.push_back(p.str());
          if (canon_seen.insert(sig).second) canonical.push_back(ckey);
          return;
        }
        if (dir_syms[d].empty()) { recurse_dirs(d + 1); return; }
        for (const auto& rep : reps[d]) {
          for (std::size_t s : dir_syms[d]) current[s] = rep[s];
          bool ok = true;
          for (std::size_t c : cross_ready[d])
            if (!eval_constraint(constraints[c], current)) { ok = false; break; }
          if (ok) recurse_dirs(d + 1);
        }
      };
      recurse_dirs(0);
    } else {
      Assignment current(stencil.symbols.size());
      std::function<void(std::size_t)> recurse = [&](std::size_t k) {
        if (k == order.size()) {
          if (solutions.size() < max_solutions) solutions.push_back(current);
          Assignment ckey = canonical_assignment(stencil, budget, current);
          std::vector<std::string> sig;
          for (const auto& p : ckey) sig.push_back(p.str());
          if (canon_seen.insert(sig).second) canonical.push_back(ckey);
          return;
        }
        std::size_t s = order[k];
        for (const auto& value : domains[s]) {
          current[s] = value;
          bool ok = true;
          for (std::size_t c : ready[k])
            if (!eval_constraint(constraints[c], current)) { ok = false; break; }
          if (ok) recurse(k + 1);
        }
      };
      recurse(0);
    }

    if (!solutions.empty()) {
      out.feasible = true;
      out.budget = budget;
      out.solutions = std::move(solutions);
      out.canonical = std::move(canonical);
      return out;
    }

    // Minimal unsat core by greedy deletion, with a node budget per probe.
    std::vector<std::size_t> core(constraints.size());
    for (std::size_t i = 0; i < core.size(); ++i) core[i] = i;
    auto sat_with = [&](const std::vector<std::size_t>& subset) -> int {
      std::vector<std::vector<std::size_t>> rdy(stencil.symbols.size());
      for (std::size_t c : subset) {
        if (constraints[c].pairs.empty()) return constraints[c].parity == 0;
        std::size_t last = 0;
        for (auto [s1, s2] : constraints[c].pairs)
          last = std::max({last, pos[s1], pos[s2]});
        rdy[last].push_back(c);
      }
      Assignment work(stencil.symbols.size());
      std::size_t nodes = 0;
      std::function<int(std::size_t)> rec = [&](std::size_t k) -> int {
        if (k == order.size()) return 1;
        if (++nodes > 500000) return -1;  // undecided
        std::size_t s = order[k];
        for (const auto& value : domains[s]) {
          work[s] = value;
          bool ok = true;
          for (std::size_t c : rdy[k])
            if (!eval_constraint(constraints[c], work)) { ok = false; break; }
          if (ok) {
            int sub = rec(k + 1);
            if (sub != 0) return sub;
          }
        }
        return 0;
      };
      return rec(0);
    };
    for (std::size_t i = 0; i < core.size();) {
      std::vector<std::size_t> trial = core;
      trial.erase(trial.begin() + long(i));
      if (sat_with(trial) == 0)
        core = trial;
      else
        ++i;
    }
    std::vector<std::string> labels;
    for (std::size_t c : core) labels.push_back(constraints[c].label);
    out.infeasible.push_back({budget, labels});
  }
  return out;
}

GadgetTableau stencil_gadget(const Stencil& stencil, std::size_t gadget,
                             const LegBudget& budget, const Assignment& a,
                             const std::string& id) {
  GadgetTableau g;
  g.id = id;
  g.mode = stencil.mode;
  g.shape.m = stencil.m;
  for (const auto& grp : stencil.groups) g.shape.dirs.push_back({grp, budget.at(grp)});
  for (const auto& row : stencil.rows) {
    if (row.gadget != gadget) continue;
    PauliString p(g.shape.total());
    for (std::size_t q = 0; q < stencil.m; ++q) {
      p.set(g.shape.in_col(q), row.in_out.at(q));
      p.set(g.shape.out_col(q), row.in_out.at(stencil.m + q));
    }
    for (const auto& slot : row.slots) {
      const PauliString& v = a[slot.symbol];
      for (std::size_t l = 0; l < v.num_qubits(); ++l)
        p.set(g.shape.leg_col(slot.dir, l), v.at(l));
    }
    if (p.is_identity()) continue;
    g.rows.push_back(p);
    g.row_tags.push_back(row.tag);
  }
  g.validate();
  return g;
}

std::vector<GadgetTableau> complete_with_internal_stabilizers(
    const GadgetTableau& bare, std::size_t weight_cap, std::size_t max_results) {
  auto [r, deficiency] = bare.completeness_rank();
  if (deficiency == 0) return {bare};

  const GadgetShape& shape = bare.shape;
  std::size_t n_legs = shape.n_legs();
  // Internal commutant: vectors over the internal legs commuting with all
  // rows. Unknown v = (x|z) over n_legs.
  BinaryMatrix sys(0, 2 * n_legs);
  for (const auto& row : bare.rows) {
    BitVec constraint(2 * n_legs);
    for (std::size_t c = 0; c < n_legs; ++c) {
      std::size_t col = shape.m + c;
      // symp(v, row) = sum v_x * row_z + v_z * row_x
      constraint.set(c, row.z.get(col));
      constraint.set(n_legs + c, row.x.get(col));
    }
    sys.append_row(constraint);
  }
  BinaryMatrix basis = kernel(sys);
  if (basis.rows() > 22)
    throw std::runtime_error("completion space too large to enumerate");

  // Row-space content on the internal legs, to skip dependent candidates.
  RowSpace row_space(2 * shape.total());
  for (const auto& row : bare.rows) row_space.add(pauli_to_row(row));

  auto lift = [&](const BitVec& v) {
    PauliString p(shape.total());
    for (std::size_t c = 0; c < n_legs; ++c) {
      p.x.set(shape.m + c, v.get(c));
      p.z.set(shape.m + c, v.get(n_legs + c));
    }
    return p;
  };

  std::vector<PauliString> candidates;
  std::size_t count = std::size_t(1) << basis.rows();
  for (std::size_t mask = 1; mask < count; ++mask) {
    BitVec v(2 * n_legs);
    for (std::size_t b = 0; b < basis.rows(); ++b)
      if ((mask >> b) & 1) v ^= basis.row(b);
    PauliString p = lift(v);
    if (p.weight() == 0 || p.weight() > weight_cap) continue;
    if (bare.mode == EncodingMode::css && !p.x.none() && !p.z.none()) continue;
    if (row_space.contains(pauli_to_row(p))) continue;
    candidates.push_back(p);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const PauliString& a, const PauliString& b) {
              if (a.weight() != b.weight()) return a.weight() < b.weight();
              return a.lex_less(b);
            });

  std::vector<GadgetTableau> out;
  std::set<std::vector<std::string>> seen;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> pick = [&](std::size_t from) {
    if (out.size() >= max_results) return;
    if (chosen.size() == deficiency) {
      GadgetTableau g = bare;
      for (std::size_t i : chosen) g.add_internal(candidates[i]);
      if (g.completeness_rank().second != 0) return;
      // Dedup by the sorted echelon basis of the completed row space.
      RowSpace rs(2 * shape.total());
      for (const auto& row : g.rows) rs.add(pauli_to_row(row));
      std::vector<std::string> sig;
      for (const auto& b : rs.basis()) sig.push_back(row_to_pauli(b).str());
      std::sort(sig.begin(), sig.end());
      if (seen.insert(sig).second) out.push_back(std::move(g));
      return;
    }
    for (std::size_t i = from; i < candidates.size(); ++i) {
      bool ok = true;
      for (std::size_t j : chosen)
        if (symplectic_product(candidates[i], candidates[j])) { ok = false; break; }
      if (!ok) continue;
      // Must enlarge the row space.
      RowSpace rs(2 * shape.total());
      for (const auto& row : bare.rows) rs.add(pauli_to_row(row));
      for (std::size_t j : chosen) rs.add(pauli_to_row(candidates[j]));
      if (!rs.add(pauli_to_row(candidates[i]))) continue;
      chosen.push_back(i);
      pick(i + 1);
      chosen.pop_back();
      if (out.size() >= max_results) return;
    }
  };
  pick(0);
  return out;
}

LegBudget uniform_budget(const Stencil& stencil, std::size_t legs) {
  LegBudget b;
  for (const auto& g : stencil.groups) b[g] = legs;
  return b;
}

// ---------------------------------------------------------------------------
// Family stencils.

Stencil toric_stencil(EncodingMode mode) {
  Stencil s;
  s.name = "toric";
  s.mode = mode;
  s.m = 1;
  s.groups = {"1", "2", "3", "4"};
  const char* names[] = {"AX", "BX", "CX", "DX", "AZ", "BZ", "CZ", "DZ",
                         "aX", "bX", "cX", "dX", "aZ", "bZ", "cZ", "dZ"};
  for (const char* n : names) {
    char type = 0;
    if (mode == EncodingMode::css) type = (n[1] == 'X') ? 'X' : 'Z';
    s.symbols.push_back({n, type, false});
  }
  auto sym = [&](const std::string& n) { return s.find_symbol(n); };
  auto row = [&](std::size_t gadget, const std::string& tag, const char* in_out,
                 std::initializer_list<std::pair<int, const char*>> slots) {
    Stencil::Row r;
    r.tag = tag;
    r.gadget = gadget;
    r.in_out = PauliString::from_str(in_out);
    for (auto [d, n] : slots) r.slots.push_back({std::size_t(d - 1), sym(n)});
    s.rows.push_back(std::move(r));
  };
  // L gadget (horizontal-edge representative).
  row(0, "inX1", "XI", {{1, "AX"}, {2, "BX"}});
  row(0, "inX2", "XI", {{3, "CX"}, {4, "DX"}});
  row(0, "inZ1", "ZI", {{2, "BZ"}, {3, "CZ"}});
  row(0, "inZ2", "ZI", {{1, "AZ"}, {4, "DZ"}});
  row(0, "outX1", "IX", {{1, "aX"}, {2, "bX"}});
  row(0, "outX2", "IX", {{3, "cX"}, {4, "dX"}});
  row(0, "outZ1", "IZ", {{2, "bZ"}, {3, "cZ"}});
  row(0, "outZ2", "IZ", {{1, "aZ"}, {4, "dZ"}});
  // R gadget: same bonds seen from the opposite side.
  row(1, "inX1'", "XI", {{1, "AX"}, {4, "DX"}});
  row(1, "inX2'", "XI", {{2, "BX"}, {3, "CX"}});
  row(1, "inZ1'", "ZI", {{1, "AZ"}, {2, "BZ"}});
  row(1, "inZ2'", "ZI", {{3, "CZ"}, {4, "DZ"}});
  row(1, "outX1'", "IX", {{1, "aX"}, {4, "dX"}});
  row(1, "outX2'", "IX", {{2, "bX"}, {3, "cX"}});
  row(1, "outZ1'", "IZ", {{1, "aZ"}, {2, "bZ"}});
  row(1, "outZ2'", "IZ", {{3, "cZ"}, {4, "dZ"}});
  return s;
}

Stencil color_stencil() {
  Stencil s;
  s.name = "color";
  s.mode = EncodingMode::css;
  s.m = 1;
  s.groups = {"1", "2", "3"};
  const char* names[] = {"AX", "BX", "AZ", "BZ", "aX", "bX", "aZ", "bZ"};
  for (const char* n : names)
    s.symbols.push_back({n, char(n[1] == 'X' ? 'X' : 'Z'), false});
  auto sym = [&](const std::string& n) { return s.find_symbol(n); };
  auto row = [&](std::size_t gadget, const std::string& tag, const char* in_out,
                 std::initializer_list<std::pair<int, const char*>> slots) {
    Stencil::Row r;
    r.tag = tag;
    r.gadget = gadget;
    r.in_out = PauliString::from_str(in_out);
    for (auto [d, n] : slots) r.slots.push_back({std::size_t(d - 1), sym(n)});
    s.rows.push_back(std::move(r));
  };
  // v-sublattice representative (the paper's pattern).
  for (char t : {'X', 'Z'}) {
    std::string A = std::string("A") + t, B = std::string("B") + t;
    std::string a = std::string("a") + t, b = std::string("b") + t;
    const char* in_s = t == 'X' ? "XI" : "ZI";
    const char* out_s = t == 'X' ? "IX" : "IZ";
    row(0, std::string("in") + t + "1", in_s, {{1, A.c_str()}, {2, B.c_str()}});
    row(0, std::string("in") + t + "2", in_s, {{2, A.c_str()}, {3, B.c_str()}});
    row(0, std::string("in") + t + "3", in_s, {{1, B.c_str()}, {3, A.c_str()}});
    row(0, std::string("out") + t + "1", out_s, {{1, a.c_str()}, {2, b.c_str()}});
    row(0, std::string("out") + t + "2", out_s, {{2, a.c_str()}, {3, b.c_str()}});
    row(0, std::string("out") + t + "3", out_s, {{1, b.c_str()}, {3, a.c_str()}});
    // u-sublattice representative.
    row(1, std::string("in") + t + "1u", in_s, {{1, A.c_str()}, {3, B.c_str()}});
    row(1, std::string("in") + t + "2u", in_s, {{2, B.c_str()}, {3, A.c_str()}});
    row(1, std::string("in") + t + "3u", in_s, {{1, B.c_str()}, {2, A.c_str()}});
    row(1, std::string("out") + t + "1u", out_s, {{1, a.c_str()}, {3, b.c_str()}});
    row(1, std::string("out") + t + "2u", out_s, {{2, b.c_str()}, {3, a.c_str()}});
    row(1, std::string("out") + t + "3u", out_s, {{1, b.c_str()}, {2, a.c_str()}});
  }
  return s;
}

Stencil bb_stencil() {
  Stencil s;
  s.name = "bb";
  s.mode = EncodingMode::clifford;
  s.m = 1;
  for (int alpha = 1; alpha <= 3; ++alpha)
    for (int beta = 1; beta <= 3; ++beta)
      s.groups.push_back("(" + std::to_string(alpha) + "," + std::to_string(beta) + ")");
  auto dir = [&](int alpha, int beta) { return std::size_t((alpha - 1) * 3 + beta - 1); };
  for (const char* kind : {"AX", "AZ", "aX", "aZ"})
    for (int alpha = 1; alpha <= 3; ++alpha)
      for (int beta = 1; beta <= 3; ++beta)
        s.symbols.push_back({std::string(kind) + std::to_string(alpha) +
                                 std::to_string(beta),
                             0, false});
  auto sym = [&](const std::string& n) { return s.find_symbol(n); };
  auto add = [&](std::size_t gadget, const std::string& tag, const char* in_out,
                 std::vector<std::pair<std::size_t, std::string>> slots) {
    Stencil::Row r;
    r.tag = tag;
    r.gadget = gadget;
    r.in_out = PauliString::from_str(in_out);
    for (auto& [d, n] : slots) r.slots.push_back({d, sym(n)});
    s.rows.push_back(std::move(r));
  };
  for (int alpha = 1; alpha <= 3; ++alpha) {
    std::vector<std::pair<std::size_t, std::string>> in, outp;
    for (int beta = 1; beta <= 3; ++beta) {
      in.push_back({dir(alpha, beta),
                    "AX" + std::to_string(alpha) + std::to_string(beta)});
      outp.push_back({dir(alpha, beta),
                      "aX" + std::to_string(alpha) + std::to_string(beta)});
    }
    add(0, "inX" + std::to_string(alpha), "XI", in);
    add(0, "outX" + std::to_string(alpha), "IX", outp);
  }
  for (int beta = 1; beta <= 3; ++beta) {
    std::vector<std::pair<std::size_t, std::string>> in, outp;
    for (int alpha = 1; alpha <= 3; ++alpha) {
      in.push_back({dir(alpha, beta),
                    "AZ" + std::to_string(alpha) + std::to_string(beta)});
      outp.push_back({dir(alpha, beta),
                      "aZ" + std::to_string(alpha) + std::to_string(beta)});
    }
    add(0, "inZ" + std::to_string(beta), "ZI", in);
    add(0, "outZ" + std::to_string(beta), "IZ", outp);
  }
  // R gadget: the transposed web pattern over the same symbols.
  for (int beta = 1; beta <= 3; ++beta) {
    std::vector<std::pair<std::size_t, std::string>> in, outp;
    for (int alpha = 1; alpha <= 3; ++alpha) {
      in.push_back({dir(alpha, beta),
                    "AX" + std::to_string(alpha) + std::to_string(beta)});
      outp.push_back({dir(alpha, beta),
                      "aX" + std::to_string(alpha) + std::to_string(beta)});
    }
    add(1, "inXr" + std::to_string(beta), "XI", in);
    add(1, "outXr" + std::to_string(beta), "IX", outp);
  }
  for (int alpha = 1; alpha <= 3; ++alpha) {
    std::vector<std::pair<std::size_t, std::string>> in, outp;
    for (int beta = 1; beta <= 3; ++beta) {
      in.push_back({dir(alpha, beta),
                    "AZ" + std::to_string(alpha) + std::to_string(beta)});
      outp.push_back({dir(alpha, beta),
                      "aZ" + std::to_string(alpha) + std::to_string(beta)});
    }
    add(1, "inZr" + std::to_string(alpha), "ZI", in);
    add(1, "outZr" + std::to_string(alpha), "IZ", outp);
  }
  return s;
}

Stencil haah_stencil() {
  Stencil s;
  s.name = "haah";
  s.mode = EncodingMode::css;
  s.m = 2;
  s.groups = {"1", "2", "3", "4", "5", "6"};
  const char* names[] = {"AX", "BX", "CX", "DX", "aX", "bX", "cX", "dX",
                         "AZ", "BZ", "CZ", "DZ", "aZ", "bZ", "cZ", "dZ"};
  for (const char* n : names) {
    char type = (n[1] == 'X') ? 'X' : 'Z';
    bool zero = std::string(n) == "AX" || std::string(n) == "aX" ||
                std::string(n) == "DZ" || std::string(n) == "dZ";
    s.symbols.push_back({n, type, zero});
  }
  auto sym = [&](const std::string& n) { return s.find_symbol(n); };
  struct RowSpec {
    char type;
    bool outgoing;
    int q0, q1;
    std::vector<std::pair<int, const char*>> slots;
  };
  const std::vector<RowSpec> table = {
      {'X', false, 0, 0, {{1, "AX"}, {4, "AX"}, {6, "AX"}}},
      {'X', false, 1, 0, {{1, "BX"}, {3, "AX"}, {6, "CX"}}},
      {'X', false, 1, 0, {{2, "AX"}, {4, "CX"}, {6, "BX"}}},
      {'X', false, 1, 0, {{1, "CX"}, {4, "BX"}, {5, "AX"}}},
      {'X', false, 0, 1, {{1, "DX"}, {3, "BX"}, {5, "CX"}}},
      {'X', false, 0, 1, {{2, "CX"}, {4, "DX"}, {5, "BX"}}},
      {'X', false, 0, 1, {{2, "BX"}, {3, "CX"}, {6, "DX"}}},
      {'X', false, 1, 1, {{2, "DX"}, {3, "DX"}, {5, "DX"}}},
      {'X', true, 0, 0, {{1, "aX"}, {4, "aX"}, {6, "aX"}}},
      {'X', true, 1, 0, {{1, "bX"}, {3, "aX"}, {6, "cX"}}},
      {'X', true, 1, 0, {{2, "aX"}, {4, "cX"}, {6, "bX"}}},
      {'X', true, 1, 0, {{1, "cX"}, {4, "bX"}, {5, "aX"}}},
      {'X', true, 0, 1, {{1, "dX"}, {3, "bX"}, {5, "cX"}}},
      {'X', true, 0, 1, {{2, "cX"}, {4, "dX"}, {5, "bX"}}},
      {'X', true, 0, 1, {{2, "bX"}, {3, "cX"}, {6, "dX"}}},
      {'X', true, 1, 1, {{2, "dX"}, {3, "dX"}, {5, "dX"}}},
      {'Z', false, 1, 1, {{1, "AZ"}, {4, "AZ"}, {6, "AZ"}}},
      {'Z', false, 1, 0, {{1, "BZ"}, {3, "AZ"}, {6, "CZ"}}},
      {'Z', false, 1, 0, {{2, "AZ"}, {4, "CZ"}, {6, "BZ"}}},
      {'Z', false, 1, 0, {{1, "CZ"}, {4, "BZ"}, {5, "AZ"}}},
      {'Z', false, 0, 1, {{1, "DZ"}, {3, "BZ"}, {5, "CZ"}}},
      {'Z', false, 0, 1, {{2, "CZ"}, {4, "DZ"}, {5, "BZ"}}},
      {'Z', false, 0, 1, {{2, "BZ"}, {3, "CZ"}, {6, "DZ"}}},
      {'Z', false, 0, 0, {{2, "DZ"}, {3, "DZ"}, {5, "DZ"}}},
      {'Z', true, 1, 1, {{1, "aZ"}, {4, "aZ"}, {6, "aZ"}}},
      {'Z', true, 1, 0, {{1, "bZ"}, {3, "aZ"}, {6, "cZ"}}},
      {'Z', true, 1, 0, {{2, "aZ"}, {4, "cZ"}, {6, "bZ"}}},
      {'Z', true, 1, 0, {{1, "cZ"}, {4, "bZ"}, {5, "aZ"}}},
      {'Z', true, 0, 1, {{1, "dZ"}, {3, "bZ"}, {5, "cZ"}}},
      {'Z', true, 0, 1, {{2, "cZ"}, {4, "dZ"}, {5, "bZ"}}},
      {'Z', true, 0, 1, {{2, "bZ"}, {3, "cZ"}, {6, "dZ"}}},
      {'Z', true, 0, 0, {{2, "dZ"}, {3, "dZ"}, {5, "dZ"}}},
  };
  int counter = 0;
  for (const auto& rs : table) {
    Stencil::Row r;
    r.tag = std::string(rs.outgoing ? "out" : "in") + rs.type +
            std::to_string(counter++);
    r.gadget = 0;
    r.in_out = PauliString(4);
    std::size_t base = rs.outgoing ? 2 : 0;
    auto put = [&](std::size_t col) {
      if (rs.type == 'X')
        r.in_out.x.set(col, true);
      else
        r.in_out.z.set(col, true);
    };
    if (rs.q0) put(base + 0);
    if (rs.q1) put(base + 1);
    for (auto [d, n] : rs.slots) r.slots.push_back({std::size_t(d - 1), sym(n)});
    s.rows.push_back(std::move(r));
  }
  return s;
}

Stencil checkerboard_stencil() {
  Stencil s;
  s.name = "checkerboard";
  s.mode = EncodingMode::css;
  s.m = 1;
  s.groups = {"1", "2", "3", "4", "5", "6"};
  s.symbols = {{"AX", 'X', false}, {"AZ", 'Z', false},
               {"aX", 'X', false}, {"aZ", 'Z', false}};
  const std::vector<std::array<int, 3>> l_cubes = {
      {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  const std::vector<std::array<int, 3>> r_cubes = {
      {2, 4, 6}, {2, 3, 5}, {1, 4, 5}, {1, 3, 6}};
  int counter = 0;
  for (std::size_t gadget : {std::size_t(0), std::size_t(1)})
    for (bool outgoing : {false, true})
      for (char t : {'X', 'Z'})
        for (const auto& dirs : (gadget == 0 ? l_cubes : r_cubes)) {
          Stencil::Row r;
          r.tag = std::string(outgoing ? "out" : "in") + t + std::to_string(counter++);
          r.gadget = gadget;
          r.in_out = PauliString::from_str(
              t == 'X' ? (outgoing ? "IX" : "XI") : (outgoing ? "IZ" : "ZI"));
          std::string name = (outgoing ? std::string("a") : std::string("A")) + t;
          for (int d : dirs) r.slots.push_back({std::size_t(d - 1), s.find_symbol(name)});
          s.rows.push_back(std::move(r));
        }
  return s;
}

Stencil fermion_stencil() {
  Stencil s;
  s.name = "fermion";
  s.mode = EncodingMode::clifford;
  s.m = 1;
  s.groups = {"1", "3", "4"};
  for (const char* n : {"A", "B", "C", "D", "E", "F", "a", "b", "c", "d", "e", "f"})
    s.symbols.push_back({n, 0, false});
  auto sym = [&](const std::string& n) { return s.find_symbol(n); };
  auto row = [&](const std::string& tag, const char* in_out,
                 std::initializer_list<std::pair<int, const char*>> slots) {
    Stencil::Row r;
    r.tag = tag;
    r.gadget = 0;
    r.in_out = PauliString::from_str(in_out);
    for (auto [d, n] : slots) {
      std::size_t g = d == 1 ? 0 : (d == 3 ? 1 : 2);
      r.slots.push_back({g, sym(n)});
    }
    s.rows.push_back(std::move(r));
  };
  row("inX", "XI", {{3, "B"}, {4, "A"}});
  row("inY", "YI", {{1, "F"}, {3, "E"}});
  row("inZ", "ZI", {{1, "C"}, {4, "D"}});
  row("outX", "IX", {{3, "b"}, {4, "a"}});
  row("outY", "IY", {{1, "f"}, {3, "e"}});
  row("outZ", "IZ", {{1, "c"}, {4, "d"}});
  return s;
}

}  // namespace floq
