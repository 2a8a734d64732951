#include "floq/defects.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

namespace floq {

namespace {

// Multi-period unrolling: N repetitions, or the rewind pair for N = 2.
AssembledSystem unrolled(const AssembledSystem& sys, std::size_t n, bool rewound) {
  if (rewound) return rewind(sys);
  AssembledSystem out = sys;
  for (std::size_t i = 1; i < n; ++i) out = compose(out, sys);
  return out;
}

// Columns (bond-slot indices) carrying the given layout bonds in any period.
std::vector<std::size_t> defect_columns(const AssembledSystem& sys,
                                        const std::set<long>& bonds) {
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < sys.bond_cols.size(); ++c)
    if (sys.bond_cols[c].period >= 0 && bonds.count(sys.bond_cols[c].bond))
      cols.push_back(c);
  return cols;
}

// Slot mask of one gadget copy (gadget g in period p) inside the unrolled
// register: its bond legs in that period, its boundary/interface wires, and
// nothing else.
std::vector<char> copy_slots(const AssembledSystem& u, const GadgetGraph& layout,
                             const std::vector<std::size_t>& site_qubits,
                             std::size_t g, int period, int total_periods) {
  std::vector<char> allowed(u.total(), 0);
  std::set<long> own(layout.bonds_of[g].begin(), layout.bonds_of[g].end());
  for (std::size_t c = 0; c < u.bond_cols.size(); ++c) {
    const auto& bc = u.bond_cols[c];
    if (bc.period == period && own.count(bc.bond)) allowed[u.bond_slot(c)] = 1;
    // Interface wires adjacent to this period.
    if (bc.period <= -1000) {
      int iface = -1000 - bc.period;
      bool adjacent = iface == period - 1 || iface == period;
      if (adjacent && std::find(site_qubits.begin(), site_qubits.end(),
                                std::size_t(bc.bond)) != site_qubits.end())
        allowed[u.bond_slot(c)] = 1;
    }
  }
  if (period == 0)
    for (std::size_t q : site_qubits) allowed[u.in_slot(q)] = 1;
  if (period == total_periods - 1)
    for (std::size_t q : site_qubits) allowed[u.out_slot(q)] = 1;
  return allowed;
}

// Defected system per the termination mechanism: every original web row is
// corrected by an internal spacetime stabilizer so that its support on the
// removed legs lands in the span of the single-leg terminals; the terminals
// are then appended. Returns an empty system when some web cannot terminate.
AssembledSystem build_defected(const AssembledSystem& u, const GadgetGraph& layout,
                               const std::vector<std::set<long>>& web_bond_sets,
                               const std::vector<std::size_t>& cols,
                               const std::vector<char>& paulis,
                               bool allow_corrections) {
  std::size_t t = u.total();
  // Web corrections: internal spacetime stabilizers supported on a single
  // check's bonds across the repeated periods (the minimal rewrite extends a
  // broken web into one adjacent plaquette), available once repeated.
  // One internal subgroup per check web; a broken row is corrected within a
  // single web's subgroup (the web extends into one adjacent plaquette).
  std::vector<std::vector<BitVec>> internal_groups;
  if (allow_corrections)
    for (const auto& bonds : web_bond_sets) {
      std::vector<char> mask(t, 0);
      for (std::size_t c = 0; c < u.bond_cols.size(); ++c)
        if (u.bond_cols[c].period >= 0 && bonds.count(u.bond_cols[c].bond))
          mask[u.bond_slot(c)] = 1;
      auto grp = supported_subgroup(u.h, t, mask);
      if (!grp.empty()) internal_groups.push_back(std::move(grp));
    }

  // One functional per removed leg: vanishes exactly on {I, terminal}.
  std::vector<BitVec> functionals;
  std::vector<BitVec> terminal_rows;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    std::size_t slot = u.bond_slot(cols[i]);
    BitVec f(2 * t), row(2 * t);
    if (paulis[i] == 'X') f.set(t + slot, true);
    if (paulis[i] == 'Z') f.set(slot, true);
    if (paulis[i] == 'Y') {
      f.set(slot, true);
      f.set(t + slot, true);
    }
    functionals.push_back(f);
    if (paulis[i] == 'X' || paulis[i] == 'Y') row.set(slot, true);
    if (paulis[i] == 'Z' || paulis[i] == 'Y') row.set(t + slot, true);
    terminal_rows.push_back(row);
  }

  std::vector<BinaryMatrix> constraints;
  for (const auto& grp : internal_groups) {
    BinaryMatrix c(functionals.size(), grp.size());
    for (std::size_t j = 0; j < functionals.size(); ++j)
      for (std::size_t i = 0; i < grp.size(); ++i)
        c.set(j, i, BitVec::dot(functionals[j], grp[i]));
    constraints.push_back(std::move(c));
  }

  AssembledSystem out = u;
  out.h = BinaryMatrix(0, 2 * t);
  for (std::size_t r = 0; r < u.h.rows(); ++r) {
    BitVec v = u.h.row(r);
    BitVec target(functionals.size());
    bool clean = true;
    for (std::size_t j = 0; j < functionals.size(); ++j) {
      bool bit = BitVec::dot(functionals[j], v);
      target.set(j, bit);
      if (bit) clean = false;
    }
    if (!clean) {
      // Minimal-support correction from a single web subgroup.
      bool fixed = false;
      BitVec best;
      std::size_t best_weight = SIZE_MAX;
      for (std::size_t gidx = 0; gidx < internal_groups.size(); ++gidx) {
        auto sol = solve_linear(constraints[gidx], target);
        if (!sol.consistent) continue;
        // Enumerate the affine solution space when small, else take the
        // particular solution.
        std::size_t dim = sol.nullspace.rows();
        std::size_t count = dim <= 10 ? (std::size_t(1) << dim) : 1;
        for (std::size_t massk = 0; massk < count; ++massk) {
          BitVec coeff = sol.particular;
          for (std::size_t bset = 0; bset < dim; ++bset)
            if ((massk >> bset) & 1) coeff ^= sol.nullspace.row(bset);
          BitVec k(2 * t);
          for (std::size_t i = 0; i < internal_groups[gidx].size(); ++i)
            if (coeff.get(i)) k ^= internal_groups[gidx][i];
          std::size_t w = row_to_pauli(k).weight();
          if (w < best_weight) {
            best_weight = w;
            best = k;
            fixed = true;
          }
        }
      }
      if (!fixed) {
        out.h = BinaryMatrix(0, 2 * t);  // web cannot terminate
        return out;
      }
      v ^= best;
    }
    out.h.append_row(v);
  }
  for (const auto& row : terminal_rows) out.h.append_row(row);
  return out;
}

std::vector<std::vector<char>> terminal_assignments(const AssembledSystem& u,
                                                    const GadgetGraph& layout,
                                                    const std::vector<std::size_t>& cols,
                                                    int level) {
  const char paulis[3] = {'X', 'Y', 'Z'};
  std::vector<std::vector<char>> out;
  std::size_t n_legs = cols.size();
  if (level == 0) {
    for (char p : paulis) out.push_back(std::vector<char>(n_legs, p));
    return out;
  }
  std::vector<std::size_t> group(n_legs, 0);
  std::size_t n_groups = 0;
  if (level == 1) {
    std::map<int, std::size_t> orbit_id;
    for (std::size_t i = 0; i < n_legs; ++i) {
      int orbit = layout.bonds[std::size_t(u.bond_cols[cols[i]].bond)].orbit;
      auto [it, fresh] = orbit_id.emplace(orbit, orbit_id.size());
      group[i] = it->second;
    }
    n_groups = orbit_id.size();
  } else {
    for (std::size_t i = 0; i < n_legs; ++i) group[i] = i;
    n_groups = n_legs;
  }
  if (n_groups > 8) return out;
  std::size_t count = 1;
  for (std::size_t i = 0; i < n_groups; ++i) count *= 3;
  for (std::size_t v = 0; v < count; ++v) {
    std::vector<char> per_group(n_groups);
    std::size_t tmp = v;
    for (std::size_t i = 0; i < n_groups; ++i) {
      per_group[i] = paulis[tmp % 3];
      tmp /= 3;
    }
    std::vector<char> a(n_legs);
    for (std::size_t i = 0; i < n_legs; ++i) a[i] = per_group[group[i]];
    out.push_back(std::move(a));
  }
  return out;
}

// The defected system must still measure and regenerate the code.
bool measures_code(const AssembledSystem& sys) {
  if (!bkrc_check(sys).pass) return false;
  RowSpace rs(2 * sys.total());
  for (std::size_t r = 0; r < sys.h.rows(); ++r) rs.add(sys.h.row(r));
  for (const auto& c : sys.code_in.checks)
    if (!rs.contains(sys.embed(c, false))) return false;
  for (const auto& c : sys.code_out.checks)
    if (!rs.contains(sys.embed(c, true))) return false;
  return true;
}

std::string describe_terminals(const std::vector<std::size_t>& cols,
                               const std::vector<char>& paulis,
                               const AssembledSystem& sys) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const auto& bc = sys.bond_cols[cols[i]];
    out += std::string(i ? "; " : "") + "period " + std::to_string(bc.period) +
           " bond " + std::to_string(bc.bond) + " leg " + std::to_string(bc.leg) +
           ": " + paulis[i];
  }
  return out;
}

std::vector<std::vector<std::size_t>> gadget_qubits(const BuiltSystem& bs) {
  std::vector<std::vector<std::size_t>> out(bs.layout.num_gadgets);
  for (std::size_t q = 0; q < bs.code.n; ++q)
    out[std::size_t(bs.layout.replacement[q])].push_back(q);
  return out;
}

}  // namespace

DefectResult apply_broken_bond(const BuiltSystem& bs, const DefectSpec& spec) {
  DefectResult res;
  res.basis = bs.basis;
  std::set<long> bonds{long(spec.bond)};
  auto site_qubits = gadget_qubits(bs);
  std::size_t ga = bs.layout.bonds[spec.bond].g1, gb = bs.layout.bonds[spec.bond].g2;

  for (std::size_t n = 1; n <= spec.unroll_max; ++n) {
    for (bool rewound : {false, true}) {
      if (rewound != (n == 2) && rewound) continue;
      if (rewound && n != 2) continue;
      AssembledSystem u = unrolled(bs.sys, n, rewound);
      auto cols = defect_columns(u, bonds);
      if (cols.empty()) throw std::invalid_argument("broken bond: unknown bond");
      // Correction webs: the bond sets of the checks touching the defect's
      // endpoint gadgets.
      std::vector<std::set<long>> webs;
      {
        TannerGraph tg = tanner_graph(bs.code);
        for (std::size_t c = 0; c < bs.code.checks.size(); ++c) {
          bool near = false;
          for (std::size_t qb : tg.check_support[c]) {
            std::size_t gq = std::size_t(bs.layout.replacement[qb]);
            if (gq == ga || gq == gb) near = true;
          }
          if (!near) continue;
          std::set<int> gs;
          for (std::size_t qb : tg.check_support[c]) gs.insert(bs.layout.replacement[qb]);
          std::set<long> bonds_of_web;
          for (std::size_t b = 0; b < bs.layout.bonds.size(); ++b)
            if (gs.count(int(bs.layout.bonds[b].g1)) &&
                gs.count(int(bs.layout.bonds[b].g2)))
              bonds_of_web.insert(long(b));
          webs.push_back(bonds_of_web);
        }
      }
      for (int level = 0; level < 3; ++level) {
        if (level == 2 && cols.size() > 6) break;
        for (const auto& assign : terminal_assignments(u, bs.layout, cols, level)) {
          AssembledSystem trial =
              build_defected(u, bs.layout, webs, cols, assign, n >= 2);
          if (trial.h.rows() == 0) continue;
          if (!measures_code(trial)) continue;
          Termination term;
          for (std::size_t i = 0; i < cols.size(); ++i)
            term.legs.push_back({cols[i], assign[i]});
          term.description = describe_terminals(cols, assign, u);
          if (!res.feasible) {
            res.feasible = true;
            res.unroll = n;
            res.rewound = rewound;
            res.sys = trial;
          }
          if (res.unroll == n && res.rewound == rewound) {
            res.solutions.push_back(std::move(term));
            res.solution_systems.push_back(std::move(trial));
          }
        }
        if (res.feasible) break;
      }
      if (res.feasible) return res;
    }
  }
  return res;
}

DefectResult apply_qubit_dropout(const BuiltSystem& bs, const DefectSpec& spec) {
  DefectResult res;
  const StabilizerCode& code = bs.code;
  std::size_t q = spec.qubit;
  std::size_t g = std::size_t(bs.layout.replacement[q]);
  auto site_qubits = gadget_qubits(bs);

  // Stabilizer subgroup avoiding the dropped qubit, plus a gauge fixing from
  // the incomplete checks (two choices: keep the Z-type or the X-type side).
  std::vector<PauliString> kept;
  {
    BinaryMatrix m = code.check_matrix();
    std::vector<char> allowed(code.n, 1);
    allowed[q] = 0;
    for (const auto& v : supported_subgroup(m, code.n, allowed))
      kept.push_back(row_to_pauli(v));
  }
  std::vector<PauliString> incomplete_z, incomplete_x;
  for (const auto& c : code.checks) {
    if (c.at(q) == 0) continue;
    PauliString r = c;
    r.set(q, 0);
    if (r.x.none())
      incomplete_z.push_back(r);
    else if (r.z.none())
      incomplete_x.push_back(r);
  }
  // Ring of the local weight-six stabilizers: support of the incomplete
  // products, minus the dropped qubit.
  std::set<std::size_t> ring_gadgets;
  for (const auto& lists : {incomplete_z, incomplete_x})
    for (const auto& p : lists)
      for (std::size_t i = 0; i < code.n; ++i)
        if (i != q && p.at(i)) ring_gadgets.insert(std::size_t(bs.layout.replacement[i]));

  auto drop = [&](const std::vector<PauliString>& full) {
    std::vector<PauliString> out;
    for (const auto& p : full) {
      PauliString s(code.n - 1);
      std::size_t w = 0;
      for (std::size_t i = 0; i < code.n; ++i) {
        if (i == q) continue;
        s.set(w++, p.at(i));
      }
      out.push_back(s);
    }
    return out;
  };

  std::set<long> bonds;
  for (std::size_t b : bs.layout.bonds_of[g]) bonds.insert(long(b));
  if (spec.prior_art) {
    // Also sever the ring bonds incident to the same-sublattice ring members
    // (the adapted prior-art layout removes their connections).
    std::set<std::size_t> same_sub;
    for (std::size_t rg : ring_gadgets)
      if (bs.layout.bond_between(rg, g) < 0) same_sub.insert(rg);
    for (std::size_t b = 0; b < bs.layout.bonds.size(); ++b) {
      const auto& bd = bs.layout.bonds[b];
      bool touches_same = same_sub.count(bd.g1) || same_sub.count(bd.g2);
      bool inside_ring = ring_gadgets.count(bd.g1) && ring_gadgets.count(bd.g2);
      if (touches_same && inside_ring) bonds.insert(long(b));
    }
  }

  for (int gauge = 0; gauge < 2 && !res.feasible; ++gauge) {
    std::vector<PauliString> in_checks = kept;
    for (const auto& p : (gauge == 0 ? incomplete_z : incomplete_x))
      in_checks.push_back(p);
    bool commuting = true;
    for (std::size_t i = 0; i < in_checks.size() && commuting; ++i)
      for (std::size_t j = i + 1; j < in_checks.size(); ++j)
        if (symplectic_product(in_checks[i], in_checks[j])) {
          commuting = false;
          break;
        }
    if (!commuting) continue;

    StabilizerCode code_in, code_out;
    code_in.n = code_out.n = code.n - 1;
    code_in.checks = drop(in_checks);
    code_in.name = code.name + "_dropout";
    code_in.validate();
    {
      std::vector<PauliString> out_checks = kept;
      for (const auto& p : (gauge == 0 ? incomplete_x : incomplete_z))
        out_checks.push_back(p);
      code_out.checks = drop(out_checks);
      code_out.name = code.name + "_dropout_dual";
      code_out.validate();
    }

    // Correction webs for the dropout: the checks touching the ring.
    std::vector<std::set<long>> drop_webs;
    {
      TannerGraph tg = tanner_graph(bs.code);
      for (std::size_t c = 0; c < bs.code.checks.size(); ++c) {
        bool near = false;
        for (std::size_t qb : tg.check_support[c])
          if (ring_gadgets.count(std::size_t(bs.layout.replacement[qb])) ||
              std::size_t(bs.layout.replacement[qb]) == g)
            near = true;
        if (!near) continue;
        std::set<int> gs;
        for (std::size_t qb : tg.check_support[c]) gs.insert(bs.layout.replacement[qb]);
        std::set<long> bonds_of_web;
        for (std::size_t b = 0; b < bs.layout.bonds.size(); ++b)
          if (gs.count(int(bs.layout.bonds[b].g1)) &&
              gs.count(int(bs.layout.bonds[b].g2)))
            bonds_of_web.insert(long(b));
        drop_webs.push_back(bonds_of_web);
      }
    }
    for (std::size_t n = 1; n <= spec.unroll_max && !res.feasible; ++n) {
      for (bool rewound : {false, true}) {
        if (rewound && n != 2) continue;
        AssembledSystem u = unrolled(bs.sys, n, rewound);
        auto cols = defect_columns(u, bonds);
        // Drop the dead gadget's rows entirely.
        std::size_t t = u.total();
        AssembledSystem base = u;
        base.h = BinaryMatrix(0, 2 * t);
        for (std::size_t r = 0; r < u.h.rows(); ++r) {
          BitVec v = u.h.row(r);
          bool dead = v.get(u.in_slot(q)) || v.get(t + u.in_slot(q)) ||
                      v.get(u.out_slot(q)) || v.get(t + u.out_slot(q));
          // Rows supported on interface wires of the dead gadget die too.
          for (std::size_t c = 0; c < u.bond_cols.size() && !dead; ++c) {
            const auto& bc = u.bond_cols[c];
            if (bc.period <= -1000 && bc.bond == long(q))
              dead = v.get(u.bond_slot(c)) || v.get(t + u.bond_slot(c));
          }
          if (!dead) base.h.append_row(v);
        }

        for (int level = 0; level < 3; ++level) {
          if (level == 2 && cols.size() > 6) break;
          for (const auto& assign : terminal_assignments(u, bs.layout, cols, level)) {
            AssembledSystem trial =
                build_defected(base, bs.layout, drop_webs, cols, assign, n >= 2);
            if (trial.h.rows() == 0) continue;
            // Re-index the boundary without the dropped qubit.
            AssembledSystem shrunk;
            shrunk.n = code.n - 1;
            shrunk.n_bond = trial.n_bond;
            shrunk.bond_cols = trial.bond_cols;
            shrunk.code_in = code_in;
            shrunk.code_out = code_out;
            shrunk.h = BinaryMatrix(0, 2 * shrunk.total());
            for (std::size_t r = 0; r < trial.h.rows(); ++r) {
              BitVec src = trial.h.row(r);
              BitVec dst(2 * shrunk.total());
              auto copy_slot = [&](std::size_t from, std::size_t to) {
                dst.set(to, src.get(from));
                dst.set(shrunk.total() + to, src.get(t + from));
              };
              std::size_t w = 0;
              for (std::size_t i = 0; i < code.n; ++i) {
                if (i == q) continue;
                copy_slot(u.in_slot(i), shrunk.in_slot(w));
                copy_slot(u.out_slot(i), shrunk.out_slot(w));
                ++w;
              }
              for (std::size_t b = 0; b < trial.n_bond; ++b)
                copy_slot(u.bond_slot(b), shrunk.bond_slot(b));
              shrunk.h.append_row(dst);
            }
            if (!measures_code(shrunk)) continue;
            Termination term;
            for (std::size_t i = 0; i < cols.size(); ++i)
              term.legs.push_back({cols[i], assign[i]});
            term.description = describe_terminals(cols, assign, u);
            if (!res.feasible) {
              res.feasible = true;
              res.unroll = n;
              res.rewound = rewound;
              res.sys = shrunk;
              res.basis = logical_basis(code_in);
              res.gauge_switch = true;
              res.note = gauge == 0 ? "incoming gauge: Z-type incomplete checks"
                                    : "incoming gauge: X-type incomplete checks";
            }
            if (res.unroll == n && res.rewound == rewound) {
              res.solutions.push_back(std::move(term));
              res.solution_systems.push_back(std::move(shrunk));
            }
          }
          if (res.feasible) break;
        }
        if (res.feasible) break;
      }
    }
  }
  return res;
}

DefectResult apply_defect(const BuiltSystem& bs, const DefectSpec& spec) {
  if (spec.kind == DefectSpec::BrokenBond) return apply_broken_bond(bs, spec);
  return apply_qubit_dropout(bs, spec);
}

DefectComparison defect_report(const BuiltSystem& before, const DefectResult& after,
                               std::size_t w_max, unsigned threads) {
  DefectComparison cmp;
  cmp.k_before = before.code.k();
  cmp.bkrc_before = bkrc_check(before.sys).pass;
  DistanceReport db = spacetime_distance(before.sys, before.basis, w_max, threads);
  cmp.dst_before = db.d_st;
  cmp.dst_before_exact = db.exact;
  cmp.automorphism_before =
      logical_action(before.sys, before.basis, before.basis).label;
  if (after.feasible) {
    cmp.k_after = after.sys.code_in.k();
    cmp.bkrc_after = bkrc_check(after.sys).pass;
    DistanceReport da = spacetime_distance(after.sys, after.basis, w_max, threads);
    cmp.dst_after = da.d_st;
    cmp.dst_after_exact = da.exact;
    cmp.gauge_switch = after.gauge_switch;
    try {
      cmp.automorphism_after =
          logical_action(after.sys, after.basis, logical_basis(after.sys.code_out))
              .label;
    } catch (const std::exception&) {
      cmp.automorphism_after = "unavailable";
    }
  }
  return cmp;
}

std::vector<DefectSpec> read_defects(std::istream& is, const GadgetGraph& layout) {
  std::vector<DefectSpec> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    DefectSpec spec;
    if (kind == "BROKEN") {
      std::size_t g1, g2;
      ls >> g1 >> g2;
      long b = layout.bond_between(g1, g2);
      if (b < 0) throw std::runtime_error("defect file: no bond between gadgets");
      spec.kind = DefectSpec::BrokenBond;
      spec.bond = std::size_t(b);
    } else if (kind == "DROPOUT") {
      spec.kind = DefectSpec::QubitDropout;
      ls >> spec.qubit;
    } else {
      throw std::runtime_error("defect file: unknown entry " + kind);
    }
    out.push_back(spec);
  }
  return out;
}

}  // namespace floq
