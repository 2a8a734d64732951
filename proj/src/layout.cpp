#include "floq/layout.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace floq {

std::size_t GadgetGraph::leg_degree(std::size_t g) const {
  std::size_t d = 0;
  for (std::size_t b : bonds_of[g])
    if (bonds[b].legs > 0) ++d;
  return d;
}

std::size_t GadgetGraph::total_legs(std::size_t g) const {
  std::size_t d = 0;
  for (std::size_t b : bonds_of[g]) d += bonds[b].legs;
  return d;
}

std::size_t GadgetGraph::num_leg_slots() const {
  std::size_t d = 0;
  for (const auto& b : bonds) d += b.legs;
  return d;
}

long GadgetGraph::bond_between(std::size_t a, std::size_t b,
                               const std::string& dir) const {
  for (std::size_t i : bonds_of[a]) {
    const Bond& bd = bonds[i];
    if ((bd.g1 == a && bd.g2 == b) || (bd.g1 == b && bd.g2 == a))
      if (dir.empty() || bd.dir == dir) return long(i);
  }
  return -1;
}

bool GadgetGraph::sync_bipartite(const StabilizerCode& code) const {
  // Proper 2-coloring on leg-carrying bonds.
  std::vector<int> color(num_gadgets, -1);
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < num_gadgets; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      std::size_t g = stack.back();
      stack.pop_back();
      for (std::size_t b : bonds_of[g]) {
        if (bonds[b].legs == 0) continue;
        std::size_t h = other(b, g);
        if (color[h] < 0) {
          color[h] = 1 - color[g];
          stack.push_back(h);
        } else if (color[h] == color[g]) {
          return false;
        }
      }
    }
  }
  // The coloring must be preserved by every declared translation generator,
  // otherwise identical gadgets cannot be staged in two classes.
  if (!code.lattice) return true;
  const LatticeInfo& lat = *code.lattice;
  if (lat.translations.empty()) return true;
  std::map<std::array<int, 3>, std::size_t> by_pos;
  for (std::size_t s = 0; s < lat.site_pos.size(); ++s) by_pos[lat.site_pos[s]] = s;
  auto wrap = [&](std::array<int, 3> p) {
    for (int a = 0; a < 3; ++a)
      if (lat.period[a] > 0) p[a] = ((p[a] % lat.period[a]) + lat.period[a]) % lat.period[a];
    return p;
  };
  for (const auto& t : lat.translations) {
    for (std::size_t s = 0; s < lat.site_pos.size(); ++s) {
      std::array<int, 3> q = wrap({lat.site_pos[s][0] + t[0], lat.site_pos[s][1] + t[1],
                                   lat.site_pos[s][2] + t[2]});
      auto it = by_pos.find(q);
      if (it == by_pos.end()) continue;  // open boundary
      if (color[s] != color[it->second]) return false;
    }
  }
  return true;
}

namespace {

std::string dir_label(const StabilizerCode& code, int s1, int s2) {
  if (!code.lattice) return "-";
  const LatticeInfo& lat = *code.lattice;
  std::array<int, 3> d = lat.wrapped_delta(std::size_t(s1), std::size_t(s2));
  for (const auto& cd : lat.canonical_dirs)
    if (cd.delta == d) return cd.label;
  return "d" + std::to_string(d[0]) + "," + std::to_string(d[1]) + "," +
         std::to_string(d[2]);
}

// Labeling endpoint: sublattice 0 when tagged, else the lower site id.
std::pair<int, int> oriented(const StabilizerCode& code, int s1, int s2) {
  if (code.lattice && !code.lattice->sublattice.empty()) {
    int t1 = code.lattice->sublattice[std::size_t(s1)];
    int t2 = code.lattice->sublattice[std::size_t(s2)];
    if (t1 > t2) return {s2, s1};
    if (t1 < t2) return {s1, s2};
  }
  return {std::min(s1, s2), std::max(s1, s2)};
}

GadgetGraph from_edges(const StabilizerCode& code,
                       const std::set<std::pair<int, int>>& site_edges) {
  GadgetGraph g;
  std::size_t num_sites = code.num_sites();
  g.num_gadgets = num_sites;
  g.m = code.qubits_per_site();
  g.replacement.resize(code.n);
  for (std::size_t q = 0; q < code.n; ++q)
    g.replacement[q] = code.site_of.empty() ? int(q) : code.site_of[q];
  g.bonds_of.resize(num_sites);
  // One bond per (pair, connecting direction). Small tori connect a pair
  // through several lattice links, each its own bond.
  std::set<std::tuple<int, int, std::string>> seen;
  auto add_bond = [&](int s1, int s2, const std::string& dir) {
    if (!seen.insert({s1, s2, dir}).second) return;
    GadgetGraph::Bond bond;
    bond.g1 = std::size_t(s1);
    bond.g2 = std::size_t(s2);
    bond.dir = dir;
    g.bonds.push_back(bond);
  };
  const LatticeInfo* lat = code.lattice ? &*code.lattice : nullptr;
  auto connecting_dirs = [&](int s1, int s2) {
    std::vector<std::string> out;
    if (!lat || lat->canonical_dirs.empty()) return out;
    for (const auto& cd : lat->canonical_dirs) {
      std::array<int, 3> p{};
      bool match = true;
      for (int ax = 0; ax < 3; ++ax) {
        p[ax] = lat->site_pos[std::size_t(s1)][ax] + cd.delta[ax];
        int q = lat->site_pos[std::size_t(s2)][ax];
        if (lat->period[ax] > 0) {
          p[ax] = ((p[ax] % lat->period[ax]) + lat->period[ax]) % lat->period[ax];
          q = ((q % lat->period[ax]) + lat->period[ax]) % lat->period[ax];
        }
        if (p[ax] != q) { match = false; break; }
      }
      if (match) out.push_back(cd.label);
    }
    return out;
  };
  for (auto [a, b] : site_edges) {
    if (lat && !lat->explicit_bonds.empty()) {
      bool found = false;
      for (auto& [x, y, lbl] : lat->explicit_bonds)
        if ((x == a && y == b) || (x == b && y == a)) {
          add_bond(x, y, lbl);
          found = true;
        }
      if (found) continue;
    }
    auto [s1, s2] = oriented(code, a, b);
    std::vector<std::string> dirs = connecting_dirs(s1, s2);
    if (dirs.empty())
      add_bond(s1, s2, dir_label(code, s1, s2));
    else
      for (const auto& d : dirs) add_bond(s1, s2, d);
  }
  std::sort(g.bonds.begin(), g.bonds.end(), [](const auto& x, const auto& y) {
    return std::tie(x.g1, x.g2, x.dir) < std::tie(y.g1, y.g2, y.dir);
  });
  // Orbit id: (sublattice of g1, direction label).
  std::map<std::pair<int, std::string>, int> orbit_ids;
  for (std::size_t i = 0; i < g.bonds.size(); ++i) {
    auto& b = g.bonds[i];
    int sub = 0;
    if (code.lattice && !code.lattice->sublattice.empty())
      sub = code.lattice->sublattice[b.g1];
    auto key = std::make_pair(sub, b.dir);
    auto [it, fresh] = orbit_ids.emplace(key, int(orbit_ids.size()));
    b.orbit = it->second;
    g.bonds_of[b.g1].push_back(i);
    g.bonds_of[b.g2].push_back(i);
  }
  return g;
}

}  // namespace

BondFilter canonical_filter(const StabilizerCode& code) {
  BondFilter f;
  if (!code.lattice) return f;
  const LatticeInfo& lat = *code.lattice;
  if (!lat.explicit_bonds.empty()) {
    f.allowed.emplace();
    for (auto& [a, b, lbl] : lat.explicit_bonds)
      f.allowed->insert({std::min(a, b), std::max(a, b)});
    return f;
  }
  if (lat.canonical_dirs.empty()) return f;
  f.allowed.emplace();
  std::size_t num_sites = lat.site_pos.size();
  for (std::size_t s1 = 0; s1 < num_sites; ++s1)
    for (std::size_t s2 = s1 + 1; s2 < num_sites; ++s2) {
      std::array<int, 3> d = lat.wrapped_delta(s1, s2);
      std::array<int, 3> nd = {-d[0], -d[1], -d[2]};
      for (const auto& cd : lat.canonical_dirs)
        if (cd.delta == d || cd.delta == nd) {
          f.allowed->insert({int(s1), int(s2)});
          break;
        }
    }
  return f;
}

GadgetGraph build_gadget_graph(const TannerGraph& tanner, const StabilizerCode& code,
                               const BondFilter& filter) {
  for (char t : tanner.check_type)
    if (t != 'X' && t != 'Z')
      throw std::invalid_argument("build_gadget_graph: CSS Tanner graph required");
  std::set<std::pair<int, int>> edges;
  for (std::size_t vi = 0; vi < tanner.num_qubits; ++vi)
    for (std::size_t vj = vi + 1; vj < tanner.num_qubits; ++vj) {
      int si = code.site_of.empty() ? int(vi) : code.site_of[vi];
      int sj = code.site_of.empty() ? int(vj) : code.site_of[vj];
      if (si == sj) continue;
      if (!filter.ok(si, sj)) continue;
      bool has_x = false, has_z = false;
      for (std::size_t c : tanner.checks_of_qubit[vi]) {
        if ((has_x && tanner.check_type[c] == 'X') ||
            (has_z && tanner.check_type[c] == 'Z'))
          continue;
        if (std::find(tanner.check_support[c].begin(), tanner.check_support[c].end(),
                      vj) != tanner.check_support[c].end()) {
          if (tanner.check_type[c] == 'X') has_x = true;
          if (tanner.check_type[c] == 'Z') has_z = true;
        }
        if (has_x && has_z) break;
      }
      if (has_x && has_z) edges.insert({std::min(si, sj), std::max(si, sj)});
    }
  return from_edges(code, edges);
}

GadgetGraph build_gadget_graph_noncss(const TannerGraph& tanner,
                                      const StabilizerCode& code,
                                      const BondFilter& filter) {
  std::set<std::pair<int, int>> edges;
  for (std::size_t vi = 0; vi < tanner.num_qubits; ++vi)
    for (std::size_t vj = vi + 1; vj < tanner.num_qubits; ++vj) {
      int si = code.site_of.empty() ? int(vi) : code.site_of[vi];
      int sj = code.site_of.empty() ? int(vj) : code.site_of[vj];
      if (si == sj) continue;
      if (!filter.ok(si, sj)) continue;
      // Two checks both containing the pair, anticommuting on vi or vj.
      const auto& ci = tanner.checks_of_qubit[vi];
      bool found = false;
      for (std::size_t a = 0; a < ci.size() && !found; ++a) {
        const auto& sa = tanner.check_support[ci[a]];
        if (std::find(sa.begin(), sa.end(), vj) == sa.end()) continue;
        for (std::size_t b = a + 1; b < ci.size() && !found; ++b) {
          const auto& sb = tanner.check_support[ci[b]];
          if (std::find(sb.begin(), sb.end(), vj) == sb.end()) continue;
          const PauliString& pa = code.checks[ci[a]];
          const PauliString& pb = code.checks[ci[b]];
          auto anti_at = [&](std::size_t q) {
            int x = pa.at(q), y = pb.at(q);
            return x != 0 && y != 0 && x != y;
          };
          if (anti_at(vi) || anti_at(vj)) found = true;
        }
      }
      if (found) edges.insert({std::min(si, sj), std::max(si, sj)});
    }
  return from_edges(code, edges);
}

void assign_leg_counts(GadgetGraph& g, const StabilizerCode& code,
                       const std::map<std::string, std::size_t>& per_dir,
                       std::size_t default_legs) {
  for (auto& b : g.bonds) {
    auto it = per_dir.find(b.dir);
    b.legs = it != per_dir.end() ? it->second : default_legs;
  }
  // Every check spanning >= 2 gadgets must keep at least one leg-carrying
  // bond among its gadgets.
  TannerGraph tg = tanner_graph(code);
  for (std::size_t c = 0; c < tg.check_support.size(); ++c) {
    std::set<int> gs;
    for (std::size_t q : tg.check_support[c]) gs.insert(g.replacement[q]);
    if (gs.size() < 2) continue;
    bool ok = false;
    for (const auto& b : g.bonds)
      if (b.legs > 0 && gs.count(int(b.g1)) && gs.count(int(b.g2))) { ok = true; break; }
    if (!ok)
      throw std::invalid_argument("assign_leg_counts: check " + std::to_string(c) +
                                  " left without leg-carrying bonds");
  }
}

void write_gadget_graph(std::ostream& os, const GadgetGraph& g,
                        const StabilizerCode& code) {
  for (std::size_t i = 0; i < g.num_gadgets; ++i)
    os << "gadget " << i << " site " << i << " m " << g.m << '\n';
  for (const auto& b : g.bonds)
    os << "bond " << b.g1 << ' ' << b.g2 << " dir " << b.dir << " legs " << b.legs
       << '\n';
  (void)code;
}

}  // namespace floq
