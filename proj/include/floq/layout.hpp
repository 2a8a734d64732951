#pragma once

#include <set>

#include "floq/code.hpp"

namespace floq {

// Gadget connectivity graph. Gadgets replace the m qubits of a site; bonds
// carry a direction label (as seen from the sublattice-0 / lower endpoint)
// and a leg count.
struct GadgetGraph {
  std::size_t num_gadgets = 0;
  std::size_t m = 1;
  std::vector<int> replacement;  // qubit -> gadget
  struct Bond {
    std::size_t g1, g2;  // g1 is the labeling side
    std::string dir;
    std::size_t legs = 1;
    int orbit = -1;
  };
  std::vector<Bond> bonds;
  std::vector<std::vector<std::size_t>> bonds_of;  // gadget -> bond indices

  std::size_t degree(std::size_t g) const { return bonds_of[g].size(); }
  std::size_t leg_degree(std::size_t g) const;
  std::size_t total_legs(std::size_t g) const;  // n_L of the gadget
  std::size_t num_leg_slots() const;            // total legs over all bonds

  std::size_t other(std::size_t bond, std::size_t g) const {
    return bonds[bond].g1 == g ? bonds[bond].g2 : bonds[bond].g1;
  }
  long bond_between(std::size_t a, std::size_t b, const std::string& dir = "") const;

  // Proper 2-coloring compatible with the code's translation generators, the
  // property synchronization relies on. Computed on leg-carrying bonds.
  bool sync_bipartite(const StabilizerCode& code) const;
};

// Optional hardware mask: only site pairs present in `allowed` may bond.
struct BondFilter {
  std::optional<std::set<std::pair<int, int>>> allowed;
  bool ok(int s1, int s2) const {
    if (!allowed) return true;
    return allowed->count({std::min(s1, s2), std::max(s1, s2)}) > 0;
  }
};

// Mask keeping exactly the family's canonical bonds (explicit list or
// canonical direction set). Codes without lattice data give an empty filter.
BondFilter canonical_filter(const StabilizerCode& code);

// Algorithm: bond between R(v_i), R(v_j) iff some X check and some Z check
// both contain the pair. Requires a CSS Tanner graph.
GadgetGraph build_gadget_graph(const TannerGraph& tanner, const StabilizerCode& code,
                               const BondFilter& filter = {});

// Non-CSS variant: two checks share the pair and their supports anticommute
// on at least one of the two qubits.
GadgetGraph build_gadget_graph_noncss(const TannerGraph& tanner,
                                      const StabilizerCode& code,
                                      const BondFilter& filter = {});

// Uniform or per-direction-label leg counts. Throws when a check's web set
// would be left without any leg-carrying bond.
void assign_leg_counts(GadgetGraph& g, const StabilizerCode& code,
                       const std::map<std::string, std::size_t>& per_dir,
                       std::size_t default_legs = 1);

// Dump format: one line per gadget, one per bond.
void write_gadget_graph(std::ostream& os, const GadgetGraph& g,
                        const StabilizerCode& code);

}  // namespace floq
