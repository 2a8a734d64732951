#pragma once

#include <map>

#include "floq/gadget.hpp"

namespace floq {

// Enumerated Sp(2l, F2) as (2l x 2l) matrices acting on (x|z) leg vectors.
// Cached; supported for l = 1 (6 elements) and l = 2 (720 elements).
const std::vector<BinaryMatrix>& symplectic_group(std::size_t legs);
PauliString apply_symplectic(const BinaryMatrix& m, const PauliString& p);

// Translation-reduced parameterization of the encoding maps: bond-operator
// symbols on direction orbits, plus one row per (stabilizer web, side) at
// each representative gadget.
struct Stencil {
  std::string name;
  EncodingMode mode = EncodingMode::clifford;
  std::size_t m = 1;

  std::vector<std::string> groups;  // direction-orbit labels

  struct Symbol {
    std::string name;
    char css_type = 0;  // 'X'/'Z' restrict content, 0 = any Pauli string
    bool zero_allowed = false;
  };
  std::vector<Symbol> symbols;

  struct Slot {
    std::size_t dir;     // group index
    std::size_t symbol;  // symbol index
  };
  struct Row {
    std::string tag;
    std::size_t gadget = 0;  // representative gadget id
    PauliString in_out;      // width 2m: [in | out]
    std::vector<Slot> slots;
  };
  std::vector<Row> rows;

  std::size_t find_symbol(const std::string& name) const;
};

// One consistency constraint: sum of symplectic products of symbol pairs on
// shared directions equals the in/out anticommutation parity.
struct Constraint {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // symbol indices
  int parity = 0;
  std::string label;
};

std::vector<Constraint> build_consistency_system(const Stencil& stencil);

using LegBudget = std::map<std::string, std::size_t>;  // group label -> legs

using Assignment = std::vector<PauliString>;  // per symbol

struct SolveOutcome {
  bool feasible = false;
  LegBudget budget;                    // the budget that succeeded
  std::vector<Assignment> solutions;   // raw, in enumeration order
  std::vector<Assignment> canonical;   // deduped canonical representatives
  // For each infeasible budget tried first: a minimal unsatisfiable core.
  std::vector<std::pair<LegBudget, std::vector<std::string>>> infeasible;
};

// Tries the budgets in order and returns all solutions of the first feasible
// one, canonicalized under the per-direction bond-local Clifford action.
SolveOutcome solve_min_legs(const Stencil& stencil,
                            const std::vector<LegBudget>& schedule,
                            std::size_t max_solutions = 100000);

// Canonical form of an assignment: per direction orbit, the lexicographic
// minimum over Sp(2l) of the tuple of slot values in row order.
Assignment canonical_assignment(const Stencil& stencil, const LegBudget& budget,
                                const Assignment& a);

// Instantiates the representative gadget's tableau from an assignment.
GadgetTableau stencil_gadget(const Stencil& stencil, std::size_t gadget,
                             const LegBudget& budget, const Assignment& a,
                             const std::string& id);

// Admissible internal-leg completions of a deficient gadget: exhaustive over
// the internal commutant up to the weight cap, deduped by row space. BKRC
// screening of the results happens downstream.
std::vector<GadgetTableau> complete_with_internal_stabilizers(
    const GadgetTableau& bare, std::size_t weight_cap = 6,
    std::size_t max_results = 64);

// Family stencils transcribed from the worked examples.
Stencil toric_stencil(EncodingMode mode);
Stencil color_stencil();
Stencil bb_stencil();
Stencil haah_stencil();
Stencil checkerboard_stencil();
Stencil fermion_stencil();

// Uniform budget helper.
LegBudget uniform_budget(const Stencil& stencil, std::size_t legs);

}  // namespace floq
