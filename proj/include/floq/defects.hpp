#pragma once

#include "floq/pipeline.hpp"

namespace floq {

struct DefectSpec {
  enum Kind { BrokenBond, QubitDropout } kind = BrokenBond;
  std::size_t bond = 0;    // BrokenBond: layout bond id
  std::size_t qubit = 0;   // QubitDropout: code qubit (= gadget for m = 1)
  std::size_t unroll_max = 4;
  bool prior_art = false;  // dropout variant with extra removed bonds
};

// One admissible termination: the single-leg stabilizer per removed leg and
// the circuit action it corresponds to.
struct Termination {
  std::vector<std::pair<std::size_t, char>> legs;  // (bond column, Pauli)
  std::string description;
};

struct DefectResult {
  bool feasible = false;
  std::size_t unroll = 0;
  bool rewound = false;  // combined with the dual circuit rather than repeated
  AssembledSystem sys;   // unrolled system with terminations applied
  LogicalBasis basis;    // of the (possibly gauge-fixed) incoming code
  std::vector<Termination> solutions;  // all admissible, deterministic order
  std::vector<AssembledSystem> solution_systems;  // aligned with solutions
  std::size_t chosen = 0;
  bool gauge_switch = false;  // dropout: outgoing gauge differs from incoming
  std::string note;
};

DefectResult apply_broken_bond(const BuiltSystem& bs, const DefectSpec& spec);
DefectResult apply_qubit_dropout(const BuiltSystem& bs, const DefectSpec& spec);
DefectResult apply_defect(const BuiltSystem& bs, const DefectSpec& spec);

struct DefectComparison {
  std::size_t k_before = 0, k_after = 0;
  bool bkrc_before = false, bkrc_after = false;
  std::size_t dst_before = 0, dst_after = 0;
  bool dst_before_exact = false, dst_after_exact = false;
  bool gauge_switch = false;
  std::string automorphism_before, automorphism_after;
};
DefectComparison defect_report(const BuiltSystem& before, const DefectResult& after,
                               std::size_t w_max, unsigned threads = 1);

// Defect list file: `BROKEN <g1> <g2>` / `DROPOUT <gadget>` lines.
std::vector<DefectSpec> read_defects(std::istream& is, const GadgetGraph& layout);

}  // namespace floq
