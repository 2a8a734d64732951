#pragma once

#include "floq/code.hpp"
#include "floq/gadget.hpp"
#include "floq/layout.hpp"

namespace floq {

// The stacked gadget-stabilizer system over incoming (x) bond (x) outgoing
// space. Column slots: [in qubits n][bond legs][out qubits n], (x|z) packed.
struct AssembledSystem {
  std::size_t n = 0;       // boundary qubits per side
  std::size_t n_bond = 0;  // total internal legs
  BinaryMatrix h;          // one row per independent gadget stabilizer
  StabilizerCode code_in, code_out;

  struct BondCol {
    int period = 0;  // unrolling index; -1 marks interface wires from compose
    long bond = -1;
    std::size_t leg = 0;
  };
  std::vector<BondCol> bond_cols;

  std::size_t total() const { return 2 * n + n_bond; }
  std::size_t in_slot(std::size_t q) const { return q; }
  std::size_t bond_slot(std::size_t b) const { return n + b; }
  std::size_t out_slot(std::size_t q) const { return n + n_bond + q; }

  // Embeds a Pauli on the incoming (or outgoing) code into the full space.
  BitVec embed(const PauliString& p, bool outgoing) const;
  PauliString restrict_side(const BitVec& row, bool outgoing) const;
};

// Stacks the per-gadget tableaux (reduced to row bases) with shared bond
// columns. dir_to_bond[g][d] is the bond carrying gadget g's direction d.
AssembledSystem assemble(const StabilizerCode& code_in, const StabilizerCode& code_out,
                         const GadgetGraph& layout,
                         const std::vector<GadgetTableau>& per_gadget,
                         const std::vector<std::vector<long>>& dir_to_bond);

// Label-based direction matching; throws when a label is ambiguous.
std::vector<std::vector<long>> match_dirs(const GadgetGraph& layout,
                                          const std::vector<GadgetTableau>& per_gadget);

// Basis of row-space elements supported only on the allowed slots (slots are
// qubit positions over the system's total() register).
std::vector<BitVec> supported_subgroup(const BinaryMatrix& h, std::size_t total_slots,
                                       const std::vector<char>& allowed);

struct BoundaryGroup {
  std::size_t in_rank = 0, out_rank = 0;
  std::vector<PauliString> in_generators;   // on the incoming code qubits
  std::vector<PauliString> out_generators;  // on the outgoing code qubits
};
BoundaryGroup boundary_group(const AssembledSystem& sys);

struct BkrcReport {
  bool pass = false;
  std::size_t in_rank = 0, out_rank = 0, expected = 0;
  std::optional<PauliString> offending_logical;  // measured logical on fail
};
BkrcReport bkrc_check(const AssembledSystem& sys);

// Symplectic 2k x 2k logical map, column basis (X1, Z1, X2, Z2, ...).
struct LogicalAutomorphism {
  BinaryMatrix map;   // column j = image coefficients of basis logical j
  std::string label;  // recognized gate pattern, or "matrix"
  bool symplectic = true;
};
LogicalAutomorphism logical_action(const AssembledSystem& sys,
                                   const LogicalBasis& basis_in,
                                   const LogicalBasis& basis_out);

// Image of a single incoming operator, modulo outgoing checks. Fails when
// the operator is not preserved with trivial bond support.
std::optional<PauliString> map_through(const AssembledSystem& sys,
                                       const PauliString& incoming);

// A ∘ B: A's outgoing legs contract with B's incoming legs.
AssembledSystem compose(const AssembledSystem& a, const AssembledSystem& b);
// sys followed by its dagger (in/out roles swapped).
AssembledSystem rewind(const AssembledSystem& sys);
AssembledSystem dagger(const AssembledSystem& sys);

struct DistanceReport {
  struct PerLogical {
    bool exact = false;
    std::size_t weight = 0;  // exact weight or w_max+1 lower bound
    BitVec certificate;      // minimal dressed representative when exact
  };
  std::vector<PerLogical> per_logical;  // indexed X1,Z1,X2,Z2,...
  bool exact = false;
  std::size_t d_st = 0;
  BitVec certificate;
};
DistanceReport spacetime_distance(const AssembledSystem& sys,
                                  const LogicalBasis& basis_in, std::size_t w_max,
                                  unsigned threads = 1);

struct MlscReport {
  bool pass = false;
  std::size_t d_st_small = 0, d_st_large = 0;
  bool small_exact = false, large_exact = false;
};
// Operational check at two sizes: d_st grows between them and d_st >= d at
// both (the large instance searched up to max(d_small, d_large - 1)).
MlscReport mlsc_check(const AssembledSystem& small_sys, const LogicalBasis& small_basis,
                      std::size_t d_small, const AssembledSystem& large_sys,
                      const LogicalBasis& large_basis, std::size_t d_large,
                      unsigned threads = 1);

// Gadget minimality: no row-space element supported on a single bond's legs.
bool is_minimal_gadget(const GadgetTableau& g);

// Bond-local unitary equivalence: per-direction symplectic transformations
// carrying e1's row space onto e2's. Exhaustive for <= 2 legs per direction.
struct BondLocalWitness {
  bool equivalent = false;
  std::vector<BinaryMatrix> per_dir;  // symplectic matrix per direction
  std::string label;                  // decoded gates when recognizable
};
BondLocalWitness bond_local_equivalent(const GadgetTableau& e1, const GadgetTableau& e2);

}  // namespace floq
