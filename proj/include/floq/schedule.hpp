#pragma once

#include "floq/circuit.hpp"
#include "floq/pipeline.hpp"

namespace floq {

// Timed rounds of commuting, disjoint-support operations.
struct Schedule {
  std::size_t num_qubits = 0;
  struct Round {
    std::string label;
    std::vector<CliffordCircuit::Op> entries;
  };
  std::vector<Round> rounds;

  std::vector<std::string> labels() const;
  // Disjoint supports within each round.
  void validate() const;
};

// A physical realization of a Floquet period: gadgets replaced by m_F
// physical qubits, with the period's measurement rounds and the embedding of
// code operators onto the physical register.
struct FloquetLattice {
  BuiltSystem built;
  std::size_t phys_per_gadget = 2;
  std::size_t num_phys = 0;
  std::vector<std::vector<std::size_t>> phys;  // gadget -> physical qubits
  Schedule period;

  PauliString embed(const PauliString& code_op) const;
  // Spatial-code stabilizers established by the in-gadget round.
  std::vector<PauliString> spatial_stabilizers() const;
};

// Square-octagon realization of the Clifford toric gadget: gZZ, bXX, rYY.
FloquetLattice hh_toric_lattice(std::size_t L);
// Six-round CSS toric realization: gZZ bXX rZZ gXX bZZ rXX.
FloquetLattice css_toric_lattice(std::size_t L);
// Three-round fermionic realization: gZZ rXX bYY.
FloquetLattice fermion_lattice(std::size_t L);
// Ruby-lattice color realization: gZZ bXX rZZ gXX (variant "6"/"7" appends
// the second-gadget rounds).
FloquetLattice color_lattice(std::size_t L, const std::string& variant = "4");
// Floquet Steane code: color rounds with the corner deltas.
FloquetLattice steane_lattice(const std::string& corner);

// Structural schedules for the three-dimensional and long-range families:
// the paper's round sequences with per-gadget operations filled in.
Schedule haah_schedule(std::size_t L);
Schedule checkerboard_schedule(std::size_t L);
Schedule bb_schedule(const BBCodeSpec& spec);

struct IsgReport {
  bool pass = false;
  std::size_t isg_period = 0;  // 1 or 2 when repeating, 0 otherwise
  std::size_t periods = 0;
  // Every incoming stabilizer's value is fixed by one period's outcomes.
  bool stabilizers_measured = false;
  // The end-of-period state is stabilized by the outgoing code.
  bool outgoing_stabilized = false;
  std::string detail;
};
// Runs `periods` repetitions after a warm-up period and checks the schedule
// round-trip conditions by instantaneous-stabilizer-group tracking.
IsgReport verify_schedule(const FloquetLattice& fl, std::size_t periods);

// Schedule file format.
void write_schedule(std::ostream& os, const Schedule& s);
Schedule read_schedule(std::istream& is);

}  // namespace floq
