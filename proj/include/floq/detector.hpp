#pragma once

#include "floq/schedule.hpp"

namespace floq {

// Spacetime detectors of a repeated schedule: outcome subsets whose parity is
// deterministic in the error-free circuit, plus logical observables tracked
// between the window's ends.
struct DetectorModel {
  CliffordCircuit circuit;  // init round + repeated periods + observables
  std::vector<std::string> outcome_labels;
  std::vector<std::size_t> measure_op_index;  // op index per outcome

  struct Detector {
    std::vector<std::size_t> outcomes;
    int expected = 0;  // parity in the error-free run
  };
  std::vector<Detector> detectors;
  std::vector<std::vector<std::size_t>> observables;  // outcome index sets

  std::vector<PauliString> final_stabilizers;
  // Fault region: op index range of the repeated cycles (observable
  // bookkeeping and warm-up are time boundaries, not fault locations).
  std::size_t fault_begin = 0, fault_end = 0;
};

// Builds the detector model of `periods` repetitions (after a warm-up
// period). Observables compare embedded logical measurements at both ends;
// they are only included when the automorphism over the window is trivial.
DetectorModel spacetime_detectors(const FloquetLattice& fl, std::size_t periods);

struct ErrorMechanism {
  std::string desc;
  std::vector<std::size_t> detectors;    // flipped detector indices
  std::vector<std::size_t> observables;  // flipped observable indices
  bool harmless = false;  // no flips and the residual is a final stabilizer
  long op_loc = -1;       // Pauli insertion op index, -1 for outcome flips
  long outcome = -1;      // flipped outcome index, -1 for Pauli errors
};

// Single-Pauli errors at every circuit location plus measurement flips.
std::vector<ErrorMechanism> enumerate_mechanisms(const DetectorModel& dm);

// Minimum-cardinality mechanism set with empty syndrome and odd logical flip,
// searched up to w_max (supported for w_max <= 2: singles and pairs).
struct CircuitDistance {
  bool exact = false;
  std::size_t weight = 0;
  std::vector<std::size_t> mechanisms;
};
CircuitDistance circuit_distance(const DetectorModel& dm,
                                 const std::vector<ErrorMechanism>& errs,
                                 std::size_t w_max);

// Error-to-detector hypergraph file (structure only; probabilities symbolic).
void write_hypergraph(std::ostream& os, const DetectorModel& dm,
                      const std::vector<ErrorMechanism>& errs);

// Pair-measurement surface code: two ancillas per four-body check, pairwise
// measurements only, with the ancilla-ancilla measurement between the two
// halves. The returned model spans `periods` cycles plus logical tracking.
DetectorModel pairwise_surface_circuit(std::size_t d, std::size_t periods);

}  // namespace floq
