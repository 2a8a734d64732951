#pragma once

#include <map>

#include "floq/gadget.hpp"
#include "floq/tableau.hpp"

namespace floq {

// A Clifford circuit over a fixed qubit register: initializations, gates,
// and (possibly multi-qubit) Pauli measurements with outcome labels.
struct CliffordCircuit {
  std::size_t num_qubits = 0;
  struct Op {
    enum Kind { Init, GateOp, Measure } kind;
    char basis = 'Z';           // Init
    Gate gate = Gate::H;        // GateOp
    std::size_t a = 0, b = 0;   // GateOp qubits
    PauliString pauli;          // Measure support
    std::string label;          // Measure outcome label
  };
  std::vector<Op> ops;

  void init(std::size_t q, char basis = 'Z');
  void gate(Gate g, std::size_t a, std::size_t b = SIZE_MAX);
  void measure(const PauliString& p, const std::string& label);

  // Runs the circuit; outcomes keyed by label.
  std::map<std::string, OutcomeExpr> run(CliffordTableau& t) const;
};

// State-preparation circuit for a complete gadget tableau: starting from
// |0...0> over the gadget's legs, the emitted gates produce a state whose
// stabilizer group is exactly the tableau's row space (projectively).
CliffordCircuit synthesize_clifford_encoder(const GadgetTableau& tab);

// Phase-free variant using only the X-type rows of a CSS tableau: |+> / |0>
// initializations plus CNOTs.
CliffordCircuit synthesize_css_encoder(const GadgetTableau& tab);

// True when the circuit, run from |0...0>, stabilizes every tableau row.
bool encoder_matches_tableau(const CliffordCircuit& c, const GadgetTableau& tab);

// Three-stage decomposition summary: per-data-qubit spatial code of m_F
// physical qubits, the internal legs distributed over time steps, and the
// depth estimate n_L / m_F.
struct ThreeStage {
  std::size_t m = 1;
  std::size_t m_f = 1;
  std::size_t n_l = 0;
  std::size_t depth = 0;                       // temporal steps used
  std::vector<std::vector<std::size_t>> steps; // leg columns per step
  std::size_t d2_estimate = 0;                 // ceil(n_l / m_f)
};
ThreeStage three_stage_layout(const GadgetTableau& tab, std::size_t m_f);

struct ResourceReport {
  std::size_t n_l = 0, m_f = 0, depth = 0, d2_estimate = 0;
};
ResourceReport resource_report(const GadgetTableau& tab, std::size_t m_f);

}  // namespace floq
