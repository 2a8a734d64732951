#include "floq/detector.hpp"

#include <algorithm>
#include <ostream>

#include "floq/dyncode.hpp"

namespace floq {

namespace {

void conjugate_through(PauliString& p, const CliffordCircuit::Op& op) {
  if (op.kind != CliffordCircuit::Op::GateOp) return;
  bool xa = p.x.get(op.a), za = p.z.get(op.a);
  switch (op.gate) {
    case Gate::H:
      p.x.set(op.a, za);
      p.z.set(op.a, xa);
      break;
    case Gate::S:
      p.z.set(op.a, xa ^ za);
      break;
    case Gate::CNOT: {
      bool xb = p.x.get(op.b), zb = p.z.get(op.b);
      p.x.set(op.b, xb ^ xa);
      p.z.set(op.a, za ^ zb);
      break;
    }
    case Gate::CZ: {
      bool xb = p.x.get(op.b);
      p.z.set(op.b, p.z.get(op.b) ^ xa);
      p.z.set(op.a, za ^ xb);
      break;
    }
    case Gate::SWAP: {
      bool xb = p.x.get(op.b), zb = p.z.get(op.b);
      p.x.set(op.a, xb);
      p.z.set(op.a, zb);
      p.x.set(op.b, xa);
      p.z.set(op.b, za);
      break;
    }
    case Gate::X:
    case Gate::Z:
      break;
  }
}

void append_round(CliffordCircuit& c, const Schedule::Round& round,
                  const std::string& tag, std::size_t& meas_counter) {
  for (const auto& e : round.entries) {
    if (e.kind == CliffordCircuit::Op::Measure) {
      c.measure(e.pauli, tag + "." + round.label + "." + std::to_string(meas_counter++));
    } else if (e.kind == CliffordCircuit::Op::GateOp) {
      c.gate(e.gate, e.a, e.b);
    } else {
      c.init(e.a, e.basis);
    }
  }
}

DetectorModel finish_model(CliffordCircuit circuit,
                           const std::vector<std::vector<std::string>>& observable_labels) {
  DetectorModel dm;
  dm.circuit = std::move(circuit);

  CliffordTableau t(dm.circuit.num_qubits);
  t.set_symbolic(true);
  std::vector<std::pair<std::string, OutcomeExpr>> outcomes;
  std::size_t op_index = 0;
  for (const auto& op : dm.circuit.ops) {
    if (op.kind == CliffordCircuit::Op::Measure) {
      outcomes.push_back({op.label, t.measure(op.pauli)});
      dm.measure_op_index.push_back(op_index);
    } else if (op.kind == CliffordCircuit::Op::GateOp) {
      t.apply_gate(op.gate, op.a, op.b);
    } else {
      PauliString p(t.num_qubits());
      p.set(op.a, op.basis == 'Z' ? 2 : (op.basis == 'X' ? 1 : 3));
      t.measure_and_reset(p);
    }
    ++op_index;
  }
  for (auto& [label, expr] : outcomes) dm.outcome_labels.push_back(label);

  // Detector basis: outcome combinations whose symbol sets cancel.
  std::size_t n_sym = t.num_symbols();
  BinaryMatrix m(outcomes.size(), n_sym ? n_sym : 1);
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    for (uint32_t s : outcomes[i].second.syms) m.set(i, s, true);
  BinaryMatrix combos = kernel(m.transposed());
  for (std::size_t r = 0; r < combos.rows(); ++r) {
    DetectorModel::Detector det;
    int expected = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i)
      if (combos.get(r, i)) {
        det.outcomes.push_back(i);
        expected ^= outcomes[i].second.constant;
      }
    if (det.outcomes.empty()) continue;
    det.expected = expected;
    dm.detectors.push_back(std::move(det));
  }

  // Observables by label sets.
  for (const auto& labels : observable_labels) {
    std::vector<std::size_t> obs;
    for (const auto& l : labels)
      for (std::size_t i = 0; i < dm.outcome_labels.size(); ++i)
        if (dm.outcome_labels[i] == l) obs.push_back(i);
    dm.observables.push_back(std::move(obs));
  }

  for (std::size_t i = 0; i < t.num_qubits(); ++i)
    dm.final_stabilizers.push_back(t.stabilizer(i));
  return dm;
}

}  // namespace

DetectorModel spacetime_detectors(const FloquetLattice& fl, std::size_t periods) {
  if (periods < 1) throw std::invalid_argument("spacetime_detectors: periods >= 1");
  CliffordCircuit c;
  c.num_qubits = fl.num_phys;
  for (std::size_t q = 0; q < fl.num_phys; ++q) c.init(q, 'Z');
  std::size_t meas = 0;
  // Two warm-up periods: the instantaneous group converges after the first
  // full set of closed webs.
  for (const auto& r : fl.period.rounds) append_round(c, r, "w0", meas);
  for (const auto& r : fl.period.rounds) append_round(c, r, "w1", meas);

  // Observable reference measurements at the closed boundary of the window;
  // only meaningful when the window automorphism is trivial.
  LogicalAutomorphism u = logical_action(fl.built.sys, fl.built.basis, fl.built.basis);
  std::size_t reps = periods;
  bool track_obs = u.label == "I";
  std::vector<std::vector<std::string>> obs_labels;
  if (track_obs) {
    std::size_t k = fl.built.basis.k();
    for (std::size_t i = 0; i < 2 * k; ++i) {
      const PauliString& l = (i % 2 == 0) ? fl.built.basis.pairs[i / 2].first
                                          : fl.built.basis.pairs[i / 2].second;
      c.measure(fl.embed(l), "obs_in." + std::to_string(i));
    }
  }
  for (std::size_t p = 0; p < reps; ++p)
    for (const auto& r : fl.period.rounds)
      append_round(c, r, "p" + std::to_string(p), meas);
  // Close the last period at the frame boundary.
  append_round(c, fl.period.rounds.front(), "close", meas);
  if (track_obs) {
    std::size_t k = fl.built.basis.k();
    for (std::size_t i = 0; i < 2 * k; ++i) {
      const PauliString& l = (i % 2 == 0) ? fl.built.basis.pairs[i / 2].first
                                          : fl.built.basis.pairs[i / 2].second;
      c.measure(fl.embed(l), "obs_out." + std::to_string(i));
      obs_labels.push_back({"obs_in." + std::to_string(i), "obs_out." + std::to_string(i)});
    }
  }
  DetectorModel dm = finish_model(std::move(c), obs_labels);
  // Faults live in the cycles whose detecting webs close inside the window:
  // everything up to the second-to-last repeated cycle.
  dm.fault_begin = dm.circuit.ops.size();
  dm.fault_end = 0;
  std::string last_stable = "p" + std::to_string(periods >= 2 ? periods - 2 : 0) + ".";
  for (std::size_t i = 0; i < dm.circuit.ops.size(); ++i) {
    const auto& op = dm.circuit.ops[i];
    if (op.kind != CliffordCircuit::Op::Measure) continue;
    if (op.label.rfind("p0.", 0) == 0) dm.fault_begin = std::min(dm.fault_begin, i);
    if (op.label.rfind(last_stable, 0) == 0) dm.fault_end = std::max(dm.fault_end, i);
  }
  return dm;
}

std::vector<ErrorMechanism> enumerate_mechanisms(const DetectorModel& dm) {
  std::vector<ErrorMechanism> out;
  RowSpace final_group(2 * dm.circuit.num_qubits);
  for (const auto& s : dm.final_stabilizers) final_group.add(pauli_to_row(s));

  // Stabilizer group at every op boundary: an error inside it is trivial.
  std::vector<RowSpace> group_at;
  {
    CliffordTableau t(dm.circuit.num_qubits);
    t.seed(2);
    auto snapshot = [&]() {
      RowSpace rs(2 * dm.circuit.num_qubits);
      for (std::size_t i = 0; i < t.num_qubits(); ++i)
        rs.add(pauli_to_row(t.stabilizer(i)));
      group_at.push_back(std::move(rs));
    };
    snapshot();
    for (const auto& op : dm.circuit.ops) {
      if (op.kind == CliffordCircuit::Op::Measure) {
        t.measure(op.pauli);
      } else if (op.kind == CliffordCircuit::Op::GateOp) {
        t.apply_gate(op.gate, op.a, op.b);
      } else {
        PauliString p(t.num_qubits());
        p.set(op.a, op.basis == 'Z' ? 2 : (op.basis == 'X' ? 1 : 3));
        t.measure_and_reset(p);
      }
      snapshot();
    }
  }

  // Outcome index lookup per op.
  std::map<std::size_t, std::size_t> outcome_of_op;
  for (std::size_t i = 0; i < dm.measure_op_index.size(); ++i)
    outcome_of_op[dm.measure_op_index[i]] = i;

  auto classify = [&](const std::vector<std::size_t>& flips, const PauliString& residual,
                      const std::string& desc) {
    ErrorMechanism mech;
    mech.desc = desc;
    std::vector<char> flipped(dm.outcome_labels.size(), 0);
    for (std::size_t f : flips) flipped[f] = 1;
    for (std::size_t d = 0; d < dm.detectors.size(); ++d) {
      int parity = 0;
      for (std::size_t o : dm.detectors[d].outcomes) parity ^= flipped[o];
      if (parity) mech.detectors.push_back(d);
    }
    for (std::size_t ob = 0; ob < dm.observables.size(); ++ob) {
      int parity = 0;
      for (std::size_t o : dm.observables[ob]) parity ^= flipped[o];
      if (parity) mech.observables.push_back(ob);
    }
    if (mech.detectors.empty() && mech.observables.empty())
      mech.harmless = final_group.contains(pauli_to_row(residual));
    out.push_back(std::move(mech));
  };

  // Measurement flips.
  for (std::size_t i = 0; i < dm.outcome_labels.size(); ++i) {
    classify({i}, PauliString(dm.circuit.num_qubits),
             "flip " + dm.outcome_labels[i]);
    out.back().outcome = long(i);
  }

  // Single-qubit Pauli errors after each op (and before the first).
  std::size_t n = dm.circuit.num_qubits;
  for (std::size_t loc = 0; loc <= dm.circuit.ops.size(); ++loc)
    for (std::size_t q = 0; q < n; ++q)
      for (int pauli = 1; pauli <= 3; ++pauli) {
        PauliString err(n);
        err.set(q, pauli);
        std::string desc = "pauli " + std::string(1, "IXZY"[pauli]) +
                           std::to_string(q) + " at op " + std::to_string(loc);
        if (group_at[loc].contains(pauli_to_row(err))) {
          // Acts trivially on the state at the insertion point.
          ErrorMechanism mech;
          mech.desc = desc;
          mech.harmless = true;
          mech.op_loc = long(loc);
          out.push_back(std::move(mech));
          continue;
        }
        std::vector<std::size_t> flips;
        PauliString cur = err;
        for (std::size_t op_i = loc; op_i < dm.circuit.ops.size(); ++op_i) {
          const auto& op = dm.circuit.ops[op_i];
          if (op.kind == CliffordCircuit::Op::Init) {
            cur.set(op.a, 0);
          } else if (op.kind == CliffordCircuit::Op::GateOp) {
            conjugate_through(cur, op);
          } else {
            if (symplectic_product(cur, op.pauli)) flips.push_back(outcome_of_op.at(op_i));
          }
        }
        classify(flips, cur, desc);
        out.back().op_loc = long(loc);
      }
  return out;
}

CircuitDistance circuit_distance(const DetectorModel& dm,
                                 const std::vector<ErrorMechanism>& errs,
                                 std::size_t w_max) {
  CircuitDistance out;
  auto in_region = [&](const ErrorMechanism& m) {
    if (m.outcome >= 0) {
      std::size_t at = dm.measure_op_index[std::size_t(m.outcome)];
      return at >= dm.fault_begin && at <= dm.fault_end;
    }
    return m.op_loc >= long(dm.fault_begin) && m.op_loc <= long(dm.fault_end);
  };
  auto signature = [&](const ErrorMechanism& m) {
    std::string s;
    for (std::size_t d : m.detectors) s += std::to_string(d) + ",";
    return s;
  };
  // Weight 1.
  for (std::size_t i = 0; i < errs.size(); ++i)
    if (in_region(errs[i]) && errs[i].detectors.empty() && !errs[i].observables.empty()) {
      out.exact = true;
      out.weight = 1;
      out.mechanisms = {i};
      return out;
    }
  if (w_max < 2) {
    out.weight = w_max + 1;
    return out;
  }
  // Weight 2: equal syndromes with odd combined observable flip.
  std::map<std::string, std::vector<std::size_t>> by_sig;
  for (std::size_t i = 0; i < errs.size(); ++i)
    if (in_region(errs[i]) && (!errs[i].detectors.empty() || !errs[i].observables.empty()))
      by_sig[signature(errs[i])].push_back(i);
  for (auto& [sig, members] : by_sig)
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        std::vector<std::size_t> obs;
        std::set_symmetric_difference(
            errs[members[a]].observables.begin(), errs[members[a]].observables.end(),
            errs[members[b]].observables.begin(), errs[members[b]].observables.end(),
            std::back_inserter(obs));
        if (!obs.empty()) {
          out.exact = true;
          out.weight = 2;
          out.mechanisms = {members[a], members[b]};
          return out;
        }
      }
  out.weight = w_max + 1;
  return out;
}

void write_hypergraph(std::ostream& os, const DetectorModel& dm,
                      const std::vector<ErrorMechanism>& errs) {
  for (std::size_t d = 0; d < dm.detectors.size(); ++d) os << "detector " << d << '\n';
  std::set<std::string> seen;
  for (const auto& e : errs) {
    if (e.detectors.empty() && e.observables.empty()) continue;  // stabilizers excluded
    std::string line = "error p";
    for (std::size_t d : e.detectors) line += " D" + std::to_string(d);
    for (std::size_t o : e.observables) line += " L" + std::to_string(o);
    if (!seen.insert(line).second) continue;
    os << line << '\n';
  }
}

DetectorModel pairwise_surface_circuit(std::size_t d, std::size_t periods) {
  StabilizerCode code = surface_code(d);
  TannerGraph tanner = tanner_graph(code);
  const LatticeInfo& lat = *code.lattice;

  // Register: data qubits first, then ancillas (two per 4-body face, one per
  // 2-body check).
  std::size_t next_q = code.n;
  struct FaceAnc {
    std::size_t p = SIZE_MAX, q = SIZE_MAX;
    std::vector<std::size_t> first, second;  // data qubits per half
  };
  std::vector<FaceAnc> anc(code.checks.size());
  for (std::size_t c = 0; c < code.checks.size(); ++c) {
    const auto& sup = tanner.check_support[c];
    FaceAnc fa;
    fa.p = next_q++;
    if (sup.size() == 4) {
      fa.q = next_q++;
      std::vector<std::size_t> s = sup;
      std::sort(s.begin(), s.end(), [&](std::size_t a, std::size_t b) {
        return std::make_pair(lat.site_pos[a][1], lat.site_pos[a][0]) <
               std::make_pair(lat.site_pos[b][1], lat.site_pos[b][0]);
      });
      // Halves split along rows: hooks extend along the row direction.
      fa.first = {s[2], s[3]};   // nw, ne
      fa.second = {s[0], s[1]};  // sw, se
    } else {
      fa.first = {sup[0], sup[1]};
    }
    anc[c] = fa;
  }
  std::size_t total = next_q;

  CliffordCircuit c;
  c.num_qubits = total;
  for (std::size_t q = 0; q < total; ++q) c.init(q, 'Z');

  auto pair_meas = [&](std::size_t a, std::size_t b, char basis, const std::string& lbl) {
    PauliString p(total);
    int codep = basis == 'X' ? 1 : 2;
    p.set(a, codep);
    p.set(b, codep);
    c.measure(p, lbl);
  };
  auto single_meas = [&](std::size_t q, char basis, const std::string& lbl) {
    PauliString p(total);
    p.set(q, basis == 'X' ? 1 : 2);
    c.measure(p, lbl);
  };

  std::size_t counter = 0;
  // One cycle: all checks of one type proceed through the pentagon steps in
  // lockstep, X faces first, then Z faces.
  auto run_cycle = [&](const std::string& tag) {
    for (char phase : {'X', 'Z'}) {
      char dual = phase == 'X' ? 'Z' : 'X';
      std::vector<std::size_t> active;
      for (std::size_t ci = 0; ci < code.checks.size(); ++ci)
        if ((*code.css_split)[ci] == phase) active.push_back(ci);
      for (std::size_t ci : active) {
        c.init(anc[ci].p, dual);
        if (anc[ci].q != SIZE_MAX) c.init(anc[ci].q, dual);
      }
      auto lbl = [&](std::size_t ci) {
        return tag + ".c" + std::to_string(ci) + "." + std::to_string(counter++);
      };
      for (std::size_t ci : active)
        pair_meas(anc[ci].p, anc[ci].first[0], phase, lbl(ci));
      for (std::size_t ci : active)
        if (anc[ci].q != SIZE_MAX)
          pair_meas(anc[ci].q, anc[ci].second[0], phase, lbl(ci));
      for (std::size_t ci : active)
        if (anc[ci].q != SIZE_MAX)
          pair_meas(anc[ci].p, anc[ci].q, dual, tag + ".c" + std::to_string(ci) +
                                                    ".zz" + std::to_string(counter++));
      for (std::size_t ci : active)
        pair_meas(anc[ci].p, anc[ci].first[1], phase, lbl(ci));
      for (std::size_t ci : active)
        if (anc[ci].q != SIZE_MAX)
          pair_meas(anc[ci].q, anc[ci].second[1], phase, lbl(ci));
      for (std::size_t ci : active) {
        single_meas(anc[ci].p, dual, lbl(ci));
        if (anc[ci].q != SIZE_MAX) single_meas(anc[ci].q, dual, lbl(ci));
      }
    }
  };

  run_cycle("w");
  LogicalBasis basis = logical_basis(code);
  std::vector<std::vector<std::string>> obs_labels;
  auto lift = [&](const PauliString& l) {
    PauliString p(total);
    for (std::size_t q = 0; q < code.n; ++q) p.set(q, l.at(q));
    return p;
  };
  for (std::size_t i = 0; i < 2 * basis.k(); ++i) {
    const PauliString& l =
        (i % 2 == 0) ? basis.pairs[i / 2].first : basis.pairs[i / 2].second;
    c.measure(lift(l), "obs_in." + std::to_string(i));
  }
  for (std::size_t p = 0; p < periods; ++p) run_cycle("p" + std::to_string(p));
  for (std::size_t i = 0; i < 2 * basis.k(); ++i) {
    const PauliString& l =
        (i % 2 == 0) ? basis.pairs[i / 2].first : basis.pairs[i / 2].second;
    c.measure(lift(l), "obs_out." + std::to_string(i));
    obs_labels.push_back({"obs_in." + std::to_string(i), "obs_out." + std::to_string(i)});
  }
  DetectorModel dm = finish_model(std::move(c), obs_labels);
  // Faults live in the cycles whose detecting webs close inside the window:
  // everything up to the second-to-last repeated cycle.
  dm.fault_begin = dm.circuit.ops.size();
  dm.fault_end = 0;
  std::string last_stable = "p" + std::to_string(periods >= 2 ? periods - 2 : 0) + ".";
  for (std::size_t i = 0; i < dm.circuit.ops.size(); ++i) {
    const auto& op = dm.circuit.ops[i];
    if (op.kind != CliffordCircuit::Op::Measure) continue;
    if (op.label.rfind("p0.", 0) == 0) dm.fault_begin = std::min(dm.fault_begin, i);
    if (op.label.rfind(last_stable, 0) == 0) dm.fault_end = std::max(dm.fault_end, i);
  }
  return dm;
}

}  // namespace floq
