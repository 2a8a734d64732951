#include "floq/circuit.hpp"

#include <algorithm>

namespace floq {

void CliffordCircuit::init(std::size_t q, char basis) {
  Op op;
  op.kind = Op::Init;
  op.a = q;
  op.basis = basis;
  ops.push_back(op);
}

void CliffordCircuit::gate(Gate g, std::size_t a, std::size_t b) {
  Op op;
  op.kind = Op::GateOp;
  op.gate = g;
  op.a = a;
  op.b = b;
  ops.push_back(op);
}

void CliffordCircuit::measure(const PauliString& p, const std::string& label) {
  Op op;
  op.kind = Op::Measure;
  op.pauli = p;
  op.label = label;
  ops.push_back(op);
}

std::map<std::string, OutcomeExpr> CliffordCircuit::run(CliffordTableau& t) const {
  std::map<std::string, OutcomeExpr> outcomes;
  for (const auto& op : ops) {
    switch (op.kind) {
      case Op::Init: {
        PauliString p(t.num_qubits());
        p.set(op.a, op.basis == 'Z' ? 2 : (op.basis == 'X' ? 1 : 3));
        t.measure_and_reset(p);
        break;
      }
      case Op::GateOp:
        t.apply_gate(op.gate, op.a, op.b);
        break;
      case Op::Measure:
        outcomes[op.label] = t.measure(op.pauli);
        break;
    }
  }
  return outcomes;
}

CliffordCircuit synthesize_clifford_encoder(const GadgetTableau& tab) {
  if (tab.completeness_rank().second != 0)
    throw std::invalid_argument("synthesize: incomplete tableau");
  std::size_t n = tab.shape.total();

  // Independent row basis.
  std::vector<PauliString> rows;
  {
    RowSpace rs(2 * n);
    for (const auto& r : tab.rows)
      if (rs.add(pauli_to_row(r))) rows.push_back(r);
  }
  if (rows.size() != n) throw std::logic_error("synthesize: rank mismatch");

  // Reduce the rows to Z_0..Z_{n-1} with recorded gates; the encoder is the
  // inverse sequence applied to |0...0>.
  struct Rec {
    Gate g;
    std::size_t a, b;
  };
  std::vector<Rec> recorded;
  auto apply_all = [&](Gate g, std::size_t a, std::size_t b = SIZE_MAX) {
    recorded.push_back({g, a, b});
    // Conjugate every row by the gate (phases tracked implicitly; the
    // construction is projective).
    for (auto& r : rows) {
      bool xa = r.x.get(a), za = r.z.get(a);
      switch (g) {
        case Gate::H:
          r.x.set(a, za);
          r.z.set(a, xa);
          break;
        case Gate::S:
          r.z.set(a, xa ^ za);
          break;
        case Gate::CNOT: {
          bool xb = r.x.get(b), zb = r.z.get(b);
          r.x.set(b, xb ^ xa);
          r.z.set(a, za ^ zb);
          break;
        }
        case Gate::CZ: {
          bool xb = r.x.get(b);
          r.z.set(b, r.z.get(b) ^ xa);
          r.z.set(a, za ^ xb);
          break;
        }
        default:
          throw std::logic_error("synthesize: unexpected gate");
      }
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    // Pivot: a row j >= i acting on qubit i.
    std::size_t j = SIZE_MAX;
    for (std::size_t k = i; k < n && j == SIZE_MAX; ++k)
      if (rows[k].at(i) != 0) j = k;
    if (j == SIZE_MAX) {
      // Some row must act on qubit i through a later column; find any row
      // j >= i with support and bring that column here. Complete tableaux
      // always have one after prior eliminations.
      for (std::size_t k = i; k < n && j == SIZE_MAX; ++k) {
        long col = -1;
        for (std::size_t c = i; c < n && col < 0; ++c)
          if (rows[k].at(c) != 0) col = long(c);
        if (col >= 0) {
          apply_all(Gate::CNOT, std::size_t(col), i);  // move support
          apply_all(Gate::CNOT, i, std::size_t(col));
          apply_all(Gate::CNOT, std::size_t(col), i);  // SWAP via CNOTs
          j = k;
        }
      }
      if (j == SIZE_MAX) throw std::logic_error("synthesize: lost support");
      if (rows[j].at(i) == 0) throw std::logic_error("synthesize: swap failed");
    }
    std::swap(rows[i], rows[j]);
    // Make the action at qubit i a pure X.
    if (rows[i].at(i) == 2) apply_all(Gate::H, i);
    if (rows[i].at(i) == 3) apply_all(Gate::S, i);
    // Clear X on other qubits.
    for (std::size_t c = 0; c < n; ++c) {
      if (c == i) continue;
      if (rows[i].at(c) == 3) apply_all(Gate::S, c);
      if (rows[i].x.get(c)) apply_all(Gate::CNOT, i, c);
    }
    // Clear Z on other qubits.
    for (std::size_t c = 0; c < n; ++c) {
      if (c == i) continue;
      if (rows[i].z.get(c)) apply_all(Gate::CZ, i, c);
    }
    if (rows[i].at(i) == 3) apply_all(Gate::S, i);
    if (rows[i].at(i) != 1) throw std::logic_error("synthesize: pivot not X");
    apply_all(Gate::H, i);
    // Row i is now Z_i; clear Z_i from all other rows by multiplication.
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      if (rows[k].z.get(i)) rows[k].mul(rows[i]);
      if (rows[k].x.get(i)) throw std::logic_error("synthesize: anticommuting rows");
    }
  }

  CliffordCircuit out;
  out.num_qubits = n;
  for (std::size_t q = 0; q < n; ++q) out.init(q, 'Z');
  for (auto it = recorded.rbegin(); it != recorded.rend(); ++it) {
    // Inverses: H and CZ and CNOT are involutions; S^-1 = SSS.
    if (it->g == Gate::S) {
      out.gate(Gate::S, it->a);
      out.gate(Gate::S, it->a);
      out.gate(Gate::S, it->a);
    } else {
      out.gate(it->g, it->a, it->b);
    }
  }
  return out;
}

CliffordCircuit synthesize_css_encoder(const GadgetTableau& tab) {
  if (tab.mode != EncodingMode::css)
    throw std::invalid_argument("css synthesis requires a css tableau");
  if (tab.completeness_rank().second != 0)
    throw std::invalid_argument("synthesize: incomplete tableau");
  std::size_t n = tab.shape.total();
  BinaryMatrix hx(0, n);
  for (const auto& r : tab.rows)
    if (!r.x.none()) hx.append_row(r.x);
  BinaryMatrix canon = rref(hx);
  CliffordCircuit out;
  out.num_qubits = n;
  std::vector<char> is_pivot(n, 0);
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < canon.rows(); ++r) {
    long p = canon.row(r).lowest_set();
    pivots.push_back(std::size_t(p));
    is_pivot[std::size_t(p)] = 1;
  }
  for (std::size_t q = 0; q < n; ++q) out.init(q, is_pivot[q] ? 'X' : 'Z');
  for (std::size_t r = 0; r < canon.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (c != pivots[r] && canon.get(r, c)) out.gate(Gate::CNOT, pivots[r], c);
  return out;
}

bool encoder_matches_tableau(const CliffordCircuit& c, const GadgetTableau& tab) {
  CliffordTableau t(c.num_qubits);
  t.seed(1);
  c.run(t);
  for (const auto& row : tab.rows) {
    auto peeked = t.peek(row);
    if (!peeked.has_value()) return false;  // not stabilized (projectively)
  }
  return true;
}

ThreeStage three_stage_layout(const GadgetTableau& tab, std::size_t m_f) {
  if (m_f == 0) throw std::invalid_argument("three_stage_layout: m_f >= 1");
  ThreeStage out;
  out.m = tab.shape.m;
  out.m_f = m_f;
  out.n_l = tab.n_legs();
  if (m_f < tab.shape.m)
    throw std::invalid_argument("three_stage_layout: m_f < m has no partition");
  // Legs in (direction, leg) order distributed over the m_f wires; the step
  // of a leg is its position along its wire.
  std::vector<std::size_t> wire_load(m_f, 0);
  std::size_t leg_index = 0;
  for (std::size_t d = 0; d < tab.shape.dirs.size(); ++d)
    for (std::size_t l = 0; l < tab.shape.dirs[d].legs; ++l) {
      std::size_t wire = leg_index % m_f;
      std::size_t step = wire_load[wire]++;
      if (out.steps.size() <= step) out.steps.resize(step + 1);
      out.steps[step].push_back(tab.shape.leg_col(d, l));
      ++leg_index;
    }
  out.depth = out.steps.size();
  out.d2_estimate = (out.n_l + m_f - 1) / m_f;
  return out;
}

ResourceReport resource_report(const GadgetTableau& tab, std::size_t m_f) {
  ThreeStage ts = three_stage_layout(tab, m_f);
  return {ts.n_l, ts.m_f, ts.depth, ts.d2_estimate};
}

}  // namespace floq
