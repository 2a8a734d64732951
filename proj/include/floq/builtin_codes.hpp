#pragma once

#include "floq/code.hpp"

namespace floq {

// Bivariate bicycle code data: cyclic dimensions and three (q,r) monomial
// exponent pairs per polynomial.
struct BBCodeSpec {
  std::size_t p = 0, m = 0;
  std::array<std::pair<int, int>, 3> a_monomials;
  std::array<std::pair<int, int>, 3> b_monomials;

  std::pair<int, int> reduce(std::pair<int, int> e) const {
    int q = ((e.first % int(p)) + int(p)) % int(p);
    int r = ((e.second % int(m)) + int(m)) % int(m);
    return {q, r};
  }
};

// [[144,12,12]] spec from the gross-code family: A = x^3+y+y^2, B = y^3+x+x^2.
BBCodeSpec bb_gross_spec();
// Same polynomials on a 6x6 torus: [[72,12,6]].
BBCodeSpec bb_small_spec();

// Standard toric code on an L x L torus, qubits on edges, k = 2, d = L.
StabilizerCode toric_code(std::size_t L);

// Rotated planar surface code, k = 1, d = d_code.
StabilizerCode surface_code(std::size_t d_code);

// Rotated layout on a cylinder: periodic in x (even Lx), both open boundaries
// terminated with two-body Z checks.
StabilizerCode toric_cylinder(std::size_t lx, std::size_t ly);

// Hexagonal color code on a torus of L x L unit cells, 3 | L, k = 4.
StabilizerCode color_code_torus(std::size_t L);

// [[7,1,3]] Steane code in the triangular gadget layout.
StabilizerCode steane_code();

StabilizerCode bb_code(const BBCodeSpec& spec);

// Haah cubic code on an L^3 torus, two qubits per site.
StabilizerCode haah_code(std::size_t L);

// 3D checkerboard code on an L^3 torus (L even), eight-body checks on
// alternating cubes.
StabilizerCode checkerboard_code(std::size_t L);

// Stabilizer subgroup of the two-dimensional fermionic subsystem code:
// weight-6 generators, X-square times the Z-square to its right. Non-CSS.
StabilizerCode fermion_subsystem_code(std::size_t L);

// Family dispatch used by the CLI: "toric", "surface", "cylinder",
// "color_hex", "steane", "bb", "bb_gross", "haah", "checkerboard",
// "fermion_subsystem". `size` is the linear size where applicable.
StabilizerCode builtin_code(const std::string& family, std::size_t size);

// The closed monomial orbit logicals X(P,Q) / Z(P,Q) of a BB code for a
// 3-permutation of the B monomials. Throws when the orbit collapses onto a
// check product.
struct BBLogicalFamily {
  std::vector<std::pair<int, int>> orbit;  // monomials of P
  std::pair<int, int> q_shift;             // Q = shift * P
  std::vector<PauliString> x_logicals;     // independent reps mod rs(H_X)
  std::vector<PauliString> z_logicals;
  PauliString x_rep;  // X(P,Q)
  PauliString z_rep;  // Z(P,Q)
};
BBLogicalFamily bb_logical_family(const BBCodeSpec& spec,
                                  const std::array<int, 3>& perm);

}  // namespace floq
