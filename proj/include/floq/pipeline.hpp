#pragma once

#include "floq/builtin_codes.hpp"
#include "floq/dyncode.hpp"

namespace floq {

// A fully built dynamical code: code, layout, per-gadget encodings, and the
// assembled gadget-stabilizer system.
struct BuiltSystem {
  StabilizerCode code;  // incoming (= outgoing unless stated)
  GadgetGraph layout;
  std::vector<GadgetTableau> gadgets;
  std::vector<std::vector<long>> dir_map;
  AssembledSystem sys;
  LogicalBasis basis;
};

// Worked-example constructions. Each validates check-web cancellation at
// build time (every incoming/outgoing stabilizer lands in the row space).
BuiltSystem build_hh_toric(std::size_t L);
BuiltSystem build_css_toric(std::size_t L);
BuiltSystem build_sasec_toric(std::size_t L);
BuiltSystem build_color_torus(std::size_t L);
// corner: "trivial", "hadamard", or "sgate".
BuiltSystem build_steane(const std::string& corner);
BuiltSystem build_checkerboard(std::size_t L);
BuiltSystem build_bb(const BBCodeSpec& spec);
BuiltSystem build_fermion(std::size_t L);
// Planar Floquet surface code with bulk gadgets reused on the boundary.
BuiltSystem build_surface_naive(std::size_t d);
// Cylinder with two-body Z terminations and bulk gadgets everywhere.
BuiltSystem build_cylinder_hh(std::size_t lx, std::size_t ly);
BuiltSystem build_named(const std::string& name, std::size_t size);

// Geometric logical basis of the edge-layout toric code: straight dual and
// primal lines, paired (X1,Z1),(X2,Z2).
LogicalBasis toric_geometric_basis(std::size_t L);

}  // namespace floq
