#include "floq/builtin_codes.hpp"

#include <algorithm>
#include <set>

namespace floq {

namespace {

int mod(int a, int p) { return ((a % p) + p) % p; }

void set_pauli(PauliString& p, std::size_t q, char kind) {
  switch (kind) {
    case 'X': p.x.set(q, true); break;
    case 'Z': p.z.set(q, true); break;
    case 'Y': p.x.set(q, true); p.z.set(q, true); break;
    default: break;
  }
}

}  // namespace

BBCodeSpec bb_gross_spec() {
  BBCodeSpec s;
  s.p = 12;
  s.m = 6;
  s.a_monomials = {{{3, 0}, {0, 1}, {0, 2}}};  // x^3 + y + y^2
  s.b_monomials = {{{0, 3}, {1, 0}, {2, 0}}};  // y^3 + x + x^2
  return s;
}

BBCodeSpec bb_small_spec() {
  BBCodeSpec s = bb_gross_spec();
  s.p = 6;
  s.m = 6;
  return s;
}

StabilizerCode toric_code(std::size_t L) {
  if (L < 2) throw std::invalid_argument("toric: L >= 2 required");
  const int n = int(L);
  StabilizerCode code;
  code.n = 2 * L * L;
  code.name = "toric_L" + std::to_string(L);
  auto h_edge = [&](int i, int j) { return std::size_t(mod(i, n) + mod(j, n) * n); };
  auto v_edge = [&](int i, int j) {
    return L * L + std::size_t(mod(i, n) + mod(j, n) * n);
  };
  std::vector<char> types;
  // Star (vertex) X checks.
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      PauliString p(code.n);
      for (std::size_t q : {h_edge(i, j), h_edge(i - 1, j), v_edge(i, j), v_edge(i, j - 1)})
        set_pauli(p, q, 'X');
      code.checks.push_back(p);
      types.push_back('X');
    }
  // Plaquette (face) Z checks.
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      PauliString p(code.n);
      for (std::size_t q : {h_edge(i, j), h_edge(i, j + 1), v_edge(i, j), v_edge(i + 1, j)})
        set_pauli(p, q, 'Z');
      code.checks.push_back(p);
      types.push_back('Z');
    }
  code.css_split = types;
  code.site_of.resize(code.n);
  for (std::size_t q = 0; q < code.n; ++q) code.site_of[q] = int(q);

  LatticeInfo lat;
  lat.site_pos.resize(code.n);
  lat.sublattice.resize(code.n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      lat.site_pos[h_edge(i, j)] = {2 * i + 1, 2 * j, 0};
      lat.sublattice[h_edge(i, j)] = 0;
      lat.site_pos[v_edge(i, j)] = {2 * i, 2 * j + 1, 0};
      lat.sublattice[v_edge(i, j)] = 1;
    }
  lat.period = {2 * n, 2 * n, 0};
  lat.translations = {{2, 0, 0}, {0, 2, 0}};
  lat.canonical_dirs = {{{-1, 1, 0}, "1"},
                        {{-1, -1, 0}, "2"},
                        {{1, -1, 0}, "3"},
                        {{1, 1, 0}, "4"}};
  code.lattice = lat;
  code.validate();
  return code;
}

namespace {

// Shared rotated-layout builder: qubits on the vertices of an lx x ly grid,
// checkerboard bulk faces, optional periodic x, and per-side boundary rules.
// boundary_type: 'N' = none, 'X'/'Z' = include half-faces of that color.
struct RotatedSpec {
  std::size_t lx, ly;
  bool periodic_x = false;
  char bottom = 'N', top = 'N', left = 'N', right = 'N';
  std::string name;
};

StabilizerCode rotated_layout_code(const RotatedSpec& spec) {
  const int lx = int(spec.lx), ly = int(spec.ly);
  StabilizerCode code;
  code.n = spec.lx * spec.ly;
  code.name = spec.name;
  auto qubit = [&](int i, int j) {
    return std::size_t(mod(i, lx) + j * lx);
  };
  std::vector<char> types;
  auto face_color = [&](int i, int j) { return mod(i + j, 2) == 0 ? 'X' : 'Z'; };
  // Bulk faces.
  int imax = spec.periodic_x ? lx : lx - 1;
  for (int j = 0; j + 1 < ly + 0; ++j)
    for (int i = 0; i < imax; ++i) {
      if (j + 1 >= ly) continue;
      PauliString p(code.n);
      char t = face_color(i, j);
      for (std::size_t q : {qubit(i, j), qubit(i + 1, j), qubit(i, j + 1), qubit(i + 1, j + 1)})
        set_pauli(p, q, t);
      code.checks.push_back(p);
      types.push_back(t);
    }
  // Two-body boundary checks: the would-be outside face's color must match
  // the side's configured type.
  for (int i = 0; i < imax; ++i) {
    if (spec.bottom != 'N' && face_color(i, -1) == spec.bottom) {
      PauliString p(code.n);
      set_pauli(p, qubit(i, 0), spec.bottom);
      set_pauli(p, qubit(i + 1, 0), spec.bottom);
      code.checks.push_back(p);
      types.push_back(spec.bottom);
    }
    if (spec.top != 'N' && face_color(i, ly - 1) == spec.top) {
      PauliString p(code.n);
      set_pauli(p, qubit(i, ly - 1), spec.top);
      set_pauli(p, qubit(i + 1, ly - 1), spec.top);
      code.checks.push_back(p);
      types.push_back(spec.top);
    }
  }
  if (!spec.periodic_x)
    for (int j = 0; j + 1 < ly; ++j) {
      if (spec.left != 'N' && face_color(-1, j) == spec.left) {
        PauliString p(code.n);
        set_pauli(p, qubit(0, j), spec.left);
        set_pauli(p, qubit(0, j + 1), spec.left);
        code.checks.push_back(p);
        types.push_back(spec.left);
      }
      if (spec.right != 'N' && face_color(lx - 1, j) == spec.right) {
        PauliString p(code.n);
        set_pauli(p, qubit(lx - 1, j), spec.right);
        set_pauli(p, qubit(lx - 1, j + 1), spec.right);
        code.checks.push_back(p);
        types.push_back(spec.right);
      }
    }
  code.css_split = types;
  code.site_of.resize(code.n);
  for (std::size_t q = 0; q < code.n; ++q) code.site_of[q] = int(q);

  LatticeInfo lat;
  lat.site_pos.resize(code.n);
  lat.sublattice.resize(code.n);
  for (int j = 0; j < ly; ++j)
    for (int i = 0; i < lx; ++i) {
      lat.site_pos[qubit(i, j)] = {2 * i, 2 * j, 0};
      lat.sublattice[qubit(i, j)] = mod(i + j, 2);
    }
  lat.period = {spec.periodic_x ? 2 * lx : 0, 0, 0};
  lat.translations = {{2, 2, 0}, {2, -2, 0}};
  lat.canonical_dirs = {{{0, 2, 0}, "1"},
                        {{-2, 0, 0}, "2"},
                        {{0, -2, 0}, "3"},
                        {{2, 0, 0}, "4"}};
  code.lattice = lat;
  code.validate();
  return code;
}

}  // namespace

StabilizerCode surface_code(std::size_t d_code) {
  RotatedSpec spec;
  spec.lx = spec.ly = d_code;
  spec.bottom = 'X';
  spec.top = 'X';
  spec.left = 'Z';
  spec.right = 'Z';
  spec.name = "surface_d" + std::to_string(d_code);
  return rotated_layout_code(spec);
}

StabilizerCode toric_cylinder(std::size_t lx, std::size_t ly) {
  if (lx % 2) throw std::invalid_argument("cylinder: even lx required");
  RotatedSpec spec;
  spec.lx = lx;
  spec.ly = ly;
  spec.periodic_x = true;
  spec.bottom = 'Z';
  spec.top = 'Z';
  spec.name = "cylinder_" + std::to_string(lx) + "x" + std::to_string(ly);
  return rotated_layout_code(spec);
}

StabilizerCode color_code_torus(std::size_t L) {
  if (L % 3) throw std::invalid_argument("color_hex: 3 | L required");
  const int n = int(L);
  StabilizerCode code;
  code.n = 2 * L * L;
  code.name = "color_hex_L" + std::to_string(L);
  auto u_site = [&](int a, int b) { return std::size_t(2 * (mod(a, n) + mod(b, n) * n)); };
  auto v_site = [&](int a, int b) { return u_site(a, b) + 1; };
  std::vector<char> types;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      std::array<std::size_t, 6> hex = {u_site(a, b),     v_site(a, b),
                                        u_site(a + 1, b), v_site(a + 1, b - 1),
                                        u_site(a + 1, b - 1), v_site(a, b - 1)};
      for (char t : {'X', 'Z'}) {
        PauliString p(code.n);
        for (std::size_t q : hex) set_pauli(p, q, t);
        code.checks.push_back(p);
        types.push_back(t);
      }
    }
  code.css_split = types;
  code.site_of.resize(code.n);
  for (std::size_t q = 0; q < code.n; ++q) code.site_of[q] = int(q);

  LatticeInfo lat;
  lat.site_pos.resize(code.n);
  lat.sublattice.resize(code.n);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      lat.site_pos[u_site(a, b)] = {2 * a, 2 * b, 0};
      lat.sublattice[u_site(a, b)] = 0;
      lat.site_pos[v_site(a, b)] = {2 * a, 2 * b, 1};
      lat.sublattice[v_site(a, b)] = 1;
    }
  lat.period = {2 * n, 2 * n, 0};
  lat.translations = {{2, 0, 0}, {0, 2, 0}};
  lat.canonical_dirs = {{{0, 0, 1}, "1"}, {{-2, 0, 1}, "2"}, {{0, -2, 1}, "3"}};
  code.lattice = lat;
  code.validate();
  return code;
}

StabilizerCode steane_code() {
  // 0 = center, 1..3 = edge midpoints, 4..6 = corners. Plaquettes are the
  // three trapezoids {corner, edge, center, edge}.
  StabilizerCode code;
  code.n = 7;
  code.name = "steane";
  const std::array<std::array<std::size_t, 4>, 3> plaq = {{{4, 1, 0, 3},
                                                           {5, 2, 0, 1},
                                                           {6, 3, 0, 2}}};
  std::vector<char> types;
  for (const auto& pl : plaq)
    for (char t : {'X', 'Z'}) {
      PauliString p(code.n);
      for (std::size_t q : pl) set_pauli(p, q, t);
      code.checks.push_back(p);
      types.push_back(t);
    }
  code.css_split = types;
  code.site_of = {0, 1, 2, 3, 4, 5, 6};

  LatticeInfo lat;
  lat.site_pos = {{0, 0, 0},  {-2, -2, 0}, {2, -2, 0}, {0, 2, 0},
                  {-4, 0, 0}, {0, -4, 0},  {4, 0, 0}};
  lat.sublattice = {0, 1, 1, 1, 0, 0, 0};
  // Ring c1-e12-c2-e23-c3-e13 plus spokes to the center.
  lat.explicit_bonds = {{4, 1, "ring"}, {1, 5, "ring"}, {5, 2, "ring"},
                        {2, 6, "ring"}, {6, 3, "ring"}, {3, 4, "ring"},
                        {0, 1, "spoke"}, {0, 2, "spoke"}, {0, 3, "spoke"}};
  code.lattice = lat;
  code.validate();
  return code;
}

StabilizerCode bb_code(const BBCodeSpec& spec) {
  const int p = int(spec.p), m = int(spec.m);
  StabilizerCode code;
  code.n = 2 * spec.p * spec.m;
  code.name = "bb_" + std::to_string(spec.p) + "x" + std::to_string(spec.m);
  auto l_qubit = [&](int q, int r) { return std::size_t(mod(q, p) * m + mod(r, m)); };
  auto r_qubit = [&](int q, int r) { return spec.p * spec.m + l_qubit(q, r); };
  std::vector<char> types;
  // X check at (q,r): L qubits shifted by A monomials, R by B monomials.
  for (int q = 0; q < p; ++q)
    for (int r = 0; r < m; ++r) {
      PauliString px(code.n);
      for (auto [a, b] : spec.a_monomials) set_pauli(px, l_qubit(q + a, r + b), 'X');
      for (auto [a, b] : spec.b_monomials) set_pauli(px, r_qubit(q + a, r + b), 'X');
      code.checks.push_back(px);
      types.push_back('X');
    }
  // Z check at (q,r): L via B^T (shift back), R via A^T.
  for (int q = 0; q < p; ++q)
    for (int r = 0; r < m; ++r) {
      PauliString pz(code.n);
      for (auto [a, b] : spec.b_monomials) set_pauli(pz, l_qubit(q - a, r - b), 'Z');
      for (auto [a, b] : spec.a_monomials) set_pauli(pz, r_qubit(q - a, r - b), 'Z');
      code.checks.push_back(pz);
      types.push_back('Z');
    }
  code.css_split = types;
  code.site_of.resize(code.n);
  for (std::size_t qi = 0; qi < code.n; ++qi) code.site_of[qi] = int(qi);

  LatticeInfo lat;
  lat.site_pos.resize(code.n);
  lat.sublattice.resize(code.n);
  for (int q = 0; q < p; ++q)
    for (int r = 0; r < m; ++r) {
      lat.site_pos[l_qubit(q, r)] = {2 * q, 2 * r, 0};
      lat.sublattice[l_qubit(q, r)] = 0;
      lat.site_pos[r_qubit(q, r)] = {2 * q, 2 * r, 1};
      lat.sublattice[r_qubit(q, r)] = 1;
    }
  lat.period = {2 * p, 2 * m, 0};
  lat.translations = {{2, 0, 0}, {0, 2, 0}};
  for (int alpha = 0; alpha < 3; ++alpha)
    for (int beta = 0; beta < 3; ++beta) {
      auto [aq, ar] = spec.a_monomials[std::size_t(alpha)];
      auto [bq, br] = spec.b_monomials[std::size_t(beta)];
      int dq = mod(2 * (bq - aq), 2 * p);
      int dr = mod(2 * (br - ar), 2 * m);
      if (dq > p) dq -= 2 * p;
      if (dr > m) dr -= 2 * m;
      lat.canonical_dirs.push_back(
          {{dq, dr, 1},
           "(" + std::to_string(alpha + 1) + "," + std::to_string(beta + 1) + ")"});
    }
  code.lattice = lat;
  code.validate();
  return code;
}

StabilizerCode haah_code(std::size_t L) {
  if (L < 2) throw std::invalid_argument("haah: L >= 2 required");
  const int n = int(L);
  StabilizerCode code;
  code.n = 2 * L * L * L;
  code.name = "haah_L" + std::to_string(L);
  auto site = [&](int x, int y, int z) {
    return std::size_t(mod(x, n) + mod(y, n) * n + mod(z, n) * n * n);
  };
  auto qubit = [&](int x, int y, int z, int which) {
    return 2 * site(x, y, z) + std::size_t(which);
  };
  // Cubic-code corner labels: weight of the corner in {0,1}^3 decides.
  // X check: XI on weight-1 corners, IX on weight-2, XX on (1,1,1).
  // Z check: ZZ on (0,0,0), ZI on weight-1, IZ on weight-2.
  std::vector<char> types;
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        PauliString px(code.n), pz(code.n);
        for (int e = 0; e < 8; ++e) {
          int ex = e & 1, ey = (e >> 1) & 1, ez = (e >> 2) & 1;
          int w = ex + ey + ez;
          std::size_t q0 = qubit(x + ex, y + ey, z + ez, 0);
          std::size_t q1 = qubit(x + ex, y + ey, z + ez, 1);
          if (w == 1) set_pauli(px, q0, 'X');
          if (w == 2) set_pauli(px, q1, 'X');
          if (w == 3) { set_pauli(px, q0, 'X'); set_pauli(px, q1, 'X'); }
          if (w == 0) { set_pauli(pz, q0, 'Z'); set_pauli(pz, q1, 'Z'); }
          if (w == 1) set_pauli(pz, q0, 'Z');
          if (w == 2) set_pauli(pz, q1, 'Z');
        }
        code.checks.push_back(px);
        types.push_back('X');
        code.checks.push_back(pz);
        types.push_back('Z');
      }
  code.css_split = types;
  code.site_of.resize(code.n);
  for (std::size_t q = 0; q < code.n; ++q) code.site_of[q] = int(q / 2);

  LatticeInfo lat;
  lat.site_pos.resize(L * L * L);
  lat.sublattice.assign(L * L * L, -1);
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        lat.site_pos[site(x, y, z)] = {2 * x, 2 * y, 2 * z};
  lat.period = {2 * n, 2 * n, 2 * n};
  lat.translations = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
  lat.canonical_dirs = {{{2, 0, 0}, "1"},  {{-2, 0, 0}, "2"}, {{0, 2, 0}, "3"},
                        {{0, -2, 0}, "4"}, {{0, 0, 2}, "5"},  {{0, 0, -2}, "6"}};
  code.lattice = lat;
  code.validate();
  return code;
}

StabilizerCode checkerboard_code(std::size_t L) {
  if (L % 2 || L < 2) throw std::invalid_argument("checkerboard: even L >= 2 required");
  const int n = int(L);
  StabilizerCode code;
  code.n = L * L * L;
  code.name = "checkerboard_L" + std::to_string(L);
  auto site = [&](int x, int y, int z) {
    return std::size_t(mod(x, n) + mod(y, n) * n + mod(z, n) * n * n);
  };
  std::vector<char> types;
  std::set<std::size_t> seen;
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        if ((x + y + z) % 2) continue;  // stabilized cubes only
        PauliString px(code.n), pz(code.n);
        std::set<std::size_t> cube;
        for (int e = 0; e < 8; ++e)
          cube.insert(site(x + (e & 1), y + ((e >> 1) & 1), z + ((e >> 2) & 1)));
        // Degenerate small tori can repeat the same support; keep one copy.
        std::size_t sig = 0;
        for (std::size_t q : cube) sig = sig * 1315423911u + q;
        if (!seen.insert(sig).second) continue;
        for (std::size_t q : cube) {
          set_pauli(px, q, 'X');
          set_pauli(pz, q, 'Z');
        }
        code.checks.push_back(px);
        types.push_back('X');
        code.checks.push_back(pz);
        types.push_back('Z');
      }
  code.css_split = types;
  code.site_of.resize(code.n);
  for (std::size_t q = 0; q < code.n; ++q) code.site_of[q] = int(q);

  LatticeInfo lat;
  lat.site_pos.resize(code.n);
  lat.sublattice.resize(code.n);
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        lat.site_pos[site(x, y, z)] = {2 * x, 2 * y, 2 * z};
        lat.sublattice[site(x, y, z)] = (x + y + z) % 2;
      }
  lat.period = {2 * n, 2 * n, 2 * n};
  lat.translations = {{2, 2, 0}, {2, -2, 0}, {0, 2, 2}};
  lat.canonical_dirs = {{{2, 0, 0}, "1"},  {{-2, 0, 0}, "2"}, {{0, 2, 0}, "3"},
                        {{0, -2, 0}, "4"}, {{0, 0, 2}, "5"},  {{0, 0, -2}, "6"}};
  code.lattice = lat;
  code.validate();
  return code;
}

StabilizerCode fermion_subsystem_code(std::size_t L) {
  if (L % 2 || L < 4) throw std::invalid_argument("fermion: even L >= 4 required");
  const int n = int(L);
  StabilizerCode code;
  code.n = L * L;
  code.name = "fermion_L" + std::to_string(L);
  auto qubit = [&](int i, int j) { return std::size_t(mod(i, n) + mod(j, n) * n); };
  // Generator per black face f: X on f, Z on the white face to its right,
  // overlapping column picks up Y.
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if ((i + j) % 2) continue;
      PauliString p(code.n);
      set_pauli(p, qubit(i, j), 'X');
      set_pauli(p, qubit(i, j + 1), 'X');
      set_pauli(p, qubit(i + 1, j), 'Y');
      set_pauli(p, qubit(i + 1, j + 1), 'Y');
      set_pauli(p, qubit(i + 2, j), 'Z');
      set_pauli(p, qubit(i + 2, j + 1), 'Z');
      code.checks.push_back(p);
    }
  code.site_of.resize(code.n);
  for (std::size_t q = 0; q < code.n; ++q) code.site_of[q] = int(q);

  LatticeInfo lat;
  lat.site_pos.resize(code.n);
  lat.sublattice.resize(code.n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      lat.site_pos[qubit(i, j)] = {2 * i, 2 * j, 0};
      lat.sublattice[qubit(i, j)] = (i + j) % 2;
    }
  lat.period = {2 * n, 2 * n, 0};
  lat.translations = {{2, 2, 0}, {2, -2, 0}};
  lat.canonical_dirs = {{{0, 2, 0}, "1"},
                        {{-2, 0, 0}, "2"},
                        {{0, -2, 0}, "3"},
                        {{2, 0, 0}, "4"}};
  code.lattice = lat;
  code.validate();
  return code;
}

StabilizerCode builtin_code(const std::string& family, std::size_t size) {
  if (family == "toric") return toric_code(size ? size : 2);
  if (family == "surface") return surface_code(size ? size : 3);
  if (family == "cylinder") return toric_cylinder(size ? size : 4, size ? size : 4);
  if (family == "color_hex") return color_code_torus(size ? size : 3);
  if (family == "steane") return steane_code();
  if (family == "bb") return bb_code(bb_small_spec());
  if (family == "bb_gross") return bb_code(bb_gross_spec());
  if (family == "haah") return haah_code(size ? size : 2);
  if (family == "checkerboard") return checkerboard_code(size ? size : 2);
  if (family == "fermion_subsystem") return fermion_subsystem_code(size ? size : 4);
  throw std::invalid_argument("unknown builtin code family: " + family);
}

BBLogicalFamily bb_logical_family(const BBCodeSpec& spec,
                                  const std::array<int, 3>& perm) {
  auto mono_mul = [&](std::pair<int, int> a, std::pair<int, int> b) {
    return spec.reduce({a.first + b.first, a.second + b.second});
  };
  auto mono_inv = [&](std::pair<int, int> a) {
    return spec.reduce({-a.first, -a.second});
  };
  auto A = [&](int i) { return spec.a_monomials[std::size_t(i - 1)]; };
  auto B = [&](int i) { return spec.b_monomials[std::size_t(perm[std::size_t(i - 1)] - 1)]; };

  // Orbit generators A1 B(1)^-1 A2^-1 B(2) and A2 B(2)^-1 A3^-1 B(3).
  auto g1 = mono_mul(mono_mul(A(1), mono_inv(B(1))), mono_mul(mono_inv(A(2)), B(2)));
  auto g2 = mono_mul(mono_mul(A(2), mono_inv(B(2))), mono_mul(mono_inv(A(3)), B(3)));

  std::set<std::pair<int, int>> orbit{spec.reduce({0, 0})};
  for (;;) {
    std::set<std::pair<int, int>> next = orbit;
    for (auto e : orbit) {
      next.insert(mono_mul(e, g1));
      next.insert(mono_mul(e, g2));
    }
    if (next == orbit) break;
    orbit = next;
  }

  BBLogicalFamily fam;
  fam.orbit.assign(orbit.begin(), orbit.end());
  fam.q_shift = mono_mul(mono_inv(A(2)), B(2));

  const std::size_t pm = spec.p * spec.m;
  auto l_index = [&](std::pair<int, int> e) {
    return std::size_t(e.first) * spec.m + std::size_t(e.second);
  };
  PauliString xl(2 * pm), zl(2 * pm);
  for (auto e : fam.orbit) {
    xl.x.set(l_index(e), true);
    zl.z.set(l_index(e), true);
    auto q = mono_mul(e, fam.q_shift);
    xl.x.set(pm + l_index(q), true);
    zl.z.set(pm + l_index(q), true);
  }
  fam.x_rep = xl;
  fam.z_rep = zl;

  StabilizerCode code = bb_code(spec);
  // Commutation with the opposite-type checks.
  for (std::size_t c = 0; c < code.checks.size(); ++c) {
    if ((*code.css_split)[c] == 'Z' && symplectic_product(xl, code.checks[c]))
      throw std::logic_error("bb_logical_family: X rep fails commutation");
    if ((*code.css_split)[c] == 'X' && symplectic_product(zl, code.checks[c]))
      throw std::logic_error("bb_logical_family: Z rep fails commutation");
  }
  // Independent translates modulo the check row space.
  RowSpace xspace(2 * code.n), zspace(2 * code.n);
  for (std::size_t c = 0; c < code.checks.size(); ++c) {
    if ((*code.css_split)[c] == 'X') xspace.add(pauli_to_row(code.checks[c]));
    if ((*code.css_split)[c] == 'Z') zspace.add(pauli_to_row(code.checks[c]));
  }
  for (int dq = 0; dq < int(spec.p); ++dq)
    for (int dr = 0; dr < int(spec.m); ++dr) {
      PauliString xs(2 * pm), zs(2 * pm);
      for (auto e : fam.orbit) {
        auto es = spec.reduce({e.first + dq, e.second + dr});
        xs.x.set(l_index(es), true);
        zs.z.set(l_index(es), true);
        auto q = mono_mul(es, fam.q_shift);
        xs.x.set(pm + l_index(q), true);
        zs.z.set(pm + l_index(q), true);
      }
      if (xspace.add(pauli_to_row(xs))) fam.x_logicals.push_back(xs);
      if (zspace.add(pauli_to_row(zs))) fam.z_logicals.push_back(zs);
    }
  if (fam.x_logicals.empty())
    throw std::runtime_error("bb_logical_family: orbit collapses to check products");
  return fam;
}

}  // namespace floq
