#pragma once

#include <vector>

#include "qdl/lattice.hpp"
#include "qdl/report.hpp"
#include "qdl/sparse.hpp"

namespace qdl {

// Z_n with generator 1 and q = exp(2 pi i / n).
Complex toric_q(int n);

// X|k> = |k+1>, Z|k> = q^k |k>, raised to `power` on edge e.
OpSum toric_x(const GroupTable& G, int e, int power);
OpSum toric_z(const GroupTable& G, int e, int power);

// (h>)^power at v as a product of X^{+-power}; (g>)^power at the face of s as a product of Z^{+-power}.
OpSum toric_vertex(const GroupTable& G, const Lattice& L, int power, int v);
OpSum toric_face(const GroupTable& G, const Lattice& L, int power, const Site& s);
// P_i^g, P_j^h and P_ij = P_i^g P_j^h built from the X/Z products.
OpSum toric_face_projector(const GroupTable& G, const Lattice& L, int i, const Site& s);
OpSum toric_vertex_projector(const GroupTable& G, const Lattice& L, int j, int v);
OpSum toric_projector(const GroupTable& G, const Lattice& L, int i, int j, const Site& s);

// W^{i,j} = sum_k q^{-jk} F^{i,k} along r.
OpSum toric_w(const GroupTable& G, const Lattice& L, const Ribbon& r, int i, int j);

Report creation_walkthrough(int n, int i, int j);
Report w_equals_xz(int n, std::uint64_t seed = 1);

struct BraidResult {
  int n = 0, i = 0, j = 0;
  Complex phase, expected;
  double deviation = 0;       // |phase - q^{ij}|
  double eigen_residual = 0;  // |W psi - phase psi| / |psi|
  std::size_t support = 0;
};
BraidResult braiding_phase(int n, int i, int j);

// psi_vec has n*n entries indexed i*n+j; empty means uniform.
Report toric_teleport(int n, std::vector<Complex> psi_vec = {});

// Generic D(Z_n) site actions against the X/Z constructions on the 3x3 torus.
Report fourier_reduction(int n, std::uint64_t seed = 1);

}  // namespace qdl
