#pragma once

#include <vector>

#include "qdl/double.hpp"
#include "qdl/lattice.hpp"
#include "qdl/site_ops.hpp"
#include "qdl/sparse.hpp"

namespace qdl {

// T^g for a direct triangle, L^h for a dual one.
OpSum triangle_op(const GroupTable& G, const Lattice& L, const Triangle& t, int label);

// F^{h,g} as a single monomial: the triangles are walked in order keeping the running product w of
// direct-triangle values; a dual triangle acts by L^{w^-1 h w}; the result is weighted by delta_g(w).
MonomialOp ribbon_monomial(const GroupTable& G, const Lattice& L, const Ribbon& r, int h, int g);
// Throws NotOpen for ribbons that are neither open nor closed.
OpSum ribbon_op(const GroupTable& G, const Lattice& L, const Ribbon& r, int h, int g);

// F'^{C,pi;u,v} = sum_n pi(n^-1)_{ji} F^{c, q_c n q_d^-1} with u = (c,i), v = (d,j) carrier indices.
OpSum quasiparticle_ribbon(const GroupTable& G, const ConjugacyData& cd, const Lattice& L, const Ribbon& r,
                           const DoubleIrrep& R, int u, int v);
OpSum trace_ribbon(const GroupTable& G, const ConjugacyData& cd, const Lattice& L, const Ribbon& r,
                   const DoubleIrrep& R);
// Chargeon trace W^{e,pi} = sum_n Tr pi(n^-1) F^{e,n} for a full irrep of G.
OpSum chargeon_trace(const GroupTable& G, const Lattice& L, const Ribbon& r, const Irrep& pi);
// F' built from the conjugate data: class C^-1 based at r^-1 with q_{c^-1} = q_c and pi*.
OpSum quasiparticle_ribbon_dual(const GroupTable& G, const ConjugacyData& cd, const Lattice& L, const Ribbon& r,
                                const DoubleIrrep& R, int u, int v);
OpSum trace_ribbon_dual(const GroupTable& G, const ConjugacyData& cd, const Lattice& L, const Ribbon& r,
                        const DoubleIrrep& R);

struct RibcomReport {
  double vertex_away = 0, face_away = 0;
  double start_vertex = 0, start_face = 0, end_vertex = 0, end_face = 0;
  double max_deviation() const;
};
// Requires disjoint endpoints (SitesNotDisjoint otherwise).
RibcomReport check_ribbon_commutation(const GroupTable& G, const Lattice& L, const Ribbon& r,
                                      const std::vector<SparseState>& states);

struct RibbonAlgebraReport {
  double product = 0, adjoint = 0, dagger_product = 0, delta_commute = 0;
  double max_deviation() const;
};
// F^{h,g} F^{h',g'} = delta F^{hh',g}; adjoint F^{h^-1,g}; F^dagger F = F^{e,g}.
RibbonAlgebraReport check_ribbon_algebra(const GroupTable& G, const Lattice& L, const Ribbon& r,
                                         const std::vector<SparseState>& states);

// psi^{h,g} = F^{h,g} |vac> for all labels, index h*|G|+g.
std::vector<SparseState> group_basis(const GroupTable& G, const Lattice& L, const Ribbon& r, const SparseState& vac);

struct EndpointActionReport {
  double start_vertex = 0, start_face = 0, end_vertex = 0, end_face = 0;
  double max_deviation() const;
};
EndpointActionReport check_endpoint_actions(const GroupTable& G, const Lattice& L, const Ribbon& r,
                                            const std::vector<SparseState>& basis);

SparseState bell_state(const GroupTable& G, const Lattice& L, const Ribbon& r, const SparseState& vac);

// Right action at s1 of x in D(G): psi < x = S(x) acting at s1.
OpSum right_site_action(const GroupTable& G, const Lattice& L, const Site& s, const DoubleElement& x);

struct BlockTeleportReport {
  int sectors = 0;
  double min_norm = 0;       // smallest |P |Bell>| over sectors
  double left_right = 0;     // max | P>_{s0}Bell - Bell<_{s1}P |
  double completeness = 0;   // | sum_sectors P Bell - Bell |
  std::vector<double> weights;  // |P Bell|^2 / |Bell|^2 per sector
};
BlockTeleportReport block_teleport(const GroupTable& G, const ConjugacyData& cd, const Lattice& L, const Ribbon& r,
                                   const SparseState& vac);

// Uses vertex/face operator sets on the given states to test that all psi lie in L(s_0..s_n).
double local_vacuum_deviation(const GroupTable& G, const Lattice& L, const std::vector<Site>& sites,
                              const std::vector<SparseState>& states);

}  // namespace qdl
