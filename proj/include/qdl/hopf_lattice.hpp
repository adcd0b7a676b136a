#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "qdl/hopf.hpp"
#include "qdl/lattice.hpp"
#include "qdl/report.hpp"
#include "qdl/sparse.hpp"

namespace qdl {

// Sparse vector over edge configurations of an H-valued lattice; the key packs basis
// indices base dim H with edge e at place dim^e.
struct HState {
  int dim = 0, num_edges = 0;
  std::vector<std::pair<std::uint64_t, Complex>> entries;  // sorted, no duplicates

  std::size_t support() const { return entries.size(); }
};

HState hstate_basis(int dim, const std::vector<int>& cfg);
std::vector<HState> random_hstates(int dim, int num_edges, int count, int support, std::uint64_t seed);
HState operator+(const HState& a, const HState& b);
HState operator-(const HState& a, const HState& b);
HState operator*(Complex s, const HState& a);
Complex inner(const HState& a, const HState& b);
double norm(const HState& a);
// Same configuration read with group elements as basis indices of C G.
HState hstate_from_group(const SparseState& s);

// Linear map on the edges listed; local index sum_i digit(edges[i]) dim^i.
using SpMat = Eigen::SparseMatrix<Complex>;
struct LocalOp {
  int dim = 0;
  std::vector<int> edges;
  SpMat M;
};
HState apply(const LocalOp& op, const HState& psi);
LocalOp compose(const LocalOp& a, const LocalOp& b);  // a after b
LocalOp add(const LocalOp& a, const LocalOp& b);
LocalOp scale(Complex s, const LocalOp& a);
LocalOp local_zero(int dim);

// Which antipode goes on an inward vertex arrow. Default: S^-1 on the first arrow met going
// anticlockwise from the cilium, S elsewhere. Flipped swaps S and S^-1 on the first and last arrows.
enum class SignRule { Default, Flipped };

struct HSite {
  Site site;
  int sector = 0;              // 0..3 is case (a)..(d): face upper right, upper left, lower left, lower right
  std::vector<LocalOp> vert;   // e_b acting at the vertex
  std::vector<LocalOp> face;   // f^a acting at the face
};
HSite hopf_site(const HopfAlgebra& H, const Lattice& L, const Site& s, SignRule rule = SignRule::Default);
// (a (x) h) acts as a then h in operator order: a |> (h |> psi). x has dim^2 entries at a*d+b.
HState act(const HSite& s, const CVector& x, const HState& psi);
HState act_basis(const HSite& s, int index, const HState& psi);
// Lambda |> at the vertex and int |> at the face.
LocalOp integral_vertex(const HopfAlgebra& H, const HSite& s);
LocalOp integral_face(const HopfAlgebra& H, const HSite& s);

// Triangle operators. Dual triangles must rotate anticlockwise, as in the vertex action;
// sign +1 puts S on an inward arrow, -1 puts S^-1.
LocalOp direct_triangle_op(const HopfAlgebra& H, const Lattice& L, const Triangle& t, const CVector& a);
LocalOp dual_triangle_op(const HopfAlgebra& H, const Lattice& L, const Triangle& t, const CVector& h, int sign);

// Ribbon operators indexed by the dual basis e_i (x) f^j of D(H)*, index i*d+j.
using RibbonFamily = std::vector<LocalOp>;
RibbonFamily triangle_family(const DoubleH& DH, const Lattice& L, const Triangle& t, int sign);
// Convolution along the ribbon: F_{second o first}^phi = F_second^{phi_2} o F_first^{phi_1}.
RibbonFamily convolve(const DoubleH& DH, const RibbonFamily& first, const RibbonFamily& second);
// Ribbons must be right handed (direct triangles clockwise, dual ones anticlockwise), else
// UnsupportedOrientation: with S on the faces the other handedness is not covariant once S^2 != id.
RibbonFamily ribbon_family(const DoubleH& DH, const Lattice& L, const Ribbon& r, int sign);

// Max deviation of the left (start site) and right (end site) module conditions over all basis
// pairs (d, phi) and the given states.
struct BimodDeviation {
  double left = 0, right = 0;
};
BimodDeviation check_dbimod(const DoubleH& DH, const RibbonFamily& F, const HSite& s0, const HSite& s1,
                            const std::vector<HState>& states);

// Dbimod deviations of a ribbon; NotStronglyOpen unless it is strongly open.
BimodDeviation ribbon_module_deviation(const DoubleH& DH, const Lattice& L, const Ribbon& r, int sign,
                                       const std::vector<HState>& states);

// Single triangles as module maps: L: H -> End and T: H* -> End, with D(H) acting on H and H*
// by the canonical left and right actions and on End through the end sites. sign only matters
// for dual triangles.
BimodDeviation triangle_module_deviation(const DoubleH& DH, const Lattice& L, const Triangle& t, int sign,
                                         const std::vector<HState>& states);

// Representation property of the site action over all basis pairs of D(H).
double site_rep_deviation(const DoubleH& DH, const HSite& s, const std::vector<HState>& states);

// prod of A(v) then B(p) over the lattice applied to one basis configuration (unit on every
// edge, falling back to the full unit product if that projects to zero), normalized.
HState hopf_vacuum(const HopfAlgebra& H, const Lattice& L);

Report check_double_site_action(const HopfAlgebra& H, std::uint64_t seed = 1);
Report check_integral_ops(const HopfAlgebra& H, std::uint64_t seed = 1);
Report check_triangle_covariance(const HopfAlgebra& H, std::uint64_t seed = 1);
Report check_ribbon_module(const HopfAlgebra& H, std::uint64_t seed = 1);
// Group-algebra dictionary: site actions and F~^{h (x) delta_g} = F^{h^-1, g} against the D(G) code.
Report check_group_reduction(const GroupTable& G, std::uint64_t seed = 1);
// Bimodule formulation and the vacuum covariance; semisimple H only.
Report check_fbimod(const HopfAlgebra& H, std::uint64_t seed = 1);
// Everything above for one instance; G adds the group dictionary when H = C G.
Report hopf_verify(const std::string& instance, std::uint64_t seed = 1);
Report hopf_verify(const HopfAlgebra& H, std::uint64_t seed = 1, const GroupTable* G = nullptr);

}  // namespace qdl
