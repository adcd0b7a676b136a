#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qdl/double.hpp"
#include "qdl/lattice.hpp"
#include "qdl/sparse.hpp"

namespace qdl {

// h acting at vertex v: h x on outgoing arrows, x h^-1 on incoming ones.
OpSum vertex_action(const GroupTable& G, const Lattice& L, int h, int v);
// delta_g acting at the site: clockwise product around p from the cilium equals g.
OpSum face_action(const GroupTable& G, const Lattice& L, int g, const Site& s);
// (delta_g (x) h) acting at s, i.e. delta_g then h in operator order: delta_g o h.
OpSum site_action(const GroupTable& G, const Lattice& L, const Site& s, int g, int h);
OpSum site_action(const GroupTable& G, const Lattice& L, const Site& s, const DoubleElement& x);

OpSum a_op(const GroupTable& G, const Lattice& L, int v);
// B(p) = delta_e at p; independent of the cilium.
OpSum b_op(const GroupTable& G, const Lattice& L, int p);

struct SiteRepReport {
  double group_law = 0, delta_law = 0, cross_relation = 0, unit = 0;
  double max_deviation() const;
};
SiteRepReport check_site_representation(const GroupTable& G, const Lattice& L, const Site& s,
                                        const std::vector<SparseState>& states);

OpSum site_projector(const GroupTable& G, const ConjugacyData& cd, const DoubleIrrep& R, const Lattice& L,
                     const Site& s);
// Applies P_{C,pi} at s; returns the projected state and the probability |P psi|^2 / |psi|^2.
std::pair<SparseState, double> site_projector_measure(const GroupTable& G, const ConjugacyData& cd,
                                                      const DoubleIrrep& R, const Lattice& L, const Site& s,
                                                      const SparseState& psi);

// prod_v A(v) applied to the all-identity configuration, normalized.
SparseState vacuum_state(const GroupTable& G, const Lattice& L);
SparseState vacuum_plane(const GroupTable& G, const Lattice& L);

double energy(const GroupTable& G, const Lattice& L, const SparseState& psi);

// Trace of prod A prod B, summed over flat configurations; SupportBudgetExceeded once the search visits
// more than `budget` partial configurations.
long long vacuum_dimension(const GroupTable& G, const Lattice& L, std::uint64_t budget = 1u << 22);

struct VacuumBasis {
  std::vector<SparseState> kappa;  // unnormalized, unit amplitude on each orbit element
  std::vector<std::size_t> orbit_size;
  std::size_t flat_configs = 0;  // gauge-fixed flat configurations enumerated
};
VacuumBasis kappa_basis(const GroupTable& G, const Lattice& L, std::size_t budget = 1u << 22);

}  // namespace qdl
