#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdl/double.hpp"
#include "qdl/lattice.hpp"
#include "qdl/report.hpp"

namespace qdl {

// Finds the irrep of D(G) whose class contains `rep` and whose centralizer character at `at` is chi.
const DoubleIrrep& find_irrep(const GroupTable& G, const ConjugacyData& cd, const std::vector<DoubleIrrep>& all,
                              int rep, int dim, Complex chi, int at);

// Ground space dimension three ways: trace of the projector, kappa class count (and the rank of the
// kappa states), and the hom count for the torus (1 on a plane).
Report vacuum_report(const GroupTable& G, const Lattice& L);

// Irrep catalog of D(G), the P_{C,pi} family and the Peter-Weyl map.
Report projectors_report(const GroupTable& G);

// Group basis psi^{h,g} on the 3x3 plane: Gram matrix, rank, endpoint actions, route independence,
// the commutation relations on random states and the rank of the three-site space.
Report ribbon_basis_report(const GroupTable& G, std::uint64_t seed = 1);
// Rank of {F_1 ... F_k |vac>} for ribbons from the first site of each to the others.
Report multi_site_report(const GroupTable& G);

// Toric P_ij collapse for Z_n and block teleportation for G.
Report teleport_report(const GroupTable& G, int toric_n = 3);

// D(S3) logical qubit on the 3x3 plane with the four corner sites.
Report logical_qubit_report(std::uint64_t seed = 1);

// W compositions and dagger laws for S3.
Report w_algebra_report(std::uint64_t seed = 1);

// Braiding phases for the given n over all (i, j).
Report braid_report(const std::vector<int>& ns);

// Toric X/Z against the generic D(Z_n) code.
Report fourier_report(const std::vector<int>& ns, std::uint64_t seed = 1);

// D(H) checks feeding the acceptance suite.
Report hopf_suite_report(std::uint64_t seed = 1);

// Acceptance criterion k in 1..13.
Report acceptance_criterion(int k, std::uint64_t seed = 1);
std::string acceptance_title(int k);
constexpr int kNumCriteria = 13;

}  // namespace qdl
