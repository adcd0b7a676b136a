#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace qdl {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Unitary irrep of a group or subgroup; mats[g] is empty for g outside the subgroup.
struct Irrep {
  std::string name;
  int dim = 1;
  std::vector<CMatrix> mats;

  Complex character(int g) const { return mats[g].trace(); }
};

struct GroupTable {
  int order = 0;
  int id = 0;
  std::vector<int> mul_table;
  std::vector<int> inv;
  std::vector<std::string> labels;
  std::string kind;  // "cyclic", "s3" or "table"
  std::vector<Irrep> irreps;
  // Optional preset class representatives and section (q per element), empty if absent.
  std::vector<int> preset_section;

  int mul(int a, int b) const { return mul_table[a * order + b]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv[g]); }
  int element_order(int g) const;
  bool is_abelian() const;
  std::string name(int g) const;
  int index_of(const std::string& label) const;
};

struct ConjugacyData {
  std::vector<std::vector<int>> classes;
  std::vector<int> rep;
  std::vector<std::vector<int>> centralizer;
  std::vector<int> section;   // q_c for every element c
  std::vector<int> class_of;  // class index of every element

  int num_classes() const { return static_cast<int>(classes.size()); }
};

GroupTable build_cyclic(int n);
GroupTable build_s3();
GroupTable build_from_table(const std::vector<std::vector<int>>& mul, std::vector<Irrep> irreps = {});

// Throws UnsupportedGroup if the table is not a group.
void validate_group(const GroupTable& g);

ConjugacyData conjugacy(const GroupTable& g);

// zeta_c(g) = q_{gcg^-1}^-1 g q_c
int cocycle(const GroupTable& g, const ConjugacyData& cd, int c, int x);

std::vector<Irrep> cyclic_subgroup_irreps(const GroupTable& g, const std::vector<int>& elements);
std::vector<Irrep> group_irreps(const GroupTable& g);
std::vector<Irrep> centralizer_irreps(const GroupTable& g, const ConjugacyData& cd, int cls);

struct OrthogonalityReport {
  double orth1 = 0, orth2 = 0, fullorth = 0, unitarity = 0, homomorphism = 0;
  double max_deviation() const;
  bool passed(double tol = 1e-10) const { return max_deviation() < tol; }
};

// elements: the (sub)group the irreps live on; throws IncompleteIrrepSet if sum dim^2 != |elements|.
OrthogonalityReport check_character_orthogonality(const GroupTable& g, const std::vector<int>& elements,
                                                  const std::vector<Irrep>& irreps);

Irrep tensor_irrep(const Irrep& a, const Irrep& b);

// Number of homomorphisms pi_1(genus k surface) -> G up to conjugation.
long long hom_oracle(const GroupTable& g, int genus);

}  // namespace qdl
