#pragma once

#include <vector>

#include "qdl/group.hpp"

namespace qdl {

// Element of D(G) in the basis delta_g (x) h, stored densely at index g*|G|+h.
struct DoubleElement {
  const GroupTable* group = nullptr;
  CVector coef;

  int n() const { return group->order; }
  Complex operator()(int g, int h) const { return coef(g * n() + h); }
  Complex& operator()(int g, int h) { return coef(g * n() + h); }
};

DoubleElement double_zero(const GroupTable& G);
DoubleElement double_one(const GroupTable& G);
DoubleElement double_basis(const GroupTable& G, int g, int h);
DoubleElement operator+(const DoubleElement& a, const DoubleElement& b);
DoubleElement operator-(const DoubleElement& a, const DoubleElement& b);
DoubleElement operator*(Complex s, const DoubleElement& a);
double distance(const DoubleElement& a, const DoubleElement& b);

DoubleElement double_product(const DoubleElement& x, const DoubleElement& y);
DoubleElement double_antipode(const DoubleElement& x);
Complex double_counit(const DoubleElement& x);

struct DoubleIrrep {
  int cls = 0;
  int pi = 0;
  Irrep irrep;                // irrep of the centralizer C_G(r_C)
  std::vector<int> elements;  // the class C in carrier order
  int dim() const { return static_cast<int>(elements.size()) * irrep.dim; }
  std::string name(const GroupTable& G, const ConjugacyData& cd) const;
  int index(int c_pos, int i) const { return c_pos * irrep.dim + i; }
};

std::vector<DoubleIrrep> double_irreps(const GroupTable& G, const ConjugacyData& cd);

// Matrix of delta_h (x) g acting on the carrier of R.
CMatrix irrep_matrix(const GroupTable& G, const ConjugacyData& cd, const DoubleIrrep& R, int h, int g);
CMatrix irrep_matrix(const GroupTable& G, const ConjugacyData& cd, const DoubleIrrep& R, const DoubleElement& x);

DoubleElement projector(const GroupTable& G, const ConjugacyData& cd, const DoubleIrrep& R);

struct ProjectorFamilyReport {
  int count = 0;
  double orthogonality = 0, completeness = 0, centrality = 0, action = 0;
  double max_deviation() const;
};
ProjectorFamilyReport verify_projector_family(const GroupTable& G);

// Phi(e_u (x) f^v) for carrier indices u = (c,i), v = (d,j).
DoubleElement peter_weyl_phi(const GroupTable& G, const ConjugacyData& cd, const DoubleIrrep& R, int u, int v);

struct PhiReport {
  double unit_matrix = 0, round_trip = 0, left_module = 0, right_module = 0, trace_is_projector = 0;
  double max_deviation() const;
};
PhiReport check_peter_weyl(const GroupTable& G);

struct HopfAxiomReport {
  double associativity = 0, antipode = 0, coproduct_hom = 0, antipode_square = 0;
  double max_deviation() const;
};
HopfAxiomReport check_double_axioms(const GroupTable& G);

}  // namespace qdl
