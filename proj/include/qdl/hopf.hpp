#pragma once

#include <string>
#include <vector>

#include "qdl/group.hpp"
#include "qdl/report.hpp"

namespace qdl {

using CVector = Eigen::VectorXcd;

// Finite-dimensional Hopf algebra by dense structure constants in a basis e_0..e_{d-1}.
struct HopfAlgebra {
  std::string name;
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<Complex> mul;  // e_a e_b = sum_c mul[(c*d+a)*d+b] e_c
  std::vector<Complex> com;  // Delta e_a = sum_{b,c} com[(a*d+b)*d+c] e_b (x) e_c
  CVector unit, counit;
  CMatrix S, Sinv;  // S e_a = sum_b S(b,a) e_b
  CVector lambda;   // left integral element
  CVector integral; // right-invariant functional, integral(a) = int e_a
  bool normalized = false;  // eps(Lambda) = int 1 = 1
  // Optional irreps, one matrix per basis element; only used by the idempotent checks.
  std::vector<std::vector<CMatrix>> irreps;

  Complex m(int c, int a, int b) const { return mul[(c * dim + a) * dim + b]; }
  Complex& m(int c, int a, int b) { return mul[(c * dim + a) * dim + b]; }
  Complex dl(int a, int b, int c) const { return com[(a * dim + b) * dim + c]; }
  Complex& dl(int a, int b, int c) { return com[(a * dim + b) * dim + c]; }

  CVector basis(int a) const;
  CVector product(const CVector& x, const CVector& y) const;
  // Delta x as a d x d matrix, entry (b,c) is the coefficient of e_b (x) e_c.
  CMatrix coproduct(const CVector& x) const;
  CMatrix left_mult(const CVector& x) const;   // y -> x y
  CMatrix right_mult(const CVector& x) const;  // y -> y x
  CMatrix irrep_of(int k, const CVector& x) const;
};

// Builtins. load_hopf validates and fills the integrals.
HopfAlgebra hopf_group(const GroupTable& G);
HopfAlgebra hopf_function(const GroupTable& G);
// g^2 = 1, x^2 = 0, xg = -gx, Delta x = x (x) 1 + g (x) x; basis 1, g, x, gx.
HopfAlgebra hopf_sweedler();
HopfAlgebra hopf_dual(const HopfAlgebra& H);

// Axiom report; every check has tolerance 1e-12.
Report verify_hopf(const HopfAlgebra& H);
// Solves for the integrals; NoIntegral unless each solution space is one-dimensional.
void compute_integrals(HopfAlgebra& H);
// verify_hopf + compute_integrals; NotAHopfAlgebra on any axiom failure.
HopfAlgebra load_hopf(HopfAlgebra H);
HopfAlgebra builtin_hopf(const std::string& name);  // "sweedler", "cs3", "cz<n>", "fs3", "fz<n>"

// D(H) = H*op bowtie H, basis f^a (x) e_b at index a*d+b.
struct DoubleH {
  const HopfAlgebra* base = nullptr;
  HopfAlgebra D;
  int index(int a, int b) const { return a * base->dim + b; }
};
DoubleH drinfeld_double(const HopfAlgebra& H);
// Lambda_D = int (x) Lambda as an element of D(H).
CVector double_integral(const DoubleH& DH);

// P_pi = dim V_pi Lambda_1 Tr_pi(S Lambda_2) for the stored irreps.
std::vector<CVector> hopf_idempotents(const HopfAlgebra& H);
Report check_hopf_idempotents(const HopfAlgebra& H);

// D(G) projectors from the crossed-module formula, against the direct P_{C,pi}.
Report check_double_specialization(const GroupTable& G);

}  // namespace qdl
