#include "qdl/double.hpp"

#include <algorithm>

#include "qdl/error.hpp"

namespace qdl {

DoubleElement double_zero(const GroupTable& G) {
  return DoubleElement{&G, CVector::Zero(G.order * G.order)};
}

DoubleElement double_one(const GroupTable& G) {
  DoubleElement x = double_zero(G);
  for (int g = 0; g < G.order; ++g) x(g, G.id) = 1.0;
  return x;
}

DoubleElement double_basis(const GroupTable& G, int g, int h) {
  DoubleElement x = double_zero(G);
  x(g, h) = 1.0;
  return x;
}

static void same_group(const DoubleElement& a, const DoubleElement& b) {
  if (a.group != b.group) throw Error(ErrorKind::GroupMismatch, "double elements over different groups");
}

DoubleElement operator+(const DoubleElement& a, const DoubleElement& b) {
  same_group(a, b);
  return DoubleElement{a.group, a.coef + b.coef};
}

DoubleElement operator-(const DoubleElement& a, const DoubleElement& b) {
  same_group(a, b);
  return DoubleElement{a.group, a.coef - b.coef};
}

DoubleElement operator*(Complex s, const DoubleElement& a) { return DoubleElement{a.group, s * a.coef}; }

double distance(const DoubleElement& a, const DoubleElement& b) {
  same_group(a, b);
  return (a.coef - b.coef).cwiseAbs().maxCoeff();
}

DoubleElement double_product(const DoubleElement& x, const DoubleElement& y) {
  same_group(x, y);
  const GroupTable& G = *x.group;
  const int n = G.order;
  DoubleElement out = double_zero(G);
  for (int a = 0; a < n; ++a)
    for (int h = 0; h < n; ++h) {
      const Complex cx = x(a, h);
      if (cx == 0.0) continue;
      // (delta_a h)(delta_b g) = delta_{a, h b h^-1} delta_a hg
      const int b = G.conj(G.inv[h], a);
      for (int g = 0; g < n; ++g) {
        const Complex cy = y(b, g);
        if (cy != 0.0) out(a, G.mul(h, g)) += cx * cy;
      }
    }
  return out;
}

DoubleElement double_antipode(const DoubleElement& x) {
  const GroupTable& G = *x.group;
  DoubleElement out = double_zero(G);
  for (int g = 0; g < G.order; ++g)
    for (int h = 0; h < G.order; ++h) {
      const int hi = G.inv[h];
      out(G.conj(hi, G.inv[g]), hi) += x(g, h);
    }
  return out;
}

Complex double_counit(const DoubleElement& x) {
  Complex s = 0;
  for (int h = 0; h < x.n(); ++h) s += x(x.group->id, h);
  return s;
}

std::string DoubleIrrep::name(const GroupTable& G, const ConjugacyData& cd) const {
  return G.name(cd.rep[cls]) + "," + irrep.name;
}

std::vector<DoubleIrrep> double_irreps(const GroupTable& G, const ConjugacyData& cd) {
  std::vector<DoubleIrrep> out;
  for (int k = 0; k < cd.num_classes(); ++k) {
    auto irs = centralizer_irreps(G, cd, k);
    for (std::size_t p = 0; p < irs.size(); ++p) {
      DoubleIrrep R;
      R.cls = k;
      R.pi = static_cast<int>(p);
      R.irrep = irs[p];
      R.elements = cd.classes[k];
      out.push_back(R);
    }
  }
  return out;
}

static int class_pos(const DoubleIrrep& R, int c) {
  return static_cast<int>(std::find(R.elements.begin(), R.elements.end(), c) - R.elements.begin());
}

CMatrix irrep_matrix(const GroupTable& G, const ConjugacyData& cd, const DoubleIrrep& R, int h, int g) {
  const int d = R.irrep.dim;
  CMatrix m = CMatrix::Zero(R.dim(), R.dim());
  for (std::size_t cp = 0; cp < R.elements.size(); ++cp) {
    const int c = R.elements[cp];
    const int gc = G.conj(g, c);
    if (gc != h) continue;
    const CMatrix& z = R.irrep.mats[cocycle(G, cd, c, g)];
    const int row = class_pos(R, gc);
    m.block(row * d, static_cast<int>(cp) * d, d, d) = z;
  }
  return m;
}

CMatrix irrep_matrix(const GroupTable& G, const ConjugacyData& cd, const DoubleIrrep& R, const DoubleElement& x) {
  CMatrix m = CMatrix::Zero(R.dim(), R.dim());
  for (int h = 0; h < G.order; ++h)
    for (int g = 0; g < G.order; ++g)
      if (x(h, g) != 0.0) m += x(h, g) * irrep_matrix(G, cd, R, h, g);
  return m;
}

DoubleElement projector(const GroupTable& G, const ConjugacyData& cd, const DoubleIrrep& R) {
  DoubleElement P = double_zero(G);
  const auto& cent = cd.centralizer[R.cls];
  const double pref = double(R.irrep.dim) / double(cent.size());
  for (int c : R.elements) {
    const int q = cd.section[c];
    for (int n : cent) P(c, G.mul(G.mul(q, n), G.inv[q])) += pref * R.irrep.character(G.inv[n]);
  }
  return P;
}

double ProjectorFamilyReport::max_deviation() const {
  return std::max({orthogonality, completeness, centrality, action});
}

ProjectorFamilyReport verify_projector_family(const GroupTable& G) {
  const ConjugacyData cd = conjugacy(G);
  const auto irreps = double_irreps(G, cd);
  std::vector<DoubleElement> P;
  for (const auto& R : irreps) P.push_back(projector(G, cd, R));
  ProjectorFamilyReport rep;
  rep.count = static_cast<int>(P.size());
  DoubleElement sum = double_zero(G);
  for (std::size_t a = 0; a < P.size(); ++a) {
    sum = sum + P[a];
    for (std::size_t b = 0; b < P.size(); ++b) {
      DoubleElement want = a == b ? P[a] : double_zero(G);
      rep.orthogonality = std::max(rep.orthogonality, distance(double_product(P[a], P[b]), want));
      CMatrix m = irrep_matrix(G, cd, irreps[b], P[a]);
      CMatrix mw = CMatrix::Zero(m.rows(), m.cols());
      if (a == b) mw.setIdentity();
      rep.action = std::max(rep.action, (m - mw).cwiseAbs().maxCoeff());
    }
    for (int g = 0; g < G.order; ++g)
      for (int h = 0; h < G.order; ++h) {
        DoubleElement x = double_basis(G, g, h);
        rep.centrality = std::max(rep.centrality, distance(double_product(x, P[a]), double_product(P[a], x)));
      }
  }
  rep.completeness = distance(sum, double_one(G));
  return rep;
}

DoubleElement peter_weyl_phi(const GroupTable& G, const ConjugacyData& cd, const DoubleIrrep& R, int u, int v) {
  const int d = R.irrep.dim;
  const int c = R.elements[u / d], i = u % d;
  const int dd = R.elements[v / d], j = v % d;
  const auto& cent = cd.centralizer[R.cls];
  const double pref = double(d) / double(cent.size());
  DoubleElement x = double_zero(G);
  const int qc = cd.section[c], qd_inv = G.inv[cd.section[dd]];
  for (int n : cent) x(c, G.mul(G.mul(qc, n), qd_inv)) += pref * R.irrep.mats[G.inv[n]](j, i);
  return x;
}

double PhiReport::max_deviation() const {
  return std::max({unit_matrix, round_trip, left_module, right_module, trace_is_projector});
}

PhiReport check_peter_weyl(const GroupTable& G) {
  const ConjugacyData cd = conjugacy(G);
  const auto irreps = double_irreps(G, cd);
  PhiReport rep;
  // Phi images, indexed [irrep][u][v]
  std::vector<std::vector<std::vector<DoubleElement>>> phi(irreps.size());
  for (std::size_t r = 0; r < irreps.size(); ++r) {
    const int D = irreps[r].dim();
    phi[r].assign(D, std::vector<DoubleElement>(D, double_zero(G)));
    for (int u = 0; u < D; ++u)
      for (int v = 0; v < D; ++v) phi[r][u][v] = peter_weyl_phi(G, cd, irreps[r], u, v);
  }
  for (std::size_t r = 0; r < irreps.size(); ++r) {
    const int D = irreps[r].dim();
    DoubleElement tr = double_zero(G);
    for (int u = 0; u < D; ++u) {
      tr = tr + phi[r][u][u];
      for (int v = 0; v < D; ++v)
        for (std::size_t s = 0; s < irreps.size(); ++s) {
          CMatrix m = irrep_matrix(G, cd, irreps[s], phi[r][u][v]);
          CMatrix want = CMatrix::Zero(m.rows(), m.cols());
          if (s == r) want(u, v) = 1.0;
          rep.unit_matrix = std::max(rep.unit_matrix, (m - want).cwiseAbs().maxCoeff());
        }
    }
    rep.trace_is_projector = std::max(rep.trace_is_projector, distance(tr, projector(G, cd, irreps[r])));
  }
  for (int g = 0; g < G.order; ++g)
    for (int h = 0; h < G.order; ++h) {
      const DoubleElement x = double_basis(G, g, h);
      DoubleElement back = double_zero(G);
      for (std::size_t r = 0; r < irreps.size(); ++r) {
        const CMatrix m = irrep_matrix(G, cd, irreps[r], g, h);
        const int D = irreps[r].dim();
        for (int u = 0; u < D; ++u)
          for (int v = 0; v < D; ++v) {
            if (m(u, v) != 0.0) back = back + m(u, v) * phi[r][u][v];
            DoubleElement left = double_zero(G), right = double_zero(G);
            for (int k = 0; k < D; ++k) {
              if (m(k, u) != 0.0) left = left + m(k, u) * phi[r][k][v];
              if (m(v, k) != 0.0) right = right + m(v, k) * phi[r][u][k];
            }
            rep.left_module = std::max(rep.left_module, distance(left, double_product(x, phi[r][u][v])));
            rep.right_module = std::max(rep.right_module, distance(right, double_product(phi[r][u][v], x)));
          }
      }
      rep.round_trip = std::max(rep.round_trip, distance(back, x));
    }
  return rep;
}

double HopfAxiomReport::max_deviation() const {
  return std::max({associativity, antipode, coproduct_hom, antipode_square});
}

HopfAxiomReport check_double_axioms(const GroupTable& G) {
  const int n = G.order, N = n * n;
  HopfAxiomReport rep;
  std::vector<DoubleElement> basis;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) basis.push_back(double_basis(G, g, h));
  // basis products are single basis elements or zero
  std::vector<int> prod(N * N, -1);
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) {
      DoubleElement p = double_product(basis[i], basis[k]);
      for (int m = 0; m < N; ++m)
        if (std::abs(p.coef(m)) > 0.5) prod[i * N + k] = m;
    }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        rep.associativity = std::max(
            rep.associativity, distance(double_product(double_product(basis[i], basis[j]), basis[k]),
                                        double_product(basis[i], double_product(basis[j], basis[k]))));
  // Delta(delta_g h) = sum_f delta_f h (x) delta_{f^-1 g} h as lists of (i, j) index pairs
  auto coproduct = [&](int g, int h) {
    std::vector<std::pair<int, int>> terms;
    for (int f = 0; f < n; ++f) terms.emplace_back(f * n + h, G.mul(G.inv[f], g) * n + h);
    return terms;
  };
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      const auto D = coproduct(g, h);
      DoubleElement l = double_zero(G), r = double_zero(G);
      for (auto [i, j] : D) {
        l = l + double_product(double_antipode(basis[i]), basis[j]);
        r = r + double_product(basis[i], double_antipode(basis[j]));
      }
      const DoubleElement want = double_counit(basis[g * n + h]) * double_one(G);
      rep.antipode = std::max({rep.antipode, distance(l, want), distance(r, want)});
      rep.antipode_square =
          std::max(rep.antipode_square, distance(double_antipode(double_antipode(basis[g * n + h])), basis[g * n + h]));
      for (int g2 = 0; g2 < n; ++g2)
        for (int h2 = 0; h2 < n; ++h2) {
          const auto D2 = coproduct(g2, h2);
          CMatrix lhs = CMatrix::Zero(N, N), rhs = CMatrix::Zero(N, N);
          const int m = prod[(g * n + h) * N + g2 * n + h2];
          if (m >= 0)
            for (auto [i, j] : coproduct(m / n, m % n)) lhs(i, j) += 1.0;
          for (auto [i, j] : D)
            for (auto [k, l2] : D2) {
              const int a = prod[i * N + k], b = prod[j * N + l2];
              if (a >= 0 && b >= 0) rhs(a, b) += 1.0;
            }
          rep.coproduct_hom = std::max(rep.coproduct_hom, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    }
  return rep;
}

}  // namespace qdl
