#include "qdl/hopf.hpp"

#include <Eigen/LU>

#include "qdl/double.hpp"
#include "qdl/error.hpp"

namespace qdl {

namespace {

constexpr double kTol = 1e-12;

HopfAlgebra blank(const std::string& name, int d) {
  HopfAlgebra H;
  H.name = name;
  H.dim = d;
  H.mul.assign(std::size_t(d) * d * d, 0.0);
  H.com.assign(std::size_t(d) * d * d, 0.0);
  H.unit = CVector::Zero(d);
  H.counit = CVector::Zero(d);
  H.S = CMatrix::Zero(d, d);
  return H;
}

// Nonzero entries of e_a e_b, as (c, coef) per (a,b).
std::vector<std::vector<std::pair<int, Complex>>> mul_lists(const HopfAlgebra& H) {
  const int d = H.dim;
  std::vector<std::vector<std::pair<int, Complex>>> out(std::size_t(d) * d);
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        if (H.m(c, a, b) != 0.0) out[a * d + b].emplace_back(c, H.m(c, a, b));
  return out;
}

// Products in H (x) H of two d x d coefficient matrices.
CMatrix tensor_product(const HopfAlgebra& H, const std::vector<std::vector<std::pair<int, Complex>>>& ml,
                       const CMatrix& x, const CMatrix& y) {
  const int d = H.dim;
  CMatrix out = CMatrix::Zero(d, d);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      if (x(p, q) == 0.0) continue;
      for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) {
          if (y(r, s) == 0.0) continue;
          const Complex c = x(p, q) * y(r, s);
          for (const auto& [u, cu] : ml[p * d + r])
            for (const auto& [v, cv] : ml[q * d + s]) out(u, v) += c * cu * cv;
        }
    }
  return out;
}

double maxabs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

CVector HopfAlgebra::basis(int a) const {
  CVector v = CVector::Zero(dim);
  v(a) = 1.0;
  return v;
}

CVector HopfAlgebra::product(const CVector& x, const CVector& y) const {
  CVector out = CVector::Zero(dim);
  for (int a = 0; a < dim; ++a) {
    if (x(a) == 0.0) continue;
    for (int b = 0; b < dim; ++b) {
      if (y(b) == 0.0) continue;
      for (int c = 0; c < dim; ++c) out(c) += x(a) * y(b) * m(c, a, b);
    }
  }
  return out;
}

CMatrix HopfAlgebra::coproduct(const CVector& x) const {
  CMatrix out = CMatrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    if (x(a) == 0.0) continue;
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c) out(b, c) += x(a) * dl(a, b, c);
  }
  return out;
}

CMatrix HopfAlgebra::left_mult(const CVector& x) const {
  CMatrix out(dim, dim);
  for (int b = 0; b < dim; ++b) out.col(b) = product(x, basis(b));
  return out;
}

CMatrix HopfAlgebra::right_mult(const CVector& x) const {
  CMatrix out(dim, dim);
  for (int b = 0; b < dim; ++b) out.col(b) = product(basis(b), x);
  return out;
}

CMatrix HopfAlgebra::irrep_of(int k, const CVector& x) const {
  const auto& mats = irreps.at(k);
  CMatrix out = CMatrix::Zero(mats[0].rows(), mats[0].cols());
  for (int a = 0; a < dim; ++a)
    if (x(a) != 0.0) out += x(a) * mats[a];
  return out;
}

namespace {

std::string group_label(const GroupTable& G) {
  if (G.kind == "s3") return "S3";
  if (G.kind == "cyclic") return "Z" + std::to_string(G.order);
  return "G" + std::to_string(G.order);
}

}  // namespace

HopfAlgebra hopf_group(const GroupTable& G) {
  HopfAlgebra H = blank("C" + group_label(G), G.order);
  for (int g = 0; g < G.order; ++g) {
    H.labels.push_back(G.name(g));
    for (int h = 0; h < G.order; ++h) H.m(G.mul(g, h), g, h) = 1.0;
    H.dl(g, g, g) = 1.0;
    H.counit(g) = 1.0;
    H.S(G.inv[g], g) = 1.0;
  }
  H.unit(G.id) = 1.0;
  for (const auto& R : G.irreps) H.irreps.push_back(R.mats);
  return H;
}

HopfAlgebra hopf_function(const GroupTable& G) {
  HopfAlgebra H = blank("C(" + group_label(G) + ")", G.order);
  for (int g = 0; g < G.order; ++g) {
    H.labels.push_back("d_" + G.name(g));
    H.m(g, g, g) = 1.0;
    H.unit(g) = 1.0;
    for (int f = 0; f < G.order; ++f) H.dl(g, f, G.mul(G.inv[f], g)) = 1.0;
    H.S(G.inv[g], g) = 1.0;
  }
  H.counit(G.id) = 1.0;
  // evaluation at each group element
  for (int g = 0; g < G.order; ++g) {
    std::vector<CMatrix> mats(G.order, CMatrix::Zero(1, 1));
    mats[g](0, 0) = 1.0;
    H.irreps.push_back(mats);
  }
  return H;
}

HopfAlgebra hopf_sweedler() {
  HopfAlgebra H = blank("sweedler", 4);
  H.labels = {"1", "g", "x", "gx"};
  enum { I = 0, Gg = 1, X = 2, GX = 3 };
  // products as signed basis elements; 0 coefficient where the product vanishes
  const int prod[4][4] = {{I, Gg, X, GX}, {Gg, I, GX, X}, {X, GX, -1, -1}, {GX, X, -1, -1}};
  const double sign[4][4] = {{1, 1, 1, 1}, {1, 1, 1, 1}, {1, -1, 0, 0}, {1, -1, 0, 0}};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (prod[a][b] >= 0) H.m(prod[a][b], a, b) = sign[a][b];
  H.unit(I) = 1.0;
  H.dl(I, I, I) = 1.0;
  H.dl(Gg, Gg, Gg) = 1.0;
  H.dl(X, X, I) = 1.0;
  H.dl(X, Gg, X) = 1.0;
  H.dl(GX, GX, Gg) = 1.0;
  H.dl(GX, I, GX) = 1.0;
  H.counit(I) = 1.0;
  H.counit(Gg) = 1.0;
  H.S(I, I) = 1.0;
  H.S(Gg, Gg) = 1.0;
  H.S(GX, X) = -1.0;
  H.S(X, GX) = 1.0;
  return H;
}

HopfAlgebra hopf_dual(const HopfAlgebra& H) {
  const int d = H.dim;
  HopfAlgebra D = blank(H.name + "*", d);
  for (int a = 0; a < d; ++a) D.labels.push_back("f^" + (H.labels.empty() ? std::to_string(a) : H.labels[a]));
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        D.m(c, a, b) = H.dl(c, a, b);
        D.dl(c, a, b) = H.m(c, a, b);
      }
  D.unit = H.counit;
  D.counit = H.unit;
  D.S = H.S.transpose();
  if (H.Sinv.size()) D.Sinv = H.Sinv.transpose();
  return D;
}

Report verify_hopf(const HopfAlgebra& H) {
  Report r;
  r.command = "verify-hopf " + H.name;
  const int d = H.dim;
  const auto ml = mul_lists(H);
  std::vector<CMatrix> delta(d);
  for (int a = 0; a < d; ++a) delta[a] = H.coproduct(H.basis(a));

  double assoc = 0, unit = 0, coassoc = 0, counit = 0, mult = 0, eps_mult = 0, anti = 0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const CVector ab = H.product(H.basis(a), H.basis(b));
      for (int c = 0; c < d; ++c) {
        const CVector lhs = H.product(ab, H.basis(c));
        const CVector rhs = H.product(H.basis(a), H.product(H.basis(b), H.basis(c)));
        assoc = std::max(assoc, maxabs(lhs - rhs));
      }
      // Delta(ab) = Delta a Delta b, eps(ab) = eps a eps b
      CMatrix dab = CMatrix::Zero(d, d);
      for (const auto& [c, cc] : ml[a * d + b]) dab += cc * delta[c];
      mult = std::max(mult, maxabs(dab - tensor_product(H, ml, delta[a], delta[b])));
    }
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Complex e = 0;
      for (const auto& [c, cc] : ml[a * d + b]) e += cc * H.counit(c);
      eps_mult = std::max(eps_mult, std::abs(e - H.counit(a) * H.counit(b)));
    }
  for (int a = 0; a < d; ++a) {
    unit = std::max(unit, maxabs(H.product(H.unit, H.basis(a)) - H.basis(a)));
    unit = std::max(unit, maxabs(H.product(H.basis(a), H.unit) - H.basis(a)));
    // (Delta (x) id) Delta vs (id (x) Delta) Delta as d^3 tensors
    std::vector<Complex> l(std::size_t(d) * d * d, 0.0), rr(std::size_t(d) * d * d, 0.0);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        const Complex c = delta[a](p, q);
        if (c == 0.0) continue;
        for (int x = 0; x < d; ++x)
          for (int y = 0; y < d; ++y) {
            l[(x * d + y) * d + q] += c * delta[p](x, y);
            rr[(p * d + x) * d + y] += c * delta[q](x, y);
          }
      }
    for (std::size_t k = 0; k < l.size(); ++k) coassoc = std::max(coassoc, std::abs(l[k] - rr[k]));
    const CVector left = delta[a].transpose() * H.counit;  // (eps (x) id)
    const CVector right = delta[a] * H.counit;             // (id (x) eps)
    counit = std::max({counit, maxabs(left - H.basis(a)), maxabs(right - H.basis(a))});
    CVector s1 = CVector::Zero(d), s2 = CVector::Zero(d);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) {
        const Complex c = delta[a](p, q);
        if (c == 0.0) continue;
        s1 += c * H.product(H.S.col(p), H.basis(q));
        s2 += c * H.product(H.basis(p), H.S.col(q));
      }
    anti = std::max({anti, maxabs(s1 - H.counit(a) * H.unit), maxabs(s2 - H.counit(a) * H.unit)});
  }
  const CMatrix d1 = H.coproduct(H.unit);
  const CMatrix want = H.unit * H.unit.transpose();
  r.add("associativity", assoc, kTol);
  r.add("unit", unit, kTol);
  r.add("coassociativity", coassoc, kTol);
  r.add("counit", counit, kTol);
  r.add("coproduct multiplicative", std::max(mult, maxabs(d1 - want)), kTol);
  r.add("counit multiplicative", std::max(eps_mult, std::abs(Complex(H.counit.transpose() * H.unit) - 1.0)), kTol);
  r.add("antipode law", anti, kTol);
  if (H.Sinv.size()) r.add("S S^-1 = id", maxabs(H.S * H.Sinv - CMatrix::Identity(d, d)), kTol);
  return r;
}

namespace {

CVector null_vector(const CMatrix& M, const char* what) {
  Eigen::FullPivLU<CMatrix> lu(M);
  lu.setThreshold(1e-10);
  const CMatrix k = lu.kernel();
  if (lu.dimensionOfKernel() != 1)
    throw Error(ErrorKind::NoIntegral, std::string(what) + ": solution space has dimension " +
                                           std::to_string(lu.dimensionOfKernel()));
  CVector v = k.col(0);
  return v;
}

void first_coordinate_one(CVector& v) {
  for (int a = 0; a < v.size(); ++a)
    if (std::abs(v(a)) > 1e-9) {
      v /= v(a);
      return;
    }
}

}  // namespace

void compute_integrals(HopfAlgebra& H) {
  const int d = H.dim;
  // h Lambda = eps(h) Lambda for every basis h
  CMatrix M(d * d, d);
  for (int a = 0; a < d; ++a) M.block(a * d, 0, d, d) = H.left_mult(H.basis(a)) - H.counit(a) * CMatrix::Identity(d, d);
  H.lambda = null_vector(M, "left integral");
  // (int h_1) h_2 = int(h) 1: row (a,c) holds dl(a,b,c) - delta_ab unit_c
  CMatrix N = CMatrix::Zero(d * d, d);
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) {
      for (int b = 0; b < d; ++b) N(a * d + c, b) = H.dl(a, b, c);
      N(a * d + c, a) -= H.unit(c);
    }
  H.integral = null_vector(N, "right-invariant integral");
  const Complex el = H.counit.transpose() * H.lambda;
  const Complex i1 = H.integral.transpose() * H.unit;
  H.normalized = std::abs(el) > 1e-9 && std::abs(i1) > 1e-9;
  if (H.normalized) {
    H.lambda /= el;
    H.integral /= i1;
  } else {
    first_coordinate_one(H.lambda);
    first_coordinate_one(H.integral);
  }
}

HopfAlgebra load_hopf(HopfAlgebra H) {
  if (H.S.rows() != H.dim) throw Error(ErrorKind::NotAHopfAlgebra, H.name + ": antipode missing");
  Eigen::FullPivLU<CMatrix> lu(H.S);
  if (!lu.isInvertible()) throw Error(ErrorKind::NotAHopfAlgebra, H.name + ": antipode not invertible");
  H.Sinv = lu.inverse();
  const Report r = verify_hopf(H);
  for (const auto& c : r.checks)
    if (!c.passed)
      throw Error(ErrorKind::NotAHopfAlgebra, H.name + ": " + c.name + " fails by " + std::to_string(c.max_deviation));
  compute_integrals(H);
  return H;
}

HopfAlgebra builtin_hopf(const std::string& name) {
  if (name == "sweedler") return load_hopf(hopf_sweedler());
  if (name.size() >= 3 && (name[0] == 'c' || name[0] == 'f')) {
    GroupTable G;
    const std::string g = name.substr(1);
    if (g == "s3") G = build_s3();
    else if (g[0] == 'z') G = build_cyclic(std::stoi(g.substr(1)));
    else throw Error(ErrorKind::ConfigError, "unknown Hopf instance " + name);
    return load_hopf(name[0] == 'c' ? hopf_group(G) : hopf_function(G));
  }
  throw Error(ErrorKind::ConfigError, "unknown Hopf instance " + name);
}

DoubleH drinfeld_double(const HopfAlgebra& H) {
  const int d = H.dim, n = d * d;
  DoubleH DH;
  DH.base = &H;
  HopfAlgebra& D = DH.D;
  D = blank("D(" + H.name + ")", n);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) D.labels.push_back("f" + std::to_string(a) + "|e" + std::to_string(b));

  // Delta^2 e_j and Delta^2 f^k as d^3 tensors
  std::vector<std::vector<Complex>> c2(d, std::vector<Complex>(std::size_t(d) * d * d, 0.0));
  std::vector<std::vector<Complex>> m2(d, std::vector<Complex>(std::size_t(d) * d * d, 0.0));
  for (int j = 0; j < d; ++j)
    for (int p = 0; p < d; ++p)
      for (int x = 0; x < d; ++x) {
        const Complex c = H.dl(j, p, x), mm = H.m(j, p, x);
        for (int q = 0; q < d; ++q)
          for (int r = 0; r < d; ++r) {
            if (c != 0.0) c2[j][(p * d + q) * d + r] += c * H.dl(x, q, r);
            if (mm != 0.0) m2[j][(p * d + q) * d + r] += mm * H.m(x, q, r);
          }
      }

  // (f^i (x) e_j)(f^k (x) e_l) = f^t f^i (x) e_q e_l <S e_p, f^s> <e_r, f^u> summed over Delta^2 legs
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      CMatrix T = CMatrix::Zero(d, d);  // T(t,q)
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
          for (int r = 0; r < d; ++r) {
            const Complex c = c2[j][(p * d + q) * d + r];
            if (c == 0.0) continue;
            for (int s = 0; s < d; ++s) {
              if (H.S(s, p) == 0.0) continue;
              for (int t = 0; t < d; ++t) {
                const Complex mk = m2[k][(s * d + t) * d + r];
                if (mk != 0.0) T(t, q) += c * mk * H.S(s, p);
              }
            }
          }
      for (int t = 0; t < d; ++t)
        for (int q = 0; q < d; ++q) {
          if (T(t, q) == 0.0) continue;
          for (int i = 0; i < d; ++i)
            for (int nn = 0; nn < d; ++nn) {
              const Complex ft = H.dl(nn, t, i);  // f^t f^i = sum_n dl(n,t,i) f^n
              if (ft == 0.0) continue;
              for (int l = 0; l < d; ++l)
                for (int mm = 0; mm < d; ++mm) {
                  const Complex hq = H.m(mm, q, l);
                  if (hq != 0.0) D.m(DH.index(nn, mm), DH.index(i, j), DH.index(k, l)) += T(t, q) * ft * hq;
                }
            }
        }
    }

  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const int a = DH.index(i, j);
      D.counit(a) = H.unit(i) * H.counit(j);
      D.unit(a) = H.counit(i) * H.unit(j);
      // Delta(f^i (x) e_j) = (f^i)_1 (x) (e_j)_1 (x) (f^i)_2 (x) (e_j)_2
      for (int s = 0; s < d; ++s)
        for (int y = 0; y < d; ++y) {
          if (H.m(i, s, y) == 0.0) continue;
          for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
              if (H.dl(j, b, c) != 0.0) D.dl(a, DH.index(s, b), DH.index(y, c)) += H.m(i, s, y) * H.dl(j, b, c);
        }
      // S(a (x) h) = S^-1 a_2 (x) S h_2 <h_1, a_1> <S h_3, a_3>
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
          for (int r = 0; r < d; ++r) {
            const Complex c = c2[j][(p * d + q) * d + r];
            if (c == 0.0) continue;
            for (int t = 0; t < d; ++t)
              for (int u = 0; u < d; ++u) {
                const Complex mk = m2[i][(p * d + t) * d + u];
                if (mk == 0.0 || H.S(u, r) == 0.0) continue;
                const Complex w = c * mk * H.S(u, r);
                for (int nn = 0; nn < d; ++nn)
                  for (int mm = 0; mm < d; ++mm) D.S(DH.index(nn, mm), a) += w * H.Sinv(t, nn) * H.S(mm, q);
              }
          }
    }
  D.Sinv = D.S.inverse();
  return DH;
}

CVector double_integral(const DoubleH& DH) {
  const HopfAlgebra& H = *DH.base;
  CVector v = CVector::Zero(DH.D.dim);
  for (int a = 0; a < H.dim; ++a)
    for (int b = 0; b < H.dim; ++b) v(DH.index(a, b)) = H.integral(a) * H.lambda(b);
  return v;
}

std::vector<CVector> hopf_idempotents(const HopfAlgebra& H) {
  if (!H.normalized) throw Error(ErrorKind::ConfigError, H.name + ": idempotents need normalized integrals");
  const CMatrix dl = H.coproduct(H.lambda);
  std::vector<CVector> out;
  for (std::size_t k = 0; k < H.irreps.size(); ++k) {
    const double dim = double(H.irreps[k][0].rows());
    CVector P = CVector::Zero(H.dim);
    for (int q = 0; q < H.dim; ++q) {
      const Complex tr = H.irrep_of(int(k), H.S.col(q)).trace();
      for (int p = 0; p < H.dim; ++p)
        if (dl(p, q) != 0.0) P(p) += dim * dl(p, q) * tr;
    }
    out.push_back(P);
  }
  return out;
}

Report check_hopf_idempotents(const HopfAlgebra& H) {
  Report r;
  r.command = "idempotents " + H.name;
  const auto P = hopf_idempotents(H);
  double orth = 0, central = 0;
  CVector sum = CVector::Zero(H.dim);
  for (std::size_t a = 0; a < P.size(); ++a) {
    sum += P[a];
    for (std::size_t b = 0; b < P.size(); ++b) {
      const CVector want = a == b ? P[a] : CVector::Zero(H.dim);
      orth = std::max(orth, maxabs(H.product(P[a], P[b]) - want));
    }
    for (int x = 0; x < H.dim; ++x)
      central = std::max(central, maxabs(H.product(P[a], H.basis(x)) - H.product(H.basis(x), P[a])));
  }
  r.add("P_pi P_pi' = delta P_pi", orth, kTol);
  r.add("sum P_pi = 1", maxabs(sum - H.unit), kTol);
  r.add("P_pi central", central, kTol);
  r.data["count"] = P.size();
  return r;
}

Report check_double_specialization(const GroupTable& G) {
  Report r;
  r.command = "double-specialization";
  const HopfAlgebra H = load_hopf(hopf_group(G));
  const DoubleH DH = drinfeld_double(H);
  const int d = H.dim;
  const ConjugacyData cd = conjugacy(G);
  const auto irreps = double_irreps(G, cd);

  // Lambda_D is a two-sided integral of D(H)
  const CVector LD = double_integral(DH);
  double integ = 0;
  for (int x = 0; x < DH.D.dim; ++x) {
    const CVector e = DH.D.basis(x);
    integ = std::max(integ, maxabs(DH.D.product(e, LD) - DH.D.counit(x) * LD));
    integ = std::max(integ, maxabs(DH.D.product(LD, e) - DH.D.counit(x) * LD));
  }
  r.add("Lambda_D = int (x) Lambda is an integral", integ, kTol);

  const CMatrix dlam = H.coproduct(H.lambda);
  const CMatrix dlamD = DH.D.coproduct(LD);
  double crossed = 0, general = 0;
  for (const auto& R : irreps) {
    const int n = R.dim();
    std::vector<CMatrix> pi(d, CMatrix::Zero(n, n)), rho_delta(d);
    for (int h = 0; h < d; ++h)
      for (int g = 0; g < d; ++g) pi[h] += irrep_matrix(G, cd, R, g, h);
    for (int b = 0; b < d; ++b) rho_delta[b] = irrep_matrix(G, cd, R, b, G.id);
    auto pi_of = [&](const CVector& x) {
      CMatrix m = CMatrix::Zero(n, n);
      for (int a = 0; a < d; ++a)
        if (x(a) != 0.0) m += x(a) * pi[a];
      return m;
    };
    // P = dim V sum f^a (x) Lambda_1 pi(S Lambda_2)_{ij} int(e_a S rho_ij)
    DoubleElement P = double_zero(G);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CVector rho = CVector::Zero(d);
        for (int b = 0; b < d; ++b) rho(b) = rho_delta[b](j, i);
        CVector X = CVector::Zero(d);
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q)
            if (dlam(p, q) != 0.0) X(p) += dlam(p, q) * pi_of(H.S.col(q))(i, j);
        const CVector srho = H.S * rho;
        for (int a = 0; a < d; ++a) {
          const Complex y = H.integral.transpose() * H.product(H.basis(a), srho);
          if (y == 0.0) continue;
          for (int b = 0; b < d; ++b) P.coef(DH.index(a, b)) += double(n) * y * X(b);
        }
      }
    const DoubleElement want = projector(G, cd, R);
    crossed = std::max(crossed, distance(P, want));
    // the same projector from the Hopf formula applied to D(H) itself
    CVector Pg = CVector::Zero(DH.D.dim);
    for (int q = 0; q < DH.D.dim; ++q) {
      CMatrix m = CMatrix::Zero(n, n);
      const CVector sq = DH.D.S.col(q);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          if (sq(DH.index(a, b)) != 0.0) m += sq(DH.index(a, b)) * irrep_matrix(G, cd, R, a, b);
      const Complex tr = m.trace();
      if (tr == 0.0) continue;
      for (int p = 0; p < DH.D.dim; ++p) Pg(p) += double(n) * dlamD(p, q) * tr;
    }
    general = std::max(general, maxabs(Pg - want.coef));
  }
  r.add("crossed-module formula = P_{C,pi}", crossed, kTol);
  r.add("Hopf formula on D(H) = P_{C,pi}", general, kTol);
  r.data["irreps"] = irreps.size();
  return r;
}

}  // namespace qdl
