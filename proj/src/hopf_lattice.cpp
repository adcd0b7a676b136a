#include "qdl/hopf_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>

#include "qdl/error.hpp"
#include "qdl/fixtures.hpp"
#include "qdl/io.hpp"
#include "qdl/ribbon.hpp"
#include "qdl/site_ops.hpp"

namespace qdl {

namespace {

constexpr double kDrop = 1e-14;

std::vector<std::uint64_t> powers(int d, int n) {
  std::vector<std::uint64_t> pw(n + 1, 1);
  for (int i = 1; i <= n; ++i) {
    if (pw[i - 1] > UINT64_MAX / static_cast<std::uint64_t>(d))
      throw Error(ErrorKind::SupportBudgetExceeded, "edge configuration does not fit in 64 bits");
    pw[i] = pw[i - 1] * d;
  }
  return pw;
}

std::uint64_t ipow(int d, int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= d;
  return r;
}

void sort_merge(std::vector<std::pair<std::uint64_t, Complex>>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<std::uint64_t, Complex>> out;
  for (const auto& e : v) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(e);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return std::abs(e.second) < kDrop; }),
            out.end());
  v = std::move(out);
}

HState from_map(int dim, int ne, const std::unordered_map<std::uint64_t, Complex>& acc) {
  HState s{dim, ne, {}};
  s.entries.reserve(acc.size());
  for (const auto& [k, a] : acc)
    if (std::abs(a) >= kDrop) s.entries.emplace_back(k, a);
  std::sort(s.entries.begin(), s.entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return s;
}

template <class F>
HState merge_with(const HState& a, const HState& b, F f) {
  if (a.dim != b.dim || a.num_edges != b.num_edges)
    throw Error(ErrorKind::LatticeMismatch, "states live on different lattices");
  HState out{a.dim, a.num_edges, {}};
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() || j < b.entries.size()) {
    std::pair<std::uint64_t, Complex> e;
    if (j == b.entries.size() || (i < a.entries.size() && a.entries[i].first < b.entries[j].first)) {
      e = {a.entries[i].first, f(a.entries[i].second, Complex(0))};
      ++i;
    } else if (i == a.entries.size() || b.entries[j].first < a.entries[i].first) {
      e = {b.entries[j].first, f(Complex(0), b.entries[j].second)};
      ++j;
    } else {
      e = {a.entries[i].first, f(a.entries[i].second, b.entries[j].second)};
      ++i;
      ++j;
    }
    if (std::abs(e.second) >= kDrop) out.entries.push_back(e);
  }
  return out;
}

// Re-expresses op on the edge list U (a superset of op.edges).
SpMat embed(const LocalOp& op, const std::vector<int>& U) {
  if (op.edges == U) return op.M;
  const int d = op.dim, k = static_cast<int>(U.size());
  std::vector<int> where(op.edges.size());
  for (std::size_t i = 0; i < op.edges.size(); ++i)
    where[i] = static_cast<int>(std::find(U.begin(), U.end(), op.edges[i]) - U.begin());
  const std::uint64_t N = ipow(d, k);
  std::vector<std::uint64_t> upw(k + 1, 1);
  for (int i = 1; i <= k; ++i) upw[i] = upw[i - 1] * d;
  std::vector<Eigen::Triplet<Complex>> trip;
  for (std::uint64_t c = 0; c < N; ++c) {
    std::uint64_t local = 0, rest = c, lp = 1;
    for (std::size_t i = 0; i < where.size(); ++i) {
      const std::uint64_t dg = (c / upw[where[i]]) % d;
      local += dg * lp;
      rest -= dg * upw[where[i]];
      lp *= d;
    }
    for (SpMat::InnerIterator it(op.M, static_cast<Eigen::Index>(local)); it; ++it) {
      std::uint64_t r = rest, rr = static_cast<std::uint64_t>(it.row());
      for (std::size_t i = 0; i < where.size(); ++i) {
        r += (rr % d) * upw[where[i]];
        rr /= d;
      }
      trip.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c), it.value());
    }
  }
  SpMat M(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

std::vector<int> edge_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> U = a;
  for (int e : b)
    if (std::find(U.begin(), U.end(), e) == U.end()) U.push_back(e);
  return U;
}

// sum over terms of coef * (M_{k-1} (x) ... (x) M_0), with M_i acting on edges[i].
struct TensorTerm {
  Complex coef;
  std::vector<CMatrix> factors;
};

LocalOp tensor_op(int d, const std::vector<int>& edges, const std::vector<TensorTerm>& terms) {
  const int k = static_cast<int>(edges.size());
  const std::uint64_t N = ipow(d, k);
  std::vector<Eigen::Triplet<Complex>> trip;
  struct Nz {
    int r, c;
    Complex v;
  };
  for (const auto& t : terms) {
    if (std::abs(t.coef) < kDrop) continue;
    std::vector<std::vector<Nz>> nz(k);
    bool empty = false;
    for (int i = 0; i < k; ++i) {
      for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r)
          if (std::abs(t.factors[i](r, c)) > kDrop) nz[i].push_back({r, c, t.factors[i](r, c)});
      if (nz[i].empty()) empty = true;
    }
    if (empty) continue;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      std::uint64_t r = 0, c = 0, p = 1;
      Complex v = t.coef;
      for (int i = 0; i < k; ++i) {
        const Nz& z = nz[i][idx[i]];
        r += z.r * p;
        c += z.c * p;
        v *= z.v;
        p *= d;
      }
      trip.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c), v);
      int i = 0;
      while (i < k && ++idx[i] == nz[i].size()) idx[i++] = 0;
      if (i == k) break;
    }
  }
  LocalOp op{d, edges, SpMat(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N))};
  op.M.setFromTriplets(trip.begin(), trip.end());
  op.M.prune(Complex(0), kDrop);
  return op;
}

// Iterated coproduct legs of a basis element: Delta^(k-1) e_a as (coef, leg indices).
// dual=true uses the coproduct of H*, i.e. the transpose of the product.
std::vector<std::pair<Complex, std::vector<int>>> legs(const HopfAlgebra& H, int a, int k, bool dual) {
  const int d = H.dim;
  std::vector<std::pair<Complex, std::vector<int>>> cur{{Complex(1), {a}}};
  for (int step = 1; step < k; ++step) {
    std::vector<std::pair<Complex, std::vector<int>>> next;
    for (const auto& [c, leg] : cur) {
      const int last = leg.back();
      for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e) {
          const Complex v = dual ? H.m(last, b, e) : H.dl(last, b, e);
          if (std::abs(v) < kDrop) continue;
          auto nl = leg;
          nl.back() = b;
          nl.push_back(e);
          next.emplace_back(c * v, std::move(nl));
        }
    }
    cur = std::move(next);
  }
  return cur;
}

// Face edge matrix for the functional f^j: along the clockwise direction a(g_1) g_2, against it
// a(S g_2) g_1.
CMatrix face_matrix(const HopfAlgebra& H, const CVector& a, bool along) {
  const int d = H.dim;
  CMatrix M = CMatrix::Zero(d, d);
  CVector aS = H.S.transpose() * a;  // aS_b = a(S e_b)
  for (int g = 0; g < d; ++g)
    for (int c = 0; c < d; ++c) {
      Complex s = 0;
      for (int b = 0; b < d; ++b) s += along ? a(b) * H.dl(g, b, c) : H.dl(g, c, b) * aS(b);
      M(c, g) = s;
    }
  return M;
}

CVector column(const CMatrix& M, int j) { return M.col(j); }

}  // namespace

HState hstate_basis(int dim, const std::vector<int>& cfg) {
  const auto pw = powers(dim, static_cast<int>(cfg.size()));
  std::uint64_t key = 0;
  for (std::size_t e = 0; e < cfg.size(); ++e) key += cfg[e] * pw[e];
  return HState{dim, static_cast<int>(cfg.size()), {{key, Complex(1)}}};
}

std::vector<HState> random_hstates(int dim, int num_edges, int count, int support, std::uint64_t seed) {
  const auto pw = powers(dim, num_edges);
  std::vector<HState> out;
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(seed + 7919 * i);
    std::uniform_int_distribution<int> pick(0, dim - 1);
    std::normal_distribution<double> gauss;
    HState s{dim, num_edges, {}};
    for (int k = 0; k < support; ++k) {
      std::uint64_t key = 0;
      for (int e = 0; e < num_edges; ++e) key += pick(rng) * pw[e];
      const double re = gauss(rng), im = gauss(rng);
      s.entries.emplace_back(key, Complex(re, im));
    }
    sort_merge(s.entries);
    out.push_back((1.0 / norm(s)) * s);
  }
  return out;
}

HState operator+(const HState& a, const HState& b) {
  return merge_with(a, b, [](Complex x, Complex y) { return x + y; });
}

HState operator-(const HState& a, const HState& b) {
  return merge_with(a, b, [](Complex x, Complex y) { return x - y; });
}

HState operator*(Complex s, const HState& a) {
  HState out = a;
  for (auto& e : out.entries) e.second *= s;
  if (s == Complex(0)) out.entries.clear();
  return out;
}

Complex inner(const HState& a, const HState& b) {
  Complex sum = 0;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() && j < b.entries.size()) {
    if (a.entries[i].first < b.entries[j].first)
      ++i;
    else if (b.entries[j].first < a.entries[i].first)
      ++j;
    else
      sum += std::conj(a.entries[i++].second) * b.entries[j++].second;
  }
  return sum;
}

double norm(const HState& a) { return std::sqrt(std::real(inner(a, a))); }

HState hstate_from_group(const SparseState& s) {
  const int d = s.group->order, n = s.num_edges();
  const auto pw = powers(d, n);
  HState out{d, n, {}};
  for (const auto& [k, a] : s.entries) {
    std::uint64_t key = 0;
    for (int e = 0; e < n; ++e) key += s.codec.get(k, e) * pw[e];
    out.entries.emplace_back(key, a);
  }
  sort_merge(out.entries);
  return out;
}

HState apply(const LocalOp& op, const HState& psi) {
  const int d = psi.dim, k = static_cast<int>(op.edges.size());
  if (op.dim != d) throw Error(ErrorKind::BadDimensions, "operator and state disagree on dim H");
  const auto pw = powers(d, psi.num_edges);
  if (k == 0) return op.M.nonZeros() ? op.M.coeff(0, 0) * psi : HState{d, psi.num_edges, {}};
  std::unordered_map<std::uint64_t, Complex> acc;
  acc.reserve(psi.entries.size() * 4);
  for (const auto& [key, amp] : psi.entries) {
    std::uint64_t local = 0, base = key, lp = 1;
    for (int i = 0; i < k; ++i) {
      const std::uint64_t dg = (key / pw[op.edges[i]]) % d;
      local += dg * lp;
      base -= dg * pw[op.edges[i]];
      lp *= d;
    }
    for (SpMat::InnerIterator it(op.M, static_cast<Eigen::Index>(local)); it; ++it) {
      std::uint64_t r = static_cast<std::uint64_t>(it.row()), out = base;
      for (int i = 0; i < k; ++i) {
        out += (r % d) * pw[op.edges[i]];
        r /= d;
      }
      acc[out] += amp * it.value();
    }
  }
  return from_map(d, psi.num_edges, acc);
}

LocalOp compose(const LocalOp& a, const LocalOp& b) {
  if (a.edges.empty()) return scale(a.M.nonZeros() ? a.M.coeff(0, 0) : Complex(0), b);
  if (b.edges.empty()) return scale(b.M.nonZeros() ? b.M.coeff(0, 0) : Complex(0), a);
  const auto U = edge_union(a.edges, b.edges);
  LocalOp out{a.dim, U, SpMat(embed(a, U) * embed(b, U))};
  out.M.prune(Complex(0), kDrop);
  return out;
}

LocalOp add(const LocalOp& a, const LocalOp& b) {
  if (a.edges.empty() && a.M.nonZeros() == 0) return b;
  if (b.edges.empty() && b.M.nonZeros() == 0) return a;
  if (a.edges.empty() || b.edges.empty())
    throw Error(ErrorKind::BadDimensions, "cannot add a scalar to a local operator");
  const auto U = edge_union(a.edges, b.edges);
  LocalOp out{a.dim, U, SpMat(embed(a, U) + embed(b, U))};
  out.M.prune(Complex(0), kDrop);
  return out;
}

LocalOp scale(Complex s, const LocalOp& a) {
  LocalOp out = a;
  out.M *= s;
  out.M.prune(Complex(0), kDrop);
  return out;
}

LocalOp local_zero(int dim) { return LocalOp{dim, {}, SpMat(1, 1)}; }

HSite hopf_site(const HopfAlgebra& H, const Lattice& L, const Site& s, SignRule rule) {
  const int d = H.dim;
  HSite out;
  out.site = s;
  out.sector = L.sector_of(s.v, s.p);
  if (out.sector < 0) throw Error(ErrorKind::NonAdjacentSite, "site vertex not on its face");
  const auto star = L.vertex_edges(s);
  const int k = static_cast<int>(star.size());
  std::vector<int> vedges;
  std::vector<int> power(k, 0);  // 0 out, +1 S, -1 S^-1
  for (int i = 0; i < k; ++i) {
    vedges.push_back(star[i].first);
    if (star[i].second) continue;
    int p = 1;
    if (rule == SignRule::Default) {
      if (i == 0) p = -1;
    } else {
      if (i == 0) p = 1;
      else if (i == k - 1) p = -1;
    }
    power[i] = p;
  }
  for (int b = 0; b < d; ++b) {
    std::vector<TensorTerm> terms;
    for (const auto& [c, leg] : legs(H, b, k, false)) {
      TensorTerm t{c, {}};
      for (int i = 0; i < k; ++i) {
        const CVector h = H.basis(leg[i]);
        if (power[i] == 0)
          t.factors.push_back(H.left_mult(h));
        else
          t.factors.push_back(H.right_mult(power[i] > 0 ? CVector(H.S * h) : CVector(H.Sinv * h)));
      }
      terms.push_back(std::move(t));
    }
    out.vert.push_back(tensor_op(d, vedges, terms));
  }
  const auto bd = L.face_edges(s);
  const int m = static_cast<int>(bd.size());
  std::vector<int> fedges;
  for (const auto& [e, sg] : bd) fedges.push_back(e);
  for (int a = 0; a < d; ++a) {
    std::vector<TensorTerm> terms;
    for (const auto& [c, leg] : legs(H, a, m, true)) {
      TensorTerm t{c, {}};
      for (int i = 0; i < m; ++i) t.factors.push_back(face_matrix(H, H.basis(leg[i]), bd[i].second > 0));
      terms.push_back(std::move(t));
    }
    out.face.push_back(tensor_op(d, fedges, terms));
  }
  return out;
}

HState act(const HSite& s, const CVector& x, const HState& psi) {
  const int d = static_cast<int>(s.vert.size());
  HState out{psi.dim, psi.num_edges, {}};
  for (int b = 0; b < d; ++b) {
    bool any = false;
    for (int a = 0; a < d; ++a) any = any || std::abs(x(a * d + b)) > kDrop;
    if (!any) continue;
    const HState V = apply(s.vert[b], psi);
    for (int a = 0; a < d; ++a)
      if (std::abs(x(a * d + b)) > kDrop) out = out + x(a * d + b) * apply(s.face[a], V);
  }
  return out;
}

HState act_basis(const HSite& s, int index, const HState& psi) {
  const int d = static_cast<int>(s.vert.size());
  return apply(s.face[index / d], apply(s.vert[index % d], psi));
}

LocalOp integral_vertex(const HopfAlgebra& H, const HSite& s) {
  LocalOp out = scale(Complex(0), s.vert[0]);
  for (int b = 0; b < H.dim; ++b) out = add(out, scale(H.lambda(b), s.vert[b]));
  return out;
}

LocalOp integral_face(const HopfAlgebra& H, const HSite& s) {
  LocalOp out = scale(Complex(0), s.face[0]);
  for (int a = 0; a < H.dim; ++a) out = add(out, scale(H.integral(a), s.face[a]));
  return out;
}

LocalOp direct_triangle_op(const HopfAlgebra& H, const Lattice& L, const Triangle& t, const CVector& a) {
  const TriangleGeom g = triangle_geometry(L, t);
  if (g.kind != TriangleKind::Direct) throw Error(ErrorKind::NotARibbon, "expected a direct triangle");
  std::vector<TensorTerm> terms{{Complex(1), {face_matrix(H, a, g.travel_sign > 0)}}};
  return tensor_op(H.dim, {g.edge}, terms);
}

LocalOp dual_triangle_op(const HopfAlgebra& H, const Lattice& L, const Triangle& t, const CVector& h, int sign) {
  const TriangleGeom g = triangle_geometry(L, t);
  if (g.kind != TriangleKind::Dual) throw Error(ErrorKind::NotARibbon, "expected a dual triangle");
  if (g.clockwise)
    throw Error(ErrorKind::UnsupportedOrientation, "dual triangles must rotate anticlockwise about the vertex");
  CMatrix M = g.outgoing ? H.left_mult(h) : H.right_mult(sign > 0 ? CVector(H.S * h) : CVector(H.Sinv * h));
  std::vector<TensorTerm> terms{{Complex(1), {M}}};
  return tensor_op(H.dim, {g.edge}, terms);
}

RibbonFamily triangle_family(const DoubleH& DH, const Lattice& L, const Triangle& t, int sign) {
  const HopfAlgebra& H = *DH.base;
  const int d = H.dim;
  RibbonFamily F(d * d);
  if (t.kind == TriangleKind::Direct) {
    std::vector<LocalOp> T;
    for (int j = 0; j < d; ++j) T.push_back(direct_triangle_op(H, L, t, H.basis(j)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) F[i * d + j] = scale(H.counit(i), T[j]);
  } else {
    for (int i = 0; i < d; ++i) {
      const LocalOp Li = dual_triangle_op(H, L, t, column(H.Sinv, i), sign);
      for (int j = 0; j < d; ++j) F[i * d + j] = scale(H.unit(j), Li);
    }
  }
  return F;
}

RibbonFamily convolve(const DoubleH& DH, const RibbonFamily& first, const RibbonFamily& second) {
  const int n = DH.D.dim;
  std::map<std::pair<int, int>, LocalOp> cache;
  RibbonFamily out(n);
  for (int phi = 0; phi < n; ++phi) {
    LocalOp acc;
    bool have = false;
    for (int al = 0; al < n; ++al)
      for (int ga = 0; ga < n; ++ga) {
        const Complex c = DH.D.m(phi, al, ga);
        if (std::abs(c) < kDrop) continue;
        auto it = cache.find({al, ga});
        if (it == cache.end()) it = cache.emplace(std::make_pair(al, ga), compose(second[ga], first[al])).first;
        acc = have ? add(acc, scale(c, it->second)) : scale(c, it->second);
        have = true;
      }
    out[phi] = have ? acc : scale(Complex(0), compose(second[0], first[0]));
  }
  return out;
}

RibbonFamily ribbon_family(const DoubleH& DH, const Lattice& L, const Ribbon& r, int sign) {
  if (r.triangles.empty()) throw Error(ErrorKind::NotARibbon, "empty ribbon");
  if (!is_right_handed(L, r))
    throw Error(ErrorKind::UnsupportedOrientation, "ribbon must turn clockwise on faces and anticlockwise at vertices");
  RibbonFamily F = triangle_family(DH, L, r.triangles[0], sign);
  for (std::size_t i = 1; i < r.triangles.size(); ++i)
    F = convolve(DH, F, triangle_family(DH, L, r.triangles[i], sign));
  return F;
}

namespace {

double max_abs_diff(const HState& a, const HState& b) {
  double m = 0;
  for (const auto& e : (a - b).entries) m = std::max(m, std::abs(e.second));
  return m;
}

// Accumulates sums of states without re-merging at every step.
struct Acc {
  int dim, ne;
  std::unordered_map<std::uint64_t, Complex> map;
  void add(Complex c, const HState& s) {
    if (std::abs(c) < kDrop) return;
    for (const auto& [k, a] : s.entries) map[k] += c * a;
  }
  HState get() const { return from_map(dim, ne, map); }
};

}  // namespace

BimodDeviation check_dbimod(const DoubleH& DH, const RibbonFamily& F, const HSite& s0, const HSite& s1,
                            const std::vector<HState>& states) {
  const HopfAlgebra& D = DH.D;
  const int n = D.dim;
  BimodDeviation dev;
  for (const HState& psi : states) {
    // e_j |>_{s0} psi, e_j |>_{s1} psi and F^g psi
    std::vector<HState> at0(n), at1(n), Fpsi(n);
    for (int j = 0; j < n; ++j) {
      at0[j] = act_basis(s0, j, psi);
      at1[j] = act_basis(s1, j, psi);
      Fpsi[j] = apply(F[j], psi);
    }
    std::vector<std::vector<HState>> F_at0(n), at1_F(n);
    for (int g = 0; g < n; ++g)
      for (int j = 0; j < n; ++j) F_at0[g].push_back(apply(F[g], at0[j]));
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a) at1_F[i].push_back(act_basis(s1, i, Fpsi[a]));
    for (int dd = 0; dd < n; ++dd)
      for (int phi = 0; phi < n; ++phi) {
        // left: d |>_{s0} (F^phi psi) = sum Delta(d)_{ij} m(phi, al, ga) S(al, i) F^ga (e_j |> psi)
        const HState lhs = act_basis(s0, dd, Fpsi[phi]);
        Acc rhs{psi.dim, psi.num_edges, {}};
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const Complex cij = D.dl(dd, i, j);
            if (std::abs(cij) < kDrop) continue;
            for (int al = 0; al < n; ++al) {
              const Complex sa = D.S(al, i);
              if (std::abs(sa) < kDrop) continue;
              for (int ga = 0; ga < n; ++ga) rhs.add(cij * sa * D.m(phi, al, ga), F_at0[ga][j]);
            }
          }
        dev.left = std::max(dev.left, max_abs_diff(lhs, rhs.get()));
        // right: F^phi (d |>_{s1} psi) = sum Delta(d)_{ij} m(phi, al, ga) S(ga, j) e_i |>_{s1} F^al psi
        const HState lhs2 = apply(F[phi], at1[dd]);
        Acc rhs2{psi.dim, psi.num_edges, {}};
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const Complex cij = D.dl(dd, i, j);
            if (std::abs(cij) < kDrop) continue;
            for (int ga = 0; ga < n; ++ga) {
              const Complex sg = D.S(ga, j);
              if (std::abs(sg) < kDrop) continue;
              for (int al = 0; al < n; ++al) rhs2.add(cij * sg * D.m(phi, al, ga), at1_F[i][al]);
            }
          }
        dev.right = std::max(dev.right, max_abs_diff(lhs2, rhs2.get()));
      }
  }
  return dev;
}

double site_rep_deviation(const DoubleH& DH, const HSite& s, const std::vector<HState>& states) {
  const HopfAlgebra& D = DH.D;
  const int n = D.dim;
  double dev = 0;
  for (const HState& psi : states) {
    dev = std::max(dev, max_abs_diff(act(s, D.unit, psi), psi));
    std::vector<HState> Y(n);
    for (int y = 0; y < n; ++y) Y[y] = act_basis(s, y, psi);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        Acc rhs{psi.dim, psi.num_edges, {}};
        for (int z = 0; z < n; ++z) rhs.add(D.m(z, x, y), Y[z]);
        dev = std::max(dev, max_abs_diff(act_basis(s, x, Y[y]), rhs.get()));
      }
  }
  return dev;
}

namespace {

HState project_vacuum(const HopfAlgebra& H, const Lattice& L, HState psi) {
  for (int v = 0; v < L.num_vertices(); ++v) {
    int p = -1;
    for (int k = 0; k < 4 && p < 0; ++k) p = L.sector_face[v][k];
    psi = apply(integral_vertex(H, hopf_site(H, L, Site{v, p})), psi);
  }
  for (int p = 0; p < L.num_faces(); ++p)
    psi = apply(integral_face(H, hopf_site(H, L, Site{L.faces[p].corner[0], p})), psi);
  return psi;
}

}  // namespace

HState hopf_vacuum(const HopfAlgebra& H, const Lattice& L) {
  const int d = H.dim, ne = L.num_edges();
  const auto pw = powers(d, ne);
  // Start from one unit-supported configuration; the full unit product is used only if that is
  // annihilated.
  int first = 0;
  while (first < d && std::abs(H.unit(first)) < kDrop) ++first;
  HState psi = project_vacuum(H, L, hstate_basis(d, std::vector<int>(ne, first)));
  if (norm(psi) > 1e-12) return (1.0 / norm(psi)) * psi;
  std::vector<std::pair<int, Complex>> u;
  for (int a = 0; a < d; ++a)
    if (std::abs(H.unit(a)) > kDrop) u.emplace_back(a, H.unit(a));
  double total = 1;
  for (int e = 0; e < ne; ++e) total *= u.size();
  if (total > double(1u << 22)) throw Error(ErrorKind::SupportBudgetExceeded, "unit configuration too large");
  psi = HState{d, ne, {{0, Complex(1)}}};
  for (int e = 0; e < ne; ++e) {
    std::vector<std::pair<std::uint64_t, Complex>> next;
    for (const auto& [k, a] : psi.entries)
      for (const auto& [b, c] : u) next.emplace_back(k + b * pw[e], a * c);
    psi.entries = std::move(next);
  }
  sort_merge(psi.entries);
  psi = project_vacuum(H, L, psi);
  const double nn = norm(psi);
  if (nn < 1e-12) throw Error(ErrorKind::ToleranceExceeded, "vacuum projector annihilated the unit state");
  return (1.0 / nn) * psi;
}

namespace {

using Op = std::function<HState(const HState&)>;

bool involutive(const HopfAlgebra& H) {
  return (H.S * H.S - CMatrix::Identity(H.dim, H.dim)).cwiseAbs().maxCoeff() < 1e-12;
}

Complex eps_lambda(const HopfAlgebra& H) { return (H.counit.transpose() * H.lambda)(0); }
Complex int_one(const HopfAlgebra& H) { return (H.integral.transpose() * H.unit)(0); }

// Canonical left and right actions of D(H) on H and on H*, as matrices per basis element
// f^a (x) e_b of D(H); column x is the image of basis vector x.
struct Actions {
  std::vector<CMatrix> Hl, Hr, Sl, Sr;
};

Actions canonical_actions(const HopfAlgebra& H) {
  const int d = H.dim;
  // product of H*: (f^x f^y)(e_z) = f^x(e_z1) f^y(e_z2)
  auto mul_star = [&](const CVector& x, const CVector& y) {
    CVector z = CVector::Zero(d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const Complex c = x(a) * y(b);
        if (std::abs(c) < kDrop) continue;
        for (int w = 0; w < d; ++w) z(w) += c * H.dl(w, a, b);
      }
    return z;
  };
  auto sinv_star = [&](const CVector& x) { return CVector(H.Sinv.transpose() * x); };
  Actions R;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      CMatrix hl(d, d), hr(d, d), sl(d, d), sr(d, d);
      for (int x = 0; x < d; ++x) {
        // e_b |> g = b_1 g S b_2, then f^a |> g = a(g_1) g_2
        CVector y = CVector::Zero(d);
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q)
            if (std::abs(H.dl(b, p, q)) > kDrop)
              y += H.dl(b, p, q) * H.product(H.product(H.basis(p), H.basis(x)), H.S.col(q));
        CVector z = CVector::Zero(d);
        for (int g = 0; g < d; ++g)
          for (int q = 0; q < d; ++q) z(q) += y(g) * H.dl(g, a, q);
        hl.col(x) = z;
        // g <| f^a = g_1 a(g_2), then g <| e_b = (S b_1) g b_2
        y = CVector::Zero(d);
        for (int p = 0; p < d; ++p) y(p) += H.dl(x, p, a);
        z = CVector::Zero(d);
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q)
            if (std::abs(H.dl(b, p, q)) > kDrop) z += H.dl(b, p, q) * H.product(H.product(H.S.col(p), y), H.basis(q));
        hr.col(x) = z;
        // e_b |> beta = <S e_b, beta_1> beta_2, then f^a |> beta = (S^-1 a_2) beta a_1
        y = CVector::Zero(d);
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q) y(q) += H.m(x, p, q) * H.S(p, b);
        z = CVector::Zero(d);
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q)
            if (std::abs(H.m(a, p, q)) > kDrop)
              z += H.m(a, p, q) * mul_star(mul_star(sinv_star(H.basis(q)), y), H.basis(p));
        sl.col(x) = z;
        // beta <| f^a = a_2 beta S^-1 a_1, then beta <| e_b = beta_1 <S e_b, beta_2>
        y = CVector::Zero(d);
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q)
            if (std::abs(H.m(a, p, q)) > kDrop)
              y += H.m(a, p, q) * mul_star(mul_star(H.basis(q), H.basis(x)), sinv_star(H.basis(p)));
        z = CVector::Zero(d);
        for (int w = 0; w < d; ++w)
          for (int p = 0; p < d; ++p)
            for (int q = 0; q < d; ++q) z(p) += y(w) * H.m(w, p, q) * H.S(q, b);
        sr.col(x) = z;
      }
      R.Hl.push_back(hl);
      R.Hr.push_back(hr);
      R.Sl.push_back(sl);
      R.Sr.push_back(sr);
    }
  return R;
}

// (d.L)(psi) = d_1 |>_{s0} L(S d_2 |>_{s0} psi)
HState left_dot(const HopfAlgebra& D, const CVector& x, const Op& L, const HSite& s, const HState& psi) {
  const int n = D.dim;
  Acc out{psi.dim, psi.num_edges, {}};
  for (int k = 0; k < n; ++k) {
    if (std::abs(x(k)) < kDrop) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Complex c = x(k) * D.dl(k, i, j);
        if (std::abs(c) < kDrop) continue;
        out.add(c, act_basis(s, i, L(act(s, D.S.col(j), psi))));
      }
  }
  return out.get();
}

// (L.d)(psi) = S d_1 |>_{s1} L(d_2 |>_{s1} psi)
HState right_dot(const HopfAlgebra& D, const CVector& x, const Op& L, const HSite& s, const HState& psi) {
  const int n = D.dim;
  Acc out{psi.dim, psi.num_edges, {}};
  for (int k = 0; k < n; ++k) {
    if (std::abs(x(k)) < kDrop) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Complex c = x(k) * D.dl(k, i, j);
        if (std::abs(c) < kDrop) continue;
        out.add(c, act(s, D.S.col(i), L(act_basis(s, j, psi))));
      }
  }
  return out.get();
}

Op op_of(const LocalOp& L) {
  return [&L](const HState& psi) { return apply(L, psi); };
}

BimodDeviation module_map_deviation(const DoubleH& DH, const std::vector<LocalOp>& fam, const std::vector<CMatrix>& rl,
                                    const std::vector<CMatrix>& rr, const HSite& s0, const HSite& s1,
                                    const std::vector<HState>& states) {
  const HopfAlgebra& D = DH.D;
  const int n = D.dim, d = static_cast<int>(fam.size());
  BimodDeviation dev;
  for (const HState& psi : states) {
    std::vector<HState> Fpsi;
    for (const auto& op : fam) Fpsi.push_back(apply(op, psi));
    for (int dd = 0; dd < n; ++dd) {
      const CVector e = D.basis(dd);
      for (int x = 0; x < d; ++x) {
        Acc rl_sum{psi.dim, psi.num_edges, {}}, rr_sum{psi.dim, psi.num_edges, {}};
        for (int y = 0; y < d; ++y) {
          rl_sum.add(rl[dd](y, x), Fpsi[y]);
          rr_sum.add(rr[dd](y, x), Fpsi[y]);
        }
        dev.left = std::max(dev.left, max_abs_diff(left_dot(D, e, op_of(fam[x]), s0, psi), rl_sum.get()));
        dev.right = std::max(dev.right, max_abs_diff(right_dot(D, e, op_of(fam[x]), s1, psi), rr_sum.get()));
      }
    }
  }
  return dev;
}

double op_diff(const Op& a, const Op& b, const std::vector<HState>& states) {
  double m = 0;
  for (const auto& psi : states) m = std::max(m, max_abs_diff(a(psi), b(psi)));
  return m;
}

int state_rank(const std::vector<HState>& v) {
  const int n = static_cast<int>(v.size());
  CMatrix G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = inner(v[i], v[j]);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(G);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  int r = 0;
  for (int i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > 1e-8 * std::max(top, 1e-300)) ++r;
  return top < 1e-14 ? 0 : r;
}

std::string case_name(int sector) { return std::string("case (") + char('a' + sector) + ")"; }

const int kPx[4] = {1, 0, 0, 1}, kPy[4] = {1, 1, 0, 0};

// Sites around the interior vertex (1,1) of the 4x4 patch, one per sector.
Site corner_site(const Lattice& L, int vx, int vy, int sector) {
  return L.site(vx, vy, vx - 1 + kPx[sector], vy - 1 + kPy[sector]);
}

struct NamedRibbon {
  std::string name;
  Ribbon r;
};

// Right-handed strongly open ribbons on the 4x4 patch.
std::vector<NamedRibbon> sample_ribbons(const Lattice& L) {
  auto S = [&](int vx, int vy, int px, int py) { return L.site(vx, vy, px, py); };
  return {
      {"dual then direct", ribbon_from_sites(L, {S(1, 1, 0, 0), S(1, 1, 1, 0), S(2, 1, 1, 0)})},
      {"direct then dual", ribbon_from_sites(L, {S(1, 2, 0, 1), S(1, 1, 0, 1), S(1, 1, 0, 0)})},
      {"direct dual direct",
       ribbon_from_sites(L, {S(1, 2, 0, 1), S(1, 1, 0, 1), S(1, 1, 0, 0), S(1, 0, 0, 0)})},
      {"direct direct dual direct",
       ribbon_from_sites(L, {S(0, 1, 0, 0), S(1, 1, 0, 0), S(1, 1, 1, 0), S(2, 1, 1, 0)})},
  };
}

}  // namespace

BimodDeviation ribbon_module_deviation(const DoubleH& DH, const Lattice& L, const Ribbon& r, int sign,
                                       const std::vector<HState>& states) {
  if (classify_ribbon(L, r) != RibbonClass::StronglyOpen)
    throw Error(ErrorKind::NotStronglyOpen, "ribbon module check needs a strongly open ribbon");
  const HopfAlgebra& H = *DH.base;
  const RibbonFamily F = ribbon_family(DH, L, r, sign);
  return check_dbimod(DH, F, hopf_site(H, L, r.start()), hopf_site(H, L, r.end()), states);
}

BimodDeviation triangle_module_deviation(const DoubleH& DH, const Lattice& L, const Triangle& t, int sign,
                                         const std::vector<HState>& states) {
  const HopfAlgebra& H = *DH.base;
  const Actions R = canonical_actions(H);
  const HSite s0 = hopf_site(H, L, t.from), s1 = hopf_site(H, L, t.to);
  std::vector<LocalOp> fam;
  for (int c = 0; c < H.dim; ++c)
    fam.push_back(t.kind == TriangleKind::Dual ? dual_triangle_op(H, L, t, H.basis(c), sign)
                                               : direct_triangle_op(H, L, t, H.basis(c)));
  return t.kind == TriangleKind::Dual ? module_map_deviation(DH, fam, R.Hl, R.Hr, s0, s1, states)
                                      : module_map_deviation(DH, fam, R.Sl, R.Sr, s0, s1, states);
}

Report check_double_site_action(const HopfAlgebra& H, std::uint64_t seed) {
  Report rep;
  rep.command = "double-site-action";
  const Lattice L = build_lattice(Topology::Plane, 4, 4);
  const DoubleH DH = drinfeld_double(H);
  const auto states = random_hstates(H.dim, L.num_edges(), 20, 4, seed);
  for (int k = 0; k < 4; ++k) {
    const HSite s = hopf_site(H, L, corner_site(L, 1, 1, k));
    rep.add(H.name + " site representation " + case_name(k), site_rep_deviation(DH, s, states), 1e-10,
            states.size());
  }
  const std::vector<HState> few(states.begin(), states.begin() + 4);
  double flip = 0;
  for (int k = 0; k < 4; ++k)
    flip = std::max(flip, site_rep_deviation(DH, hopf_site(H, L, corner_site(L, 1, 1, k), SignRule::Flipped), few));
  if (involutive(H)) {
    rep.add(H.name + " flipped sign still a representation (S^2 = id)", flip, 1e-10);
  } else {
    rep.add_bool(H.name + " flipped sign breaks the representation", flip > 0.1).max_deviation = flip;
  }
  rep.data["flip_deviation"] = flip;
  return rep;
}

Report check_integral_ops(const HopfAlgebra& H, std::uint64_t seed) {
  Report rep;
  rep.command = "integral-ops";
  const Lattice L = build_lattice(Topology::Plane, 4, 4);
  const auto states = random_hstates(H.dim, L.num_edges(), 20, 4, seed);
  const Complex eL = eps_lambda(H), i1 = int_one(H);
  rep.data["eps_lambda"] = {eL.real(), eL.imag()};
  rep.data["int_one"] = {i1.real(), i1.imag()};
  std::vector<LocalOp> A, B, A2, B2;
  for (int k = 0; k < 4; ++k) {
    const HSite s = hopf_site(H, L, corner_site(L, 1, 1, k));
    A.push_back(integral_vertex(H, s));
    B.push_back(integral_face(H, s));
  }
  // sites one step to the right: vertex (2,1), and the faces of (1,1) seen from their other corners
  for (int k = 0; k < 4; ++k) A2.push_back(integral_vertex(H, hopf_site(H, L, corner_site(L, 2, 1, k))));
  for (int c = 0; c < 4; ++c) {
    const int p = L.face(1, 1);
    B2.push_back(integral_face(H, hopf_site(H, L, Site{L.faces[p].corner[c], p})));
  }
  const int q = L.face(0, 1);
  const LocalOp Bq = integral_face(H, hopf_site(H, L, Site{L.faces[q].corner[0], q}));
  double sqA = 0, sqB = 0, cAA = 0, cBB = 0;
  for (int k = 0; k < 4; ++k) {
    const Op a = op_of(A[k]), b = op_of(B[k]);
    sqA = std::max(sqA, op_diff([&](const HState& x) { return apply(A[k], apply(A[k], x)); },
                                [&](const HState& x) { return eL * a(x); }, states));
    sqB = std::max(sqB, op_diff([&](const HState& x) { return apply(B[k], apply(B[k], x)); },
                                [&](const HState& x) { return i1 * b(x); }, states));
    for (int j = 0; j < 4; ++j)
      cAA = std::max(cAA, op_diff([&](const HState& x) { return apply(A[k], apply(A2[j], x)); },
                                  [&](const HState& x) { return apply(A2[j], apply(A[k], x)); }, states));
    cBB = std::max(cBB, op_diff([&](const HState& x) { return apply(B2[k], apply(Bq, x)); },
                                [&](const HState& x) { return apply(Bq, apply(B2[k], x)); }, states));
  }
  rep.add(H.name + " A^2 = eps(Lambda) A", sqA, 1e-10);
  rep.add(H.name + " B^2 = (int 1) B", sqB, 1e-10);
  rep.add(H.name + " A(v,p) commutes with A(v',p')", cAA, 1e-10);
  rep.add(H.name + " B(v,p) commutes with B(v',p')", cBB, 1e-10);
  if (H.normalized) {
    double sa = 0, sb = 0, cab = 0;
    for (int k = 1; k < 4; ++k) {
      sa = std::max(sa, op_diff(op_of(A[k]), op_of(A[0]), states));
      sb = std::max(sb, op_diff(op_of(B2[k]), op_of(B2[0]), states));
    }
    for (int k = 0; k < 4; ++k)
      cab = std::max(cab, op_diff([&](const HState& x) { return apply(A[k], apply(B[k], x)); },
                                  [&](const HState& x) { return apply(B[k], apply(A[k], x)); }, states));
    rep.add(H.name + " A(v,p) independent of p", sa, 1e-10);
    rep.add(H.name + " B(v,p) independent of v", sb, 1e-10);
    rep.add(H.name + " [A(v,p), B(v,p)] = 0", cab, 1e-10);
  }
  // H_K on a single face: prod over its four sites of A B, the first site leftmost
  const Lattice K = build_lattice(Topology::Plane, 2, 2);
  std::vector<LocalOp> chain;
  for (int c = 0; c < 4; ++c) {
    const HSite s = hopf_site(H, K, Site{K.faces[0].corner[c], 0});
    chain.push_back(integral_vertex(H, s));
    chain.push_back(integral_face(H, s));
  }
  auto HK = [&](const HState& x) {
    HState y = x;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) y = apply(*it, y);
    return y;
  };
  const auto kstates = random_hstates(H.dim, K.num_edges(), 20, 4, seed + 1);
  const double hk = op_diff([&](const HState& x) { return apply(chain[0], HK(x)); },
                            [&](const HState& x) { return eL * HK(x); }, kstates);
  rep.add(H.name + " A(v1,p1) H_K = eps(Lambda) H_K", hk, 1e-10);
  return rep;
}

Report check_triangle_covariance(const HopfAlgebra& H, std::uint64_t seed) {
  Report rep;
  rep.command = "triangle-covariance";
  const Lattice L = build_lattice(Topology::Plane, 4, 4);
  const DoubleH DH = drinfeld_double(H);
  const auto states = random_hstates(H.dim, L.num_edges(), 20, 3, seed);
  const bool inv = involutive(H);
  double other_min = 1e300;
  for (int k = 0; k < 4; ++k) {
    const Triangle t = make_triangle(L, corner_site(L, 1, 1, k), corner_site(L, 1, 1, (k + 1) % 4));
    const bool out = triangle_geometry(L, t).outgoing;
    const BimodDeviation m = triangle_module_deviation(DH, L, t, -1, states);
    const BimodDeviation p = triangle_module_deviation(DH, L, t, +1, states);
    const std::string tag = " dual triangle " + case_name(k) + "->" + case_name((k + 1) % 4) +
                            (out ? " outgoing arrow" : " incoming arrow");
    rep.add(H.name + " (-)L left module map," + tag, m.left, 1e-10);
    rep.add(H.name + " (+)L right module map," + tag, p.right, 1e-10);
    if (out || inv) {
      rep.add(H.name + " (-)L right module map," + tag, m.right, 1e-10);
      rep.add(H.name + " (+)L left module map," + tag, p.left, 1e-10);
    } else {
      rep.add_bool(H.name + " (-)L not a right module map," + tag, m.right > 0.1).max_deviation = m.right;
      rep.add_bool(H.name + " (+)L not a left module map," + tag, p.left > 0.1).max_deviation = p.left;
      other_min = std::min({other_min, m.right, p.left});
    }
  }
  const int f = L.face(1, 1);
  double tl = 0, tr = 0;
  for (int c = 0; c < 4; ++c) {
    const Site a{L.faces[f].corner[c], f}, b{L.faces[f].corner[(c + 1) % 4], f};
    const BimodDeviation d = triangle_module_deviation(DH, L, make_triangle(L, a, b), 1, states);
    tl = std::max(tl, d.left);
    tr = std::max(tr, d.right);
  }
  rep.add(H.name + " T left module map", tl, 1e-10);
  rep.add(H.name + " T right module map", tr, 1e-10);
  if (other_min < 1e300) rep.data["wrong_side_min_deviation"] = other_min;
  return rep;
}

Report check_ribbon_module(const HopfAlgebra& H, std::uint64_t seed) {
  Report rep;
  rep.command = "ribbon-module";
  const Lattice L = build_lattice(Topology::Plane, 4, 4);
  const DoubleH DH = drinfeld_double(H);
  const auto states = random_hstates(H.dim, L.num_edges(), 20, 3, seed);
  const bool inv = involutive(H);
  for (const auto& [name, r] : sample_ribbons(L)) {
    const BimodDeviation m = ribbon_module_deviation(DH, L, r, -1, states);
    if (inv) {
      rep.add(H.name + " " + name + " ribbon: left and right module map", std::max(m.left, m.right), 1e-10);
    } else {
      const BimodDeviation p = ribbon_module_deviation(DH, L, r, +1, states);
      rep.add(H.name + " " + name + " ribbon: left module map with (-)L", m.left, 1e-10);
      rep.add(H.name + " " + name + " ribbon: right module map with (+)L", p.right, 1e-10);
      rep.data["one_sided"][name] = {{"minus_right", m.right}, {"plus_left", p.left}};
    }
  }
  // cocommutative integrals: commutation with A(t), B(t) away from the ends
  const int d = H.dim;
  const CMatrix dL = H.coproduct(H.lambda);
  bool cocom = (dL - dL.transpose()).cwiseAbs().maxCoeff() < 1e-12;
  for (int a = 0; a < d && cocom; ++a)
    for (int b = 0; b < d; ++b) {
      Complex ab = 0, ba = 0;
      for (int c = 0; c < d; ++c) {
        ab += H.integral(c) * H.m(c, a, b);
        ba += H.integral(c) * H.m(c, b, a);
      }
      if (std::abs(ab - ba) > 1e-12) cocom = false;
    }
  rep.data["integrals_cocommutative"] = cocom;
  if (cocom) {
    const Ribbon r = sample_ribbons(L)[2].r;
    const RibbonFamily F = ribbon_family(DH, L, r, -1);
    const std::vector<HState> few(states.begin(), states.begin() + 5);
    double dev = 0;
    for (int v = 0; v < L.num_vertices(); ++v)
      for (int k = 0; k < 4; ++k) {
        const int p = L.sector_face[v][k];
        if (p < 0) continue;
        const Site t{v, p};
        if (!sites_disjoint(t, r.start()) || !sites_disjoint(t, r.end())) continue;
        const HSite ht = hopf_site(H, L, t);
        const LocalOp A = integral_vertex(H, ht), B = integral_face(H, ht);
        for (const auto& f : F)
          for (const LocalOp* X : {&A, &B})
            dev = std::max(dev, op_diff([&](const HState& x) { return apply(f, apply(*X, x)); },
                                        [&](const HState& x) { return apply(*X, apply(f, x)); }, few));
      }
    rep.add(H.name + " ribbon commutes with A(t), B(t) at disjoint sites", dev, 1e-10);
  }
  auto S = [&](int vx, int vy, int px, int py) { return L.site(vx, vy, px, py); };
  const Ribbon loop = ribbon_from_sites(
      L, {S(2, 1, 1, 0), S(2, 0, 1, 0), S(1, 0, 1, 0), S(1, 1, 1, 0), S(2, 1, 1, 0), S(2, 1, 2, 0), S(3, 1, 2, 0)});
  bool refused = false;
  try {
    ribbon_module_deviation(DH, L, loop, -1, {states[0]});
  } catch (const Error& e) {
    refused = e.kind() == ErrorKind::NotStronglyOpen;
  }
  rep.add_bool(H.name + " open but not strongly open ribbon refused", refused);
  return rep;
}

Report check_group_reduction(const GroupTable& G, std::uint64_t seed) {
  Report rep;
  rep.command = "group-reduction";
  const Lattice L = build_lattice(Topology::Plane, 3, 3);
  const HopfAlgebra H = load_hopf(hopf_group(G));
  const DoubleH DH = drinfeld_double(H);
  const int n = G.order;
  const auto states = random_states(G, L, 10, 4, seed);
  std::vector<HState> hs;
  for (const auto& s : states) hs.push_back(hstate_from_group(s));
  double site = 0;
  for (int k = 0; k < 4; ++k) {
    const Site st = corner_site(L, 1, 1, k);
    const HSite h = hopf_site(H, L, st);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const OpSum op = site_action(G, L, st, a, b);
        for (std::size_t i = 0; i < states.size(); ++i)
          site = std::max(site, max_abs_diff(act_basis(h, a * n + b, hs[i]), hstate_from_group(apply(op, states[i]))));
      }
  }
  rep.add(H.name + " site action equals the D(G) site action", site, 1e-10);
  const auto& fx = fixture("s3_qubit");
  double rib = 0;
  for (const char* name : {"xi", "xi_pp"}) {
    const Ribbon r = ribbon_from_json(L, fx[name]);
    const RibbonFamily F = ribbon_family(DH, L, r, -1);
    for (int h = 0; h < n; ++h)
      for (int g = 0; g < n; ++g) {
        const OpSum op = ribbon_op(G, L, r, G.inv[h], g);
        for (std::size_t i = 0; i < states.size(); ++i)
          rib = std::max(rib, max_abs_diff(apply(F[h * n + g], hs[i]), hstate_from_group(apply(op, states[i]))));
      }
  }
  rep.add(H.name + " F~^{h (x) delta_g} = F^{h^-1,g}", rib, 1e-10);
  return rep;
}

Report check_fbimod(const HopfAlgebra& H, std::uint64_t seed) {
  if (!H.normalized) throw Error(ErrorKind::NoIntegral, "bimodule checks need normalized integrals");
  Report rep;
  rep.command = "fbimod";
  const Lattice L = build_lattice(Topology::Plane, 3, 3);
  const DoubleH DH = drinfeld_double(H);
  const HopfAlgebra& D = DH.D;
  const int n = D.dim;
  const Ribbon r = ribbon_from_json(L, fixture("s3_qubit")["xi_pp"]);
  const RibbonFamily F = ribbon_family(DH, L, r, -1);
  const HSite s0 = hopf_site(H, L, r.start()), s1 = hopf_site(H, L, r.end());
  const auto states = random_hstates(H.dim, L.num_edges(), 5, 3, seed);
  std::vector<CVector> sinv(n);
  for (int a = 0; a < n; ++a) sinv[a] = D.Sinv.col(a);
  std::vector<Op> Fo;
  for (const auto& f : F) Fo.push_back(op_of(f));

  double left = 0, right = 0, conv = 0, centre = 0;
  for (const HState& psi : states) {
    std::vector<HState> Fpsi;
    for (const auto& f : F) Fpsi.push_back(apply(f, psi));
    for (int dd = 0; dd < n; ++dd) {
      const CVector e = D.basis(dd);
      // d F = F.d, compared on each D component
      std::vector<HState> Fd, dF;
      for (int a = 0; a < n; ++a) {
        Fd.push_back(right_dot(D, e, Fo[a], s1, psi));
        dF.push_back(left_dot(D, e, Fo[a], s0, psi));
      }
      for (int b = 0; b < n; ++b) {
        Acc l1{psi.dim, psi.num_edges, {}}, r1 = l1, l2 = l1, r2 = l1;
        for (int a = 0; a < n; ++a) {
          l1.add(D.product(e, sinv[a])(b), Fpsi[a]);
          r1.add(sinv[a](b), Fd[a]);
          l2.add(sinv[a](b), dF[a]);
          r2.add(D.product(sinv[a], e)(b), Fpsi[a]);
        }
        left = std::max(left, max_abs_diff(l1.get(), r1.get()));
        right = std::max(right, max_abs_diff(l2.get(), r2.get()));
      }
    }
    // convolution against the tensor product algebra, splitting off the last triangle
    const Ribbon first = ribbon_from_triangles(L, {r.triangles.begin(), r.triangles.end() - 1});
    const Ribbon last = ribbon_from_triangles(L, {r.triangles.back()});
    const RibbonFamily F1 = ribbon_family(DH, L, first, -1), F2 = ribbon_family(DH, L, last, -1);
    std::vector<HState> F1psi;
    for (const auto& f : F1) F1psi.push_back(apply(f, psi));
    for (int b = 0; b < n; ++b) {
      Acc lhs{psi.dim, psi.num_edges, {}}, rhs = lhs;
      for (int a = 0; a < n; ++a) lhs.add(sinv[a](b), Fpsi[a]);
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
          const Complex w = D.product(sinv[a], sinv[c])(b);
          if (std::abs(w) > kDrop) rhs.add(w, apply(F2[a], F1psi[c]));
        }
      conv = std::max(conv, max_abs_diff(lhs.get(), rhs.get()));
    }
  }
  // bimodule centre: f = sum S^-1 e_a . F^a and g = sum F^a . S^-1 e_a
  const Op f = [&](const HState& x) {
    Acc out{x.dim, x.num_edges, {}};
    for (int a = 0; a < n; ++a) out.add(1.0, left_dot(D, sinv[a], Fo[a], s0, x));
    return out.get();
  };
  const Op g = [&](const HState& x) {
    Acc out{x.dim, x.num_edges, {}};
    for (int a = 0; a < n; ++a) out.add(1.0, right_dot(D, sinv[a], Fo[a], s1, x));
    return out.get();
  };
  const std::vector<HState> two(states.begin(), states.begin() + 2);
  for (int dd = 0; dd < n; ++dd) {
    const CVector e = D.basis(dd);
    centre = std::max(centre, op_diff([&](const HState& x) { return left_dot(D, e, f, s0, x); },
                                      [&](const HState& x) { return right_dot(D, e, f, s1, x); }, two));
    centre = std::max(centre, op_diff([&](const HState& x) { return right_dot(D, e, g, s1, x); },
                                      [&](const HState& x) { return left_dot(D, e, g, s0, x); }, two));
  }
  rep.add(H.name + " d F = F.d", left, 1e-10);
  rep.add(H.name + " d.F21 = F21 d", right, 1e-10);
  rep.add(H.name + " convolution equals the tensor product algebra product", conv, 1e-10);
  rep.add(H.name + " f and g lie in the bimodule centre", centre, 1e-10);

  const HState vac = hopf_vacuum(H, L);
  std::vector<HState> Fv;
  for (const auto& op : F) Fv.push_back(apply(op, vac));
  double c0 = 0, c1 = 0;
  for (int dd = 0; dd < n; ++dd)
    for (int phi = 0; phi < n; ++phi) {
      Acc a0{vac.dim, vac.num_edges, {}}, a1 = a0;
      for (int al = 0; al < n; ++al)
        for (int ga = 0; ga < n; ++ga) {
          const Complex m = D.m(phi, al, ga);
          if (std::abs(m) < kDrop) continue;
          a0.add(m * D.S(al, dd), Fv[ga]);
          a1.add(m * D.S(ga, dd), Fv[al]);
        }
      c0 = std::max(c0, max_abs_diff(act_basis(s0, dd, Fv[phi]), a0.get()));
      c1 = std::max(c1, max_abs_diff(act(s1, D.S.col(dd), Fv[phi]), a1.get()));
    }
  rep.add(H.name + " d |>_s0 F^phi |vac> = F^{d |> phi} |vac>", c0, 1e-10, vac.support());
  rep.add(H.name + " S d |>_s1 F^phi |vac> = F^{phi <| d} |vac>", c1, 1e-10, vac.support());
  const int rank = state_rank(Fv);
  rep.data["dim_D"] = n;
  rep.data["rank_phi_to_L"] = rank;
  rep.data["rank_Lstar_to_D"] = rank;
  rep.data["isomorphism"] = rank == n;
  return rep;
}

Report hopf_verify(const std::string& instance, std::uint64_t seed) {
  const HopfAlgebra H = builtin_hopf(instance);
  if (instance.size() > 1 && instance[0] == 'c') {
    const GroupTable G = group_from_name(instance.substr(1));
    return hopf_verify(H, seed, &G);
  }
  return hopf_verify(H, seed);
}

Report hopf_verify(const HopfAlgebra& H, std::uint64_t seed, const GroupTable* G) {
  Report rep;
  rep.command = "hopf-verify";
  const DoubleH DH = drinfeld_double(H);
  rep.data["instance"] = H.name;
  rep.data["dim"] = H.dim;
  rep.data["involutive"] = involutive(H);
  rep.data["normalized"] = H.normalized;
  rep.merge(verify_hopf(H));
  Report dr = verify_hopf(DH.D);
  for (auto& c : dr.checks) c.name = "D(H) " + c.name;
  rep.merge(dr);
  if (!H.irreps.empty()) rep.merge(check_hopf_idempotents(H));
  if (H.normalized) {
    // Lambda_D is a two-sided integral of D(H)
    const CVector LD = double_integral(DH);
    double dev = 0;
    for (int a = 0; a < DH.D.dim; ++a) {
      const CVector x = DH.D.basis(a);
      dev = std::max(dev, (DH.D.product(x, LD) - DH.D.counit(a) * LD).cwiseAbs().maxCoeff());
    }
    rep.add("Lambda_D is an integral of D(H)", dev, 1e-12);
  }
  rep.merge(check_double_site_action(H, seed));
  rep.merge(check_integral_ops(H, seed));
  rep.merge(check_triangle_covariance(H, seed));
  rep.merge(check_ribbon_module(H, seed));
  if (G) rep.merge(check_group_reduction(*G, seed));
  if (H.normalized && DH.D.dim <= 16) rep.merge(check_fbimod(H, seed));
  rep.command = "hopf-verify";
  return rep;
}

}  // namespace qdl
