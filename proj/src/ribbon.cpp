#include "qdl/ribbon.hpp"

#include <cmath>

#include "qdl/error.hpp"

namespace qdl {

OpSum triangle_op(const GroupTable& G, const Lattice& L, const Triangle& t, int label) {
  const TriangleGeom geo = triangle_geometry(L, t);
  MonomialOp m;
  if (geo.kind == TriangleKind::Direct) {
    m.preds.push_back(Pred{word_edge(geo.edge, geo.travel_sign < 0), label});
  } else {
    const int k = geo.clockwise ? G.inv[label] : label;
    if (k != G.id) {
      if (geo.outgoing)
        m.acts.push_back(Act{geo.edge, word_const(k), {}});
      else
        m.acts.push_back(Act{geo.edge, {}, word_const(G.inv[k])});
    }
  }
  return OpSum{{m}};
}

MonomialOp ribbon_monomial(const GroupTable& G, const Lattice& L, const Ribbon& r, int h, int g) {
  MonomialOp m;
  Word w;
  auto find = [&](int e) -> Act* {
    for (auto& a : m.acts)
      if (a.edge == e) return &a;
    return nullptr;
  };
  for (const auto& t : r.triangles) {
    const TriangleGeom geo = triangle_geometry(L, t);
    if (geo.kind == TriangleKind::Direct) {
      Word cur = word_edge(geo.edge);
      if (const Act* a = find(geo.edge)) cur = word_concat(word_concat(a->left, cur), a->right);
      if (geo.travel_sign < 0) cur = word_inverse(G, cur);
      w = word_simplify(G, word_concat(w, cur));
    } else {
      // k = w^-1 h w, inverted for a clockwise rotation
      Word k = word_concat(word_concat(word_inverse(G, w), word_const(geo.clockwise ? G.inv[h] : h)), w);
      k = word_simplify(G, k);
      Act* a = find(geo.edge);
      if (!a) {
        m.acts.push_back(Act{geo.edge, {}, {}});
        a = &m.acts.back();
      }
      if (geo.outgoing)
        a->left = word_simplify(G, word_concat(k, a->left));
      else
        a->right = word_simplify(G, word_concat(a->right, word_inverse(G, k)));
    }
  }
  m.preds.push_back(Pred{w, g});
  std::erase_if(m.acts, [](const Act& a) { return a.left.empty() && a.right.empty(); });
  return m;
}

OpSum ribbon_op(const GroupTable& G, const Lattice& L, const Ribbon& r, int h, int g) {
  if (classify_ribbon(L, r) == RibbonClass::Other)
    throw Error(ErrorKind::NotOpen, "ribbon operator needs an open or closed ribbon");
  MonomialOp m = ribbon_monomial(G, L, r, h, g);
  // a constant predicate (empty word) is decided here
  if (m.preds.back().word.empty()) {
    if (m.preds.back().target != G.id) return op_zero();
    m.preds.pop_back();
  }
  return OpSum{{m}};
}

OpSum quasiparticle_ribbon(const GroupTable& G, const ConjugacyData& cd, const Lattice& L, const Ribbon& r,
                           const DoubleIrrep& R, int u, int v) {
  const int dim = R.irrep.dim;
  const int c = R.elements[u / dim], i = u % dim;
  const int d = R.elements[v / dim], j = v % dim;
  OpSum out;
  for (int n : cd.centralizer[R.cls]) {
    const Complex a = R.irrep.mats[G.inv[n]](j, i);
    if (std::abs(a) < 1e-15) continue;
    const int label = G.mul(G.mul(cd.section[c], n), G.inv[cd.section[d]]);
    out = out + a * ribbon_op(G, L, r, c, label);
  }
  return out;
}

OpSum trace_ribbon(const GroupTable& G, const ConjugacyData& cd, const Lattice& L, const Ribbon& r,
                   const DoubleIrrep& R) {
  OpSum out;
  for (int u = 0; u < R.dim(); ++u) out = out + quasiparticle_ribbon(G, cd, L, r, R, u, u);
  return out;
}

OpSum chargeon_trace(const GroupTable& G, const Lattice& L, const Ribbon& r, const Irrep& pi) {
  OpSum out;
  for (int n = 0; n < G.order; ++n) {
    const Complex a = pi.character(G.inv[n]);
    if (std::abs(a) < 1e-15) continue;
    out = out + a * ribbon_op(G, L, r, G.id, n);
  }
  return out;
}

OpSum quasiparticle_ribbon_dual(const GroupTable& G, const ConjugacyData& cd, const Lattice& L, const Ribbon& r,
                                const DoubleIrrep& R, int u, int v) {
  const int dim = R.irrep.dim;
  const int c = R.elements[u / dim], i = u % dim;
  const int d = R.elements[v / dim], j = v % dim;
  OpSum out;
  for (int n : cd.centralizer[R.cls]) {
    const Complex a = std::conj(R.irrep.mats[G.inv[n]](j, i));
    if (std::abs(a) < 1e-15) continue;
    const int label = G.mul(G.mul(cd.section[c], n), G.inv[cd.section[d]]);
    out = out + a * ribbon_op(G, L, r, G.inv[c], label);
  }
  return out;
}

OpSum trace_ribbon_dual(const GroupTable& G, const ConjugacyData& cd, const Lattice& L, const Ribbon& r,
                        const DoubleIrrep& R) {
  OpSum out;
  for (int u = 0; u < R.dim(); ++u) out = out + quasiparticle_ribbon_dual(G, cd, L, r, R, u, u);
  return out;
}

double RibcomReport::max_deviation() const {
  return std::max({vertex_away, face_away, start_vertex, start_face, end_vertex, end_face});
}

RibcomReport check_ribbon_commutation(const GroupTable& G, const Lattice& L, const Ribbon& r,
                                      const std::vector<SparseState>& states) {
  const Site s0 = r.start(), s1 = r.end();
  if (!sites_disjoint(s0, s1)) throw Error(ErrorKind::SitesNotDisjoint, "ribbon endpoints share a vertex or face");
  RibcomReport rep;
  const int n = G.order;
  auto F = [&](int h, int g) { return ribbon_op(G, L, r, h, g); };
  auto dist = [&](const OpSum& a, const OpSum& b) { return op_distance(a, b, states); };
  for (int h = 0; h < n; ++h)
    for (int g = 0; g < n; ++g) {
      const OpSum f = F(h, g);
      for (int v = 0; v < L.num_vertices(); ++v) {
        if (v == s0.v || v == s1.v) continue;
        for (int k = 0; k < n; ++k) {
          if (k == G.id) continue;
          const OpSum a = vertex_action(G, L, k, v);
          rep.vertex_away = std::max(rep.vertex_away, dist(compose(G, f, a), compose(G, a, f)));
        }
      }
      for (int p = 0; p < L.num_faces(); ++p) {
        if (p == s0.p || p == s1.p) continue;
        const OpSum b = b_op(G, L, p);
        rep.face_away = std::max(rep.face_away, dist(compose(G, f, b), compose(G, b, f)));
      }
      for (int k = 0; k < n; ++k) {
        const int kinv = G.inv[k];
        // k>_{s0} F^{h,g} = F^{khk^-1, kg} k>_{s0}
        rep.start_vertex = std::max(
            rep.start_vertex, dist(compose(G, vertex_action(G, L, k, s0.v), f),
                                   compose(G, F(G.conj(k, h), G.mul(k, g)), vertex_action(G, L, k, s0.v))));
        // delta_k>_{s0} F^{h,g} = F^{h,g} delta_{h^-1 k}>_{s0}
        rep.start_face = std::max(rep.start_face, dist(compose(G, face_action(G, L, k, s0), f),
                                                       compose(G, f, face_action(G, L, G.mul(G.inv[h], k), s0))));
        // k>_{s1} F^{h,g} = F^{h, g k^-1} k>_{s1}
        rep.end_vertex = std::max(rep.end_vertex, dist(compose(G, vertex_action(G, L, k, s1.v), f),
                                                       compose(G, F(h, G.mul(g, kinv)), vertex_action(G, L, k, s1.v))));
        // delta_k>_{s1} F^{h,g} = F^{h,g} delta_{k g^-1 h g}>_{s1}
        const int t = G.mul(k, G.mul(G.mul(G.inv[g], h), g));
        rep.end_face = std::max(rep.end_face, dist(compose(G, face_action(G, L, k, s1), f),
                                                   compose(G, f, face_action(G, L, t, s1))));
      }
    }
  return rep;
}

double RibbonAlgebraReport::max_deviation() const {
  return std::max({product, adjoint, dagger_product, delta_commute});
}

RibbonAlgebraReport check_ribbon_algebra(const GroupTable& G, const Lattice& L, const Ribbon& r,
                                         const std::vector<SparseState>& states) {
  RibbonAlgebraReport rep;
  const int n = G.order;
  std::vector<OpSum> F(n * n);
  for (int h = 0; h < n; ++h)
    for (int g = 0; g < n; ++g) F[h * n + g] = ribbon_op(G, L, r, h, g);
  for (int h = 0; h < n; ++h)
    for (int g = 0; g < n; ++g) {
      const OpSum& f = F[h * n + g];
      for (int h2 = 0; h2 < n; ++h2)
        for (int g2 = 0; g2 < n; ++g2) {
          const OpSum want = g == g2 ? F[G.mul(h, h2) * n + g] : op_zero();
          rep.product = std::max(rep.product, op_distance(compose(G, f, F[h2 * n + g2]), want, states));
          if (h == G.id && h2 == G.id)
            rep.delta_commute = std::max(rep.delta_commute, op_distance(compose(G, f, F[h2 * n + g2]),
                                                                        compose(G, F[h2 * n + g2], f), states));
        }
      const OpSum fd = adjoint(G, f);
      rep.adjoint = std::max(rep.adjoint, op_distance(fd, F[G.inv[h] * n + g], states));
      rep.dagger_product = std::max(rep.dagger_product, op_distance(compose(G, fd, f), F[G.id * n + g], states));
    }
  return rep;
}

std::vector<SparseState> group_basis(const GroupTable& G, const Lattice& L, const Ribbon& r, const SparseState& vac) {
  std::vector<SparseState> out;
  for (int h = 0; h < G.order; ++h)
    for (int g = 0; g < G.order; ++g) out.push_back(apply(ribbon_op(G, L, r, h, g), vac));
  return out;
}

double EndpointActionReport::max_deviation() const {
  return std::max({start_vertex, start_face, end_vertex, end_face});
}

EndpointActionReport check_endpoint_actions(const GroupTable& G, const Lattice& L, const Ribbon& r,
                                            const std::vector<SparseState>& basis) {
  EndpointActionReport rep;
  const int n = G.order;
  const Site s0 = r.start(), s1 = r.end();
  auto psi = [&](int h, int g) -> const SparseState& { return basis[h * n + g]; };
  for (int f = 0; f < n; ++f) {
    const OpSum a0 = vertex_action(G, L, f, s0.v), a1 = vertex_action(G, L, f, s1.v);
    const OpSum d0 = face_action(G, L, f, s0), d1 = face_action(G, L, f, s1);
    for (int h = 0; h < n; ++h)
      for (int g = 0; g < n; ++g) {
        const SparseState& x = psi(h, g);
        rep.start_vertex = std::max(rep.start_vertex, norm(apply(a0, x) - psi(G.conj(f, h), G.mul(f, g))));
        rep.end_vertex = std::max(rep.end_vertex, norm(apply(a1, x) - psi(h, G.mul(g, G.inv[f]))));
        const SparseState zero = Complex(0.0) * x;
        rep.start_face = std::max(rep.start_face, norm(apply(d0, x) - (f == h ? x : zero)));
        const int t = G.mul(G.mul(G.inv[g], G.inv[h]), g);
        rep.end_face = std::max(rep.end_face, norm(apply(d1, x) - (f == t ? x : zero)));
      }
  }
  return rep;
}

SparseState bell_state(const GroupTable& G, const Lattice& L, const Ribbon& r, const SparseState& vac) {
  OpSum sum;
  for (int h = 0; h < G.order; ++h) sum = sum + ribbon_op(G, L, r, h, G.id);
  return apply(sum, vac);
}

OpSum right_site_action(const GroupTable& G, const Lattice& L, const Site& s, const DoubleElement& x) {
  return site_action(G, L, s, double_antipode(x));
}

BlockTeleportReport block_teleport(const GroupTable& G, const ConjugacyData& cd, const Lattice& L, const Ribbon& r,
                                   const SparseState& vac) {
  BlockTeleportReport rep;
  const SparseState bell = bell_state(G, L, r, vac);
  const double nb = norm(bell);
  rep.min_norm = 1e300;
  SparseState total = Complex(0.0) * bell;
  for (const auto& R : double_irreps(G, cd)) {
    const DoubleElement P = projector(G, cd, R);
    const SparseState left = apply(site_action(G, L, r.start(), P), bell);
    const SparseState right = apply(right_site_action(G, L, r.end(), P), bell);
    rep.left_right = std::max(rep.left_right, norm(left - right));
    rep.min_norm = std::min(rep.min_norm, norm(left));
    rep.weights.push_back(std::pow(norm(left) / nb, 2));
    total = total + left;
    ++rep.sectors;
  }
  rep.completeness = norm(total - bell);
  return rep;
}

double local_vacuum_deviation(const GroupTable& G, const Lattice& L, const std::vector<Site>& sites,
                              const std::vector<SparseState>& states) {
  double dev = 0;
  for (int v = 0; v < L.num_vertices(); ++v) {
    bool skip = false;
    for (const auto& s : sites) skip = skip || s.v == v;
    if (skip) continue;
    const OpSum a = a_op(G, L, v);
    for (const auto& x : states) dev = std::max(dev, norm(apply(a, x) - x));
  }
  for (int p = 0; p < L.num_faces(); ++p) {
    bool skip = false;
    for (const auto& s : sites) skip = skip || s.p == p;
    if (skip) continue;
    const OpSum b = b_op(G, L, p);
    for (const auto& x : states) dev = std::max(dev, norm(apply(b, x) - x));
  }
  return dev;
}

}  // namespace qdl
