#include "qdl/site_ops.hpp"

#include <cmath>
#include <algorithm>
#include <queue>

#include "qdl/error.hpp"

namespace qdl {

OpSum vertex_action(const GroupTable& G, const Lattice& L, int h, int v) {
  MonomialOp m;
  for (auto [e, out] : L.star(v)) {
    if (out)
      m.acts.push_back(Act{e, word_const(h), {}});
    else
      m.acts.push_back(Act{e, {}, word_const(G.inv[h])});
  }
  if (h == G.id) m.acts.clear();
  return OpSum{{m}};
}

OpSum face_action(const GroupTable& G, const Lattice& L, int g, const Site& s) {
  (void)G;
  Word w;
  for (auto [e, sign] : L.face_edges(s)) w.push_back(Factor{e, 0, sign < 0});
  MonomialOp m;
  m.preds.push_back(Pred{w, g});
  return OpSum{{m}};
}

OpSum site_action(const GroupTable& G, const Lattice& L, const Site& s, int g, int h) {
  return compose(G, face_action(G, L, g, s), vertex_action(G, L, h, s.v));
}

OpSum site_action(const GroupTable& G, const Lattice& L, const Site& s, const DoubleElement& x) {
  OpSum out;
  for (int g = 0; g < G.order; ++g)
    for (int h = 0; h < G.order; ++h) {
      const Complex c = x(g, h);
      if (std::abs(c) < 1e-15) continue;
      out = out + c * site_action(G, L, s, g, h);
    }
  return out;
}

OpSum a_op(const GroupTable& G, const Lattice& L, int v) {
  OpSum out;
  for (int h = 0; h < G.order; ++h) out = out + Complex(1.0 / G.order) * vertex_action(G, L, h, v);
  return out;
}

OpSum b_op(const GroupTable& G, const Lattice& L, int p) {
  return face_action(G, L, G.id, Site{L.faces[p].corner[0], p});
}

double SiteRepReport::max_deviation() const {
  return std::max({group_law, delta_law, cross_relation, unit});
}

SiteRepReport check_site_representation(const GroupTable& G, const Lattice& L, const Site& s,
                                        const std::vector<SparseState>& states) {
  if (!L.adjacent(s)) throw Error(ErrorKind::NonAdjacentSite, "site vertex not on its face");
  SiteRepReport r;
  const int n = G.order;
  r.unit = op_distance(vertex_action(G, L, G.id, s.v), op_identity(), states);
  OpSum sum;
  for (int g = 0; g < n; ++g) sum = sum + face_action(G, L, g, s);
  r.unit = std::max(r.unit, op_distance(sum, op_identity(), states));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      r.group_law = std::max(r.group_law, op_distance(compose(G, vertex_action(G, L, a, s.v), vertex_action(G, L, b, s.v)),
                                                      vertex_action(G, L, G.mul(a, b), s.v), states));
      const OpSum dd = compose(G, face_action(G, L, a, s), face_action(G, L, b, s));
      r.delta_law = std::max(r.delta_law, op_distance(dd, a == b ? face_action(G, L, a, s) : op_zero(), states));
      // h delta_g = delta_{hgh^-1} h
      r.cross_relation =
          std::max(r.cross_relation, op_distance(compose(G, vertex_action(G, L, a, s.v), face_action(G, L, b, s)),
                                                 compose(G, face_action(G, L, G.conj(a, b), s), vertex_action(G, L, a, s.v)),
                                                 states));
    }
  return r;
}

OpSum site_projector(const GroupTable& G, const ConjugacyData& cd, const DoubleIrrep& R, const Lattice& L,
                     const Site& s) {
  return site_action(G, L, s, projector(G, cd, R));
}

std::pair<SparseState, double> site_projector_measure(const GroupTable& G, const ConjugacyData& cd,
                                                      const DoubleIrrep& R, const Lattice& L, const Site& s,
                                                      const SparseState& psi) {
  SparseState out = apply(site_projector(G, cd, R, L, s), psi);
  const double n0 = norm(psi);
  const double p = n0 > 0 ? std::pow(norm(out) / n0, 2) : 0.0;
  return {out, p};
}

SparseState vacuum_state(const GroupTable& G, const Lattice& L) {
  SparseState s = basis_state(G, L.num_edges(), std::vector<int>(L.num_edges(), G.id));
  for (int v = 0; v < L.num_vertices(); ++v) s = apply(a_op(G, L, v), s);
  return normalized(s);
}

SparseState vacuum_plane(const GroupTable& G, const Lattice& L) {
  if (L.topology != Topology::Plane) throw Error(ErrorKind::ConfigError, "vacuum_plane needs a plane patch");
  return vacuum_state(G, L);
}

double energy(const GroupTable& G, const Lattice& L, const SparseState& psi) {
  const double nn = std::pow(norm(psi), 2);
  double e = 0;
  for (int v = 0; v < L.num_vertices(); ++v) e += 1.0 - std::real(inner(psi, apply(a_op(G, L, v), psi))) / nn;
  for (int p = 0; p < L.num_faces(); ++p) e += 1.0 - std::real(inner(psi, apply(b_op(G, L, p), psi))) / nn;
  return e;
}

namespace {

bool flat(const GroupTable& G, const Lattice& L, const std::vector<int>& cfg, int p) {
  int w = G.id;
  for (int k = 0; k < 4; ++k) {
    int x = cfg[L.faces[p].edges[k]];
    if (L.faces[p].sign[k] < 0) x = G.inv[x];
    w = G.mul(w, x);
  }
  return w == G.id;
}

SparseState gauge_average(const GroupTable& G, const Lattice& L, const SparseState& s) {
  SparseState out = s;
  for (int v = 0; v < L.num_vertices(); ++v) out = apply(a_op(G, L, v), out);
  return out;
}

}  // namespace

long long vacuum_dimension(const GroupTable& G, const Lattice& L, std::uint64_t budget) {
  // trace of prod B prod A: prod B keeps flat configurations, and <c|prod A|c> = |Stab(c)| / |G|^V
  // where a stabilising gauge transformation is fixed by its value at vertex 0
  const int E = L.num_edges(), V = L.num_vertices();
  std::vector<std::vector<int>> check_at(E);
  for (int p = 0; p < L.num_faces(); ++p) {
    const auto& f = L.faces[p].edges;
    check_at[*std::max_element(f.begin(), f.end())].push_back(p);
  }
  std::vector<int> order;  // BFS vertex order with the edge used to reach each vertex
  std::vector<int> via(V, -1), seen(V, 0);
  order.push_back(0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (auto [e, out] : L.star(order[i])) {
      const int w = out ? L.edges[e].dst : L.edges[e].src;
      if (!seen[w]) {
        seen[w] = 1;
        via[w] = e;
        order.push_back(w);
      }
    }
  auto stabilizer = [&](const std::vector<int>& cfg) {
    long long count = 0;
    std::vector<int> h(V);
    for (int h0 = 0; h0 < G.order; ++h0) {
      h[0] = h0;
      for (std::size_t i = 1; i < order.size(); ++i) {
        const int w = order[i], e = via[w], x = cfg[e];
        // x = h_src x h_dst^-1
        h[w] = L.edges[e].dst == w ? G.mul(G.mul(G.inv[x], h[L.edges[e].src]), x)
                                   : G.mul(G.mul(x, h[L.edges[e].dst]), G.inv[x]);
      }
      bool ok = true;
      for (int e = 0; e < E && ok; ++e)
        ok = G.mul(G.mul(h[L.edges[e].src], cfg[e]), G.inv[h[L.edges[e].dst]]) == cfg[e];
      count += ok;
    }
    return count;
  };
  std::vector<int> cfg(E, G.id);
  std::uint64_t visited = 0;
  long long stab_sum = 0;
  auto rec = [&](auto&& self, int e) -> void {
    if (++visited > budget) throw Error(ErrorKind::SupportBudgetExceeded, "flat enumeration exceeds the budget");
    if (e == E) {
      stab_sum += stabilizer(cfg);
      return;
    }
    for (int g = 0; g < G.order; ++g) {
      cfg[e] = g;
      bool ok = true;
      for (int p : check_at[e]) ok = ok && flat(G, L, cfg, p);
      if (ok) self(self, e + 1);
    }
    cfg[e] = G.id;
  };
  rec(rec, 0);
  long long gauge = 1;
  for (int v = 0; v < V; ++v) gauge *= G.order;
  if (stab_sum % gauge != 0) throw Error(ErrorKind::ToleranceExceeded, "non-integral vacuum trace");
  return stab_sum / gauge;
}

VacuumBasis kappa_basis(const GroupTable& G, const Lattice& L, std::size_t budget) {
  const int E = L.num_edges(), V = L.num_vertices();
  // spanning tree from vertex 0, tree edges gauge-fixed to the identity
  std::vector<char> tree(E, 0), seen(V, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (auto [e, out] : L.star(v)) {
      const int w = out ? L.edges[e].dst : L.edges[e].src;
      if (!seen[w]) {
        seen[w] = 1;
        tree[e] = 1;
        q.push(w);
      }
    }
  }
  std::vector<int> free_edges;
  for (int e = 0; e < E; ++e)
    if (!tree[e]) free_edges.push_back(e);
  // faces become checkable once their last free edge is assigned
  std::vector<std::vector<int>> check_at(free_edges.size());
  for (int p = 0; p < L.num_faces(); ++p) {
    int last = -1;
    for (int e : L.faces[p].edges)
      for (std::size_t i = 0; i < free_edges.size(); ++i)
        if (free_edges[i] == e) last = std::max(last, static_cast<int>(i));
    if (last >= 0) check_at[last].push_back(p);
  }
  std::vector<std::vector<int>> flats;
  std::vector<int> cfg(E, G.id);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == free_edges.size()) {
      flats.push_back(cfg);
      if (flats.size() > budget) throw Error(ErrorKind::SupportBudgetExceeded, "too many flat configurations");
      return;
    }
    for (int g = 0; g < G.order; ++g) {
      cfg[free_edges[i]] = g;
      bool ok = true;
      for (int p : check_at[i]) ok = ok && flat(G, L, cfg, p);
      if (ok) self(self, i + 1);
    }
    cfg[free_edges[i]] = G.id;
  };
  rec(rec, 0);

  VacuumBasis vb;
  vb.flat_configs = flats.size();
  const Codec codec(G.order, E);
  std::vector<char> covered(flats.size(), 0);
  for (std::size_t i = 0; i < flats.size(); ++i) {
    if (covered[i]) continue;
    SparseState orbit = gauge_average(G, L, basis_state(G, E, flats[i]));
    for (auto& en : orbit.entries) en.second = 1.0;
    for (std::size_t j = i; j < flats.size(); ++j)
      if (!covered[j] && orbit.amplitude(codec.encode(flats[j])) != Complex(0)) covered[j] = 1;
    vb.orbit_size.push_back(orbit.support());
    vb.kappa.push_back(std::move(orbit));
  }
  return vb;
}

}  // namespace qdl
