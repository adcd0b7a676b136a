#include "qdl/toric.hpp"

#include <cmath>
#include <numbers>

#include "qdl/double.hpp"
#include "qdl/error.hpp"
#include "qdl/fixtures.hpp"
#include "qdl/io.hpp"
#include "qdl/ribbon.hpp"
#include "qdl/site_ops.hpp"

namespace qdl {

namespace {

int md(int a, int n) { return ((a % n) + n) % n; }

Complex qpow(int n, int k) { return std::polar(1.0, 2 * std::numbers::pi * md(k, n) / n); }

// D(Z_n) irrep with flux a and charge b.
const DoubleIrrep& find_irrep(const std::vector<DoubleIrrep>& irreps, const ConjugacyData& cd, int n, int a, int b) {
  for (const auto& R : irreps)
    if (cd.rep[R.cls] == md(a, n) && (n == 1 || std::abs(R.irrep.mats[1](0, 0) - qpow(n, b)) < 1e-9)) return R;
  throw Error(ErrorKind::UnsupportedGroup, "no D(Z_n) irrep with these labels");
}

int edge_of(const Lattice& L, const Json& e) {
  const int x = e.at(0).get<int>(), y = e.at(1).get<int>();
  return e.at(2).get<std::string>() == "h" ? L.hedge(x, y) : L.vedge(x, y);
}

double prob(const OpSum& P, const SparseState& psi) {
  const double n0 = norm(psi);
  return std::pow(norm(apply(P, psi)) / n0, 2);
}

}  // namespace

Complex toric_q(int n) { return qpow(n, 1); }

OpSum toric_x(const GroupTable& G, int e, int power) {
  const int p = md(power, G.order);
  if (p == 0) return op_identity();
  MonomialOp m;
  m.acts.push_back(Act{e, word_const(p), {}});
  return OpSum{{m}};
}

OpSum toric_z(const GroupTable& G, int e, int power) {
  const int n = G.order;
  if (md(power, n) == 0) return op_identity();
  OpSum out;
  for (int k = 0; k < n; ++k) {
    MonomialOp m;
    m.coef = qpow(n, power * k);
    m.preds.push_back(Pred{word_edge(e), k});
    out.terms.push_back(m);
  }
  return out;
}

OpSum toric_vertex(const GroupTable& G, const Lattice& L, int power, int v) {
  OpSum out = op_identity();
  for (auto [e, outgoing] : L.star(v)) out = compose(G, toric_x(G, e, outgoing ? power : -power), out);
  return out;
}

OpSum toric_face(const GroupTable& G, const Lattice& L, int power, const Site& s) {
  OpSum out = op_identity();
  for (auto [e, sign] : L.face_edges(s)) out = compose(G, toric_z(G, e, sign * power), out);
  return out;
}

OpSum toric_face_projector(const GroupTable& G, const Lattice& L, int i, const Site& s) {
  const int n = G.order;
  OpSum out;
  for (int k = 0; k < n; ++k) out = out + (qpow(n, -i * k) / double(n)) * toric_face(G, L, k, s);
  return out;
}

OpSum toric_vertex_projector(const GroupTable& G, const Lattice& L, int j, int v) {
  const int n = G.order;
  OpSum out;
  for (int k = 0; k < n; ++k) out = out + (qpow(n, -j * k) / double(n)) * toric_vertex(G, L, k, v);
  return out;
}

OpSum toric_projector(const GroupTable& G, const Lattice& L, int i, int j, const Site& s) {
  return compose(G, toric_face_projector(G, L, i, s), toric_vertex_projector(G, L, j, s.v));
}

OpSum toric_w(const GroupTable& G, const Lattice& L, const Ribbon& r, int i, int j) {
  const int n = G.order;
  OpSum out;
  for (int k = 0; k < n; ++k) out = out + qpow(n, -j * k) * ribbon_op(G, L, r, md(i, n), k);
  return out;
}

Report creation_walkthrough(int n, int i, int j) {
  if (n < 2) throw Error(ErrorKind::ConfigError, "creation walkthrough needs n >= 2");
  const GroupTable G = build_cyclic(n);
  const Json& fx = fixture("creation");
  const Lattice L = lattice_from_json(fx.at("lattice"));
  const int s = edge_of(L, fx["edges"]["s"]), t = edge_of(L, fx["edges"]["t"]), u = edge_of(L, fx["edges"]["u"]);
  const Site a = site_from_json(L, fx["sites"]["v1p1"]), b = site_from_json(L, fx["sites"]["v2p2"]),
             c = site_from_json(L, fx["sites"]["v3p3"]);
  const Ribbon create = ribbon_from_json(L, fx.at("create"));
  const Ribbon transport = ribbon_from_json(L, fx.at("transport"));

  Report rep;
  rep.command = "creation";
  const SparseState vac = vacuum_plane(G, L);
  auto expect = [&](const std::string& name, const SparseState& psi, const OpSum& P) {
    rep.add(name, std::abs(prob(P, psi) - 1.0), 1e-10, psi.support());
  };
  const SparseState s1 = apply(toric_z(G, s, -j), vac);
  expect("Z^-j_s: m_j at (v1,p1)", s1, toric_projector(G, L, 0, j, a));
  expect("Z^-j_s: m_-j at (v2,p2)", s1, toric_projector(G, L, 0, -j, b));
  const SparseState s2 = apply(toric_x(G, s, -i), s1);
  expect("X^-i_s: (i,j) at (v1,p1)", s2, toric_projector(G, L, i, j, a));
  expect("X^-i_s: (-i,-j) at (v2,p2)", s2, toric_projector(G, L, -i, -j, b));
  rep.add("creation equals W^{i,j}|vac>", norm(s2 - apply(toric_w(G, L, create, i, j), vac)), 1e-10);
  const SparseState s3 = apply(toric_x(G, t, i), s2);
  expect("X^i_t: no flux at p2", s3, toric_face_projector(G, L, 0, b));
  expect("X^i_t: flux -i at p3", s3, toric_face_projector(G, L, -i, c));
  const SparseState s4 = apply(toric_z(G, u, -j), s3);
  expect("Z^-j_u: (v2,p2) unoccupied", s4, toric_projector(G, L, 0, 0, b));
  expect("Z^-j_u: (-i,-j) at (v3,p3)", s4, toric_projector(G, L, -i, -j, c));
  expect("Z^-j_u: (i,j) still at (v1,p1)", s4, toric_projector(G, L, i, j, a));
  rep.add("transport equals W^{i,j} on the long ribbon",
          norm(s4 - apply(toric_w(G, L, concat_ribbons(L, create, transport), i, j), vac)), 1e-10);
  return rep;
}

Report w_equals_xz(int n, std::uint64_t seed) {
  const GroupTable G = build_cyclic(n);
  const Json& fx = fixture("creation");
  const Lattice L = lattice_from_json(fx.at("lattice"));
  const int s = edge_of(L, fx["edges"]["s"]), t = edge_of(L, fx["edges"]["t"]), u = edge_of(L, fx["edges"]["u"]);
  const Ribbon create = ribbon_from_json(L, fx.at("create"));
  const Ribbon transport = ribbon_from_json(L, fx.at("transport"));
  const Ribbon both = concat_ribbons(L, create, transport);
  const auto states = random_states(G, L, 20, 16, seed);

  Report rep;
  rep.command = "w-equals-xz";
  double scalar = 0;
  for (int jj = 0; jj < n; ++jj)
    for (int x = 0; x < n; ++x) {
      Complex sum = 0;
      for (int k = 0; k < n; ++k) sum += qpow(n, -jj * k) * double(k == x);
      scalar = std::max(scalar, std::abs(sum - qpow(n, -jj * x)));
    }
  rep.add("sum_k q^-jk delta_k(s) = q^-js", scalar, 1e-12);
  double cre = 0, tra = 0, comp = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const OpSum wc = toric_w(G, L, create, i, j), wt = toric_w(G, L, transport, i, j);
      cre = std::max(cre, op_distance(wc, compose(G, toric_x(G, s, -i), toric_z(G, s, -j)), states));
      tra = std::max(tra, op_distance(wt, compose(G, toric_x(G, t, i), toric_z(G, u, -j)), states));
      comp = std::max(comp, op_distance(toric_w(G, L, both, i, j), compose(G, wt, wc), states));
    }
  rep.add("W^{i,j} = X^-i Z^-j on the creation edge", cre, 1e-10);
  rep.add("W^{i,j} = X^i (x) Z^-j on the transport edges", tra, 1e-10);
  rep.add("creation then transport = creation on the long ribbon", comp, 1e-10);
  rep.add("W^{0,0} = id", op_distance(toric_w(G, L, create, 0, 0), op_identity(), states), 1e-12);
  return rep;
}

BraidResult braiding_phase(int n, int i, int j) {
  if (n < 1) throw Error(ErrorKind::ConfigError, "n must be positive");
  const GroupTable G = build_cyclic(n);
  const Json& fx = fixture("braid");
  const Lattice L = lattice_from_json(fx.at("lattice"));
  const Ribbon xi = ribbon_from_json(L, fx.at("xi"));
  const Ribbon xi_prime = ribbon_from_json(L, fx.at("xi_prime"));
  const Ribbon loop = ribbon_from_json(L, fx.at("xi_loop"));

  const SparseState vac = vacuum_plane(G, L);
  const SparseState psi = apply(toric_w(G, L, xi_prime, -i, 0), apply(toric_w(G, L, xi, 0, -j), vac));
  const SparseState out = apply(toric_w(G, L, loop, 0, -j), psi);
  BraidResult r;
  r.n = n;
  r.i = i;
  r.j = j;
  r.phase = inner(psi, out) / inner(psi, psi);
  r.expected = qpow(n, i * j);
  r.deviation = std::abs(r.phase - r.expected);
  r.eigen_residual = norm(out - r.phase * psi) / norm(psi);
  r.support = std::max(vac.support(), psi.support());
  return r;
}

Report toric_teleport(int n, std::vector<Complex> psi_vec) {
  const GroupTable G = build_cyclic(n);
  const ConjugacyData cd = conjugacy(G);
  const auto irreps = double_irreps(G, cd);
  const Json& fx = fixture("braid");
  const Lattice L = lattice_from_json(fx.at("lattice"));
  const Ribbon xi = ribbon_from_json(L, fx.at("xi"));
  const Site s0 = xi.start(), s1 = xi.end();
  if (psi_vec.empty()) psi_vec.assign(n * n, 1.0);
  if (static_cast<int>(psi_vec.size()) != n * n) throw Error(ErrorKind::ConfigError, "psi needs n*n entries");

  Report rep;
  rep.command = "teleport";
  const SparseState vac = vacuum_plane(G, L);
  const SparseState bell = bell_state(G, L, xi, vac);
  double collapse = 0, right = 0, mirror = 0, smallest = 1e300;
  std::vector<SparseState> mini(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const SparseState left = apply(toric_projector(G, L, i, j, s0), bell);
      const SparseState w = (1.0 / n) * apply(toric_w(G, L, xi, i, j), vac);
      const DoubleElement P = projector(G, cd, find_irrep(irreps, cd, n, i, j));
      const SparseState r = apply(right_site_action(G, L, s1, P), bell);
      collapse = std::max(collapse, norm(left - w));
      right = std::max(right, norm(left - r));
      mirror = std::max(mirror, norm(r - apply(toric_projector(G, L, -i, -j, s1), bell)));
      smallest = std::min(smallest, norm(left));
      mini[i * n + j] = left;
    }
  rep.add("P_ij>_s0 |Bell> = (1/n) W^{i,j} |vac>", collapse, 1e-10, bell.support());
  rep.add("P_ij>_s0 |Bell> = |Bell><_s1 P_ij", right, 1e-10, bell.support());
  rep.add("<_s1 P_ij = P_{-i,-j}(s1) on |Bell>", mirror, 1e-10, bell.support());
  rep.add_bool("all mini-Bell states nonzero", smallest > 1e-6);

  SparseState psi = empty_state(G, L.num_edges());
  for (int k = 0; k < n * n; ++k) psi = psi + psi_vec[k] * mini[k];
  double transmit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const SparseState got = apply(toric_projector(G, L, -i, -j, s1), psi);
      transmit = std::max(transmit, norm(got - psi_vec[i * n + j] * mini[i * n + j]));
    }
  rep.add("P_{-i,-j}(s1)|psi> = psi_ij P_ij(s0)|Bell>", transmit, 1e-10, psi.support());
  // With <vac|vac> = n the Bell state has squared norm n; our vacuum is unit so we rescale.
  const double bn = std::real(inner(bell, bell)) * n;
  rep.add("<Bell|Bell> = n for <vac|vac> = n", std::abs(bn - n), 1e-10);
  rep.data["bell_norm_sq_unit_vacuum"] = std::real(inner(bell, bell));
  return rep;
}

Report fourier_reduction(int n, std::uint64_t seed) {
  const GroupTable G = build_cyclic(n);
  const ConjugacyData cd = conjugacy(G);
  const auto irreps = double_irreps(G, cd);
  const Lattice L = build_lattice(Topology::Torus, 3, 3);
  const auto states = random_states(G, L, 20, 16, seed);
  const int v = L.vertex(1, 1);
  const std::vector<Site> sites = {Site{v, L.face(1, 1)}, Site{v, L.face(0, 0)}};

  Report rep;
  rep.command = "fourier";
  double vert = 0, face = 0, gface = 0, proj = 0;
  for (int h = 0; h < n; ++h) vert = std::max(vert, op_distance(vertex_action(G, L, h, v), toric_vertex(G, L, h, v), states));
  for (const Site& s : sites) {
    OpSum g_generic;
    for (int a = 0; a < n; ++a) {
      face = std::max(face, op_distance(face_action(G, L, a, s), toric_face_projector(G, L, a, s), states));
      g_generic = g_generic + qpow(n, a) * face_action(G, L, a, s);
    }
    gface = std::max(gface, op_distance(g_generic, toric_face(G, L, 1, s), states));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        proj = std::max(proj, op_distance(site_projector(G, cd, find_irrep(irreps, cd, n, a, b), L, s),
                                          toric_projector(G, L, a, b, s), states));
  }
  rep.add("h> = prod X", vert, 1e-12);
  rep.add("delta_a> = P_a^g", face, 1e-12);
  rep.add("sum_a q^a delta_a> = prod Z", gface, 1e-12);
  rep.add("P_{{a},b} = P_a^g P_b^h", proj, 1e-12);
  return rep;
}

}  // namespace qdl
