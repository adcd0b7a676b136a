#include <doctest.h>

#include "qdl/double.hpp"
#include "qdl/error.hpp"
#include "qdl/site_ops.hpp"

using namespace qdl;

namespace {

std::vector<Site> all_sites(const Lattice& L) {
  std::vector<Site> out;
  for (int p = 0; p < L.num_faces(); ++p)
    for (int v : L.faces[p].corner) out.push_back(Site{v, p});
  return out;
}

}  // namespace

TEST_CASE("Z_n vertex and face actions") {
  const int n = 5;
  const GroupTable G = build_cyclic(n);
  const Lattice L = build_lattice(Topology::Torus, 3, 3);
  std::vector<int> cfg(L.num_edges());
  for (int e = 0; e < L.num_edges(); ++e) cfg[e] = (3 * e + 1) % n;
  const SparseState s = basis_state(G, L.num_edges(), cfg);
  const int v = L.vertex(1, 1);
  const SparseState t = apply(vertex_action(G, L, 2, v), s);
  const auto out = t.codec.decode(t.entries[0].first);
  for (auto [e, outgoing] : L.star(v)) CHECK(out[e] == (cfg[e] + (outgoing ? 2 : n - 2)) % n);
  // g> eigenvalue: clockwise sum i + j - k - l
  const Face& f = L.faces[4];
  const int flux = ((cfg[f.edges[0]] + cfg[f.edges[1]] - cfg[f.edges[2]] - cfg[f.edges[3]]) % n + n) % n;
  for (int g = 0; g < n; ++g) {
    const double p = norm(apply(face_action(G, L, g, Site{f.corner[0], 4}), s));
    CHECK(p == doctest::Approx(g == flux ? 1.0 : 0.0));
  }
}

TEST_CASE("delta_e is cilium independent") {
  const GroupTable G = build_s3();
  const Lattice L = build_lattice(Topology::Torus, 3, 3);
  const auto states = random_states(G, L, 20, 12, 4);
  for (int c = 1; c < 4; ++c)
    CHECK(op_distance(face_action(G, L, G.id, Site{L.faces[4].corner[0], 4}),
                      face_action(G, L, G.id, Site{L.faces[4].corner[c], 4}), states) < 1e-12);
  // but delta_u is not
  CHECK(op_distance(face_action(G, L, 1, Site{L.faces[4].corner[0], 4}),
                    face_action(G, L, 1, Site{L.faces[4].corner[1], 4}), states) > 1e-3);
}

TEST_CASE("site representation") {
  {
    const GroupTable G = build_cyclic(3);
    const Lattice L = build_lattice(Topology::Torus, 3, 3);
    const auto states = random_states(G, L, 20, 8, 1);
    for (const Site& s : all_sites(L)) CHECK(check_site_representation(G, L, s, states).max_deviation() < 1e-10);
  }
  {
    const GroupTable G = build_s3();
    const Lattice L = build_lattice(Topology::Plane, 3, 3);
    const auto states = random_states(G, L, 20, 8, 2);
    const int v = L.vertex(1, 1);
    for (int k = 0; k < 4; ++k)
      CHECK(check_site_representation(G, L, Site{v, L.sector_face[v][k]}, states).max_deviation() < 1e-10);
  }
  {
    const GroupTable G = build_cyclic(1);
    const Lattice L = build_lattice(Topology::Torus, 2, 2);
    const auto states = random_states(G, L, 3, 1, 1);
    CHECK(op_distance(a_op(G, L, 0), op_identity(), states) < 1e-15);
    CHECK(op_distance(b_op(G, L, 0), op_identity(), states) < 1e-15);
  }
  const GroupTable G = build_s3();
  const Lattice L = build_lattice(Topology::Plane, 3, 3);
  CHECK_THROWS_AS(check_site_representation(G, L, Site{L.vertex(2, 2), 0}, {}), Error);
}

TEST_CASE("A and B projectors commute") {
  const GroupTable G = build_s3();
  const Lattice L = build_lattice(Topology::Torus, 3, 3);
  const auto states = random_states(G, L, 20, 10, 3);
  double dev = 0;
  std::vector<OpSum> A, B;
  for (int v = 0; v < L.num_vertices(); ++v) A.push_back(a_op(G, L, v));
  for (int p = 0; p < L.num_faces(); ++p) B.push_back(b_op(G, L, p));
  for (const auto& a : A) dev = std::max(dev, op_distance(compose(G, a, a), a, states));
  for (const auto& b : B) dev = std::max(dev, op_distance(compose(G, b, b), b, states));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = i + 1; j < A.size(); ++j)
      dev = std::max(dev, op_distance(compose(G, A[i], A[j]), compose(G, A[j], A[i]), states));
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = i + 1; j < B.size(); ++j)
      dev = std::max(dev, op_distance(compose(G, B[i], B[j]), compose(G, B[j], B[i]), states));
  for (const auto& a : A)
    for (const auto& b : B) dev = std::max(dev, op_distance(compose(G, a, b), compose(G, b, a), states));
  CHECK(dev < 1e-10);
}

TEST_CASE("vacuum states") {
  {
    const GroupTable G = build_cyclic(2);
    const Lattice L = build_lattice(Topology::Plane, 3, 3);
    const SparseState vac = vacuum_plane(G, L);
    CHECK(std::abs(energy(G, L, vac)) < 1e-12);
    CHECK(vac.support() == 256u);
    CHECK_THROWS_AS(vacuum_plane(G, build_lattice(Topology::Torus, 2, 2)), Error);
  }
  const GroupTable G = build_s3();
  const ConjugacyData cd = conjugacy(G);
  const Lattice L = build_lattice(Topology::Torus, 2, 2);
  const SparseState vac = vacuum_state(G, L);
  CHECK(std::abs(energy(G, L, vac)) < 1e-12);
  const auto irreps = double_irreps(G, cd);
  for (const Site& s : all_sites(L)) {
    for (int h = 0; h < G.order; ++h) {
      CHECK(norm(apply(vertex_action(G, L, h, s.v), vac) - vac) < 1e-12);
      const double want = h == G.id ? 0.0 : 1.0;
      CHECK(norm(apply(face_action(G, L, h, s), vac) - vac) == doctest::Approx(want).epsilon(1e-12));
    }
    for (const auto& R : irreps) {
      const double p = site_projector_measure(G, cd, R, L, s, vac).second;
      const bool trivial = R.cls == cd.class_of[G.id] && R.dim() == 1 && std::abs(R.irrep.character(1) - 1.0) < 1e-12;
      CHECK(p == doctest::Approx(trivial ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("projector probabilities sum to one") {
  const GroupTable G = build_s3();
  const ConjugacyData cd = conjugacy(G);
  const Lattice L = build_lattice(Topology::Torus, 3, 3);
  const Site s{L.vertex(1, 1), L.face(0, 0)};
  for (const auto& psi : random_states(G, L, 5, 20, 8)) {
    double total = 0;
    for (const auto& R : double_irreps(G, cd)) total += site_projector_measure(G, cd, R, L, s, psi).second;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("vacuum dimension and kappa basis") {
  const GroupTable z2 = build_cyclic(2), z3 = build_cyclic(3), s3 = build_s3();
  CHECK(vacuum_dimension(z2, build_lattice(Topology::Torus, 2, 2)) == 4);
  CHECK(vacuum_dimension(z2, build_lattice(Topology::Torus, 3, 3)) == 4);
  CHECK(vacuum_dimension(z2, build_lattice(Topology::Torus, 2, 3)) == 4);
  CHECK(vacuum_dimension(z3, build_lattice(Topology::Torus, 3, 3)) == 9);
  CHECK(vacuum_dimension(s3, build_lattice(Topology::Torus, 2, 2)) == 8);
  CHECK(vacuum_dimension(z3, build_lattice(Topology::Plane, 3, 3)) == 1);
  CHECK_THROWS_AS(vacuum_dimension(s3, build_lattice(Topology::Torus, 3, 3), 1000), Error);

  const Lattice L = build_lattice(Topology::Torus, 2, 2);
  const VacuumBasis vb = kappa_basis(z2, L);
  CHECK(vb.kappa.size() == 4u);
  for (std::size_t i = 0; i < vb.kappa.size(); ++i) {
    for (int v = 0; v < L.num_vertices(); ++v) CHECK(norm(apply(a_op(z2, L, v), vb.kappa[i]) - vb.kappa[i]) < 1e-12);
    for (int p = 0; p < L.num_faces(); ++p) CHECK(norm(apply(b_op(z2, L, p), vb.kappa[i]) - vb.kappa[i]) < 1e-12);
    for (std::size_t j = 0; j < vb.kappa.size(); ++j) {
      const double want = i == j ? double(vb.orbit_size[i]) : 0.0;
      CHECK(std::abs(inner(vb.kappa[i], vb.kappa[j]) - want) < 1e-12);
    }
  }
  CHECK(kappa_basis(s3, L).kappa.size() == 8u);
}
