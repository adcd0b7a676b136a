#include <doctest.h>

#include "qdl/double.hpp"
#include "qdl/error.hpp"
#include "qdl/fixtures.hpp"
#include "qdl/io.hpp"
#include "qdl/ribbon.hpp"
#include "qdl/site_ops.hpp"

using namespace qdl;

namespace {

struct Fx {
  Lattice L = build_lattice(Topology::Plane, 3, 3);
  Ribbon xi = ribbon_from_json(L, fixture("s3_qubit").at("xi"));
  Ribbon xi_alt = ribbon_from_json(L, fixture("s3_qubit").at("xi_alt"));
  Ribbon xi_prime = ribbon_from_json(L, fixture("s3_qubit").at("xi_prime"));
  Ribbon xi_pp = ribbon_from_json(L, fixture("s3_qubit").at("xi_pp"));
};

const DoubleIrrep& irrep_named(const GroupTable& G, const ConjugacyData& cd, const std::vector<DoubleIrrep>& all,
                               int rep, int dim, Complex chi_at, int at) {
  for (const auto& R : all)
    if (cd.rep[R.cls] == rep && R.irrep.dim == dim && std::abs(R.irrep.character(at) - chi_at) < 1e-9) return R;
  throw Error(ErrorKind::ConfigError, "irrep not found");
}

}  // namespace

TEST_CASE("triangle operators") {
  const GroupTable G = build_s3();
  const Fx f;
  const auto states = random_states(G, f.L, 20, 10, 1);
  const Triangle direct = f.xi.triangles[0], dual = f.xi.triangles[2];
  REQUIRE(direct.kind == TriangleKind::Direct);
  REQUIRE(dual.kind == TriangleKind::Dual);
  for (int a = 0; a < G.order; ++a)
    for (int b = 0; b < G.order; ++b) {
      const OpSum tt = compose(G, triangle_op(G, f.L, direct, a), triangle_op(G, f.L, direct, b));
      CHECK(op_distance(tt, a == b ? triangle_op(G, f.L, direct, a) : op_zero(), states) < 1e-12);
      const OpSum ll = compose(G, triangle_op(G, f.L, dual, a), triangle_op(G, f.L, dual, b));
      CHECK(op_distance(ll, triangle_op(G, f.L, dual, G.mul(a, b)), states) < 1e-12);
    }
  CHECK(op_distance(triangle_op(G, f.L, dual, G.id), op_identity(), states) < 1e-15);
  // single triangles are too short to classify, so use the raw monomial
  const Ribbon tau = ribbon_from_triangles(f.L, {direct});
  const Ribbon taustar = ribbon_from_triangles(f.L, {dual});
  for (int h = 0; h < G.order; ++h)
    for (int g = 0; g < G.order; ++g) {
      const OpSum d{{ribbon_monomial(G, f.L, tau, h, g)}};
      CHECK(op_distance(d, triangle_op(G, f.L, direct, g), states) < 1e-12);
      const OpSum m{{ribbon_monomial(G, f.L, taustar, h, g)}};
      CHECK(op_distance(m, g == G.id ? triangle_op(G, f.L, dual, h) : op_zero(), states) < 1e-12);
    }
}

TEST_CASE("ribbon algebra") {
  const Fx f;
  for (const GroupTable& G : {build_s3(), build_cyclic(3)}) {
    const auto states = random_states(G, f.L, 20, 6, 2);
    CHECK(check_ribbon_algebra(G, f.L, f.xi, states).max_deviation() < 1e-10);
  }
  // delta ribbons commute across ribbons
  const GroupTable G = build_s3();
  const auto states = random_states(G, f.L, 20, 6, 3);
  double dev = 0;
  for (int g = 0; g < G.order; ++g)
    for (int g2 = 0; g2 < G.order; ++g2) {
      const OpSum a = ribbon_op(G, f.L, f.xi, G.id, g), b = ribbon_op(G, f.L, f.xi_pp, G.id, g2);
      dev = std::max(dev, op_distance(compose(G, a, b), compose(G, b, a), states));
    }
  CHECK(dev < 1e-12);
}

TEST_CASE("ribbon commutation relations") {
  const Fx f;
  for (const GroupTable& G : {build_cyclic(3), build_s3(), build_cyclic(1)}) {
    const auto states = random_states(G, f.L, 20, 4, 4);
    const RibcomReport r = check_ribbon_commutation(G, f.L, f.xi, states);
    CHECK(r.max_deviation() < 1e-10);
  }
  const GroupTable G = build_s3();
  const Ribbon touching = ribbon_from_sites(f.L, {f.L.site(0, 0, 0, 0), f.L.site(0, 1, 0, 0)});
  CHECK_THROWS_AS(check_ribbon_commutation(G, f.L, touching, {}), Error);
}

TEST_CASE("q-commutation for Z_n") {
  const int n = 3;
  const GroupTable G = build_cyclic(n);
  const Fx f;
  const auto states = random_states(G, f.L, 20, 6, 5);
  const Site s0 = f.xi.start();
  const Complex q = std::polar(1.0, 2 * 3.141592653589793 / n);
  OpSum g_op;  // g> = sum_k q^k delta_k>
  for (int k = 0; k < n; ++k) g_op = g_op + std::pow(q, k) * face_action(G, f.L, k, s0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const OpSum F = ribbon_op(G, f.L, f.xi, a, b);
      CHECK(op_distance(compose(G, g_op, F), std::pow(q, a) * compose(G, F, g_op), states) < 1e-10);
    }
}

TEST_CASE("group basis on the plane") {
  const GroupTable G = build_cyclic(3);
  const Fx f;
  const SparseState vac = vacuum_plane(G, f.L);
  const auto basis = group_basis(G, f.L, f.xi, vac);
  const CMatrix gram = gram_matrix(basis);
  CHECK((gram - CMatrix::Identity(9, 9) / 3.0).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(rank_of_span(basis) == 9);
  for (int h = 0; h < 3; ++h)
    for (int g = 0; g < 3; ++g)
      CHECK(std::abs(inner(vac, apply(ribbon_op(G, f.L, f.xi, h, g), vac)) - (h == 0 ? 1.0 / 3 : 0.0)) < 1e-12);
  CHECK(check_endpoint_actions(G, f.L, f.xi, basis).max_deviation() < 1e-12);
  // isotopic routes
  const auto alt = group_basis(G, f.L, f.xi_alt, vac);
  for (std::size_t k = 0; k < basis.size(); ++k) CHECK(norm(basis[k] - alt[k]) < 1e-12);
  CHECK(local_vacuum_deviation(G, f.L, {f.xi.start(), f.xi.end()}, basis) < 1e-12);
  const GroupTable z2 = build_cyclic(2);
  CHECK(rank_of_span(group_basis(z2, f.L, f.xi, vacuum_plane(z2, f.L))) == 4);
}

TEST_CASE("closed ribbon on the vacuum") {
  const Lattice T = build_lattice(Topology::Torus, 3, 3);
  const Ribbon z = boundary_ribbon(T, T.site(1, 1, 1, 1));
  for (const GroupTable& G : {build_cyclic(3), build_cyclic(2)}) {
    const SparseState vac = vacuum_state(G, T);
    for (int h = 0; h < G.order; ++h)
      for (int g = 0; g < G.order; ++g) {
        const SparseState out = apply(ribbon_op(G, T, z, h, g), vac);
        CHECK(norm(out - (g == G.id ? vac : Complex(0.0) * vac)) < 1e-12);
      }
  }
}

TEST_CASE("quasiparticle ribbons for S3") {
  const GroupTable G = build_s3();
  const ConjugacyData cd = conjugacy(G);
  const auto all = double_irreps(G, cd);
  const Fx f;
  const auto states = random_states(G, f.L, 20, 6, 6);
  const int e = G.id, u = G.index_of("u"), uv = G.index_of("uv"), vu = G.index_of("vu");
  const DoubleIrrep& tau = irrep_named(G, cd, all, e, 2, -1.0, uv);
  const DoubleIrrep& sigma = irrep_named(G, cd, all, e, 1, -1.0, u);
  const DoubleIrrep& triv = irrep_named(G, cd, all, e, 1, 1.0, u);
  const Complex omega = std::polar(1.0, 2 * 3.141592653589793 / 3);
  const DoubleIrrep* om = nullptr;
  for (const auto& R : all)
    if (cd.rep[R.cls] == uv && (std::abs(R.irrep.character(uv) - omega) < 1e-9 ||
                                std::abs(R.irrep.character(uv) - std::conj(omega)) < 1e-9))
      om = &R;
  REQUIRE(om);

  auto F = [&](int h, int g) { return ribbon_op(G, f.L, f.xi, h, g); };
  const OpSum Wtau = trace_ribbon(G, cd, f.L, f.xi, tau);
  CHECK(op_distance(Wtau, Complex(2.0) * F(e, e) - F(e, uv) - F(e, vu), states) < 1e-12);
  CHECK(op_distance(Wtau, chargeon_trace(G, f.L, f.xi, tau.irrep), states) < 1e-12);
  const OpSum Wsig = trace_ribbon(G, cd, f.L, f.xi, sigma), Wone = trace_ribbon(G, cd, f.L, f.xi, triv);
  CHECK(op_distance(compose(G, Wsig, Wsig), Wone, states) < 1e-12);
  CHECK(op_distance(Wone, op_identity(), states) < 1e-12);
  CHECK(op_distance(compose(G, Wsig, Wtau), Wtau, states) < 1e-12);
  const OpSum Wom = trace_ribbon(G, cd, f.L, f.xi, *om);
  CHECK(op_distance(adjoint(G, Wom), Wom, states) < 1e-12);
  // dagger law against the conjugate data, every irrep and label pair
  double dev = 0;
  for (const auto& R : all)
    for (int a = 0; a < R.dim(); ++a)
      for (int b = 0; b < R.dim(); ++b)
        dev = std::max(dev, op_distance(adjoint(G, quasiparticle_ribbon(G, cd, f.L, f.xi, R, a, b)),
                                        quasiparticle_ribbon_dual(G, cd, f.L, f.xi, R, a, b), states));
  CHECK(dev < 1e-12);
}

TEST_CASE("quasiparticle composition") {
  const GroupTable G = build_s3();
  const ConjugacyData cd = conjugacy(G);
  const Fx f;
  // xi_pp then a continuation to the far corner
  const Ribbon second = ribbon_from_sites(f.L, {f.L.site(0, 2, 0, 1), f.L.site(1, 2, 0, 1), f.L.site(1, 2, 1, 1),
                                                 f.L.site(2, 2, 1, 1)});
  const Ribbon both = concat_ribbons(f.L, f.xi_pp, second);
  const auto states = random_states(G, f.L, 20, 6, 7);
  double dev = 0;
  for (const auto& R : double_irreps(G, cd))
    for (int a = 0; a < R.dim(); ++a)
      for (int b = 0; b < R.dim(); ++b) {
        OpSum sum;
        for (int w = 0; w < R.dim(); ++w)
          sum = sum + compose(G, quasiparticle_ribbon(G, cd, f.L, second, R, w, b),
                              quasiparticle_ribbon(G, cd, f.L, f.xi_pp, R, a, w));
        dev = std::max(dev, op_distance(quasiparticle_ribbon(G, cd, f.L, both, R, a, b), sum, states));
      }
  CHECK(dev < 1e-10);
}

TEST_CASE("Z_n Fourier ribbons") {
  const int n = 3;
  const GroupTable G = build_cyclic(n);
  const ConjugacyData cd = conjugacy(G);
  const Fx f;
  const auto states = random_states(G, f.L, 20, 6, 8);
  const Complex q = std::polar(1.0, 2 * 3.141592653589793 / n);
  const Ribbon second = ribbon_from_sites(f.L, {f.L.site(2, 0, 1, 0), f.L.site(2, 1, 1, 0), f.L.site(2, 1, 1, 1),
                                                 f.L.site(2, 2, 1, 1)});
  const Ribbon both = concat_ribbons(f.L, f.xi, second);
  for (const auto& R : double_irreps(G, cd)) {
    const int i = cd.rep[R.cls];
    int j = 0;
    while (std::abs(R.irrep.mats[1](0, 0) - std::pow(q, j)) > 1e-9) ++j;
    OpSum want;
    for (int k = 0; k < n; ++k) want = want + std::pow(q, -j * k) * ribbon_op(G, f.L, f.xi, i, k);
    CHECK(op_distance(quasiparticle_ribbon(G, cd, f.L, f.xi, R, 0, 0), want, states) < 1e-12);
    CHECK(op_distance(quasiparticle_ribbon(G, cd, f.L, both, R, 0, 0),
                      compose(G, quasiparticle_ribbon(G, cd, f.L, second, R, 0, 0),
                              quasiparticle_ribbon(G, cd, f.L, f.xi, R, 0, 0)),
                      states) < 1e-12);
  }
}

TEST_CASE("block teleportation for Z_3") {
  const GroupTable G = build_cyclic(3);
  const ConjugacyData cd = conjugacy(G);
  const Fx f;
  const SparseState vac = vacuum_plane(G, f.L);
  const BlockTeleportReport r = block_teleport(G, cd, f.L, f.xi, vac);
  CHECK(r.sectors == 9);
  CHECK(r.min_norm > 1e-3);
  CHECK(r.left_right < 1e-10);
  CHECK(r.completeness < 1e-10);
  for (double w : r.weights) CHECK(w == doctest::Approx(1.0 / 9));
}

TEST_CASE("ribbon preconditions") {
  const GroupTable G = build_cyclic(2);
  const Fx f;
  const Ribbon dual = ribbon_from_sites(f.L, {f.L.site(1, 1, 0, 0), f.L.site(1, 1, 1, 0)});
  CHECK_THROWS_AS(ribbon_op(G, f.L, dual, 1, 0), Error);
}
