#include <doctest.h>

#include "qdl/error.hpp"
#include "qdl/hopf_lattice.hpp"
#include "qdl/io.hpp"
#include "qdl/site_ops.hpp"

using namespace qdl;

namespace {

double max_abs(const CVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Sweedler algebra written out by hand in the basis 1, g, x, gx.
CVector sw(double a, double b, double c, double d) {
  CVector v(4);
  v << a, b, c, d;
  return v;
}

bool throws_kind(ErrorKind k, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == k;
  }
  return false;
}

}  // namespace

TEST_CASE("builtin Hopf algebras satisfy the axioms") {
  for (const char* name : {"sweedler", "cz3", "fz3", "cs3", "fs3", "fz4"}) {
    const HopfAlgebra H = builtin_hopf(name);
    CHECK_MESSAGE(verify_hopf(H).passed(), name);
    const DoubleH DH = drinfeld_double(H);
    CHECK(DH.D.dim == H.dim * H.dim);
    CHECK_MESSAGE(verify_hopf(DH.D).passed(), name);
  }
  CHECK_THROWS_AS(builtin_hopf("q8"), Error);
}

TEST_CASE("sweedler products and integrals by hand") {
  const HopfAlgebra H = builtin_hopf("sweedler");
  const CVector one = sw(1, 0, 0, 0), g = sw(0, 1, 0, 0), x = sw(0, 0, 1, 0), gx = sw(0, 0, 0, 1);
  CHECK(max_abs(H.product(g, g) - one) < 1e-15);
  CHECK(max_abs(H.product(x, x)) < 1e-15);
  CHECK(max_abs(H.product(x, g) + gx) < 1e-15);  // xg = -gx
  // hand-derived left integral (1 + g) x: g Lambda = Lambda and x Lambda = 0
  const CVector lam = sw(0, 0, 1, 1);
  for (const CVector& h : {one, g, x, gx})
    CHECK(max_abs(H.product(h, lam) - (H.counit.transpose() * h)(0) * lam) < 1e-15);
  // the stored integral is proportional to it and has eps(Lambda) = 0
  const Complex ratio = H.lambda(2);
  CHECK(std::abs(ratio) > 1e-12);
  CHECK(max_abs(H.lambda - ratio * lam) < 1e-12);
  CHECK(std::abs((H.counit.transpose() * H.lambda)(0)) < 1e-15);
  CHECK_FALSE(H.normalized);
  // S^2 x = -x, so S is not involutive
  CHECK(max_abs(H.S * H.S * x + x) < 1e-15);
}

TEST_CASE("group algebra integrals are normalized") {
  for (const char* name : {"cs3", "fz4"}) {
    const HopfAlgebra H = builtin_hopf(name);
    CHECK(H.normalized);
    CHECK(std::abs((H.counit.transpose() * H.lambda)(0) - 1.0) < 1e-12);
  }
  // Lambda = average of the group elements for C Z_3
  const HopfAlgebra c = builtin_hopf("cz3");
  CHECK(max_abs(c.lambda - CVector::Constant(3, 1.0 / 3)) < 1e-12);
}

TEST_CASE("hopf json round trip and errors") {
  for (const char* name : {"sweedler", "cs3"}) {
    const HopfAlgebra H = builtin_hopf(name);
    const HopfAlgebra K = hopf_from_json(hopf_to_json(H));
    CHECK(K.dim == H.dim);
    double d = 0;
    for (std::size_t k = 0; k < H.mul.size(); ++k)
      d = std::max({d, std::abs(H.mul[k] - K.mul[k]), std::abs(H.com[k] - K.com[k])});
    CHECK(d == 0.0);
    CHECK(max_abs(K.lambda - H.lambda) < 1e-12);
  }
  CHECK(hopf_from_json({{"kind", "function"}, {"group", "z3"}}).dim == 3);
  CHECK(hopf_from_json({{"kind", "group"}, {"group", {{"kind", "cyclic"}, {"n", 2}}}}).dim == 2);
  CHECK(throws_kind(ErrorKind::ConfigError, [] { hopf_from_json({{"kind", "taft"}}); }));
  Json bad = hopf_to_json(builtin_hopf("sweedler"));
  bad["antipode"] = Json::array({Json::array({Json::array({1, 0})})});
  CHECK(throws_kind(ErrorKind::BadDimensions, [&] { hopf_from_json(bad); }));
  // a broken antipode is caught by the axiom check
  Json wrong = hopf_to_json(builtin_hopf("sweedler"));
  wrong["antipode"][2][3] = Json::array({2, 0});
  CHECK(throws_kind(ErrorKind::NotAHopfAlgebra, [&] { hopf_from_json(wrong); }));
}

TEST_CASE("site action is a D(H) representation in every case") {
  const Lattice L = build_lattice(Topology::Plane, 3, 3);
  for (const char* name : {"cs3", "fz4", "sweedler"}) {
    const HopfAlgebra H = builtin_hopf(name);
    const DoubleH DH = drinfeld_double(H);
    const auto states = random_hstates(H.dim, L.num_edges(), 6, 3, 11);
    for (int k = 0; k < 4; ++k) {
      const int p = L.sector_face[L.vertex(1, 1)][k];
      const HSite s = hopf_site(H, L, Site{L.vertex(1, 1), p});
      CHECK(s.sector == k);
      CHECK_MESSAGE(site_rep_deviation(DH, s, states) < 1e-10, name << " case " << k);
    }
  }
}

TEST_CASE("flipping the antipode placement breaks sweedler") {
  const Lattice L = build_lattice(Topology::Plane, 3, 3);
  const HopfAlgebra H = builtin_hopf("sweedler");
  const DoubleH DH = drinfeld_double(H);
  const auto states = random_hstates(H.dim, L.num_edges(), 4, 3, 12);
  double worst = 0;
  for (int k = 0; k < 4; ++k) {
    const HSite s = hopf_site(H, L, Site{L.vertex(1, 1), L.sector_face[L.vertex(1, 1)][k]}, SignRule::Flipped);
    worst = std::max(worst, site_rep_deviation(DH, s, states));
  }
  CHECK(worst > 0.1);
  // with S^2 = id the flip is harmless
  const HopfAlgebra C = builtin_hopf("cs3");
  const DoubleH DC = drinfeld_double(C);
  const HSite s = hopf_site(C, L, L.site(1, 1, 0, 0), SignRule::Flipped);
  CHECK(site_rep_deviation(DC, s, random_hstates(C.dim, L.num_edges(), 4, 3, 13)) < 1e-10);
}

TEST_CASE("integral operators") {
  const Lattice L = build_lattice(Topology::Plane, 3, 3);
  {
    // sweedler: eps(Lambda) = 0 makes A nilpotent
    const HopfAlgebra H = builtin_hopf("sweedler");
    const HSite s = hopf_site(H, L, L.site(1, 1, 1, 1));
    const LocalOp A = integral_vertex(H, s);
    double sq = 0, once = 0;
    for (const auto& psi : random_hstates(H.dim, L.num_edges(), 6, 3, 14)) {
      sq = std::max(sq, norm(apply(A, apply(A, psi))));
      once = std::max(once, norm(apply(A, psi)));
    }
    CHECK(sq < 1e-12);
    CHECK(once > 1e-3);
    CHECK(check_integral_ops(H).passed());
  }
  const HopfAlgebra C = builtin_hopf("cs3");
  CHECK(check_integral_ops(C).passed());
  // for C G the integral ops are A(v) and B(p) of the group model
  const GroupTable G = build_s3();
  const Site t = L.site(1, 1, 1, 1);
  const HSite s = hopf_site(C, L, t);
  const auto gs = random_states(G, L, 4, 3, 15);
  double d = 0;
  for (const auto& x : gs) {
    const HState hx = hstate_from_group(x);
    d = std::max(d, norm(apply(integral_vertex(C, s), hx) - hstate_from_group(apply(a_op(G, L, t.v), x))));
  }
  CHECK(d < 1e-12);
}

TEST_CASE("triangle covariance pattern") {
  const HopfAlgebra H = builtin_hopf("sweedler");
  const Report r = check_triangle_covariance(H);
  CHECK(r.passed());
  CHECK(r.data["wrong_side_min_deviation"].get<double>() > 0.1);
}

TEST_CASE("ribbon module maps") {
  const Lattice L = build_lattice(Topology::Plane, 4, 4);
  auto S = [&](int vx, int vy, int px, int py) { return L.site(vx, vy, px, py); };
  const Ribbon elementary = ribbon_from_sites(L, {S(1, 1, 0, 0), S(1, 1, 1, 0), S(2, 1, 1, 0)});
  const Ribbon three = ribbon_from_sites(L, {S(1, 2, 0, 1), S(1, 1, 0, 1), S(1, 1, 0, 0), S(1, 0, 0, 0)});
  REQUIRE(classify_ribbon(L, three) == RibbonClass::StronglyOpen);
  {
    const HopfAlgebra H = builtin_hopf("cs3");
    const DoubleH DH = drinfeld_double(H);
    const auto states = random_hstates(H.dim, L.num_edges(), 4, 2, 16);
    for (const Ribbon* r : {&elementary, &three}) {
      const BimodDeviation m = ribbon_module_deviation(DH, L, *r, -1, states);
      CHECK(m.left < 1e-10);
      CHECK(m.right < 1e-10);
    }
  }
  const HopfAlgebra H = builtin_hopf("sweedler");
  const DoubleH DH = drinfeld_double(H);
  const auto states = random_hstates(H.dim, L.num_edges(), 6, 3, 17);
  const BimodDeviation minus = ribbon_module_deviation(DH, L, three, -1, states);
  const BimodDeviation plus = ribbon_module_deviation(DH, L, three, +1, states);
  CHECK(minus.left < 1e-10);
  CHECK(plus.right < 1e-10);
  CHECK(minus.right > 0.1);
  CHECK(plus.left > 0.1);
}

TEST_CASE("ribbon preconditions for D(H)") {
  const Lattice L = build_lattice(Topology::Plane, 4, 4);
  auto S = [&](int vx, int vy, int px, int py) { return L.site(vx, vy, px, py); };
  const HopfAlgebra H = builtin_hopf("sweedler");
  const DoubleH DH = drinfeld_double(H);
  const Ribbon loop = ribbon_from_sites(
      L, {S(2, 1, 1, 0), S(2, 0, 1, 0), S(1, 0, 1, 0), S(1, 1, 1, 0), S(2, 1, 1, 0), S(2, 1, 2, 0), S(3, 1, 2, 0)});
  CHECK(classify_ribbon(L, loop) == RibbonClass::Open);
  CHECK(throws_kind(ErrorKind::NotStronglyOpen, [&] { ribbon_module_deviation(DH, L, loop, -1, {}); }));
  // clockwise dual triangle
  const Triangle cw = make_triangle(L, S(1, 1, 1, 1), S(1, 1, 1, 0));
  CHECK(throws_kind(ErrorKind::UnsupportedOrientation, [&] { dual_triangle_op(H, L, cw, H.unit, -1); }));
  const Ribbon left = ribbon_from_sites(L, {S(1, 1, 1, 1), S(1, 1, 1, 0), S(2, 1, 1, 0)});
  CHECK(throws_kind(ErrorKind::UnsupportedOrientation, [&] { ribbon_family(DH, L, left, -1); }));
}

TEST_CASE("group algebra dictionary") {
  CHECK(check_group_reduction(build_s3()).passed());
  CHECK(check_group_reduction(build_cyclic(3)).passed());
}

TEST_CASE("bimodule formulation for cz3") {
  const Report r = check_fbimod(builtin_hopf("cz3"));
  CHECK(r.passed());
  CHECK(r.data["rank_phi_to_L"].get<int>() == 9);
  CHECK_THROWS_AS(check_fbimod(builtin_hopf("sweedler")), Error);
}

TEST_CASE("hopf vacuum") {
  const Lattice L = build_lattice(Topology::Plane, 3, 3);
  const HopfAlgebra H = builtin_hopf("cz2");
  const HState vac = hopf_vacuum(H, L);
  CHECK(std::abs(norm(vac) - 1.0) < 1e-12);
  // matches the group model vacuum
  const GroupTable G = build_cyclic(2);
  CHECK(norm(vac - hstate_from_group(vacuum_plane(G, L))) < 1e-12);
}

TEST_CASE("hopf-verify on sweedler") {
  const Report r = hopf_verify("sweedler");
  for (const auto& c : r.checks) CHECK_MESSAGE(c.passed, c.name);
  CHECK(r.data["involutive"] == false);
}
