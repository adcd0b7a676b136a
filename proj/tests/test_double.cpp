#include <doctest.h>

#include <algorithm>

#include "qdl/double.hpp"

using namespace qdl;

TEST_CASE("double product and antipode on basis elements") {
  const GroupTable G = build_s3();
  const int u = G.index_of("u"), v = G.index_of("v"), w = G.index_of("w"), vu = G.index_of("vu");
  for (int g = 0; g < G.order; ++g)
    for (int h = 0; h < G.order; ++h) {
      DoubleElement one_h = double_zero(G);  // 1 (x) h
      for (int f = 0; f < G.order; ++f) one_h(f, h) = 1.0;
      DoubleElement one_g = double_basis(G, g, G.id);
      const DoubleElement a = double_product(one_h, one_g);
      CHECK(distance(a, double_basis(G, G.conj(h, g), h)) < 1e-14);
      const DoubleElement d = double_basis(G, g, G.id);
      CHECK(distance(double_product(d, d), d) < 1e-14);
      const DoubleElement x = double_basis(G, g, h);
      CHECK(distance(double_antipode(double_antipode(x)), x) < 1e-14);
    }
  CHECK(distance(double_product(double_basis(G, u, v), double_basis(G, w, u)), double_basis(G, u, vu)) < 1e-14);
  CHECK(distance(double_antipode(double_basis(G, u, v)), double_basis(G, w, v)) < 1e-14);
  CHECK(distance(double_antipode(double_one(G)), double_one(G)) < 1e-14);
  CHECK(check_double_axioms(G).max_deviation() < 1e-12);
}

TEST_CASE("irreps of D(S3)") {
  const GroupTable G = build_s3();
  const ConjugacyData cd = conjugacy(G);
  const auto irreps = double_irreps(G, cd);
  std::vector<int> dims;
  int sum = 0;
  for (const auto& R : irreps) {
    dims.push_back(R.dim());
    sum += R.dim() * R.dim();
  }
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<int>{1, 1, 2, 2, 2, 2, 3, 3});
  CHECK(sum == 36);
  // representation property on all basis pairs
  double dev = 0;
  for (const auto& R : irreps)
    for (int a = 0; a < G.order; ++a)
      for (int b = 0; b < G.order; ++b)
        for (int c = 0; c < G.order; ++c)
          for (int d = 0; d < G.order; ++d) {
            const DoubleElement x = double_basis(G, a, b), y = double_basis(G, c, d);
            const CMatrix lhs = irrep_matrix(G, cd, R, double_product(x, y));
            const CMatrix rhs = irrep_matrix(G, cd, R, x) * irrep_matrix(G, cd, R, y);
            dev = std::max(dev, (lhs - rhs).cwiseAbs().maxCoeff());
          }
  CHECK(dev < 1e-12);
}

TEST_CASE("projectors") {
  const GroupTable G = build_s3();
  const ConjugacyData cd = conjugacy(G);
  const int e = G.id, u = G.index_of("u"), v = G.index_of("v"), w = G.index_of("w");
  for (const auto& R : double_irreps(G, cd)) {
    const DoubleElement P = projector(G, cd, R);
    if (R.cls == cd.class_of[e] && R.irrep.dim == 1 && std::abs(R.irrep.character(u) + 1.0) < 1e-12) {
      // sign chargeon: (1/6)(e - u - v - w + uv + vu) in the group factor, delta_e in front
      DoubleElement want = double_zero(G);
      for (int h = 0; h < G.order; ++h) want(e, h) = (G.element_order(h) == 2 ? -1.0 : 1.0) / 6.0;
      CHECK(distance(P, want) < 1e-12);
    }
    if (R.cls == cd.class_of[u] && R.irrep.dim == 1 && std::abs(R.irrep.character(u) - 1.0) < 1e-12) {
      DoubleElement want = double_zero(G);
      for (int c : {u, v, w}) {
        want(c, e) = 0.5;
        want(c, c) = 0.5;
      }
      CHECK(distance(P, want) < 1e-12);
    }
  }
  CHECK(verify_projector_family(G).max_deviation() < 1e-12);
  CHECK(verify_projector_family(build_cyclic(4)).count == 16);
  CHECK(verify_projector_family(build_cyclic(4)).max_deviation() < 1e-12);
  const auto triv = verify_projector_family(build_cyclic(1));
  CHECK(triv.count == 1);
  CHECK(triv.max_deviation() < 1e-12);
}

TEST_CASE("Z_n projectors factorise") {
  const int n = 3;
  const GroupTable G = build_cyclic(n);
  const ConjugacyData cd = conjugacy(G);
  const Complex q = std::polar(1.0, 2 * 3.141592653589793 / n);
  for (const auto& R : double_irreps(G, cd)) {
    const int i = cd.rep[R.cls];
    int j = 0;
    while (std::abs(R.irrep.mats[1](0, 0) - std::pow(q, j)) > 1e-9) ++j;
    DoubleElement want = double_zero(G);
    for (int l = 0; l < n; ++l) want(i, l) = std::pow(q, -j * l) / double(n);
    CHECK(distance(projector(G, cd, R), want) < 1e-12);
  }
}

TEST_CASE("Peter-Weyl map") {
  for (const GroupTable& G : {build_s3(), build_cyclic(4)}) {
    const PhiReport r = check_peter_weyl(G);
    CHECK(r.max_deviation() < 1e-10);
  }
}
