#include <doctest.h>

#include <sstream>

#include "qdl/error.hpp"
#include "qdl/fixtures.hpp"
#include "qdl/io.hpp"
#include "qdl/site_ops.hpp"

using namespace qdl;

TEST_CASE("group json round trip") {
  for (const GroupTable& G : {build_cyclic(4), build_s3()}) {
    const GroupTable H = group_from_json(group_to_json(G));
    CHECK(H.order == G.order);
    for (int a = 0; a < G.order; ++a)
      for (int b = 0; b < G.order; ++b) CHECK(H.mul(a, b) == G.mul(a, b));
  }
  CHECK(group_from_name("z5").order == 5);
  CHECK(group_from_name("s3").order == 6);
  CHECK_THROWS_AS(group_from_name("q8"), Error);
  // a non-associative table is rejected
  Json bad = {{"kind", "table"}, {"mul", {{0, 1}, {1, 1}}}};
  CHECK_THROWS_AS(group_from_json(bad), Error);
}

TEST_CASE("ribbon json forms agree") {
  const Lattice L = build_lattice(Topology::Plane, 3, 3);
  const Json& c = fixture("creation");
  const Ribbon a = ribbon_from_json(L, c.at("create"));
  const Json back = ribbon_to_json(L, a);
  const Ribbon b = ribbon_from_json(L, Json{{"sites", back.at("sites")}});
  REQUIRE(a.triangles.size() == b.triangles.size());
  for (std::size_t k = 0; k < a.triangles.size(); ++k) {
    CHECK(a.triangles[k].kind == b.triangles[k].kind);
    CHECK(a.triangles[k].edge == b.triangles[k].edge);
  }
  CHECK(fixture("braid").at("version").get<int>() >= 1);
  CHECK_THROWS_AS(fixture("nope"), Error);
}

TEST_CASE("state dump round trip") {
  const GroupTable G = build_s3();
  const Lattice L = build_lattice(Topology::Torus, 2, 2);
  const SparseState vac = vacuum_state(G, L);
  std::stringstream ss;
  write_state(ss, vac, {{"group", "s3"}});
  Json meta;
  const SparseState back = read_state(ss, G, &meta);
  CHECK(meta.at("group") == "s3");
  CHECK(back.support() == vac.support());
  CHECK(norm(back - vac) < 1e-15);
  CHECK(std::abs(complex_from_json(complex_to_json(Complex(1.5, -2))) - Complex(1.5, -2)) == 0);
}
