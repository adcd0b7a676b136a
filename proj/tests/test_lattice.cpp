#include <doctest.h>

#include <random>

#include "qdl/error.hpp"
#include "qdl/fixtures.hpp"
#include "qdl/io.hpp"
#include "qdl/lattice.hpp"

using namespace qdl;

namespace {

// Manual classification used as an oracle for classify_ribbon.
std::string manual_class(const std::vector<Site>& s) {
  if (s.front() == s.back()) return "closed";
  if (s.front().v == s.back().v || s.front().p == s.back().p) return "other";
  auto contiguous = [&](auto key) {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 2; j < s.size(); ++j)
        if (key(s[i]) == key(s[j]) && key(s[j - 1]) != key(s[i])) return false;
    return true;
  };
  const bool strong = contiguous([](const Site& x) { return x.v; }) && contiguous([](const Site& x) { return x.p; });
  return strong ? "strongly-open" : "open";
}

std::vector<Site> neighbours(const Lattice& L, const Site& s) {
  std::vector<Site> out;
  const int c = L.corner_of(s.v, s.p), k = L.sector_of(s.v, s.p);
  for (int d : {1, 3}) {
    out.push_back(Site{L.faces[s.p].corner[(c + d) % 4], s.p});
    const int p = L.sector_face[s.v][(k + d) % 4];
    if (p >= 0) out.push_back(Site{s.v, p});
  }
  return out;
}

}  // namespace

TEST_CASE("lattice counts") {
  const Lattice t2 = build_lattice(Topology::Torus, 2, 2);
  CHECK(t2.num_vertices() == 4);
  CHECK(t2.num_edges() == 8);
  CHECK(t2.num_faces() == 4);
  const Lattice t3 = build_lattice(Topology::Torus, 3, 3);
  CHECK(t3.num_vertices() == 9);
  CHECK(t3.num_edges() == 18);
  CHECK(t3.num_faces() == 9);
  const Lattice p3 = build_lattice(Topology::Plane, 3, 3);
  CHECK(p3.num_edges() == 12);
  CHECK(p3.num_faces() == 4);
  CHECK_THROWS_AS(build_lattice(Topology::Plane, 1, 3), Error);
  // every edge borders at most two faces
  for (const Lattice* L : {&t2, &t3, &p3}) {
    std::vector<int> count(L->num_edges(), 0);
    for (const auto& f : L->faces)
      for (int e : f.edges) ++count[e];
    for (int c : count) CHECK(c <= 2);
  }
}

TEST_CASE("face boundaries follow the arrows") {
  const Lattice L = build_lattice(Topology::Torus, 3, 3);
  for (const auto& f : L.faces)
    for (int k = 0; k < 4; ++k) {
      const Edge& e = L.edges[f.edges[k]];
      const int a = f.corner[k], b = f.corner[(k + 1) % 4];
      if (f.sign[k] > 0) {
        CHECK(e.src == a);
        CHECK(e.dst == b);
      } else {
        CHECK(e.src == b);
        CHECK(e.dst == a);
      }
    }
}

TEST_CASE("ribbon classification") {
  const Lattice P = build_lattice(Topology::Plane, 3, 3);
  const Json& fx = fixture("s3_qubit");
  const Ribbon xi = ribbon_from_json(P, fx.at("xi"));
  CHECK(classify_ribbon(P, xi) == RibbonClass::StronglyOpen);
  CHECK(classify_ribbon(P, reverse_ribbon(P, xi)) == RibbonClass::StronglyOpen);
  CHECK(reverse_ribbon(P, xi).start() == xi.end());

  // single dual triangle: endpoints share the vertex
  const Ribbon dual = ribbon_from_sites(P, {P.site(1, 1, 0, 0), P.site(1, 1, 1, 0)});
  CHECK(classify_ribbon(P, dual) == RibbonClass::Other);

  // revisits a face after leaving it
  const Lattice T = build_lattice(Topology::Torus, 3, 3);
  const Ribbon bent = ribbon_from_sites(
      T, {T.site(1, 1, 0, 0), T.site(1, 1, 1, 0), T.site(2, 1, 1, 0), T.site(2, 0, 1, 0), T.site(1, 0, 1, 0),
          T.site(1, 0, 0, 0), T.site(0, 0, 0, 0), T.site(0, 0, 2, 0)});
  CHECK(classify_ribbon(T, bent) == RibbonClass::Open);

  CHECK_THROWS_AS(ribbon_from_sites(P, {P.site(0, 0, 0, 0), P.site(1, 1, 1, 0)}), Error);
  CHECK_THROWS_AS(ribbon_from_sites(P, {P.site(0, 0, 0, 0), P.site(1, 1, 0, 0)}), Error);
}

TEST_CASE("concatenation") {
  const Lattice P = build_lattice(Topology::Plane, 3, 3);
  const Json& fx = fixture("s3_qubit");
  const Ribbon xi = ribbon_from_json(P, fx.at("xi"));
  const Ribbon xpp = ribbon_from_json(P, fx.at("xi_pp"));
  const Ribbon loop = concat_ribbons(P, xi, reverse_ribbon(P, xi));
  CHECK(classify_ribbon(P, loop) == RibbonClass::Closed);
  CHECK(loop.length() == 2 * xi.length());
  CHECK_THROWS_AS(concat_ribbons(P, xi, xpp), Error);
  // tau* then tau
  const Ribbon a = ribbon_from_sites(P, {P.site(1, 1, 0, 0), P.site(1, 1, 1, 0)});
  const Ribbon b = ribbon_from_sites(P, {P.site(1, 1, 1, 0), P.site(2, 1, 1, 0)});
  const Ribbon ab = concat_ribbons(P, a, b);
  CHECK(ab.length() == 2);
  CHECK(ab.triangles[0].kind == TriangleKind::Dual);
  CHECK(ab.triangles[1].kind == TriangleKind::Direct);
}

TEST_CASE("classification of random concatenations") {
  const Lattice T = build_lattice(Topology::Torus, 3, 3);
  std::mt19937 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<Site> s = {Site{static_cast<int>(rng() % 9), -1}};
    s[0].p = T.sector_face[s[0].v][rng() % 4];
    const int len = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < len; ++k) {
      const auto nb = neighbours(T, s.back());
      s.push_back(nb[rng() % nb.size()]);
    }
    const std::size_t cut = 1 + rng() % (s.size() - 1);
    const Ribbon r1 = ribbon_from_sites(T, std::vector<Site>(s.begin(), s.begin() + cut + 1));
    if (cut + 1 == s.size()) continue;
    const Ribbon r2 = ribbon_from_sites(T, std::vector<Site>(s.begin() + cut, s.end()));
    const Ribbon r = concat_ribbons(T, r1, r2);
    CHECK(to_string(classify_ribbon(T, r)) == manual_class(s));
    if (classify_ribbon(T, r) == RibbonClass::StronglyOpen)
      CHECK(classify_ribbon(T, reverse_ribbon(T, r)) == RibbonClass::StronglyOpen);
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("boundary ribbon") {
  const Lattice T = build_lattice(Topology::Torus, 3, 3);
  const Ribbon z = boundary_ribbon(T, T.site(1, 1, 1, 1));
  CHECK(classify_ribbon(T, z) == RibbonClass::Closed);
  CHECK(z.start().v == T.vertex(1, 1));
  const Lattice P = build_lattice(Topology::Plane, 3, 3);
  CHECK_THROWS_AS(boundary_ribbon(P, P.site(0, 0, 0, 0)), Error);
}

TEST_CASE("non-adjacent sites") {
  const Lattice P = build_lattice(Topology::Plane, 3, 3);
  CHECK_THROWS_AS(P.site(2, 2, 0, 0), Error);
  CHECK_THROWS_AS(P.vertex_edges(Site{P.vertex(2, 2), 0}), Error);
}
