#include <doctest.h>

#include <set>

#include "qdl/error.hpp"
#include "qdl/group.hpp"

using namespace qdl;

namespace {

// Orbits of commuting pairs under simultaneous conjugation, counted by brute force.
long long commuting_pair_orbits(const GroupTable& G) {
  std::set<std::pair<int, int>> seen;
  long long orbits = 0;
  for (int a = 0; a < G.order; ++a)
    for (int b = 0; b < G.order; ++b) {
      if (G.mul(a, b) != G.mul(b, a) || seen.count({a, b})) continue;
      ++orbits;
      for (int g = 0; g < G.order; ++g) seen.insert({G.conj(g, a), G.conj(g, b)});
    }
  return orbits;
}

}  // namespace

TEST_CASE("cyclic groups") {
  const GroupTable z1 = build_cyclic(1);
  CHECK(z1.order == 1);
  const GroupTable z4 = build_cyclic(4);
  CHECK(z4.inv[3] == 1);
  CHECK(z4.mul(2, 3) == 1);
  const ConjugacyData cd = conjugacy(build_cyclic(3));
  CHECK(cd.num_classes() == 3);
  for (const auto& c : cd.classes) CHECK(c.size() == 1);
  for (int q : cd.section) CHECK(q == 0);
}

TEST_CASE("S3 table and classes") {
  const GroupTable G = build_s3();
  const int e = G.index_of("e"), u = G.index_of("u"), v = G.index_of("v"), w = G.index_of("w");
  const int uv = G.index_of("uv"), vu = G.index_of("vu");
  CHECK(G.mul(u, v) == uv);
  CHECK(G.mul(v, u) == vu);
  CHECK(G.inv[uv] == vu);
  CHECK(G.mul(G.mul(u, v), u) == w);
  CHECK(G.mul(G.mul(v, u), v) == w);
  CHECK(G.mul(u, u) == e);

  const ConjugacyData cd = conjugacy(G);
  std::multiset<std::size_t> sizes;
  for (const auto& c : cd.classes) sizes.insert(c.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 2, 3});
  CHECK(cd.section[u] == e);
  CHECK(cd.section[v] == w);
  CHECK(cd.section[w] == v);
  CHECK(cd.section[uv] == e);
  CHECK(cd.section[vu] == v);
  for (int k = 0; k < cd.num_classes(); ++k) {
    const int r = cd.rep[k];
    CHECK(cd.section[r] == e);
    for (int c : cd.classes[k]) CHECK(G.conj(cd.section[c], r) == c);
    // g = q_c n factorises uniquely
    std::set<int> prods;
    for (int c : cd.classes[k])
      for (int n : cd.centralizer[k]) prods.insert(G.mul(cd.section[c], n));
    CHECK(prods.size() == static_cast<std::size_t>(G.order));
    for (int n : cd.centralizer[k]) CHECK(G.mul(n, r) == G.mul(r, n));
  }
}

TEST_CASE("cocycle law") {
  for (const GroupTable& G : {build_s3(), build_cyclic(4)}) {
    const ConjugacyData cd = conjugacy(G);
    for (int c = 0; c < G.order; ++c)
      for (int g = 0; g < G.order; ++g)
        for (int h = 0; h < G.order; ++h) {
          const int hch = G.conj(h, c);
          CHECK(cocycle(G, cd, c, G.mul(g, h)) == G.mul(cocycle(G, cd, hch, g), cocycle(G, cd, c, h)));
        }
  }
}

TEST_CASE("centralizer irreps of S3") {
  const GroupTable G = build_s3();
  const ConjugacyData cd = conjugacy(G);
  std::vector<int> dims_e;
  for (const auto& r : centralizer_irreps(G, cd, cd.class_of[G.id])) dims_e.push_back(r.dim);
  std::sort(dims_e.begin(), dims_e.end());
  CHECK(dims_e == std::vector<int>{1, 1, 2});
  CHECK(centralizer_irreps(G, cd, cd.class_of[G.index_of("u")]).size() == 2);
  const auto z3 = centralizer_irreps(G, cd, cd.class_of[G.index_of("uv")]);
  CHECK(z3.size() == 3);
}

TEST_CASE("character orthogonality") {
  const GroupTable G = build_s3();
  std::vector<int> all(G.order);
  for (int g = 0; g < G.order; ++g) all[g] = g;
  CHECK(check_character_orthogonality(G, all, group_irreps(G)).passed());
  const GroupTable z4 = build_cyclic(4);
  CHECK(check_character_orthogonality(z4, {0, 1, 2, 3}, group_irreps(z4)).passed());
  auto partial = group_irreps(G);
  std::erase_if(partial, [](const Irrep& r) { return r.dim == 2; });
  CHECK_THROWS_AS(check_character_orthogonality(G, all, partial), Error);
}

TEST_CASE("table groups and validation") {
  // Z_2 x Z_2 as a table
  std::vector<std::vector<int>> mul(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) mul[a][b] = a ^ b;
  const GroupTable K = build_from_table(mul);
  CHECK(K.order == 4);
  CHECK(K.is_abelian());
  mul[1][1] = 2;
  CHECK_THROWS_AS(build_from_table(mul), Error);
}

TEST_CASE("hom oracle against brute force") {
  for (const GroupTable& G : {build_cyclic(2), build_cyclic(3), build_s3()}) {
    CHECK(hom_oracle(G, 1) == commuting_pair_orbits(G));
  }
  CHECK(hom_oracle(build_s3(), 1) == 8);
  CHECK(hom_oracle(build_cyclic(2), 2) == 16);
}
