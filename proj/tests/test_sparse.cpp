#include <doctest.h>

#include <random>

#include "qdl/error.hpp"
#include "qdl/lattice.hpp"
#include "qdl/site_ops.hpp"
#include "qdl/sparse.hpp"

using namespace qdl;

namespace {

// A mixed operator: vertex actions, a face predicate and a constant shift.
OpSum sample_op(const GroupTable& G, const Lattice& L) {
  const int u = 1 % G.order, w = (G.order - 1);
  OpSum op = vertex_action(G, L, u, 4);
  op = op + Complex(0.5, -0.25) * face_action(G, L, w, Site{L.faces[0].corner[1], 0});
  op = op + compose(G, vertex_action(G, L, w, 0), face_action(G, L, G.id, Site{L.faces[3].corner[0], 3}));
  return op;
}

}  // namespace

TEST_CASE("codec round trip") {
  const Codec c(6, 18);
  CHECK(c.bits == 3);
  std::vector<int> cfg(18);
  for (int e = 0; e < 18; ++e) cfg[e] = (e * 5) % 6;
  CHECK(c.decode(c.encode(cfg)) == cfg);
  CHECK_THROWS_AS(Codec(6, 50), Error);
}

TEST_CASE("random states") {
  const GroupTable G = build_s3();
  const Lattice L = build_lattice(Topology::Torus, 3, 3);
  const SparseState one = random_state(G, L, 1, 3);
  CHECK(one.support() == 1);
  CHECK(std::abs(norm(one) - 1.0) < 1e-12);
  const SparseState a = random_state(G, L, 40, 11), b = random_state(G, L, 40, 11);
  CHECK(max_abs_diff(a, b) == 0.0);
  CHECK(std::abs(norm(a) - 1.0) < 1e-12);
  CHECK(std::real(inner(a, a)) >= 0);
  CHECK(std::abs(std::imag(inner(a, a))) < 1e-15);
}

TEST_CASE("apply basics") {
  const GroupTable G = build_s3();
  const Lattice L = build_lattice(Topology::Torus, 3, 3);
  const auto states = random_states(G, L, 5, 30, 1);
  for (const auto& s : states) {
    CHECK(max_abs_diff(apply(op_identity(), s), s) < 1e-15);
    const SparseState d = apply(face_action(G, L, 2, Site{L.faces[4].corner[0], 4}), s);
    CHECK(d.support() <= s.support());
  }
  // A(v) is idempotent
  const OpSum A = a_op(G, L, 4);
  for (const auto& s : states) CHECK(norm(apply(A, apply(A, s)) - apply(A, s)) < 1e-12);
  // orthogonal basis states
  std::vector<int> c0(L.num_edges(), 0), c1(L.num_edges(), 0);
  c1[3] = 2;
  CHECK(std::abs(inner(basis_state(G, L.num_edges(), c0), basis_state(G, L.num_edges(), c1))) == 0.0);
}

TEST_CASE("linearity and adjoint contract") {
  for (const GroupTable& G : {build_s3(), build_cyclic(3)}) {
    const Lattice L = build_lattice(Topology::Torus, 3, 3);
    const OpSum op = sample_op(G, L);
    const OpSum adj = adjoint(G, op);
    const auto xs = random_states(G, L, 6, 25, 5);
    const auto ys = random_states(G, L, 6, 25, 99);
    const Complex al(0.3, 1.1), be(-0.7, 0.2);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const SparseState lhs = apply(op, al * xs[i] + be * ys[i]);
      const SparseState rhs = al * apply(op, xs[i]) + be * apply(op, ys[i]);
      CHECK(norm(lhs - rhs) < 1e-12);
      // widen the overlap: compare against the image of the other state too
      const SparseState y2 = apply(op, ys[i]) + ys[i];
      CHECK(std::abs(inner(apply(op, xs[i]), y2) - inner(xs[i], apply(adj, y2))) < 1e-12);
    }
  }
}

TEST_CASE("composition matches sequential application") {
  const GroupTable G = build_s3();
  const Lattice L = build_lattice(Topology::Torus, 3, 3);
  const OpSum a = sample_op(G, L);
  const OpSum b = vertex_action(G, L, 3, 1) + face_action(G, L, 4, Site{L.faces[1].corner[2], 1});
  for (const auto& s : random_states(G, L, 6, 20, 2))
    CHECK(norm(apply(compose(G, a, b), s) - apply(a, apply(b, s))) < 1e-12);
}

TEST_CASE("word simplification preserves values") {
  const GroupTable G = build_s3();
  const Codec c(G.order, 6);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    Word w;
    const int len = 1 + rng() % 8;
    for (int i = 0; i < len; ++i) {
      if (rng() % 3 == 0)
        w.push_back(Factor{-1, static_cast<int>(rng() % 6), false});
      else
        w.push_back(Factor{static_cast<int>(rng() % 6), 0, rng() % 2 == 1});
    }
    if (rng() % 2) w = word_concat(w, word_inverse(G, w));
    const Word s = word_simplify(G, w);
    for (int k = 0; k < 5; ++k) {
      std::vector<int> cfg(6);
      for (auto& x : cfg) x = rng() % 6;
      const Key key = c.encode(cfg);
      CHECK(word_eval(G, c, w, key) == word_eval(G, c, s, key));
    }
  }
}

TEST_CASE("parallel and serial application agree") {
  const GroupTable G = build_s3();
  const Lattice L = build_lattice(Topology::Torus, 3, 3);
  const SparseState big = random_state(G, L, 30000, 8);
  const OpSum op = a_op(G, L, 2) + sample_op(G, L);
  ApplyOptions serial, par;
  serial.threads = 1;
  par.threads = 7;
  const SparseState a = apply(op, big, serial), b = apply(op, big, par);
  CHECK(a.support() == b.support());
  CHECK(max_abs_diff(a, b) < 1e-12);
}

TEST_CASE("support cap") {
  const GroupTable G = build_s3();
  const Lattice L = build_lattice(Topology::Plane, 3, 3);
  ApplyOptions tight;
  tight.support_cap = 10;
  const SparseState s = basis_state(G, L.num_edges(), std::vector<int>(L.num_edges(), 0));
  CHECK_THROWS_AS(apply(a_op(G, L, 4), apply(a_op(G, L, 0), s), tight), Error);
}

TEST_CASE("rank of span") {
  const GroupTable G = build_cyclic(2);
  const Lattice L = build_lattice(Topology::Torus, 2, 2);
  const SparseState s = random_state(G, L, 5, 1);
  CHECK(rank_of_span({s, s, Complex(2.0) * s}) == 1);
  CHECK(rank_of_span({s, random_state(G, L, 5, 2)}) == 2);
}

TEST_CASE("state mismatch") {
  const GroupTable G = build_s3();
  const SparseState a = empty_state(G, 12), b = empty_state(G, 18);
  CHECK_THROWS_AS(inner(a, b), Error);
}
