#include <doctest.h>

#include "qdl/site_ops.hpp"
#include "qdl/toric.hpp"

using namespace qdl;

namespace {
std::string failures(const Report& r) {
  std::string s;
  for (const auto& c : r.checks)
    if (!c.passed) s += c.name + " (" + std::to_string(c.max_deviation) + ") ";
  return s;
}
}  // namespace

TEST_CASE("toric creation walkthrough") {
  for (int n : {2, 3})
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Report r = creation_walkthrough(n, i, j);
        INFO(n, " ", i, " ", j, ": ", failures(r));
        CHECK(r.passed());
      }
}

TEST_CASE("W as X/Z products") {
  for (int n : {2, 3, 4}) {
    const Report r = w_equals_xz(n, 11);
    INFO(n, ": ", failures(r));
    CHECK(r.passed());
  }
}

TEST_CASE("braiding phase") {
  for (int n : {2, 3})
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const BraidResult b = braiding_phase(n, i, j);
        INFO(n, " ", i, " ", j, " phase ", b.phase.real(), "+", b.phase.imag(), "i");
        CHECK(b.deviation < 1e-10);
        CHECK(b.eigen_residual < 1e-10);
      }
}

TEST_CASE("toric teleportation") {
  for (int n : {2, 3}) {
    const Report r = toric_teleport(n);
    INFO(n, ": ", failures(r));
    CHECK(r.passed());
  }
  std::vector<Complex> psi(4);
  psi[0] = 0.6, psi[1] = Complex(0, 0.8), psi[3] = 0.0, psi[2] = 0.0;
  CHECK(toric_teleport(2, psi).passed());
}

TEST_CASE("Fourier reduction of site actions") {
  for (int n : {2, 3, 4}) {
    const Report r = fourier_reduction(n, 3);
    INFO(n, ": ", failures(r));
    CHECK(r.passed());
  }
}

TEST_CASE("toric vacuum is a joint eigenstate") {
  for (int n : {2, 3}) {
    const GroupTable G = build_cyclic(n);
    const Lattice T = build_lattice(Topology::Torus, 3, 3);
    const SparseState vac = vacuum_state(G, T);
    for (int v = 0; v < T.num_vertices(); ++v)
      CHECK(norm(apply(toric_vertex(G, T, 1, v), vac) - vac) < 1e-10);
    for (int y = 0; y < 3; ++y)
      for (int x = 0; x < 3; ++x) {
        const Site s = T.site(x, y, x, y);
        CHECK(norm(apply(toric_face(G, T, 1, s), vac) - vac) < 1e-10);
        CHECK(norm(apply(toric_projector(G, T, 0, 0, s), vac) - vac) < 1e-10);
      }
  }
}
