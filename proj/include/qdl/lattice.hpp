#pragma once

#include <array>
#include <string>
#include <vector>

namespace qdl {

enum class Topology { Plane, Torus };

struct Edge {
  int src = -1, dst = -1;
  bool horizontal = true;
  int x = 0, y = 0;
};

// Corners are numbered clockwise from the lower left: 0 LL, 1 UL, 2 UR, 3 LR.
// edges[k] runs from corner k to corner k+1; sign[k] = +1 if its arrow agrees with that direction.
struct Face {
  int x = 0, y = 0;
  std::array<int, 4> corner{};
  std::array<int, 4> edges{};
  std::array<int, 4> sign{};
};

struct Site {
  int v = -1, p = -1;
  bool operator==(const Site& o) const { return v == o.v && p == o.p; }
  bool operator!=(const Site& o) const { return !(*this == o); }
};

struct Lattice {
  Topology topology = Topology::Torus;
  int width = 0, height = 0;
  std::vector<Edge> edges;
  std::vector<Face> faces;
  // Around each vertex: slot k is the edge at angle 90k degrees (-1 if absent),
  // sector k is the face at angle 45+90k degrees (-1 if absent).
  std::vector<std::array<int, 4>> slot_edge;
  std::vector<std::array<int, 4>> sector_face;

  int num_vertices() const { return width * height; }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_faces() const { return static_cast<int>(faces.size()); }
  int vertex(int x, int y) const;
  int face(int x, int y) const;  // -1 if absent
  int hedge(int x, int y) const;
  int vedge(int x, int y) const;
  std::string describe() const;

  // Position of v on the boundary of p (clockwise corner index), -1 if not adjacent.
  int corner_of(int v, int p) const;
  int sector_of(int v, int p) const;
  bool adjacent(const Site& s) const { return corner_of(s.v, s.p) >= 0; }
  Site site(int vx, int vy, int px, int py) const;

  // Star of v listed anticlockwise starting after the cilium of s; second = arrow leaves v.
  std::vector<std::pair<int, bool>> vertex_edges(const Site& s) const;
  // Boundary of p listed clockwise starting at the cilium; second = +1/-1 orientation sign.
  std::vector<std::pair<int, int>> face_edges(const Site& s) const;
  // Star of a vertex without cilium (order anticlockwise from the right).
  std::vector<std::pair<int, bool>> star(int v) const;
  bool vertex_complete(int v) const;
  bool face_interior(int p) const;
};

Lattice build_lattice(Topology topo, int width, int height);

enum class TriangleKind { Direct, Dual };

struct Triangle {
  TriangleKind kind = TriangleKind::Direct;
  int edge = -1;
  Site from, to;
};

// Resolved orientation data of a triangle.
struct TriangleGeom {
  TriangleKind kind = TriangleKind::Direct;
  int edge = -1;
  bool clockwise = true;   // direct: travel clockwise around the face; dual: rotation clockwise around the vertex
  int travel_sign = 1;     // direct: +1 if the arrow points along the travel direction
  bool outgoing = true;    // dual: arrow leaves the shared vertex
};

TriangleGeom triangle_geometry(const Lattice& L, const Triangle& t);
Triangle make_triangle(const Lattice& L, const Site& from, const Site& to);

enum class RibbonClass { Closed, StronglyOpen, Open, Other };
const char* to_string(RibbonClass c);

struct Ribbon {
  std::vector<Site> sites;
  std::vector<Triangle> triangles;
  const Site& start() const { return sites.front(); }
  const Site& end() const { return sites.back(); }
  int length() const { return static_cast<int>(triangles.size()); }
};

Ribbon ribbon_from_sites(const Lattice& L, const std::vector<Site>& sites);
Ribbon ribbon_from_triangles(const Lattice& L, const std::vector<Triangle>& tris);
RibbonClass classify_ribbon(const Lattice& L, const Ribbon& r);
bool sites_disjoint(const Site& a, const Site& b);
// Stricter separation: faces share no edge and vertices are not adjacent.
bool sites_far_apart(const Lattice& L, const Site& a, const Site& b);
bool is_right_handed(const Lattice& L, const Ribbon& r);
Ribbon concat_ribbons(const Lattice& L, const Ribbon& first, const Ribbon& second);
Ribbon reverse_ribbon(const Lattice& L, const Ribbon& r);
// Closed ribbon running anticlockwise around the face of s through the surrounding faces,
// starting and ending at the vertex of s.
Ribbon boundary_ribbon(const Lattice& L, const Site& s);

}  // namespace qdl
