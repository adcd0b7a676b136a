#include "qdl/lattice.hpp"

#include <algorithm>

#include "qdl/error.hpp"

namespace qdl {

namespace {

int wrap(int a, int n) { return ((a % n) + n) % n; }

// sector k of a vertex corresponds to this corner of the face in that sector
constexpr std::array<int, 4> kSectorCorner = {0, 3, 2, 1};

}  // namespace

int Lattice::vertex(int x, int y) const {
  if (topology == Topology::Torus) return wrap(y, height) * width + wrap(x, width);
  if (x < 0 || y < 0 || x >= width || y >= height) return -1;
  return y * width + x;
}

int Lattice::face(int x, int y) const {
  if (topology == Topology::Torus) return wrap(y, height) * width + wrap(x, width);
  if (x < 0 || y < 0 || x >= width - 1 || y >= height - 1) return -1;
  return y * (width - 1) + x;
}

int Lattice::hedge(int x, int y) const {
  const int v = vertex(x, y);
  if (v < 0) return -1;
  return slot_edge[v][0];
}

int Lattice::vedge(int x, int y) const {
  const int v = vertex(x, y);
  if (v < 0) return -1;
  return slot_edge[v][1];
}

std::string Lattice::describe() const {
  return std::string(topology == Topology::Torus ? "torus " : "plane ") + std::to_string(width) + "x" +
         std::to_string(height);
}

int Lattice::corner_of(int v, int p) const {
  if (v < 0 || p < 0 || p >= num_faces()) return -1;
  for (int k = 0; k < 4; ++k)
    if (faces[p].corner[k] == v) return k;
  return -1;
}

int Lattice::sector_of(int v, int p) const {
  if (v < 0 || v >= num_vertices()) return -1;
  for (int k = 0; k < 4; ++k)
    if (sector_face[v][k] == p && p >= 0) return k;
  return -1;
}

Site Lattice::site(int vx, int vy, int px, int py) const {
  Site s{vertex(vx, vy), face(px, py)};
  if (!adjacent(s)) throw Error(ErrorKind::NonAdjacentSite, "vertex is not a corner of the face");
  return s;
}

std::vector<std::pair<int, bool>> Lattice::vertex_edges(const Site& s) const {
  const int k = sector_of(s.v, s.p);
  if (k < 0) throw Error(ErrorKind::NonAdjacentSite, "site vertex not on its face");
  std::vector<std::pair<int, bool>> out;
  for (int j = 1; j <= 4; ++j) {
    const int slot = (k + j) % 4;
    const int e = slot_edge[s.v][slot];
    if (e >= 0) out.emplace_back(e, slot < 2);
  }
  return out;
}

std::vector<std::pair<int, int>> Lattice::face_edges(const Site& s) const {
  const int c = corner_of(s.v, s.p);
  if (c < 0) throw Error(ErrorKind::NonAdjacentSite, "site vertex not on its face");
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j < 4; ++j) {
    const int k = (c + j) % 4;
    out.emplace_back(faces[s.p].edges[k], faces[s.p].sign[k]);
  }
  return out;
}

std::vector<std::pair<int, bool>> Lattice::star(int v) const {
  std::vector<std::pair<int, bool>> out;
  for (int slot = 0; slot < 4; ++slot)
    if (slot_edge[v][slot] >= 0) out.emplace_back(slot_edge[v][slot], slot < 2);
  return out;
}

bool Lattice::vertex_complete(int v) const {
  for (int k = 0; k < 4; ++k)
    if (slot_edge[v][k] < 0 || sector_face[v][k] < 0) return false;
  return true;
}

bool Lattice::face_interior(int p) const {
  for (int v : faces[p].corner)
    if (!vertex_complete(v)) return false;
  return true;
}

Lattice build_lattice(Topology topo, int W, int H) {
  if (W < 2 || H < 2) throw Error(ErrorKind::BadDimensions, "lattice needs at least 2x2 vertices");
  Lattice L;
  L.topology = topo;
  L.width = W;
  L.height = H;
  const bool torus = topo == Topology::Torus;
  std::vector<int> hidx(W * H, -1), vidx(W * H, -1);
  for (int y = 0; y < H; ++y)
    for (int x = 0; x < W; ++x) {
      if (torus || x < W - 1) {
        hidx[y * W + x] = L.num_edges();
        L.edges.push_back(Edge{L.vertex(x, y), L.vertex(x + 1, y), true, x, y});
      }
      if (torus || y < H - 1) {
        vidx[y * W + x] = L.num_edges();
        L.edges.push_back(Edge{L.vertex(x, y), L.vertex(x, y + 1), false, x, y});
      }
    }
  auto he = [&](int x, int y) {
    const int v = L.vertex(x, y);
    return v < 0 ? -1 : hidx[v];
  };
  auto ve = [&](int x, int y) {
    const int v = L.vertex(x, y);
    return v < 0 ? -1 : vidx[v];
  };
  const int FW = torus ? W : W - 1, FH = torus ? H : H - 1;
  for (int y = 0; y < FH; ++y)
    for (int x = 0; x < FW; ++x) {
      Face f;
      f.x = x;
      f.y = y;
      f.corner = {L.vertex(x, y), L.vertex(x, y + 1), L.vertex(x + 1, y + 1), L.vertex(x + 1, y)};
      f.edges = {ve(x, y), he(x, y + 1), ve(x + 1, y), he(x, y)};
      f.sign = {1, 1, -1, -1};
      L.faces.push_back(f);
    }
  L.slot_edge.resize(W * H);
  L.sector_face.resize(W * H);
  for (int y = 0; y < H; ++y)
    for (int x = 0; x < W; ++x) {
      const int v = y * W + x;
      L.slot_edge[v] = {he(x, y), ve(x, y), he(x - 1, y), ve(x, y - 1)};
      L.sector_face[v] = {L.face(x, y), L.face(x - 1, y), L.face(x - 1, y - 1), L.face(x, y - 1)};
    }
  return L;
}

TriangleGeom triangle_geometry(const Lattice& L, const Triangle& t) {
  TriangleGeom g;
  g.kind = t.kind;
  if (t.kind == TriangleKind::Direct) {
    if (t.from.p != t.to.p || t.from.v == t.to.v)
      throw Error(ErrorKind::NotARibbon, "direct triangle must keep the face and move the vertex");
    const int cf = L.corner_of(t.from.v, t.from.p), ct = L.corner_of(t.to.v, t.to.p);
    if (cf < 0 || ct < 0) throw Error(ErrorKind::NotARibbon, "direct triangle sites not adjacent");
    const Face& f = L.faces[t.from.p];
    if (ct == (cf + 1) % 4) {
      g.clockwise = true;
      g.edge = f.edges[cf];
      g.travel_sign = f.sign[cf];
    } else if (ct == (cf + 3) % 4) {
      g.clockwise = false;
      g.edge = f.edges[ct];
      g.travel_sign = -f.sign[ct];
    } else {
      throw Error(ErrorKind::NotARibbon, "direct triangle vertices not joined by an edge");
    }
  } else {
    if (t.from.v != t.to.v || t.from.p == t.to.p)
      throw Error(ErrorKind::NotARibbon, "dual triangle must keep the vertex and move the face");
    const int kf = L.sector_of(t.from.v, t.from.p), kt = L.sector_of(t.to.v, t.to.p);
    if (kf < 0 || kt < 0) throw Error(ErrorKind::NotARibbon, "dual triangle sites not adjacent");
    int slot;
    if (kt == (kf + 1) % 4) {
      g.clockwise = false;
      slot = (kf + 1) % 4;
    } else if (kt == (kf + 3) % 4) {
      g.clockwise = true;
      slot = kf;
    } else {
      throw Error(ErrorKind::NotARibbon, "dual triangle faces not adjacent at the vertex");
    }
    g.edge = L.slot_edge[t.from.v][slot];
    g.outgoing = slot < 2;
  }
  if (t.edge >= 0 && t.edge != g.edge) throw Error(ErrorKind::NotARibbon, "triangle edge does not match its sites");
  return g;
}

Triangle make_triangle(const Lattice& L, const Site& from, const Site& to) {
  Triangle t;
  t.from = from;
  t.to = to;
  const bool dv = from.v != to.v, dp = from.p != to.p;
  if (dv == dp) throw Error(ErrorKind::NotARibbon, "consecutive sites must differ in exactly one of vertex, face");
  t.kind = dv ? TriangleKind::Direct : TriangleKind::Dual;
  t.edge = triangle_geometry(L, t).edge;
  return t;
}

const char* to_string(RibbonClass c) {
  switch (c) {
    case RibbonClass::Closed: return "closed";
    case RibbonClass::StronglyOpen: return "strongly-open";
    case RibbonClass::Open: return "open";
    case RibbonClass::Other: return "other";
  }
  return "other";
}

Ribbon ribbon_from_sites(const Lattice& L, const std::vector<Site>& sites) {
  if (sites.size() < 2) throw Error(ErrorKind::NotARibbon, "a ribbon needs at least one triangle");
  Ribbon r;
  r.sites = sites;
  for (std::size_t i = 0; i + 1 < sites.size(); ++i) r.triangles.push_back(make_triangle(L, sites[i], sites[i + 1]));
  return r;
}

Ribbon ribbon_from_triangles(const Lattice& L, const std::vector<Triangle>& tris) {
  if (tris.empty()) throw Error(ErrorKind::NotARibbon, "a ribbon needs at least one triangle");
  Ribbon r;
  r.sites.push_back(tris.front().from);
  for (std::size_t i = 0; i < tris.size(); ++i) {
    if (tris[i].from != r.sites.back()) throw Error(ErrorKind::NotARibbon, "triangles are not chained");
    Triangle t = tris[i];
    const bool dv = t.from.v != t.to.v, dp = t.from.p != t.to.p;
    if (dv == dp) throw Error(ErrorKind::NotARibbon, "consecutive sites must differ in exactly one coordinate");
    if ((t.kind == TriangleKind::Direct) != dv) throw Error(ErrorKind::NotARibbon, "triangle kind does not match sites");
    t.edge = triangle_geometry(L, t).edge;
    r.triangles.push_back(t);
    r.sites.push_back(t.to);
  }
  return r;
}

bool sites_disjoint(const Site& a, const Site& b) { return a.v != b.v && a.p != b.p; }

bool sites_far_apart(const Lattice& L, const Site& a, const Site& b) {
  if (!sites_disjoint(a, b)) return false;
  for (int e : L.faces[a.p].edges)
    for (int f : L.faces[b.p].edges)
      if (e >= 0 && e == f) return false;
  for (auto [e, out] : L.star(a.v)) {
    (void)out;
    if (L.edges[e].src == b.v || L.edges[e].dst == b.v) return false;
  }
  return true;
}

RibbonClass classify_ribbon(const Lattice& L, const Ribbon& r) {
  for (std::size_t i = 0; i + 1 < r.sites.size(); ++i) {
    const bool dv = r.sites[i].v != r.sites[i + 1].v, dp = r.sites[i].p != r.sites[i + 1].p;
    if (dv == dp) throw Error(ErrorKind::NotARibbon, "consecutive sites must differ in exactly one coordinate");
    if (!L.adjacent(r.sites[i])) throw Error(ErrorKind::NotARibbon, "site vertex not on its face");
  }
  if (r.sites.size() > 1 && r.start() == r.end()) return RibbonClass::Closed;
  if (!sites_disjoint(r.start(), r.end())) return RibbonClass::Other;
  const std::size_t n = r.sites.size();
  bool strong = true;
  for (std::size_t i = 0; i < n && strong; ++i)
    for (std::size_t j = i + 1; j < n && strong; ++j) {
      if (r.sites[i].v == r.sites[j].v)
        for (std::size_t k = i + 1; k < j; ++k) strong = strong && r.sites[k].v == r.sites[i].v;
      if (r.sites[i].p == r.sites[j].p)
        for (std::size_t k = i + 1; k < j; ++k) strong = strong && r.sites[k].p == r.sites[i].p;
    }
  return strong ? RibbonClass::StronglyOpen : RibbonClass::Open;
}

bool is_right_handed(const Lattice& L, const Ribbon& r) {
  for (const auto& t : r.triangles) {
    const TriangleGeom g = triangle_geometry(L, t);
    if (g.kind == TriangleKind::Direct && !g.clockwise) return false;
    if (g.kind == TriangleKind::Dual && g.clockwise) return false;
  }
  return true;
}

Ribbon concat_ribbons(const Lattice& L, const Ribbon& first, const Ribbon& second) {
  if (first.end() != second.start()) throw Error(ErrorKind::EndpointMismatch, "end site of first ribbon != start of second");
  std::vector<Site> sites = first.sites;
  sites.insert(sites.end(), second.sites.begin() + 1, second.sites.end());
  return ribbon_from_sites(L, sites);
}

Ribbon reverse_ribbon(const Lattice& L, const Ribbon& r) {
  std::vector<Site> sites(r.sites.rbegin(), r.sites.rend());
  return ribbon_from_sites(L, sites);
}

Ribbon boundary_ribbon(const Lattice& L, const Site& s) {
  const int c = L.corner_of(s.v, s.p);
  if (c < 0) throw Error(ErrorKind::NonAdjacentSite, "site vertex not on its face");
  const Face& f = L.faces[s.p];
  for (int v : f.corner)
    if (!L.vertex_complete(v)) throw Error(ErrorKind::BoundaryTooClose, "face of site touches the patch boundary");
  auto across = [&](int e) {
    for (int q = 0; q < L.num_faces(); ++q)
      if (q != s.p)
        for (int k = 0; k < 4; ++k)
          if (L.faces[q].edges[k] == e) return q;
    throw Error(ErrorKind::BoundaryTooClose, "edge has no outer face");
  };
  // corners anticlockwise: c, c-1, c-2, c-3; the edge from corner k to k-1 is edges[k-1]
  std::vector<Site> sites;
  int corner = c;
  int face = across(f.edges[(c + 3) % 4]);
  sites.push_back(Site{f.corner[c], face});
  for (int step = 0; step < 4; ++step) {
    const int next = (corner + 3) % 4;
    const int v = f.corner[next];
    sites.push_back(Site{v, face});
    const int target = across(f.edges[(next + 3) % 4]);
    int k = L.sector_of(v, face);
    while (L.sector_face[v][k] != target) {
      k = (k + 1) % 4;
      if (L.sector_face[v][k] == s.p) throw Error(ErrorKind::NotARibbon, "rotation passed through the enclosed face");
      sites.push_back(Site{v, L.sector_face[v][k]});
    }
    face = target;
    corner = next;
  }
  return ribbon_from_sites(L, sites);
}

}  // namespace qdl
