#include "qdl/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "qdl/error.hpp"

namespace qdl {

namespace {

Json req(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ConfigError, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string key_hex(Key k) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(k >> 64),
                static_cast<unsigned long long>(k));
  return buf;
}

Key parse_hex(const std::string& s) {
  if (s.size() != 32) throw Error(ErrorKind::ConfigError, "bad state key '" + s + "'");
  const Key hi = std::stoull(s.substr(0, 16), nullptr, 16);
  const Key lo = std::stoull(s.substr(16), nullptr, 16);
  return (hi << 64) | lo;
}

}  // namespace

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::ConfigError, "complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ConfigError, "matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size()), cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != cols) throw Error(ErrorKind::ConfigError, "ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

namespace {

GroupTable group_arg(const Json& g) { return g.is_string() ? group_from_name(g.get<std::string>()) : group_from_json(g); }

CVector vector_from_json(const Json& j, int d) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) throw Error(ErrorKind::ConfigError, "vector has wrong length");
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = complex_from_json(j[i]);
  return v;
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

}  // namespace

HopfAlgebra hopf_from_json(const Json& j) {
  const std::string kind = req(j, "kind").get<std::string>();
  if (kind == "sweedler") return load_hopf(hopf_sweedler());
  if (kind == "group") return load_hopf(hopf_group(group_arg(req(j, "group"))));
  if (kind == "function") return load_hopf(hopf_function(group_arg(req(j, "group"))));
  if (kind != "tensors") throw Error(ErrorKind::ConfigError, "unknown Hopf kind '" + kind + "'");
  const int d = req(j, "dim").get<int>();
  if (d < 1) throw Error(ErrorKind::ConfigError, "dim must be positive");
  HopfAlgebra H;
  H.name = j.value("name", std::string("H"));
  H.dim = d;
  const std::size_t d3 = std::size_t(d) * d * d;
  H.mul.assign(d3, 0.0);
  H.com.assign(d3, 0.0);
  const Json mul = req(j, "mul"), com = req(j, "com");
  auto check3 = [d](const Json& t, const char* what) {
    bool ok = t.is_array() && static_cast<int>(t.size()) == d;
    for (std::size_t a = 0; ok && a < t.size(); ++a) {
      ok = t[a].is_array() && static_cast<int>(t[a].size()) == d;
      for (std::size_t b = 0; ok && b < t[a].size(); ++b) ok = t[a][b].is_array() && static_cast<int>(t[a][b].size()) == d;
    }
    if (!ok) throw Error(ErrorKind::BadDimensions, std::string(what) + " must be a dim x dim x dim array");
  };
  check3(mul, "mul");
  check3(com, "com");
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        H.m(a, b, c) = complex_from_json(mul[a][b][c]);
        H.dl(a, b, c) = complex_from_json(com[a][b][c]);
      }
  H.unit = vector_from_json(req(j, "unit"), d);
  H.counit = vector_from_json(req(j, "counit"), d);
  H.S = matrix_from_json(req(j, "antipode"));
  if (H.S.rows() != d || H.S.cols() != d) throw Error(ErrorKind::BadDimensions, "antipode must be dim x dim");
  if (j.contains("labels")) H.labels = j.at("labels").get<std::vector<std::string>>();
  for (int a = static_cast<int>(H.labels.size()); a < d; ++a) H.labels.push_back("e" + std::to_string(a));
  return load_hopf(H);
}

Json hopf_to_json(const HopfAlgebra& H) {
  const int d = H.dim;
  Json mul = Json::array(), com = Json::array();
  for (int a = 0; a < d; ++a) {
    Json ma = Json::array(), ca = Json::array();
    for (int b = 0; b < d; ++b) {
      Json mb = Json::array(), cb = Json::array();
      for (int c = 0; c < d; ++c) {
        mb.push_back(complex_to_json(H.m(a, b, c)));
        cb.push_back(complex_to_json(H.dl(a, b, c)));
      }
      ma.push_back(mb);
      ca.push_back(cb);
    }
    mul.push_back(ma);
    com.push_back(ca);
  }
  return {{"kind", "tensors"},     {"name", H.name},
          {"dim", d},              {"labels", H.labels},
          {"mul", mul},            {"com", com},
          {"unit", vector_to_json(H.unit)}, {"counit", vector_to_json(H.counit)},
          {"antipode", matrix_to_json(H.S)}};
}

GroupTable group_from_json(const Json& j) {
  const std::string kind = req(j, "kind").get<std::string>();
  if (kind == "cyclic") {
    const int n = req(j, "n").get<int>();
    if (n < 1) throw Error(ErrorKind::ConfigError, "cyclic group order must be positive");
    return build_cyclic(n);
  }
  if (kind == "s3") return build_s3();
  if (kind == "table") {
    const auto mul = req(j, "mul").get<std::vector<std::vector<int>>>();
    std::vector<Irrep> irreps;
    if (j.contains("irreps"))
      for (const auto& ij : j.at("irreps")) {
        Irrep r;
        r.name = ij.value("name", "pi" + std::to_string(irreps.size()));
        for (const auto& mj : req(ij, "mats")) r.mats.push_back(matrix_from_json(mj));
        r.dim = static_cast<int>(r.mats.front().rows());
        irreps.push_back(std::move(r));
      }
    return build_from_table(mul, std::move(irreps));
  }
  throw Error(ErrorKind::ConfigError, "unknown group kind '" + kind + "'");
}

Json group_to_json(const GroupTable& G) {
  if (G.kind == "cyclic") return {{"kind", "cyclic"}, {"n", G.order}};
  if (G.kind == "s3") return {{"kind", "s3"}};
  Json mul = Json::array();
  for (int a = 0; a < G.order; ++a) {
    Json row = Json::array();
    for (int b = 0; b < G.order; ++b) row.push_back(G.mul(a, b));
    mul.push_back(row);
  }
  Json irreps = Json::array();
  for (const auto& r : G.irreps) {
    Json mats = Json::array();
    for (const auto& m : r.mats) mats.push_back(matrix_to_json(m));
    irreps.push_back({{"name", r.name}, {"mats", mats}});
  }
  return {{"kind", "table"}, {"mul", mul}, {"irreps", irreps}};
}

GroupTable group_from_name(const std::string& name) {
  if (name == "s3" || name == "S3") return build_s3();
  if (name.size() > 1 && (name[0] == 'z' || name[0] == 'Z')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(name.substr(1), &used);
      if (used == name.size() - 1 && n >= 1) return build_cyclic(n);
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorKind::ConfigError, "unknown group name '" + name + "' (use z<N> or s3)");
}

Lattice lattice_from_json(const Json& j) {
  const std::string topo = req(j, "topology").get<std::string>();
  Topology t;
  if (topo == "torus")
    t = Topology::Torus;
  else if (topo == "plane")
    t = Topology::Plane;
  else
    throw Error(ErrorKind::ConfigError, "topology must be 'torus' or 'plane'");
  return build_lattice(t, req(j, "width").get<int>(), req(j, "height").get<int>());
}

Lattice lattice_from_arg(Topology topo, const std::string& dims) {
  int w = 0, h = 0;
  char x = 0;
  std::istringstream ss(dims);
  if (!(ss >> w >> x >> h) || x != 'x' || !ss.eof())
    throw Error(ErrorKind::ConfigError, "lattice dimensions must look like 3x3");
  return build_lattice(topo, w, h);
}

Site site_from_json(const Lattice& L, const Json& j) {
  const auto v = req(j, "v").get<std::array<int, 2>>();
  const auto p = req(j, "p").get<std::array<int, 2>>();
  return L.site(v[0], v[1], p[0], p[1]);
}

Json site_to_json(const Lattice& L, const Site& s) {
  const int vx = s.v % L.width, vy = s.v / L.width;
  const Face& f = L.faces[s.p];
  return {{"v", {vx, vy}}, {"p", {f.x, f.y}}};
}

Ribbon ribbon_from_json(const Lattice& L, const Json& j) {
  if (j.contains("sites")) {
    std::vector<Site> sites;
    for (const auto& s : j.at("sites")) sites.push_back(site_from_json(L, s));
    return ribbon_from_sites(L, sites);
  }
  std::vector<Triangle> tris;
  for (const auto& tj : req(j, "triangles")) {
    Triangle t;
    const std::string kind = req(tj, "kind").get<std::string>();
    if (kind != "direct" && kind != "dual") throw Error(ErrorKind::ConfigError, "triangle kind must be direct or dual");
    t.kind = kind == "direct" ? TriangleKind::Direct : TriangleKind::Dual;
    t.from = site_from_json(L, req(tj, "from"));
    t.to = site_from_json(L, req(tj, "to"));
    tris.push_back(t);
    if (tj.contains("edge")) {
      const Json& e = tj.at("edge");
      const int x = e.at(0).get<int>(), y = e.at(1).get<int>();
      const int edge = e.at(2).get<std::string>() == "h" ? L.hedge(x, y) : L.vedge(x, y);
      if (triangle_geometry(L, t).edge != edge)
        throw Error(ErrorKind::NotARibbon, "triangle edge does not match its sites");
    }
  }
  return ribbon_from_triangles(L, tris);
}

Json ribbon_to_json(const Lattice& L, const Ribbon& r) {
  Json tris = Json::array(), sites = Json::array();
  if (!r.triangles.empty()) sites.push_back(site_to_json(L, r.triangles.front().from));
  for (const auto& t : r.triangles) {
    sites.push_back(site_to_json(L, t.to));
    const Edge& e = L.edges[t.edge];
    tris.push_back({{"kind", t.kind == TriangleKind::Direct ? "direct" : "dual"},
                    {"edge", {e.x, e.y, e.horizontal ? "h" : "v"}},
                    {"from", site_to_json(L, t.from)},
                    {"to", site_to_json(L, t.to)}});
  }
  return {{"sites", sites}, {"triangles", tris}, {"class", to_string(classify_ribbon(L, r))}};
}

void write_state(std::ostream& os, const SparseState& s, const Json& meta) {
  Json head = meta;
  head["group_order"] = s.group ? s.group->order : 0;
  head["num_edges"] = s.num_edges();
  head["bits_per_edge"] = s.codec.bits;
  head["support"] = s.support();
  os << head.dump() << '\n';
  char buf[64];
  for (const auto& [k, a] : s.entries) {
    std::snprintf(buf, sizeof buf, " %.17g %.17g\n", a.real(), a.imag());
    os << key_hex(k) << buf;
  }
}

SparseState read_state(std::istream& is, const GroupTable& G, Json* meta) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::ConfigError, "empty state dump");
  const Json head = Json::parse(line);
  if (head.at("group_order").get<int>() != G.order) throw Error(ErrorKind::GroupMismatch, "state dump group differs");
  SparseState s = empty_state(G, head.at("num_edges").get<int>());
  std::string k;
  double re = 0, im = 0;
  while (is >> k >> re >> im) s.entries.emplace_back(parse_hex(k), Complex(re, im));
  std::sort(s.entries.begin(), s.entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  if (meta) *meta = head;
  return s;
}

}  // namespace qdl
