#include "qdl/group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "qdl/error.hpp"

namespace qdl {

int GroupTable::element_order(int g) const {
  int k = 1;
  for (int x = g; x != id; x = mul(x, g)) ++k;
  return k;
}

bool GroupTable::is_abelian() const {
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::string GroupTable::name(int g) const {
  if (g >= 0 && g < static_cast<int>(labels.size())) return labels[g];
  return std::to_string(g);
}

int GroupTable::index_of(const std::string& label) const {
  for (int g = 0; g < order; ++g)
    if (name(g) == label) return g;
  throw Error(ErrorKind::ConfigError, "unknown group element '" + label + "'");
}

void validate_group(const GroupTable& G) {
  const int n = G.order;
  if (n < 1 || static_cast<int>(G.mul_table.size()) != n * n || static_cast<int>(G.inv.size()) != n)
    throw Error(ErrorKind::UnsupportedGroup, "table sizes inconsistent");
  for (int a = 0; a < n; ++a) {
    if (G.mul(G.id, a) != a || G.mul(a, G.id) != a)
      throw Error(ErrorKind::UnsupportedGroup, "identity fails");
    if (G.mul(a, G.inv[a]) != G.id || G.mul(G.inv[a], a) != G.id)
      throw Error(ErrorKind::UnsupportedGroup, "inverse fails");
    std::vector<char> row(n, 0), col(n, 0);
    for (int b = 0; b < n; ++b) {
      int r = G.mul(a, b), c = G.mul(b, a);
      if (r < 0 || r >= n || c < 0 || c >= n || row[r] || col[c])
        throw Error(ErrorKind::UnsupportedGroup, "rows/columns are not permutations");
      row[r] = col[c] = 1;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
          throw Error(ErrorKind::UnsupportedGroup, "associativity fails");
}

GroupTable build_cyclic(int n) {
  if (n < 1) throw Error(ErrorKind::BadDimensions, "cyclic group order must be positive");
  GroupTable G;
  G.order = n;
  G.id = 0;
  G.kind = "cyclic";
  G.mul_table.resize(n * n);
  G.inv.resize(n);
  for (int a = 0; a < n; ++a) {
    G.inv[a] = (n - a) % n;
    G.labels.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) G.mul_table[a * n + b] = (a + b) % n;
  }
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  G.irreps = cyclic_subgroup_irreps(G, all);
  return G;
}

namespace {

using Perm = std::array<int, 3>;

Perm compose(const Perm& a, const Perm& b) {  // (ab)(x) = a(b(x))
  return {a[b[0]], a[b[1]], a[b[2]]};
}

}  // namespace

GroupTable build_s3() {
  const Perm e{0, 1, 2}, u{1, 0, 2}, v{0, 2, 1};
  std::vector<Perm> el = {e, u, v, compose(compose(u, v), u), compose(u, v), compose(v, u)};
  GroupTable G;
  G.order = 6;
  G.id = 0;
  G.kind = "s3";
  G.labels = {"e", "u", "v", "w", "uv", "vu"};
  G.mul_table.resize(36);
  G.inv.resize(6);
  auto find = [&](const Perm& p) {
    return static_cast<int>(std::find(el.begin(), el.end(), p) - el.begin());
  };
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) G.mul_table[a * 6 + b] = find(compose(el[a], el[b]));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      if (G.mul(a, b) == 0) G.inv[a] = b;

  // Irreps 1, sigma, tau. Every element is u^a r^b with r = uv.
  const double c = -0.5, s = std::sqrt(3.0) / 2.0;
  CMatrix U(2, 2), R(2, 2);
  U << 1, 0, 0, -1;
  R << c, -s, s, c;
  const std::array<std::array<int, 2>, 6> word = {{{0, 0}, {1, 0}, {1, 1}, {1, 2}, {0, 1}, {0, 2}}};
  Irrep one{"1", 1, {}}, sigma{"sigma", 1, {}}, tau{"tau", 2, {}};
  for (int g = 0; g < 6; ++g) {
    CMatrix m = CMatrix::Identity(2, 2);
    if (word[g][0]) m = U;
    for (int k = 0; k < word[g][1]; ++k) m = m * R;
    tau.mats.push_back(m);
    one.mats.push_back(CMatrix::Ones(1, 1));
    sigma.mats.push_back(CMatrix::Constant(1, 1, word[g][0] ? -1.0 : 1.0));
  }
  G.irreps = {one, sigma, tau};
  G.preset_section = {0, 0, 3, 2, 0, 2};  // q_u=e, q_v=w, q_w=v, q_uv=e, q_vu=v
  return G;
}

GroupTable build_from_table(const std::vector<std::vector<int>>& mul, std::vector<Irrep> irreps) {
  GroupTable G;
  G.order = static_cast<int>(mul.size());
  G.kind = "table";
  G.mul_table.resize(G.order * G.order);
  for (int a = 0; a < G.order; ++a) {
    if (static_cast<int>(mul[a].size()) != G.order)
      throw Error(ErrorKind::UnsupportedGroup, "multiplication table is not square");
    for (int b = 0; b < G.order; ++b) G.mul_table[a * G.order + b] = mul[a][b];
  }
  G.id = -1;
  for (int a = 0; a < G.order && G.id < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < G.order; ++b) ok = ok && G.mul(a, b) == b && G.mul(b, a) == b;
    if (ok) G.id = a;
  }
  if (G.id < 0) throw Error(ErrorKind::UnsupportedGroup, "no identity element");
  G.inv.assign(G.order, -1);
  for (int a = 0; a < G.order; ++a)
    for (int b = 0; b < G.order; ++b)
      if (G.mul(a, b) == G.id) G.inv[a] = b;
  for (int a = 0; a < G.order; ++a) G.labels.push_back(std::to_string(a));
  validate_group(G);
  G.irreps = std::move(irreps);
  return G;
}

ConjugacyData conjugacy(const GroupTable& G) {
  ConjugacyData cd;
  const int n = G.order;
  cd.class_of.assign(n, -1);
  cd.section.assign(n, G.id);
  for (int x = 0; x < n; ++x) {
    if (cd.class_of[x] >= 0) continue;
    std::vector<int> cls;
    for (int g = 0; g < n; ++g) {
      int c = G.conj(g, x);
      if (cd.class_of[c] < 0) {
        cd.class_of[c] = cd.num_classes();
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    cd.classes.push_back(cls);
    cd.rep.push_back(cls.front());
    std::vector<int> cent;
    for (int g = 0; g < n; ++g)
      if (G.mul(g, x) == G.mul(x, g)) cent.push_back(g);
    cd.centralizer.push_back(cent);
  }
  for (int k = 0; k < cd.num_classes(); ++k) {
    const int r = cd.rep[k];
    for (int c : cd.classes[k]) {
      int q = -1;
      if (!G.preset_section.empty() && G.conj(G.preset_section[c], r) == c) q = G.preset_section[c];
      if (q < 0)
        for (int g = 0; g < n && q < 0; ++g)
          if (G.conj(g, r) == c) q = g;
      cd.section[c] = q;
    }
    // right-normalise so that q_r = e; q_r centralises r so q r q^-1 is unchanged
    const int qr_inv = G.inv[cd.section[r]];
    for (int c : cd.classes[k]) cd.section[c] = G.mul(cd.section[c], qr_inv);
  }
  return cd;
}

int cocycle(const GroupTable& G, const ConjugacyData& cd, int c, int x) {
  const int gc = G.conj(x, c);
  return G.mul(G.mul(G.inv[cd.section[gc]], x), cd.section[c]);
}

std::vector<Irrep> cyclic_subgroup_irreps(const GroupTable& G, const std::vector<int>& elements) {
  const int m = static_cast<int>(elements.size());
  int gen = -1;
  for (int g : elements)
    if (G.element_order(g) == m) {
      gen = g;
      break;
    }
  if (gen < 0) throw Error(ErrorKind::UnsupportedGroup, "subgroup is not cyclic and no irrep data supplied");
  std::vector<int> power(G.order, -1);
  int x = G.id;
  for (int k = 0; k < m; ++k) {
    power[x] = k;
    x = G.mul(x, gen);
  }
  std::vector<Irrep> out;
  for (int j = 0; j < m; ++j) {
    Irrep ir;
    ir.dim = 1;
    if (j == 0)
      ir.name = "1";
    else if (m == 2)
      ir.name = "-1";
    else if (m == 3)
      ir.name = j == 1 ? "omega" : "omega*";
    else
      ir.name = "q^" + std::to_string(j);
    ir.mats.assign(G.order, CMatrix());
    for (int g : elements) {
      const double ang = 2.0 * M_PI * j * power[g] / m;
      ir.mats[g] = CMatrix::Constant(1, 1, std::polar(1.0, ang));
    }
    out.push_back(ir);
  }
  return out;
}

std::vector<Irrep> group_irreps(const GroupTable& G) {
  if (!G.irreps.empty()) return G.irreps;
  std::vector<int> all(G.order);
  std::iota(all.begin(), all.end(), 0);
  return cyclic_subgroup_irreps(G, all);
}

std::vector<Irrep> centralizer_irreps(const GroupTable& G, const ConjugacyData& cd, int cls) {
  const auto& cent = cd.centralizer.at(cls);
  if (static_cast<int>(cent.size()) == G.order) {
    if (!G.irreps.empty()) return G.irreps;
    return cyclic_subgroup_irreps(G, cent);
  }
  return cyclic_subgroup_irreps(G, cent);
}

double OrthogonalityReport::max_deviation() const {
  return std::max({orth1, orth2, fullorth, unitarity, homomorphism});
}

OrthogonalityReport check_character_orthogonality(const GroupTable& G, const std::vector<int>& el,
                                                  const std::vector<Irrep>& irreps) {
  const int n = static_cast<int>(el.size());
  int dimsq = 0;
  for (const auto& r : irreps) dimsq += r.dim * r.dim;
  if (dimsq != n)
    throw Error(ErrorKind::IncompleteIrrepSet,
                "sum of squared dimensions " + std::to_string(dimsq) + " != " + std::to_string(n));
  OrthogonalityReport rep;
  for (const auto& r : irreps)
    for (int g : el) {
      const CMatrix& m = r.mats[g];
      rep.unitarity = std::max(rep.unitarity, (m * m.adjoint() - CMatrix::Identity(r.dim, r.dim)).norm());
      for (int h : el)
        rep.homomorphism = std::max(rep.homomorphism, (r.mats[G.mul(g, h)] - m * r.mats[h]).norm());
    }
  // sum_h Tr_pi(h^-1) Tr_pi'(hg) = delta |G|/dim Tr_pi(g)
  for (std::size_t a = 0; a < irreps.size(); ++a)
    for (std::size_t b = 0; b < irreps.size(); ++b)
      for (int g : el) {
        Complex s = 0;
        for (int h : el) s += irreps[a].character(G.inv[h]) * irreps[b].character(G.mul(h, g));
        Complex want = a == b ? Complex(n) / double(irreps[a].dim) * irreps[a].character(g) : 0.0;
        rep.orth1 = std::max(rep.orth1, std::abs(s - want));
      }
  // sum_pi Tr_pi(g^-1) Tr_pi(h) = delta_{C_g,C_h} |C(g)|
  for (int g : el)
    for (int h : el) {
      Complex s = 0;
      for (const auto& r : irreps) s += r.character(G.inv[g]) * r.character(h);
      bool conj = false;
      int cent = 0;
      for (int x : el) {
        if (G.conj(x, g) == h) conj = true;
        if (G.mul(x, g) == G.mul(g, x)) ++cent;
      }
      rep.orth2 = std::max(rep.orth2, std::abs(s - (conj ? double(cent) : 0.0)));
    }
  // (dim/|G|) sum_g pi(g^-1)_ji pi'(g)_kl = delta_pipi' delta_ki delta_lj
  for (std::size_t a = 0; a < irreps.size(); ++a)
    for (std::size_t b = 0; b < irreps.size(); ++b) {
      const int da = irreps[a].dim, db = irreps[b].dim;
      for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
          for (int k = 0; k < db; ++k)
            for (int l = 0; l < db; ++l) {
              Complex s = 0;
              for (int g : el) s += irreps[a].mats[G.inv[g]](j, i) * irreps[b].mats[g](k, l);
              s *= double(da) / n;
              double want = (a == b && k == i && l == j) ? 1.0 : 0.0;
              rep.fullorth = std::max(rep.fullorth, std::abs(s - want));
            }
    }
  return rep;
}

Irrep tensor_irrep(const Irrep& a, const Irrep& b) {
  Irrep t;
  t.name = a.name + "x" + b.name;
  t.dim = a.dim * b.dim;
  t.mats.resize(a.mats.size());
  for (std::size_t g = 0; g < a.mats.size(); ++g) {
    if (a.mats[g].size() == 0 || b.mats[g].size() == 0) continue;
    CMatrix m(t.dim, t.dim);
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < a.dim; ++j) m.block(i * b.dim, j * b.dim, b.dim, b.dim) = a.mats[g](i, j) * b.mats[g];
    t.mats[g] = m;
  }
  return t;
}

long long hom_oracle(const GroupTable& G, int genus) {
  // Burnside over simultaneous conjugation: orbits = (1/|G|) sum_x |Fix(x)|
  long long total = 0;
  for (int x = 0; x < G.order; ++x) {
    std::vector<int> cent;
    for (int g = 0; g < G.order; ++g)
      if (G.mul(g, x) == G.mul(x, g)) cent.push_back(g);
    std::vector<long long> dp(G.order, 0);
    dp[G.id] = 1;
    for (int k = 0; k < genus; ++k) {
      std::vector<long long> next(G.order, 0);
      for (int a : cent)
        for (int b : cent) {
          const int comm = G.mul(G.mul(a, b), G.mul(G.inv[a], G.inv[b]));
          for (int p = 0; p < G.order; ++p)
            if (dp[p]) next[G.mul(p, comm)] += dp[p];
        }
      dp = next;
    }
    total += dp[G.id];
  }
  return total / G.order;
}

}  // namespace qdl
