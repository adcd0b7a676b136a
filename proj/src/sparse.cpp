#include "qdl/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "qdl/error.hpp"
#include "qdl/lattice.hpp"

namespace qdl {

Codec::Codec(int group_order, int edges) : num_edges(edges) {
  bits = 1;
  while ((1 << bits) < group_order) ++bits;
  if (bits * num_edges > 128)
    throw Error(ErrorKind::BadDimensions, "configuration does not fit in a 128-bit key");
  mask = (Key(1) << bits) - 1;
}

Key Codec::encode(const std::vector<int>& cfg) const {
  Key k = 0;
  for (int e = 0; e < num_edges; ++e) k = set(k, e, cfg[e]);
  return k;
}

std::vector<int> Codec::decode(Key k) const {
  std::vector<int> cfg(num_edges);
  for (int e = 0; e < num_edges; ++e) cfg[e] = get(k, e);
  return cfg;
}

Complex SparseState::amplitude(Key k) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), k,
                             [](const std::pair<Key, Complex>& a, Key b) { return a.first < b; });
  return (it != entries.end() && it->first == k) ? it->second : Complex(0.0);
}

SparseState empty_state(const GroupTable& G, int num_edges) {
  SparseState s;
  s.group = &G;
  s.codec = Codec(G.order, num_edges);
  return s;
}

SparseState basis_state(const GroupTable& G, int num_edges, const std::vector<int>& cfg) {
  SparseState s = empty_state(G, num_edges);
  s.entries.emplace_back(s.codec.encode(cfg), Complex(1.0));
  return s;
}

namespace {

using Entry = std::pair<Key, Complex>;

void sort_merge(std::vector<Entry>& v) {
  std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (w > 0 && v[w - 1].first == v[r].first)
      v[w - 1].second += v[r].second;
    else
      v[w++] = v[r];
  }
  v.resize(w);
}

void prune(std::vector<Entry>& v, double threshold) {
  std::erase_if(v, [&](const Entry& e) { return std::abs(e.second) <= threshold; });
}

double max_amp(const std::vector<Entry>& v) {
  double m = 0;
  for (const auto& e : v) m = std::max(m, std::abs(e.second));
  return m;
}

void check_same(const SparseState& a, const SparseState& b) {
  if (a.num_edges() != b.num_edges() || a.group == nullptr || b.group == nullptr || a.group->order != b.group->order)
    throw Error(ErrorKind::LatticeMismatch, "states live on different lattices or groups");
}

template <class F>
SparseState merge_with(const SparseState& a, const SparseState& b, F f) {
  check_same(a, b);
  SparseState out = a;
  out.entries.clear();
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() || j < b.entries.size()) {
    if (j == b.entries.size() || (i < a.entries.size() && a.entries[i].first < b.entries[j].first)) {
      out.entries.emplace_back(a.entries[i].first, f(a.entries[i].second, Complex(0)));
      ++i;
    } else if (i == a.entries.size() || b.entries[j].first < a.entries[i].first) {
      out.entries.emplace_back(b.entries[j].first, f(Complex(0), b.entries[j].second));
      ++j;
    } else {
      out.entries.emplace_back(a.entries[i].first, f(a.entries[i].second, b.entries[j].second));
      ++i, ++j;
    }
  }
  std::erase_if(out.entries, [](const Entry& e) { return e.second == Complex(0); });
  return out;
}

}  // namespace

SparseState random_state(const GroupTable& G, const Lattice& L, int support, std::uint64_t seed) {
  SparseState s = empty_state(G, L.num_edges());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, G.order - 1);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < support; ++k) {
    Key key = 0;
    for (int e = 0; e < L.num_edges(); ++e) key = s.codec.set(key, e, pick(rng));
    const double re = gauss(rng), im = gauss(rng);
    s.entries.emplace_back(key, Complex(re, im));
  }
  sort_merge(s.entries);
  return normalized(s);
}

std::vector<SparseState> random_states(const GroupTable& G, const Lattice& L, int count, int support,
                                       std::uint64_t seed) {
  std::vector<SparseState> out;
  for (int i = 0; i < count; ++i) out.push_back(random_state(G, L, support, seed + 7919 * i));
  return out;
}

SparseState operator+(const SparseState& a, const SparseState& b) {
  return merge_with(a, b, [](Complex x, Complex y) { return x + y; });
}

SparseState operator-(const SparseState& a, const SparseState& b) {
  return merge_with(a, b, [](Complex x, Complex y) { return x - y; });
}

SparseState operator*(Complex s, const SparseState& a) {
  SparseState out = a;
  for (auto& e : out.entries) e.second *= s;
  if (s == Complex(0)) out.entries.clear();
  return out;
}

Complex inner(const SparseState& a, const SparseState& b) {
  check_same(a, b);
  Complex sum = 0;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() && j < b.entries.size()) {
    if (a.entries[i].first < b.entries[j].first)
      ++i;
    else if (b.entries[j].first < a.entries[i].first)
      ++j;
    else
      sum += std::conj(a.entries[i++].second) * b.entries[j++].second;
  }
  return sum;
}

double norm(const SparseState& a) {
  double s = 0;
  for (const auto& e : a.entries) s += std::norm(e.second);
  return std::sqrt(s);
}

SparseState normalized(const SparseState& a) {
  const double n = norm(a);
  return n > 0 ? Complex(1.0 / n) * a : a;
}

double max_abs_diff(const SparseState& a, const SparseState& b) {
  double m = 0;
  for (const auto& e : (a - b).entries) m = std::max(m, std::abs(e.second));
  return m;
}

// ---- words

Word word_const(int g) { return Word{Factor{-1, g, false}}; }
Word word_edge(int e, bool inverse) { return Word{Factor{e, 0, inverse}}; }

Word word_concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

Word word_inverse(const GroupTable& G, const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    Factor f = *it;
    if (f.edge < 0)
      f.elem = G.inv[f.elem];
    else
      f.inv = !f.inv;
    out.push_back(f);
  }
  return out;
}

Word word_simplify(const GroupTable& G, const Word& w) {
  if (G.is_abelian()) {
    int c = G.id;
    std::map<int, int> power;
    for (const auto& f : w) {
      if (f.edge < 0)
        c = G.mul(c, f.elem);
      else
        power[f.edge] += f.inv ? -1 : 1;
    }
    Word out;
    if (c != G.id) out.push_back(Factor{-1, c, false});
    for (auto [e, p] : power) {
      p %= G.order;
      for (int k = 0; k < std::abs(p); ++k) out.push_back(Factor{e, 0, p < 0});
    }
    return out;
  }
  Word st;
  for (const auto& f : w) {
    if (f.edge < 0 && f.elem == G.id) continue;
    if (!st.empty()) {
      Factor& t = st.back();
      if (f.edge < 0 && t.edge < 0) {
        t.elem = G.mul(t.elem, f.elem);
        if (t.elem == G.id) st.pop_back();
        continue;
      }
      if (f.edge >= 0 && t.edge == f.edge && t.inv != f.inv) {
        st.pop_back();
        continue;
      }
    }
    st.push_back(f);
  }
  return st;
}

int word_eval(const GroupTable& G, const Codec& c, const Word& w, Key k) {
  int g = G.id;
  for (const auto& f : w) {
    int x = f.edge < 0 ? f.elem : c.get(k, f.edge);
    if (f.edge >= 0 && f.inv) x = G.inv[x];
    g = G.mul(g, x);
  }
  return g;
}

// ---- operators

bool OpSum::diagonal() const {
  return std::all_of(terms.begin(), terms.end(), [](const MonomialOp& m) { return m.diagonal(); });
}

OpSum op_identity() { return OpSum{{MonomialOp{}}}; }
OpSum op_zero() { return OpSum{}; }

OpSum operator+(const OpSum& a, const OpSum& b) {
  OpSum out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

OpSum operator*(Complex s, const OpSum& a) {
  OpSum out = a;
  for (auto& t : out.terms) t.coef *= s;
  return out;
}

OpSum operator-(const OpSum& a, const OpSum& b) { return a + Complex(-1.0) * b; }

namespace {

// Replace edge factors by the expressions the acts of m assign to them.
Word substitute(const GroupTable& G, const std::vector<Act>& acts, const Word& w) {
  Word out;
  for (const auto& f : w) {
    const Act* a = nullptr;
    if (f.edge >= 0)
      for (const auto& act : acts)
        if (act.edge == f.edge) a = &act;
    if (!a) {
      out.push_back(f);
      continue;
    }
    Word ex = word_concat(word_concat(a->left, word_edge(f.edge)), a->right);
    if (f.inv) ex = word_inverse(G, ex);
    out.insert(out.end(), ex.begin(), ex.end());
  }
  return word_simplify(G, out);
}

bool has_edges(const Word& w) {
  return std::any_of(w.begin(), w.end(), [](const Factor& f) { return f.edge >= 0; });
}

// Drop constant predicates; returns false if one of them fails.
bool tidy(const GroupTable& G, MonomialOp& m) {
  std::vector<Pred> keep;
  for (auto& p : m.preds) {
    p.word = word_simplify(G, p.word);
    if (!has_edges(p.word)) {
      int v = G.id;
      for (const auto& f : p.word) v = G.mul(v, f.elem);
      if (v != p.target) return false;
      continue;
    }
    bool dup = false;
    for (const auto& q : keep)
      if (q.target == p.target && q.word.size() == p.word.size() &&
          std::equal(q.word.begin(), q.word.end(), p.word.begin(), [](const Factor& x, const Factor& y) {
            return x.edge == y.edge && x.elem == y.elem && x.inv == y.inv;
          }))
        dup = true;
    if (!dup) keep.push_back(p);
  }
  m.preds = std::move(keep);
  std::vector<Act> acts;
  for (auto& a : m.acts) {
    a.left = word_simplify(G, a.left);
    a.right = word_simplify(G, a.right);
    if (!a.left.empty() || !a.right.empty()) acts.push_back(a);
  }
  m.acts = std::move(acts);
  return m.coef != Complex(0);
}

}  // namespace

MonomialOp compose(const GroupTable& G, const MonomialOp& a, const MonomialOp& b) {
  MonomialOp m;
  m.coef = a.coef * b.coef;
  m.preds = b.preds;
  for (const auto& p : a.preds) m.preds.push_back(Pred{substitute(G, b.acts, p.word), p.target});
  std::set<int> edges;
  for (const auto& x : a.acts) edges.insert(x.edge);
  for (const auto& x : b.acts) edges.insert(x.edge);
  for (int e : edges) {
    Act r{e, {}, {}};
    for (const auto& x : b.acts)
      if (x.edge == e) r.left = x.left, r.right = x.right;
    for (const auto& x : a.acts)
      if (x.edge == e) {
        r.left = word_concat(substitute(G, b.acts, x.left), r.left);
        r.right = word_concat(r.right, substitute(G, b.acts, x.right));
      }
    m.acts.push_back(r);
  }
  if (!tidy(G, m)) m.coef = 0;
  return m;
}

OpSum compose(const GroupTable& G, const OpSum& a, const OpSum& b) {
  OpSum out;
  for (const auto& x : a.terms)
    for (const auto& y : b.terms) {
      MonomialOp m = compose(G, x, y);
      if (m.coef != Complex(0)) out.terms.push_back(std::move(m));
    }
  return out;
}

MonomialOp adjoint(const GroupTable& G, const MonomialOp& a) {
  std::set<int> acted;
  for (const auto& x : a.acts) acted.insert(x.edge);
  for (const auto& x : a.acts)
    for (const Word* w : {&x.left, &x.right})
      for (const auto& f : *w)
        if (f.edge >= 0 && acted.count(f.edge))
          throw Error(ErrorKind::ConfigError, "adjoint needs multipliers independent of acted edges");
  MonomialOp m;
  m.coef = std::conj(a.coef);
  for (const auto& x : a.acts) m.acts.push_back(Act{x.edge, word_inverse(G, x.left), word_inverse(G, x.right)});
  for (const auto& p : a.preds) m.preds.push_back(Pred{substitute(G, m.acts, p.word), p.target});
  if (!tidy(G, m)) m.coef = 0;
  return m;
}

OpSum adjoint(const GroupTable& G, const OpSum& a) {
  OpSum out;
  for (const auto& t : a.terms) {
    MonomialOp m = adjoint(G, t);
    if (m.coef != Complex(0)) out.terms.push_back(std::move(m));
  }
  return out;
}

ApplyOptions& default_apply_options() {
  static ApplyOptions opt;
  return opt;
}

namespace {

int thread_count(const ApplyOptions& opt) {
  if (opt.threads > 0) return opt.threads;
  if (const char* env = std::getenv("QDL_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void apply_chunk(const GroupTable& G, const OpSum& op, const Codec& c, const Entry* begin, const Entry* end,
                 std::vector<Entry>& out) {
  std::vector<int> vals;
  for (const Entry* it = begin; it != end; ++it) {
    const Key k = it->first;
    for (const auto& t : op.terms) {
      bool ok = true;
      for (const auto& p : t.preds)
        if (word_eval(G, c, p.word, k) != p.target) {
          ok = false;
          break;
        }
      if (!ok) continue;
      vals.resize(t.acts.size());
      for (std::size_t i = 0; i < t.acts.size(); ++i) {
        const Act& a = t.acts[i];
        vals[i] = G.mul(G.mul(word_eval(G, c, a.left, k), c.get(k, a.edge)), word_eval(G, c, a.right, k));
      }
      Key nk = k;
      for (std::size_t i = 0; i < t.acts.size(); ++i) nk = c.set(nk, t.acts[i].edge, vals[i]);
      out.emplace_back(nk, t.coef * it->second);
    }
  }
  sort_merge(out);
}

}  // namespace

SparseState apply(const OpSum& op, const SparseState& s, const ApplyOptions& opt) {
  const GroupTable& G = *s.group;
  for (const auto& t : op.terms) {
    for (const auto& a : t.acts)
      if (a.edge >= s.num_edges()) throw Error(ErrorKind::LatticeMismatch, "operator acts on a missing edge");
    for (const auto& p : t.preds)
      for (const auto& f : p.word)
        if (f.edge >= s.num_edges() || f.elem >= G.order)
          throw Error(ErrorKind::LatticeMismatch, "operator reads a missing edge");
  }
  SparseState out = s;
  out.entries.clear();
  const std::size_t n = s.entries.size();
  const std::size_t work = n * std::max<std::size_t>(1, op.terms.size());
  int T = thread_count(opt);
  if (work < 20000) T = 1;
  T = static_cast<int>(std::min<std::size_t>(T, std::max<std::size_t>(1, n)));
  std::vector<std::vector<Entry>> parts(T);
  const Entry* base = s.entries.data();
  if (T == 1) {
    apply_chunk(G, op, s.codec, base, base + n, parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < T; ++t) {
      const std::size_t lo = n * t / T, hi = n * (t + 1) / T;
      pool.emplace_back([&, lo, hi, t] { apply_chunk(G, op, s.codec, base + lo, base + hi, parts[t]); });
    }
    for (auto& th : pool) th.join();
  }
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<Entry> all;
  all.reserve(total);
  std::vector<std::size_t> bounds{0};
  for (auto& p : parts) {
    all.insert(all.end(), p.begin(), p.end());
    bounds.push_back(all.size());
    std::vector<Entry>().swap(p);
  }
  // pairwise merge of the sorted runs
  while (bounds.size() > 2) {
    std::vector<std::size_t> nb{0};
    for (std::size_t i = 0; i + 1 < bounds.size(); i += 2) {
      if (i + 2 < bounds.size()) {
        std::inplace_merge(all.begin() + bounds[i], all.begin() + bounds[i + 1], all.begin() + bounds[i + 2],
                           [](const Entry& a, const Entry& b) { return a.first < b.first; });
        nb.push_back(bounds[i + 2]);
      } else {
        nb.push_back(bounds[i + 1]);
      }
    }
    bounds = nb;
  }
  std::size_t w = 0;
  for (std::size_t r = 0; r < all.size(); ++r) {
    if (w > 0 && all[w - 1].first == all[r].first)
      all[w - 1].second += all[r].second;
    else
      all[w++] = all[r];
  }
  all.resize(w);
  prune(all, opt.prune * std::max(max_amp(all), max_amp(s.entries)));
  if (all.size() > opt.support_cap)
    throw Error(ErrorKind::SupportBudgetExceeded,
                "support " + std::to_string(all.size()) + " exceeds cap " + std::to_string(opt.support_cap));
  out.entries = std::move(all);
  return out;
}

SparseState apply(const GroupTable& G, const MonomialOp& op, const SparseState& s) {
  (void)G;
  return apply(OpSum{{op}}, s);
}

CMatrix gram_matrix(const std::vector<SparseState>& states) {
  const int n = static_cast<int>(states.size());
  CMatrix g(n, n);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
  const int T = std::max(1, std::min<int>(thread_count(default_apply_options()), static_cast<int>(pairs.size())));
  std::vector<std::thread> pool;
  for (int t = 0; t < T; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t k = t; k < pairs.size(); k += T) {
        auto [i, j] = pairs[k];
        g(i, j) = inner(states[i], states[j]);
        g(j, i) = std::conj(g(i, j));
      }
    });
  for (auto& th : pool) th.join();
  return g;
}

int rank_of_span(const std::vector<SparseState>& states, double rel_tol) {
  if (states.empty()) return 0;
  const CMatrix g = gram_matrix(states);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  if (top == 0) return 0;
  int r = 0;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) > rel_tol * top) ++r;
  return r;
}

double op_distance(const OpSum& a, const OpSum& b, const std::vector<SparseState>& states) {
  double m = 0;
  for (const auto& s : states) m = std::max(m, norm(apply(a, s) - apply(b, s)));
  return m;
}

}  // namespace qdl
