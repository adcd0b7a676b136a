#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qdl/group.hpp"

namespace qdl {

struct Lattice;

// Packed edge configuration: ceil(log2 |G|) bits per edge in edge order.
using Key = unsigned __int128;

struct Codec {
  int bits = 1;
  int num_edges = 0;
  Key mask = 1;

  Codec() = default;
  Codec(int group_order, int num_edges);
  int get(Key k, int e) const { return static_cast<int>((k >> (bits * e)) & mask); }
  Key set(Key k, int e, int g) const {
    const int sh = bits * e;
    return (k & ~(mask << sh)) | (static_cast<Key>(g) << sh);
  }
  Key encode(const std::vector<int>& cfg) const;
  std::vector<int> decode(Key k) const;
};

struct SparseState {
  const GroupTable* group = nullptr;
  Codec codec;
  std::vector<std::pair<Key, Complex>> entries;  // sorted by key, no duplicates

  std::size_t support() const { return entries.size(); }
  int num_edges() const { return codec.num_edges; }
  Complex amplitude(Key k) const;
};

SparseState empty_state(const GroupTable& G, int num_edges);
SparseState basis_state(const GroupTable& G, int num_edges, const std::vector<int>& cfg);
// Reproducible random state: `support` uniformly drawn configurations, complex normal amplitudes, unit norm.
SparseState random_state(const GroupTable& G, const Lattice& L, int support, std::uint64_t seed);

SparseState operator+(const SparseState& a, const SparseState& b);
SparseState operator-(const SparseState& a, const SparseState& b);
SparseState operator*(Complex s, const SparseState& a);
Complex inner(const SparseState& a, const SparseState& b);  // conjugate-linear in a
double norm(const SparseState& a);
SparseState normalized(const SparseState& a);
// max |a_k - b_k|
double max_abs_diff(const SparseState& a, const SparseState& b);

// A product of group elements; each factor is a constant or an edge value (possibly inverted).
struct Factor {
  int edge = -1;  // -1 for a constant
  int elem = 0;
  bool inv = false;
};
using Word = std::vector<Factor>;

Word word_const(int g);
Word word_edge(int e, bool inverse = false);
Word word_concat(const Word& a, const Word& b);
Word word_inverse(const GroupTable& G, const Word& w);
Word word_simplify(const GroupTable& G, const Word& w);
int word_eval(const GroupTable& G, const Codec& c, const Word& w, Key k);

struct Pred {
  Word word;
  int target = 0;
};

// new value of `edge` = left * old * right, both words evaluated on the input configuration
struct Act {
  int edge = -1;
  Word left, right;
};

// Basis configuration x maps to coef * (prod of predicates) * |acts(x)>.
struct MonomialOp {
  Complex coef = 1.0;
  std::vector<Pred> preds;
  std::vector<Act> acts;

  bool diagonal() const { return acts.empty(); }
};

struct OpSum {
  std::vector<MonomialOp> terms;

  std::size_t size() const { return terms.size(); }
  bool diagonal() const;
};

OpSum op_identity();
OpSum op_zero();
OpSum operator+(const OpSum& a, const OpSum& b);
OpSum operator-(const OpSum& a, const OpSum& b);
OpSum operator*(Complex s, const OpSum& a);
// compose(a, b) = a after b
OpSum compose(const GroupTable& G, const OpSum& a, const OpSum& b);
MonomialOp compose(const GroupTable& G, const MonomialOp& a, const MonomialOp& b);
// Requires act words that do not read acted edges; throws ConfigError otherwise.
OpSum adjoint(const GroupTable& G, const OpSum& a);
MonomialOp adjoint(const GroupTable& G, const MonomialOp& a);

struct ApplyOptions {
  std::size_t support_cap = std::size_t(1) << 24;
  int threads = 0;  // 0: QDL_THREADS or hardware concurrency
  double prune = 1e-14;
};
ApplyOptions& default_apply_options();

SparseState apply(const OpSum& op, const SparseState& s, const ApplyOptions& opt = default_apply_options());
SparseState apply(const GroupTable& G, const MonomialOp& op, const SparseState& s);

// Numerical rank of the Gram matrix, relative eigenvalue threshold.
int rank_of_span(const std::vector<SparseState>& states, double rel_tol = 1e-8);
CMatrix gram_matrix(const std::vector<SparseState>& states);

// max over the given states of |(a - b) psi|
double op_distance(const OpSum& a, const OpSum& b, const std::vector<SparseState>& states);
std::vector<SparseState> random_states(const GroupTable& G, const Lattice& L, int count, int support,
                                       std::uint64_t seed);

}  // namespace qdl
