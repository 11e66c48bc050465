#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "levinlab/free_group.hpp"
#include "levinlab/numeric.hpp"
#include "levinlab/stream.hpp"

namespace levin {

// ---------------------------------------------------------------------------
// Sequences

// A tail that never converges, given by a computable value function. Produced
// only as the image of a non-member under a reduction, where the transformer
// knows the limit behaviour from the source description.
struct DivergentTail {
  std::function<Nat(Nat)> value;  // absolute index -> cell
  std::optional<Nat> sup;         // supremum of the tail, nullopt if unbounded
  std::string label;
};

struct ConstTail {
  Nat value = 0;
  friend bool operator==(const ConstTail&, const ConstTail&) = default;
};
struct PeriodicTail {
  std::vector<Nat> word;  // nonempty
  friend bool operator==(const PeriodicTail&, const PeriodicTail&) = default;
};
struct RampTail {
  friend bool operator==(const RampTail&, const RampTail&) = default;
};

using Tail = std::variant<ConstTail, PeriodicTail, RampTail, std::shared_ptr<const DivergentTail>>;

struct SeqInstance {
  std::vector<Nat> prefix;
  Tail tail = ConstTail{0};

  Nat value(Nat n) const;
  // Least n with x(m) = 0 for all m >= n.
  std::optional<Nat> zero_from() const;
  // Least s with x(t) = x(s) for all t >= s.
  std::optional<Nat> stable_from() const;
  std::optional<Nat> sup() const;
  std::optional<Nat> first_nonzero() const;
  bool all_zero() const { return !first_nonzero().has_value(); }
  bool computed() const;
};

SeqInstance make_seq(std::vector<Nat> prefix, Tail tail);

// ---------------------------------------------------------------------------
// Families of sequences x = (x_n)

struct AllZeroDefault {};
struct NonZeroAtDefault {
  Nat position = 0;
};
// Columns produced by a transformer together with the ground truth on which
// columns are identically zero.
struct GeneratedColumns {
  std::function<SeqInstance(Nat)> column;
  std::function<bool(Nat)> zero;
  std::function<std::optional<Nat>()> least_zero;
  std::string label;
};

using FamilyDefault = std::variant<AllZeroDefault, NonZeroAtDefault, std::shared_ptr<const GeneratedColumns>>;

struct FamilySeqInstance {
  std::map<Nat, SeqInstance> exceptions;
  FamilyDefault fallback = AllZeroDefault{};

  SeqInstance column(Nat n) const;
  bool column_zero(Nat n) const;
  // Index of the first nonzero cell of column n (the stage at which
  // x_n != 0^inf is recognised), or nullopt when the column is zero.
  std::optional<Nat> first_nonzero(Nat n) const;
  std::optional<Nat> least_zero_column() const;
  bool splittable() const;
};

// ---------------------------------------------------------------------------
// Pre-reals: base + sum over the support of 2^{-n^2}, presented by the
// approximations q_n = base + jitter_n + sum_{k^2 <= n+2, k in support} 2^{-k^2}.

struct PreRealInstance {
  Rational base = 0;
  SeqInstance support;  // k is in the support iff support.value(k) != 0
  Nat jitter_length = 0;
  int jitter_sign = 1;

  Rational approximation(Nat n) const;
  bool rational() const { return support.zero_from().has_value(); }
  // Exact value; only for rational instances.
  Rational exact() const;
};

// Sequences of rationals, optionally presented as sequences of pre-reals with
// cell <n,k> the k-th approximation of x_n.
struct RatSeqInstance {
  std::vector<Rational> prefix;
  enum class TailKind { Const, Periodic, Ramp } tail_kind = TailKind::Const;
  std::vector<Rational> tail;  // one value for Const, the word for Periodic
  bool real = false;
  Nat jitter_length = 0;

  Rational value(Nat n) const;
  Rational approximation(Nat n, Nat k) const;
  std::optional<Rational> sup() const;
};

// ---------------------------------------------------------------------------
// Graphs

struct TimedEdge {
  Nat u = 0;
  Nat v = 0;
  Nat stage = 0;
  Nat id = 0;  // edge identity for function presentations
  friend bool operator==(const TimedEdge&, const TimedEdge&) = default;
};

struct GraphInstance {
  bool function_presentation = false;
  std::set<Nat> vertices;
  std::vector<TimedEdge> edges;

  bool connected(Nat a, Nat b) const;
  bool splittable() const { return edges.empty(); }
};

// Image of a family under the half-truth construction: a vertex v0 = 0 and for
// each n a path (n,0)-(n,1)-... (vertex codes 1+<n,i>) cut at the first nonzero
// cell of x_n, whose last vertex is joined to v0.
struct ColumnGraphInstance {
  FamilySeqInstance family;

  static Nat hub() { return 0; }
  static Nat vertex(Nat n, Nat i) { return 1 + pair(n, i); }
  bool has_vertex(Nat v) const;
  // Component label: 0 for the hub component, 1+n for an infinite column n.
  std::optional<Nat> component(Nat v) const;
};

struct ActionInstance {
  std::set<Nat> carrier;
  std::map<Nat, free_group::Permutation> generators;

  // Action of the group element coded by g, nullopt if g is not a reduced word
  // over present generators or a is outside the carrier.
  std::optional<Nat> act(Nat g, Nat a) const;
  bool same_orbit(Nat a, Nat b) const;
};

// Orbit graph of an action: edge <g,a> joins a and g.a whenever they differ.
struct ActionGraphInstance {
  ActionInstance action;
};

// ---------------------------------------------------------------------------
// Orders

struct NoTail {};
struct ChainTail {
  Nat start = 0;  // every n >= start is a new top
};
struct PairsTail {
  Nat start = 0;  // n >= start arrive in incomparable pairs above all earlier
};
struct BelowTail {
  Nat start = 0;  // every n >= start lies directly below top
  Nat top = 0;
};
using PosetTail = std::variant<NoTail, ChainTail, PairsTail, BelowTail>;

// Partial order on a subset of naturals; element a arrives at stage a.
struct PosetInstance {
  std::set<Nat> core;
  std::set<std::pair<Nat, Nat>> less;  // strict, transitively closed, on core
  PosetTail tail = NoTail{};

  bool contains(Nat a) const;
  bool leq(Nat a, Nat b) const;
  std::optional<Nat> greatest() const;
};

// Orders grown from a family: DenseIntervals is the linear order on codes
// <n,i> whose interval ((n,0),(n+1,0)) is filled densely once x_n is seen to be
// nonzero; DescendingChains is the bottomed order (bottom 0, (n,i) coded
// 1+<n,i>) that hangs an infinite descending chain under (n,0) in that case.
struct ColumnOrderInstance {
  enum class Kind { DenseIntervals, DescendingChains } kind = Kind::DenseIntervals;
  FamilySeqInstance family;

  bool contains(Nat code) const;
  bool leq(Nat a, Nat b) const;
  std::optional<std::pair<Nat, Nat>> label(Nat code) const;  // (n,i) of an element
};

// First nonzero cell of column n among cells 0..i, if any. Column structures
// are defined through a probe so that oracles and stream transformers share
// one definition.
using ColumnProbe = std::function<std::optional<Nat>(Nat n, Nat i)>;

ColumnProbe probe_of(const FamilySeqInstance& f);

Nat column_graph_cell(const ColumnProbe& probe, Nat index);
bool column_order_contains(ColumnOrderInstance::Kind kind, const ColumnProbe& probe, Nat code);
bool column_order_leq(ColumnOrderInstance::Kind kind, const ColumnProbe& probe, Nat a, Nat b);
// The tree holding 0^m for all m and 0^n 1^s iff x_n(k) = 0 for all k < s.
bool column_tree_contains(const ColumnProbe& probe, Nat code);

// Dyadic rational with index j in the enumeration 1/2, 1/4, 3/4, 1/8, ...
Rational dyadic_position(Nat j);

// ---------------------------------------------------------------------------
// Trees. Strings over {0,1} are coded by the binary numeral 1s.

struct TreeInstance {
  std::optional<Nat> spine_depth;        // nullopt: 0^m in T for all m
  std::map<Nat, std::optional<Nat>> columns;  // n -> cutoff, nullopt = infinite
  std::optional<Nat> default_cutoff;     // nullopt = infinite

  // 0^n 1^s is in T iff 0^n is in T and s < cutoff(n).
  std::optional<Nat> cutoff(Nat n) const;
  bool contains(Nat code) const;
  bool extendible(Nat code) const;
  // Number of infinite paths, capped at 2.
  Nat paths_capped() const;
};

std::string decode_string(Nat code);
Nat encode_string(const std::string& bits);

// ---------------------------------------------------------------------------

struct JoinInstance;

using InstanceDescription =
    std::variant<SeqInstance, FamilySeqInstance, PreRealInstance, RatSeqInstance, GraphInstance,
                 ColumnGraphInstance, ActionInstance, ActionGraphInstance, PosetInstance,
                 ColumnOrderInstance, TreeInstance, JoinInstance>;

// Coproduct instance (tag, inner); its stream is the tag followed by the inner
// stream.
struct JoinInstance {
  Nat tag = 0;
  std::shared_ptr<const InstanceDescription> inner;
};

std::string variant_name(const InstanceDescription& d);

// The name generated by a description.
std::shared_ptr<Source> stream_of(const InstanceDescription& d);

// Largest index or vertex mentioned by the description.
Nat universe_bound(const InstanceDescription& d);

// Splittable tagging: all-zero families and edgeless graphs.
bool splittable(const InstanceDescription& d);

// Default step budget 10 * horizon * (universe bound + 1).
Nat default_budget(const InstanceDescription& d, Nat horizon);

}  // namespace levin
