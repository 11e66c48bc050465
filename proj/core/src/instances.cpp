#include "levinlab/instances.hpp"

#include <algorithm>
#include <stdexcept>

#include "levinlab/union_find.hpp"

namespace levin {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Value the tail settles to when it is constant, for Const and uniform words.
std::optional<Nat> constant_tail(const Tail& tail) {
  return std::visit(overloaded{
                        [](const ConstTail& c) -> std::optional<Nat> { return c.value; },
                        [](const PeriodicTail& p) -> std::optional<Nat> {
                          if (std::all_of(p.word.begin(), p.word.end(), [&](Nat v) { return v == p.word.front(); }))
                            return p.word.front();
                          return std::nullopt;
                        },
                        [](const RampTail&) -> std::optional<Nat> { return std::nullopt; },
                        [](const std::shared_ptr<const DivergentTail>&) -> std::optional<Nat> { return std::nullopt; },
                    },
                    tail);
}

Nat isqrt(Nat v) {
  Nat r = 0;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

SeqInstance make_seq(std::vector<Nat> prefix, Tail tail) {
  SeqInstance s;
  s.prefix = std::move(prefix);
  s.tail = std::move(tail);
  if (auto* p = std::get_if<PeriodicTail>(&s.tail); p && p->word.empty()) {
    throw std::invalid_argument("periodic tail needs a nonempty word");
  }
  return s;
}

Nat SeqInstance::value(Nat n) const {
  if (n < prefix.size()) return prefix[n];
  Nat offset = n - prefix.size();
  return std::visit(overloaded{
                        [](const ConstTail& c) { return c.value; },
                        [&](const PeriodicTail& p) { return p.word[offset % p.word.size()]; },
                        [&](const RampTail&) { return n; },
                        [&](const std::shared_ptr<const DivergentTail>& d) { return d->value(n); },
                    },
                    tail);
}

std::optional<Nat> SeqInstance::zero_from() const {
  auto c = constant_tail(tail);
  if (!c || *c != 0) return std::nullopt;
  Nat n = prefix.size();
  while (n > 0 && prefix[n - 1] == 0) --n;
  return n;
}

std::optional<Nat> SeqInstance::stable_from() const {
  auto c = constant_tail(tail);
  if (!c) return std::nullopt;
  Nat n = prefix.size();
  while (n > 0 && prefix[n - 1] == *c) --n;
  return n;
}

std::optional<Nat> SeqInstance::sup() const {
  Nat best = 0;
  for (Nat v : prefix) best = std::max(best, v);
  return std::visit(overloaded{
                        [&](const ConstTail& c) -> std::optional<Nat> { return std::max(best, c.value); },
                        [&](const PeriodicTail& p) -> std::optional<Nat> {
                          return std::max(best, *std::max_element(p.word.begin(), p.word.end()));
                        },
                        [](const RampTail&) -> std::optional<Nat> { return std::nullopt; },
                        [&](const std::shared_ptr<const DivergentTail>& d) -> std::optional<Nat> {
                          if (!d->sup) return std::nullopt;
                          return std::max(best, *d->sup);
                        },
                    },
                    tail);
}

std::optional<Nat> SeqInstance::first_nonzero() const {
  for (Nat i = 0; i < prefix.size(); ++i) {
    if (prefix[i] != 0) return i;
  }
  Nat base = prefix.size();
  return std::visit(overloaded{
                        [&](const ConstTail& c) -> std::optional<Nat> {
                          if (c.value == 0) return std::nullopt;
                          return base;
                        },
                        [&](const PeriodicTail& p) -> std::optional<Nat> {
                          for (Nat i = 0; i < p.word.size(); ++i) {
                            if (p.word[i] != 0) return base + i;
                          }
                          return std::nullopt;
                        },
                        [&](const RampTail&) -> std::optional<Nat> { return std::max<Nat>(base, 1); },
                        [&](const std::shared_ptr<const DivergentTail>& d) -> std::optional<Nat> {
                          // A divergent tail is never eventually zero.
                          for (Nat i = base;; ++i) {
                            if (d->value(i) != 0) return i;
                          }
                        },
                    },
                    tail);
}

bool SeqInstance::computed() const {
  return std::holds_alternative<std::shared_ptr<const DivergentTail>>(tail);
}

// ---------------------------------------------------------------------------

SeqInstance FamilySeqInstance::column(Nat n) const {
  if (auto it = exceptions.find(n); it != exceptions.end()) return it->second;
  return std::visit(overloaded{
                        [](const AllZeroDefault&) { return SeqInstance{}; },
                        [](const NonZeroAtDefault& d) {
                          std::vector<Nat> prefix(d.position, 0);
                          prefix.push_back(1);
                          return make_seq(std::move(prefix), ConstTail{0});
                        },
                        [&](const std::shared_ptr<const GeneratedColumns>& g) { return g->column(n); },
                    },
                    fallback);
}

bool FamilySeqInstance::column_zero(Nat n) const {
  if (auto it = exceptions.find(n); it != exceptions.end()) return it->second.all_zero();
  return std::visit(overloaded{
                        [](const AllZeroDefault&) { return true; },
                        [](const NonZeroAtDefault&) { return false; },
                        [&](const std::shared_ptr<const GeneratedColumns>& g) { return g->zero(n); },
                    },
                    fallback);
}

std::optional<Nat> FamilySeqInstance::first_nonzero(Nat n) const {
  if (column_zero(n)) return std::nullopt;
  return column(n).first_nonzero();
}

std::optional<Nat> FamilySeqInstance::least_zero_column() const {
  std::optional<Nat> best;
  for (const auto& [n, seq] : exceptions) {
    if (seq.all_zero()) {
      best = n;
      break;
    }
  }
  std::optional<Nat> from_default = std::visit(
      overloaded{
          [&](const AllZeroDefault&) -> std::optional<Nat> {
            Nat n = 0;
            while (exceptions.count(n)) ++n;
            return n;
          },
          [](const NonZeroAtDefault&) -> std::optional<Nat> { return std::nullopt; },
          [](const std::shared_ptr<const GeneratedColumns>& g) -> std::optional<Nat> { return g->least_zero(); },
      },
      fallback);
  if (!best) return from_default;
  if (!from_default) return best;
  return std::min(*best, *from_default);
}

bool FamilySeqInstance::splittable() const {
  if (!std::holds_alternative<AllZeroDefault>(fallback)) return false;
  return std::all_of(exceptions.begin(), exceptions.end(), [](const auto& kv) { return kv.second.all_zero(); });
}

// ---------------------------------------------------------------------------

Rational PreRealInstance::approximation(Nat n) const {
  Rational q = base;
  if (n < jitter_length) q += Rational(jitter_sign) * pow2(-static_cast<long>(n) - 3);
  Nat kmax = isqrt(n + 2);
  for (Nat k = 0; k <= kmax; ++k) {
    if (support.value(k) != 0) q += pow2(-static_cast<long>(k * k));
  }
  return q;
}

Rational PreRealInstance::exact() const {
  auto z = support.zero_from();
  if (!z) throw std::logic_error("exact value of an irrational pre-real");
  Rational q = base;
  for (Nat k = 0; k < *z; ++k) {
    if (support.value(k) != 0) q += pow2(-static_cast<long>(k * k));
  }
  return q;
}

// ---------------------------------------------------------------------------

Rational RatSeqInstance::value(Nat n) const {
  if (n < prefix.size()) return prefix[n];
  Nat offset = n - prefix.size();
  switch (tail_kind) {
    case TailKind::Const:
      return tail.at(0);
    case TailKind::Periodic:
      return tail.at(offset % tail.size());
    case TailKind::Ramp:
      return Rational(n);
  }
  return 0;
}

Rational RatSeqInstance::approximation(Nat n, Nat k) const {
  Rational v = value(n);
  if (k < jitter_length) v += pow2(-static_cast<long>(k) - 2);
  return v;
}

std::optional<Rational> RatSeqInstance::sup() const {
  if (tail_kind == TailKind::Ramp) return std::nullopt;
  std::optional<Rational> best;
  auto take = [&](const Rational& v) {
    if (!best || v > *best) best = v;
  };
  for (const auto& v : prefix) take(v);
  for (const auto& v : tail) take(v);
  return best;
}

// ---------------------------------------------------------------------------

bool GraphInstance::connected(Nat a, Nat b) const {
  if (a == b) return true;
  UnionFind uf;
  for (const auto& e : edges) uf.unite(e.u, e.v);
  return uf.connected(a, b);
}

namespace {

bool column_vertex(const ColumnProbe& probe, Nat v) {
  if (v == ColumnGraphInstance::hub()) return true;
  auto [n, i] = unpair(v - 1);
  return i == 0 || !probe(n, i - 1);
}

}  // namespace

bool ColumnGraphInstance::has_vertex(Nat v) const { return column_vertex(probe_of(family), v); }

Nat column_graph_cell(const ColumnProbe& probe, Nat index) {
  if (index % 2 == 0) return column_vertex(probe, index / 2) ? 1 : 0;
  auto [p, q] = unpair((index - 1) / 2);
  if (p >= q || !column_vertex(probe, p) || !column_vertex(probe, q)) return 0;
  auto [m, j] = unpair(q - 1);
  if (p == ColumnGraphInstance::hub()) return probe(m, j) == j ? 1 : 0;
  auto [n, i] = unpair(p - 1);
  return (n == m && j == i + 1) ? 1 : 0;
}

bool column_tree_contains(const ColumnProbe& probe, Nat code) {
  if (code == 0) return false;
  auto bits = decode_string(code);
  Nat n = 0;
  while (n < bits.size() && bits[n] == '0') ++n;
  for (Nat i = n; i < bits.size(); ++i) {
    if (bits[i] != '1') return false;
  }
  Nat k = bits.size() - n;
  return k == 0 || !probe(n, k - 1);
}

std::optional<Nat> ColumnGraphInstance::component(Nat v) const {
  if (!has_vertex(v)) return std::nullopt;
  if (v == hub()) return 0;
  Nat n = unpair(v - 1).first;
  return family.column_zero(n) ? std::optional<Nat>(1 + n) : std::optional<Nat>(0);
}

std::optional<Nat> ActionInstance::act(Nat g, Nat a) const {
  if (!carrier.count(a)) return std::nullopt;
  auto word = free_group::decode(g);
  if (!free_group::is_reduced(word)) return std::nullopt;
  return free_group::act(generators, word, a);
}

bool ActionInstance::same_orbit(Nat a, Nat b) const {
  if (a == b) return true;
  UnionFind uf;
  for (const auto& [id, perm] : generators) {
    for (Nat x : carrier) uf.unite(x, free_group::apply(perm, x));
  }
  return uf.connected(a, b);
}

// ---------------------------------------------------------------------------

bool PosetInstance::contains(Nat a) const {
  if (core.count(a)) return true;
  return std::visit(overloaded{
                        [](const NoTail&) { return false; },
                        [&](const ChainTail& t) { return a >= t.start; },
                        [&](const PairsTail& t) { return a >= t.start; },
                        [&](const BelowTail& t) { return a >= t.start; },
                    },
                    tail);
}

bool PosetInstance::leq(Nat a, Nat b) const {
  if (!contains(a) || !contains(b)) return false;
  if (a == b) return true;
  bool a_core = core.count(a) > 0;
  bool b_core = core.count(b) > 0;
  if (a_core && b_core) return less.count({a, b}) > 0;
  return std::visit(overloaded{
                        [](const NoTail&) { return false; },
                        [&](const ChainTail&) { return !b_core && a < b; },
                        [&](const PairsTail& t) {
                          if (b_core) return false;
                          if (a_core) return true;
                          return (a - t.start) / 2 < (b - t.start) / 2;
                        },
                        [&](const BelowTail& t) { return !a_core && (b == t.top || less.count({t.top, b}) > 0); },
                    },
                    tail);
}

std::optional<Nat> PosetInstance::greatest() const {
  if (std::holds_alternative<ChainTail>(tail) || std::holds_alternative<PairsTail>(tail)) return std::nullopt;
  for (Nat g : core) {
    bool top = std::all_of(core.begin(), core.end(), [&](Nat b) { return leq(b, g); });
    if (!top) continue;
    if (auto* below = std::get_if<BelowTail>(&tail); below && below->top != g) continue;
    return g;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Rational dyadic_position(Nat j) {
  Nat level = 0;
  while ((Nat{2} << level) <= j + 1) ++level;
  Nat r = j + 1 - (Nat{1} << level);
  return Rational(Int(2 * r + 1), Int(1) << static_cast<unsigned>(level + 1));
}

std::optional<std::pair<Nat, Nat>> ColumnOrderInstance::label(Nat code) const {
  if (kind == Kind::DenseIntervals) return unpair(code);
  if (code == 0) return std::nullopt;
  return unpair(code - 1);
}

ColumnProbe probe_of(const FamilySeqInstance& f) {
  return [&f](Nat n, Nat i) -> std::optional<Nat> {
    auto s = f.first_nonzero(n);
    if (s && *s <= i) return s;
    return std::nullopt;
  };
}

bool column_order_contains(ColumnOrderInstance::Kind kind, const ColumnProbe& probe, Nat code) {
  if (kind == ColumnOrderInstance::Kind::DescendingChains) {
    if (code == 0) return true;
    code -= 1;
  }
  auto [n, i] = unpair(code);
  if (i == 0) return true;
  auto s = probe(n, i);
  return s && i >= std::max<Nat>(*s, 1);
}

bool column_order_leq(ColumnOrderInstance::Kind kind, const ColumnProbe& probe, Nat a, Nat b) {
  if (!column_order_contains(kind, probe, a) || !column_order_contains(kind, probe, b)) return false;
  if (a == b) return true;
  if (kind == ColumnOrderInstance::Kind::DescendingChains) {
    if (a == 0) return true;
    if (b == 0) return false;
    auto [n, i] = unpair(a - 1);
    auto [m, j] = unpair(b - 1);
    if (n != m) return false;
    if (j == 0) return true;
    if (i == 0) return false;
    return i > j;
  }
  auto [n, i] = unpair(a);
  auto [m, j] = unpair(b);
  if (n != m) return n < m;
  auto position = [&](Nat col, Nat idx) -> Rational {
    if (idx == 0) return 0;
    Nat s = std::max<Nat>(*probe(col, idx), 1);
    return dyadic_position(idx - s);
  };
  return position(n, i) <= position(m, j);
}

bool ColumnOrderInstance::contains(Nat code) const { return column_order_contains(kind, probe_of(family), code); }

bool ColumnOrderInstance::leq(Nat a, Nat b) const { return column_order_leq(kind, probe_of(family), a, b); }

// ---------------------------------------------------------------------------

std::string decode_string(Nat code) {
  if (code == 0) throw std::invalid_argument("0 codes no string");
  std::string bits;
  while (code > 1) {
    bits.push_back(code % 2 ? '1' : '0');
    code /= 2;
  }
  std::reverse(bits.begin(), bits.end());
  return bits;
}

Nat encode_string(const std::string& bits) {
  Nat code = 1;
  for (char c : bits) code = code * 2 + (c == '1' ? 1 : 0);
  return code;
}

namespace {

// Splits s as 0^n 1^k; nullopt when s has another shape.
std::optional<std::pair<Nat, Nat>> zeros_then_ones(const std::string& s) {
  Nat n = 0;
  while (n < s.size() && s[n] == '0') ++n;
  for (Nat i = n; i < s.size(); ++i) {
    if (s[i] != '1') return std::nullopt;
  }
  return std::pair<Nat, Nat>{n, s.size() - n};
}

}  // namespace

std::optional<Nat> TreeInstance::cutoff(Nat n) const {
  if (spine_depth && n > *spine_depth) return Nat{0};
  if (auto it = columns.find(n); it != columns.end()) return it->second;
  return default_cutoff;
}

bool TreeInstance::contains(Nat code) const {
  if (code == 0) return false;
  auto shape = zeros_then_ones(decode_string(code));
  if (!shape) return false;
  auto [n, k] = *shape;
  if (spine_depth && n > *spine_depth) return false;
  if (k == 0) return true;
  auto c = cutoff(n);
  return !c || k < *c;
}

bool TreeInstance::extendible(Nat code) const {
  if (!contains(code)) return false;
  auto [n, k] = *zeros_then_ones(decode_string(code));
  if (k > 0) return !cutoff(n).has_value();
  if (!spine_depth) return true;
  for (Nat m = n; m <= *spine_depth; ++m) {
    if (!cutoff(m)) return true;
  }
  return false;
}

Nat TreeInstance::paths_capped() const {
  Nat paths = spine_depth ? 0 : 1;
  if (!spine_depth) {
    if (!default_cutoff) return 2;
    for (const auto& [n, c] : columns) {
      if (!c) ++paths;
    }
    return std::min<Nat>(paths, 2);
  }
  for (Nat n = 0; n <= *spine_depth && paths < 2; ++n) {
    if (!cutoff(n)) ++paths;
  }
  return std::min<Nat>(paths, 2);
}

// ---------------------------------------------------------------------------

std::string variant_name(const InstanceDescription& d) {
  return std::visit(overloaded{
                        [](const SeqInstance&) { return std::string("seq"); },
                        [](const FamilySeqInstance&) { return std::string("family"); },
                        [](const PreRealInstance&) { return std::string("prereal"); },
                        [](const RatSeqInstance& r) { return std::string(r.real ? "realseq" : "ratseq"); },
                        [](const GraphInstance& g) {
                          return std::string(g.function_presentation ? "graph_fun" : "graph");
                        },
                        [](const ColumnGraphInstance&) { return std::string("column_graph"); },
                        [](const ActionInstance&) { return std::string("action"); },
                        [](const ActionGraphInstance&) { return std::string("action_graph"); },
                        [](const PosetInstance&) { return std::string("poset"); },
                        [](const ColumnOrderInstance& o) {
                          return std::string(o.kind == ColumnOrderInstance::Kind::DenseIntervals
                                                 ? "column_linear_order"
                                                 : "column_bottomed_order");
                        },
                        [](const TreeInstance&) { return std::string("tree"); },
                        [](const JoinInstance&) { return std::string("join"); },
                    },
                    d);
}

namespace {

class FamilySource final : public Source {
 public:
  explicit FamilySource(FamilySeqInstance f) : family_(std::move(f)) {}
  Nat nat(Nat index) override {
    auto [n, k] = unpair(index);
    auto it = cache_.find(n);
    if (it == cache_.end()) it = cache_.emplace(n, family_.column(n)).first;
    return it->second.value(k);
  }

 private:
  FamilySeqInstance family_;
  std::map<Nat, SeqInstance> cache_;
};

class JoinSource final : public Source {
 public:
  JoinSource(Nat tag, std::shared_ptr<Source> inner) : tag_(tag), inner_(std::move(inner)) {}
  bool rational() const override { return inner_->rational(); }
  Nat nat(Nat index) override { return index == 0 ? tag_ : inner_->nat(index - 1); }
  Rational rat(Nat index) override { return index == 0 ? Rational(tag_) : inner_->rat(index - 1); }

 private:
  Nat tag_;
  std::shared_ptr<Source> inner_;
};

Nat graph_cell(const GraphInstance& g, Nat index) {
  if (index % 2 == 0) return g.vertices.count(index / 2) ? 1 : 0;
  Nat e = (index - 1) / 2;
  if (g.function_presentation) {
    for (const auto& edge : g.edges) {
      if (edge.id == e) return 1 + pair(std::min(edge.u, edge.v), std::max(edge.u, edge.v));
    }
    return 0;
  }
  auto [u, v] = unpair(e);
  if (u >= v) return 0;
  for (const auto& edge : g.edges) {
    if (std::min(edge.u, edge.v) == u && std::max(edge.u, edge.v) == v) return 1;
  }
  return 0;
}

}  // namespace

std::shared_ptr<Source> stream_of(const InstanceDescription& d) {
  return std::visit(
      overloaded{
          [](const SeqInstance& s) -> std::shared_ptr<Source> {
            return std::make_shared<FunctionSource>([s](Nat n) { return s.value(n); });
          },
          [](const FamilySeqInstance& f) -> std::shared_ptr<Source> { return std::make_shared<FamilySource>(f); },
          [](const PreRealInstance& p) -> std::shared_ptr<Source> {
            return std::make_shared<RationalFunctionSource>([p](Nat n) { return p.approximation(n); });
          },
          [](const RatSeqInstance& r) -> std::shared_ptr<Source> {
            return std::make_shared<RationalFunctionSource>([r](Nat i) {
              if (!r.real) return r.value(i);
              auto [n, k] = unpair(i);
              return r.approximation(n, k);
            });
          },
          [](const GraphInstance& g) -> std::shared_ptr<Source> {
            return std::make_shared<FunctionSource>([g](Nat i) { return graph_cell(g, i); });
          },
          [](const ColumnGraphInstance& g) -> std::shared_ptr<Source> {
            return std::make_shared<FunctionSource>([g](Nat i) { return column_graph_cell(probe_of(g.family), i); });
          },
          [](const ActionInstance& a) -> std::shared_ptr<Source> {
            return std::make_shared<FunctionSource>([a](Nat i) -> Nat {
              auto [g, x] = unpair(i);
              auto y = a.act(g, x);
              return y ? 1 + *y : 0;
            });
          },
          [](const ActionGraphInstance& ag) -> std::shared_ptr<Source> {
            return std::make_shared<FunctionSource>([a = ag.action](Nat i) -> Nat {
              if (i % 2 == 0) return a.carrier.count(i / 2) ? 1 : 0;
              auto [g, x] = unpair((i - 1) / 2);
              auto y = a.act(g, x);
              if (!y || *y == x) return 0;
              return 1 + pair(std::min(x, *y), std::max(x, *y));
            });
          },
          [](const PosetInstance& p) -> std::shared_ptr<Source> {
            return std::make_shared<FunctionSource>([p](Nat i) -> Nat {
              if (i == 0) return 0;
              auto [a, b] = unpair(i - 1);
              return p.leq(a, b) ? 1 : 0;
            });
          },
          [](const ColumnOrderInstance& o) -> std::shared_ptr<Source> {
            return std::make_shared<FunctionSource>([o](Nat i) -> Nat {
              if (i == 0) return 0;
              auto [a, b] = unpair(i - 1);
              return o.leq(a, b) ? 1 : 0;
            });
          },
          [](const TreeInstance& t) -> std::shared_ptr<Source> {
            return std::make_shared<FunctionSource>([t](Nat i) -> Nat { return t.contains(i) ? 1 : 0; });
          },
          [](const JoinInstance& j) -> std::shared_ptr<Source> {
            return std::make_shared<JoinSource>(j.tag, stream_of(*j.inner));
          },
      },
      d);
}

namespace {

Nat seq_bound(const SeqInstance& s) {
  Nat b = s.prefix.size();
  if (auto* p = std::get_if<PeriodicTail>(&s.tail)) b += p->word.size();
  return b;
}

Nat family_bound(const FamilySeqInstance& f) {
  Nat b = 0;
  for (const auto& [n, s] : f.exceptions) b = std::max({b, n, seq_bound(s)});
  if (auto* nz = std::get_if<NonZeroAtDefault>(&f.fallback)) b = std::max(b, nz->position);
  return b;
}

Nat magnitude(const Rational& q) {
  Int v = boost::multiprecision::numerator(q);
  if (v < 0) v = -v;
  Int d = boost::multiprecision::denominator(q);
  Int m = std::max(v, d);
  return m > Int(1u << 20) ? Nat{1u << 20} : static_cast<Nat>(m);
}

}  // namespace

Nat universe_bound(const InstanceDescription& d) {
  return std::visit(
      overloaded{
          [](const SeqInstance& s) { return seq_bound(s); },
          [](const FamilySeqInstance& f) { return family_bound(f); },
          [](const PreRealInstance& p) { return std::max({seq_bound(p.support), magnitude(p.base), p.jitter_length}); },
          [](const RatSeqInstance& r) {
            Nat b = r.prefix.size() + r.tail.size() + r.jitter_length;
            for (const auto& v : r.prefix) b = std::max(b, magnitude(v));
            for (const auto& v : r.tail) b = std::max(b, magnitude(v));
            return b;
          },
          [](const GraphInstance& g) {
            Nat b = g.vertices.empty() ? 0 : *g.vertices.rbegin();
            for (const auto& e : g.edges) b = std::max({b, e.stage, e.id});
            return b;
          },
          [](const ColumnGraphInstance& g) { return family_bound(g.family); },
          [](const ActionInstance& a) {
            Nat b = a.carrier.empty() ? 0 : *a.carrier.rbegin();
            if (!a.generators.empty()) b = std::max(b, a.generators.rbegin()->first);
            return b;
          },
          [](const ActionGraphInstance& ag) {
            const auto& a = ag.action;
            Nat b = a.carrier.empty() ? 0 : *a.carrier.rbegin();
            if (!a.generators.empty()) b = std::max(b, a.generators.rbegin()->first);
            return b;
          },
          [](const PosetInstance& p) {
            Nat b = p.core.empty() ? 0 : *p.core.rbegin();
            std::visit(overloaded{
                           [](const NoTail&) {},
                           [&](const ChainTail& t) { b = std::max(b, t.start); },
                           [&](const PairsTail& t) { b = std::max(b, t.start); },
                           [&](const BelowTail& t) { b = std::max(b, t.start); },
                       },
                       p.tail);
            return b;
          },
          [](const ColumnOrderInstance& o) { return family_bound(o.family); },
          [](const TreeInstance& t) {
            Nat b = t.spine_depth.value_or(0);
            for (const auto& [n, c] : t.columns) b = std::max({b, n, c.value_or(0)});
            return std::max(b, t.default_cutoff.value_or(0));
          },
          [](const JoinInstance& j) { return universe_bound(*j.inner) + 1; },
      },
      d);
}

bool splittable(const InstanceDescription& d) {
  if (auto* f = std::get_if<FamilySeqInstance>(&d)) return f->splittable();
  if (auto* g = std::get_if<GraphInstance>(&d)) return g->splittable();
  return false;
}

Nat default_budget(const InstanceDescription& d, Nat horizon) {
  return 10 * horizon * (universe_bound(d) + 1);
}

}  // namespace levin
