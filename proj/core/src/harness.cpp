#include "levinlab/harness.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "levinlab/catalog.hpp"
#include "levinlab/serialize.hpp"

namespace levin {

Rng::Rng(std::uint64_t seed) : state_(seed) {}

// splitmix64
std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Nat Rng::below(Nat n) { return n <= 1 ? 0 : next() % n; }

namespace {

// ---------------------------------------------------------------------------
// Generators. `member` is the intended polarity; every branch produces an
// instance whose oracle membership equals it.

std::vector<Nat> random_prefix(Rng& rng, Nat cap, Nat max_value) {
  std::vector<Nat> p(rng.below(cap + 1));
  for (auto& v : p) v = rng.below(max_value + 1);
  return p;
}

std::vector<Nat> nonconstant_word(Rng& rng, Nat max_value) {
  std::vector<Nat> w(rng.range(2, 4));
  for (auto& v : w) v = rng.below(max_value + 1);
  if (std::all_of(w.begin(), w.end(), [&](Nat v) { return v == w[0]; })) w[1] = w[0] + 1;
  return w;
}

SeqInstance gen_fin(Rng& rng, const GeneratorProfile& p, bool member) {
  auto prefix = random_prefix(rng, p.prefix_cap, 3);
  if (member) return make_seq(prefix, rng.chance(1, 4) ? Tail{PeriodicTail{{0, 0}}} : Tail{ConstTail{0}});
  switch (rng.below(3)) {
    case 0:
      return make_seq(prefix, ConstTail{rng.range(1, 3)});
    case 1: {
      auto w = nonconstant_word(rng, 2);
      return make_seq(prefix, PeriodicTail{w});
    }
    default:
      return make_seq(prefix, RampTail{});
  }
}

SeqInstance gen_conv(Rng& rng, const GeneratorProfile& p, bool member) {
  auto prefix = random_prefix(rng, p.prefix_cap, 5);
  if (member) {
    Nat c = rng.below(6);
    return make_seq(prefix, rng.chance(1, 4) ? Tail{PeriodicTail{{c}}} : Tail{ConstTail{c}});
  }
  if (rng.chance(1, 2)) return make_seq(prefix, RampTail{});
  return make_seq(prefix, PeriodicTail{nonconstant_word(rng, 5)});
}

SeqInstance gen_bddseq(Rng& rng, const GeneratorProfile& p, bool member) {
  auto prefix = random_prefix(rng, p.prefix_cap, 12);
  if (!member) return make_seq(prefix, RampTail{});
  if (rng.chance(1, 2)) return make_seq(prefix, ConstTail{rng.below(8)});
  return make_seq(prefix, PeriodicTail{nonconstant_word(rng, 8)});
}

// Constant sequences, the members of the constant pieces.
SeqInstance gen_constant(Rng& rng, const GeneratorProfile& p, bool member) {
  Nat c = rng.below(12);
  if (member) return make_seq({}, ConstTail{c});
  auto x = gen_conv(rng, p, rng.chance(1, 2));
  if (x.stable_from() == Nat{0}) return make_seq({x.value(0) + 1}, ConstTail{x.value(0)});
  return x;
}

PreRealInstance gen_prereal(Rng& rng, const GeneratorProfile&, bool member) {
  PreRealInstance x;
  Nat q = rng.range(1, 4);
  Int num = static_cast<Int>(rng.below(13)) - 6;
  x.base = Rational(num, Int(q));
  x.jitter_length = rng.below(7);
  x.jitter_sign = rng.chance(1, 2) ? 1 : -1;
  // Members keep the support within {0, 1} so that denominators stay small.
  std::vector<Nat> support(rng.below(3));
  for (auto& v : support) v = rng.below(2);
  if (member) {
    x.support = make_seq(support, ConstTail{0});
  } else {
    auto w = nonconstant_word(rng, 1);
    x.support = make_seq(support, PeriodicTail{w});
  }
  return x;
}

RatSeqInstance gen_ratseq(Rng& rng, const GeneratorProfile& p, bool member, bool real) {
  RatSeqInstance r;
  r.real = real;
  if (real) r.jitter_length = rng.below(5);
  auto value = [&] { return Rational(static_cast<Int>(rng.below(25)) - 12, Int(rng.range(1, 4))); };
  Nat len = rng.below(std::min<Nat>(p.prefix_cap, 12) + 1);
  for (Nat i = 0; i < len; ++i) r.prefix.push_back(value());
  if (!member) {
    r.tail_kind = RatSeqInstance::TailKind::Ramp;
    return r;
  }
  if (rng.chance(1, 2)) {
    r.tail_kind = RatSeqInstance::TailKind::Const;
    r.tail = {value()};
  } else {
    r.tail_kind = RatSeqInstance::TailKind::Periodic;
    Nat n = rng.range(1, 3);
    for (Nat i = 0; i < n; ++i) r.tail.push_back(value());
  }
  return r;
}

std::vector<Nat> sample_points(Rng& rng, Nat cap, Nat count) {
  std::vector<Nat> all(cap);
  std::iota(all.begin(), all.end(), 0);
  for (Nat i = 0; i < count && i < cap; ++i) std::swap(all[i], all[i + rng.below(cap - i)]);
  all.resize(std::min(count, cap));
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<Nat> shuffled(Rng& rng, std::vector<Nat> v) {
  for (Nat i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
  return v;
}

// Splits points into `parts` nonempty blocks.
std::vector<std::vector<Nat>> blocks(Rng& rng, const std::vector<Nat>& points, Nat parts) {
  auto order = shuffled(rng, points);
  std::vector<std::vector<Nat>> out(parts);
  for (Nat i = 0; i < order.size(); ++i) out[i < parts ? i : rng.below(parts)].push_back(order[i]);
  return out;
}

GraphInstance gen_graph(Rng& rng, const GeneratorProfile& p, bool member, bool function) {
  GraphInstance g;
  g.function_presentation = function;
  Nat count = member ? rng.range(2, 10) : rng.range(1, 10);
  auto points = sample_points(rng, p.universe_cap, count);
  g.vertices.insert(points.begin(), points.end());
  std::set<std::pair<Nat, Nat>> edges;
  auto connect = [&](const std::vector<Nat>& block) {
    for (Nat i = 1; i < block.size(); ++i) {
      Nat j = rng.below(i);
      edges.insert({std::min(block[i], block[j]), std::max(block[i], block[j])});
    }
    Nat extra = block.size() > 2 ? rng.below(3) : 0;
    for (Nat e = 0; e < extra; ++e) {
      Nat a = block[rng.below(block.size())];
      Nat b = block[rng.below(block.size())];
      if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
    }
  };
  bool edgeless = member && rng.chance(1, 5);
  if (!edgeless) {
    if (member) {
      for (const auto& b : blocks(rng, points, rng.range(2, std::min<Nat>(3, points.size())))) connect(b);
    } else {
      connect(shuffled(rng, points));
    }
  }
  std::vector<std::pair<Nat, Nat>> list(edges.begin(), edges.end());
  std::vector<Nat> order(list.size());
  std::iota(order.begin(), order.end(), 0);
  order = shuffled(rng, order);
  auto stages = sample_points(rng, p.stage_cap, list.size());
  auto ids = sample_points(rng, 4 * p.universe_cap, list.size());
  for (Nat i = 0; i < order.size(); ++i) {
    auto [u, v] = list[order[i]];
    bool flip = rng.chance(1, 2);
    TimedEdge e{flip ? v : u, flip ? u : v, stages[i], function ? ids[i] : pair(u, v)};
    g.edges.push_back(e);
  }
  return g;
}

free_group::Permutation cycle_of(Rng& rng, const std::vector<Nat>& block) {
  free_group::Permutation perm;
  auto order = shuffled(rng, block);
  for (Nat i = 0; i < order.size(); ++i) {
    if (order.size() > 1) perm[order[i]] = order[(i + 1) % order.size()];
  }
  return perm;
}

ActionInstance gen_action(Rng& rng, const GeneratorProfile& p, bool member) {
  ActionInstance a;
  Nat count = member ? rng.range(2, 8) : rng.range(1, 8);
  auto points = sample_points(rng, p.universe_cap, count);
  a.carrier.insert(points.begin(), points.end());
  Nat gens = rng.range(member ? 0 : 1, 3);
  auto ids = sample_points(rng, 8, gens);
  std::vector<std::vector<Nat>> parts =
      member ? blocks(rng, points, rng.range(2, std::min<Nat>(3, points.size()))) : std::vector<std::vector<Nat>>{points};
  for (Nat i = 0; i < ids.size(); ++i) {
    free_group::Permutation perm;
    for (const auto& b : parts) {
      // The first generator of a non-member is a full cycle; others permute
      // blocks arbitrarily.
      auto piece = (i == 0 || rng.chance(1, 2)) ? cycle_of(rng, b) : free_group::Permutation{};
      perm.insert(piece.begin(), piece.end());
    }
    a.generators[ids[i]] = perm;
  }
  return a;
}

PosetInstance gen_poset(Rng& rng, const GeneratorProfile& p, bool member) {
  PosetInstance x;
  auto points = sample_points(rng, p.universe_cap, rng.range(1, 8));
  x.core.insert(points.begin(), points.end());
  auto rank = shuffled(rng, points);  // rank order: a may lie below b only if earlier
  std::map<Nat, Nat> pos;
  for (Nat i = 0; i < rank.size(); ++i) pos[rank[i]] = i;
  for (Nat a : points) {
    for (Nat b : points) {
      if (pos[a] < pos[b] && rng.chance(1, 3)) x.less.insert({a, b});
    }
  }
  Nat top = rank.back();
  if (member) {
    for (Nat a : points) {
      if (a != top) x.less.insert({a, top});
    }
  }
  // Transitive closure.
  for (Nat k : rank) {
    for (Nat a : points) {
      for (Nat b : points) {
        if (x.less.count({a, k}) && x.less.count({k, b})) x.less.insert({a, b});
      }
    }
  }
  Nat start = *x.core.rbegin() + 1 + rng.below(8);
  if (member) {
    if (rng.chance(1, 3)) x.tail = BelowTail{start, top};
    return x;
  }
  if (rng.chance(1, 2)) {
    x.tail = ChainTail{start};
  } else {
    x.tail = PairsTail{start};
  }
  return x;
}

SeqInstance nonzero_column(Rng& rng, Nat stage_cap) {
  std::vector<Nat> prefix(rng.below(stage_cap / 2), 0);
  prefix.push_back(rng.range(1, 3));
  return make_seq(prefix, ConstTail{rng.below(3)});
}

SeqInstance zero_column(Rng& rng) {
  return make_seq(std::vector<Nat>(rng.below(4), 0), ConstTail{0});
}

FamilySeqInstance gen_family(Rng& rng, const GeneratorProfile& p, bool member) {
  FamilySeqInstance f;
  auto indices = sample_points(rng, 8, rng.below(5));
  if (member && rng.chance(1, 2)) {
    f.fallback = AllZeroDefault{};
    bool split = rng.chance(1, 2);
    for (Nat n : indices) f.exceptions[n] = split ? zero_column(rng) : nonzero_column(rng, p.stage_cap);
    return f;
  }
  f.fallback = NonZeroAtDefault{rng.below(p.stage_cap / 2)};
  for (Nat n : indices) f.exceptions[n] = nonzero_column(rng, p.stage_cap);
  if (member) f.exceptions[rng.below(8)] = zero_column(rng);
  return f;
}

}  // namespace

GeneratorProfile profile_for(const std::string& problem, const std::string& variant, std::uint64_t seed,
                             Nat horizon) {
  GeneratorProfile p;
  p.problem = problem;
  p.variant = variant;
  p.seed = seed;
  p.stage_cap = std::max<Nat>(2, horizon / 2);
  return p;
}

bool non_member_slot(const GeneratorProfile& p, Nat k) {
  if (k % p.non_member_every == 0) return true;
  Fnv1a h;
  h.add("polarity");
  h.add(p.problem);
  h.add(Nat{p.seed});
  h.add(k);
  return h.value() % p.non_member_extra == 0;
}

std::vector<std::string> generatable_variants(const std::string& problem) {
  static const std::map<std::string, std::vector<std::string>> table{
      {"Fin", {"seq"}},
      {"Conv", {"seq"}},
      {"BddSeq_omega", {"seq"}},
      {"Constant", {"seq"}},
      {"Q_pre", {"prereal"}},
      {"PO_top", {"poset"}},
      {"DisConn", {"graph", "column_graph"}},
      {"DisConn_fun", {"graph_fun", "action_graph"}},
      {"Orbit_ge2", {"action"}},
      {"HalfTruth", {"family"}},
      {"Truth", {"family"}},
      {"NonDense", {"column_linear_order"}},
      {"PO_atom", {"column_bottomed_order"}},
      {"Tr2_ge2", {"tree"}},
      {"BddSeq_Q", {"ratseq"}},
      {"BddSeq_R", {"realseq"}},
  };
  auto it = table.find(problem);
  return it == table.end() ? std::vector<std::string>{} : it->second;
}

InstanceDescription generate(const GeneratorProfile& p, Nat k) {
  Fnv1a h;
  h.add(p.problem);
  h.add(p.variant);
  h.add(Nat{p.seed});
  h.add(k);
  Rng rng(h.value());
  bool member = !non_member_slot(p, k);
  const auto& v = p.variant;
  const auto& id = p.problem;
  if (v == "seq") {
    if (id == "Fin") return gen_fin(rng, p, member);
    if (id == "Conv") return gen_conv(rng, p, member);
    if (id == "BddSeq_omega") return gen_bddseq(rng, p, member);
    if (id == "Constant") return gen_constant(rng, p, member);
  }
  if (v == "prereal") return gen_prereal(rng, p, member);
  if (v == "ratseq" || v == "realseq") return gen_ratseq(rng, p, member, v == "realseq");
  if (v == "graph" || v == "graph_fun") return gen_graph(rng, p, member, v == "graph_fun");
  if (v == "action") return gen_action(rng, p, member);
  if (v == "action_graph") return ActionGraphInstance{gen_action(rng, p, member)};
  if (v == "poset") return gen_poset(rng, p, member);
  if (v == "family") return gen_family(rng, p, member);
  if (v == "column_graph") return ColumnGraphInstance{gen_family(rng, p, member)};
  if (v == "column_linear_order") {
    return ColumnOrderInstance{ColumnOrderInstance::Kind::DenseIntervals, gen_family(rng, p, member)};
  }
  if (v == "column_bottomed_order") {
    return ColumnOrderInstance{ColumnOrderInstance::Kind::DescendingChains, gen_family(rng, p, member)};
  }
  if (v == "tree") return reductions::truth_to_tr2().phi.desc(gen_family(rng, p, member));
  throw std::invalid_argument("no generator for " + id + " / " + v);
}

}  // namespace levin

// ---------------------------------------------------------------------------
// Suites

namespace levin {

std::string EntryReport::verdict() const {
  if (counterexample) return "counterexample";
  return passed == trials ? "pass" : "fail";
}

bool EntryReport::matched() const {
  if (expected == Expectation::Falsifiable) return counterexample.has_value();
  return passed == trials && !counterexample;
}

namespace {

nlohmann::json instance_json(const InstanceDescription& d) {
  return serializable(d) ? to_json(d) : nlohmann::json(variant_name(d) + " (computed)");
}

std::optional<Counterexample> from_trial(const TrialRecord& t, const InstanceDescription& d) {
  Counterexample c;
  c.kind = "trial";
  c.instance = instance_json(d);
  c.reason = t.failures.empty() ? "trial failed" : t.failures.front();
  return c;
}

AdversaryFamily adversary_for(const LevinReduction& r) {
  const auto& v = r.phi.variants.front();
  if (v == "poset") return late_top_family(50, 101);
  return spike_family(50, 101, 3);
}

}  // namespace

EntryReport run_entry(const LevinReduction& r, const std::string& group, const SuiteOptions& o,
                      const std::string& generator) {
  EntryReport e;
  e.group = group;
  e.entry = r.id;
  e.expected = r.status;
  auto profile = profile_for(generator.empty() ? r.source->id : generator, r.phi.variants.front(), o.seed, o.horizon);
  std::optional<Counterexample> first_failure;
  for (Nat k = 0; k < o.trials; ++k) {
    auto d = generate(profile, k);
    VerifyOptions vo;
    vo.horizon = o.horizon;
    vo.bound = o.bound;
    vo.continuity = o.continuity_every > 0 && k % o.continuity_every == 0;
    auto t = verify(r, d, vo);
    t.entry = r.id;
    t.trial = k;
    ++e.trials;
    if (t.passed()) ++e.passed;
    if (!t.source_member) ++e.non_members;
    e.divergences += t.divergences;
    if (t.continuity_checked) {
      ++e.continuity_checked;
      if (!t.continuity_ok) ++e.continuity_failed;
    }
    e.split_checked += t.split_checked;
    e.split_failed += t.split_failed;
    if (!t.passed() && !first_failure) first_failure = from_trial(t, d);
    e.records.push_back(std::move(t));
  }
  if (r.status == Expectation::Falsifiable) {
    e.counterexample = adversary_search(r, adversary_for(r), o.bound, o.adversary_probes);
    if (!e.counterexample) e.counterexample = first_failure;
  }
  return e;
}

std::vector<EntryReport> run_suite(const std::vector<CatalogEntry>& entries, const SuiteOptions& o) {
  std::vector<EntryReport> out;
  for (const auto& c : entries) out.push_back(run_entry(c.reduction, c.group, o));
  return out;
}

// ---------------------------------------------------------------------------
// Adversaries

AdversaryFamily spike_family(Nat fork, Nat length, Nat max_value) {
  AdversaryFamily f;
  f.fork = fork;
  f.base = make_seq(std::vector<Nat>(length, 0), ConstTail{0});
  for (Nat v = 1; v <= max_value; ++v) {
    for (Nat pos = fork; pos < length; ++pos) {
      std::vector<Nat> prefix(length, 0);
      prefix[pos] = v;
      f.extensions.push_back(make_seq(prefix, ConstTail{0}));
    }
  }
  return f;
}

AdversaryFamily late_top_family(Nat fork, Nat length) {
  AdversaryFamily f;
  f.fork = fork;
  PosetInstance base;
  base.core = {0};
  f.base = base;
  for (Nat pos = fork; pos < length; ++pos) {
    PosetInstance p = base;
    p.core.insert(pos);
    p.less.insert({0, pos});
    f.extensions.push_back(p);
  }
  return f;
}

// Stream indices below `fork` are shared with the base. For posets the order
// cells 1+<a,b> with a, b < fork are shared instead; the check below uses the
// logged indices directly.
namespace {

bool within_shared_prefix(const InstanceDescription& base, const InstanceDescription& ext,
                          const std::vector<QueryRecord>& log) {
  auto a = stream_of(base);
  auto b = stream_of(ext);
  for (const auto& q : log) {
    if (a->rational()) {
      if (a->rat(q.index) != b->rat(q.index)) return false;
    } else if (a->nat(q.index) != b->nat(q.index)) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::optional<Counterexample> adversary_search(const LevinReduction& r, const AdversaryFamily& fam, Nat bound,
                                               Nat max_probes) {
  if (r.demi()) return std::nullopt;
  Nat probes = 0;
  // Extensions and witnesses are tried in increasing order, so the first hit
  // is already the least one in that order.
  for (const auto& ext : fam.extensions) {
    auto image = r.phi.desc(ext);
    for (const auto& w : witnesses_upto(*r.source, ext, bound)) {
      if (++probes > max_probes) return std::nullopt;
      auto inv = invoke(r.r_minus, w, ext, default_budget(ext, 256));
      if (!inv.output) continue;
      if (valid_witness(*r.target, image, *inv.output)) continue;
      if (!within_shared_prefix(fam.base, ext, inv.log)) continue;
      Counterexample c;
      c.kind = "adversary";
      c.instance = instance_json(ext);
      c.base = instance_json(fam.base);
      c.fork = fam.fork;
      c.witness = to_string(w);
      c.output = to_string(*inv.output);
      c.trace = inv.use;
      c.probes = probes;
      c.reason = "r_minus reads only the shared prefix and answers invalidly on the extension";
      return c;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Reports

nlohmann::json trial_json(const TrialRecord& t) {
  nlohmann::json j;
  j["entry"] = t.entry;
  j["trial"] = t.trial;
  j["digest"] = t.digest;
  j["source_member"] = t.source_member;
  j["target_member"] = t.target_member;
  j["forward"] = {{"checked", t.forward_checked}, {"failed", t.forward_failed}};
  j["backward"] = {{"checked", t.backward_checked}, {"failed", t.backward_failed}};
  j["agreement"] = t.agreement_ok;
  if (t.continuity_checked) j["continuity"] = t.continuity_ok;
  if (t.split_checked > 0) j["split"] = {{"checked", t.split_checked}, {"failed", t.split_failed}};
  j["divergences"] = t.divergences;
  j["max_trace"] = t.max_trace;
  j["verdict"] = t.passed() ? "pass" : "fail";
  if (!t.failures.empty()) j["failures"] = t.failures;
  return j;
}

nlohmann::json counterexample_json(const Counterexample& c) {
  nlohmann::json j;
  j["kind"] = c.kind;
  j["instance"] = c.instance;
  if (c.kind == "adversary") {
    j["base"] = c.base;
    j["fork"] = c.fork;
    j["witness"] = c.witness;
    j["output"] = c.output;
    j["trace"] = c.trace;
    j["probes"] = c.probes;
  }
  j["reason"] = c.reason;
  return j;
}

nlohmann::json entry_summary_json(const EntryReport& e) {
  nlohmann::json j;
  j["summary"] = e.entry;
  j["group"] = e.group;
  j["expected"] = to_string(e.expected);
  j["trials"] = e.trials;
  j["passed"] = e.passed;
  j["non_members"] = e.non_members;
  j["divergences"] = e.divergences;
  j["continuity"] = {{"checked", e.continuity_checked}, {"failed", e.continuity_failed}};
  j["split"] = {{"checked", e.split_checked}, {"failed", e.split_failed}};
  j["verdict"] = e.verdict();
  j["matched"] = e.matched();
  if (e.counterexample) j["counterexample"] = counterexample_json(*e.counterexample);
  return j;
}

std::string report_lines(const std::vector<EntryReport>& reports) {
  std::ostringstream out;
  for (const auto& e : reports) {
    for (const auto& t : e.records) out << trial_json(t).dump() << '\n';
  }
  for (const auto& e : reports) out << entry_summary_json(e).dump() << '\n';
  return out.str();
}

}  // namespace levin
