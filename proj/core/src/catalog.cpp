#include "levinlab/catalog.hpp"

#include <algorithm>
#include <map>

#include "levinlab/union_find.hpp"

namespace levin::catalog {

namespace {

const SeqInstance& seq(const InstanceDescription& d) { return std::get<SeqInstance>(d); }

std::shared_ptr<WitnessedProblem> make(std::string id, std::vector<std::string> variants, std::size_t arity) {
  auto p = std::make_shared<WitnessedProblem>();
  p->id = std::move(id);
  p->variants = std::move(variants);
  p->arity = arity;
  return p;
}

// Threshold problems whose valid witnesses are exactly the naturals >= t.
std::vector<Witness> from_threshold(std::optional<Nat> t, Nat bound) {
  std::vector<Witness> out;
  if (!t) return out;
  for (Nat n = *t; n <= bound; ++n) out.push_back(Witness{Int(n)});
  return out;
}

Problem build_fin() {
  auto p = make("Fin", {"seq"}, 1);
  p->member = [](const InstanceDescription& d) { return seq(d).zero_from().has_value(); };
  p->valid = [](const InstanceDescription& d, const Witness& w) {
    auto z = seq(d).zero_from();
    auto n = w.nat(0);
    return z && n && *n >= *z;
  };
  p->enumerate = [](const InstanceDescription& d, Nat bound) { return from_threshold(seq(d).zero_from(), bound); };
  return p;
}

Problem build_conv() {
  auto p = make("Conv", {"seq"}, 1);
  p->member = [](const InstanceDescription& d) { return seq(d).stable_from().has_value(); };
  p->valid = [](const InstanceDescription& d, const Witness& w) {
    auto z = seq(d).stable_from();
    auto n = w.nat(0);
    return z && n && *n >= *z;
  };
  p->enumerate = [](const InstanceDescription& d, Nat bound) { return from_threshold(seq(d).stable_from(), bound); };
  return p;
}

Problem build_bddseq() {
  auto p = make("BddSeq_omega", {"seq"}, 1);
  p->member = [](const InstanceDescription& d) { return seq(d).sup().has_value(); };
  p->valid = [](const InstanceDescription& d, const Witness& w) {
    auto s = seq(d).sup();
    auto b = w.nat(0);
    return s && b && *b >= *s;
  };
  p->enumerate = [](const InstanceDescription& d, Nat bound) { return from_threshold(seq(d).sup(), bound); };
  return p;
}

Problem build_qpre() {
  auto p = make("Q_pre", {"prereal"}, 2);
  p->member = [](const InstanceDescription& d) { return std::get<PreRealInstance>(d).rational(); };
  p->valid = [](const InstanceDescription& d, const Witness& w) {
    const auto& x = std::get<PreRealInstance>(d);
    if (!x.rational() || w[0] < 1) return false;
    return x.exact() * Rational(w[0]) == Rational(w[1]);
  };
  p->enumerate = [](const InstanceDescription& d, Nat bound) {
    std::vector<Witness> out;
    const auto& x = std::get<PreRealInstance>(d);
    if (!x.rational()) return out;
    Rational v = x.exact();
    Int num = boost::multiprecision::numerator(v);
    Int den = boost::multiprecision::denominator(v);
    for (Int m = den; m <= bound; m += den) {
      Int k = num * (m / den);
      if (abs(Rational(k)) <= Rational(bound)) out.push_back(Witness{m, k});
    }
    return out;
  };
  return p;
}

Problem build_potop() {
  auto p = make("PO_top", {"poset"}, 1);
  p->member = [](const InstanceDescription& d) { return std::get<PosetInstance>(d).greatest().has_value(); };
  p->valid = [](const InstanceDescription& d, const Witness& w) {
    auto g = std::get<PosetInstance>(d).greatest();
    auto a = w.nat(0);
    return g && a && *a == *g;
  };
  p->enumerate = [](const InstanceDescription& d, Nat bound) {
    std::vector<Witness> out;
    auto g = std::get<PosetInstance>(d).greatest();
    if (g && *g <= bound) out.push_back(Witness{Int(*g)});
    return out;
  };
  return p;
}

// Component labels of the final graph, keyed by vertex.
std::map<Nat, Nat> components(const GraphInstance& g) {
  UnionFind uf;
  for (const auto& e : g.edges) uf.unite(e.u, e.v);
  std::map<Nat, Nat> out;
  for (Nat v : g.vertices) out[v] = uf.find(v);
  return out;
}

std::map<Nat, Nat> components(const ActionInstance& a) {
  UnionFind uf;
  for (const auto& [id, perm] : a.generators) {
    for (Nat x : a.carrier) uf.unite(x, free_group::apply(perm, x));
  }
  std::map<Nat, Nat> out;
  for (Nat v : a.carrier) out[v] = uf.find(v);
  return out;
}

// Component label of a vertex, nullopt when it is not a vertex.
std::optional<Nat> component_of(const InstanceDescription& d, Nat v) {
  if (auto* g = std::get_if<GraphInstance>(&d)) {
    auto comps = components(*g);
    auto it = comps.find(v);
    if (it == comps.end()) return std::nullopt;
    return it->second;
  }
  if (auto* cg = std::get_if<ColumnGraphInstance>(&d)) return cg->component(v);
  const ActionInstance& a =
      std::holds_alternative<ActionInstance>(d) ? std::get<ActionInstance>(d) : std::get<ActionGraphInstance>(d).action;
  auto comps = components(a);
  auto it = comps.find(v);
  if (it == comps.end()) return std::nullopt;
  return it->second;
}

bool disconnected_member(const InstanceDescription& d) {
  if (auto* cg = std::get_if<ColumnGraphInstance>(&d)) return cg->family.least_zero_column().has_value();
  std::map<Nat, Nat> comps;
  if (auto* g = std::get_if<GraphInstance>(&d)) {
    comps = components(*g);
  } else if (auto* a = std::get_if<ActionInstance>(&d)) {
    comps = components(*a);
  } else {
    comps = components(std::get<ActionGraphInstance>(d).action);
  }
  std::set<Nat> labels;
  for (const auto& [v, c] : comps) labels.insert(c);
  return labels.size() >= 2;
}

bool disconnected_valid(const InstanceDescription& d, const Witness& w) {
  auto a = w.nat(0);
  auto b = w.nat(1);
  if (!a || !b) return false;
  auto ca = component_of(d, *a);
  auto cb = component_of(d, *b);
  return ca && cb && *ca != *cb;
}

std::vector<Witness> disconnected_enumerate(const InstanceDescription& d, Nat bound) {
  std::vector<Witness> out;
  std::vector<std::pair<Nat, Nat>> labelled;
  for (Nat v = 0; v <= bound; ++v) {
    if (auto c = component_of(d, v)) labelled.emplace_back(v, *c);
  }
  for (const auto& [a, ca] : labelled) {
    for (const auto& [b, cb] : labelled) {
      if (ca != cb) out.push_back(Witness{Int(a), Int(b)});
    }
  }
  return out;
}

Problem build_disconnected(std::string id, std::vector<std::string> variants) {
  auto p = make(std::move(id), std::move(variants), 2);
  p->member = disconnected_member;
  p->valid = disconnected_valid;
  p->enumerate = disconnected_enumerate;
  return p;
}

const FamilySeqInstance& family(const InstanceDescription& d) { return std::get<FamilySeqInstance>(d); }

Problem build_halftruth() {
  auto p = make("HalfTruth", {"family"}, 2);
  p->member = [](const InstanceDescription& d) { return family(d).least_zero_column().has_value(); };
  p->valid = [](const InstanceDescription& d, const Witness& w) {
    auto n = w.nat(0);
    auto m = w.nat(1);
    return n && m && (family(d).column_zero(*n) || family(d).column_zero(*m));
  };
  p->enumerate = [](const InstanceDescription& d, Nat bound) {
    std::vector<Witness> out;
    std::vector<bool> zero;
    for (Nat n = 0; n <= bound; ++n) zero.push_back(family(d).column_zero(n));
    for (Nat n = 0; n <= bound; ++n) {
      for (Nat m = 0; m <= bound; ++m) {
        if (zero[n] || zero[m]) out.push_back(Witness{Int(n), Int(m)});
      }
    }
    return out;
  };
  return p;
}

Problem build_truth() {
  auto p = make("Truth", {"family"}, 1);
  p->member = [](const InstanceDescription& d) { return family(d).least_zero_column().has_value(); };
  p->valid = [](const InstanceDescription& d, const Witness& w) {
    auto n = w.nat(0);
    return n && family(d).column_zero(*n);
  };
  return p;
}

const ColumnOrderInstance& order(const InstanceDescription& d) { return std::get<ColumnOrderInstance>(d); }

Problem build_nondense() {
  auto p = make("NonDense", {"column_linear_order"}, 2);
  p->member = [](const InstanceDescription& d) { return order(d).family.least_zero_column().has_value(); };
  // In the limit order a column is either the single point (n,0) or (n,0)
  // followed by a dense set; the only gaps are (n,0) < (n+1,0) with x_n zero.
  p->valid = [](const InstanceDescription& d, const Witness& w) {
    auto a = w.nat(0);
    auto b = w.nat(1);
    if (!a || !b) return false;
    const auto& o = order(d);
    auto la = o.label(*a);
    auto lb = o.label(*b);
    if (!la || !lb || la->second != 0 || lb->second != 0) return false;
    return lb->first == la->first + 1 && o.family.column_zero(la->first);
  };
  return p;
}

Problem build_poatom() {
  auto p = make("PO_atom", {"column_bottomed_order"}, 1);
  p->member = [](const InstanceDescription& d) { return order(d).family.least_zero_column().has_value(); };
  // (n,i) with i >= 1 has an infinite chain below it, (n,0) has one exactly
  // when x_n is nonzero.
  p->valid = [](const InstanceDescription& d, const Witness& w) {
    auto a = w.nat(0);
    if (!a || *a == 0) return false;
    auto l = order(d).label(*a);
    return l->second == 0 && order(d).family.column_zero(l->first);
  };
  return p;
}

bool prefix_of(const std::string& s, const std::string& t) {
  return s.size() <= t.size() && t.compare(0, s.size(), s) == 0;
}

Problem build_tr2() {
  auto p = make("Tr2_ge2", {"tree"}, 2);
  p->member = [](const InstanceDescription& d) { return std::get<TreeInstance>(d).paths_capped() >= 2; };
  p->valid = [](const InstanceDescription& d, const Witness& w) {
    const auto& t = std::get<TreeInstance>(d);
    auto a = w.nat(0);
    auto b = w.nat(1);
    if (!a || !b || *a == 0 || *b == 0) return false;
    if (!t.extendible(*a) || !t.extendible(*b)) return false;
    auto s = decode_string(*a);
    auto u = decode_string(*b);
    return !prefix_of(s, u) && !prefix_of(u, s);
  };
  return p;
}

std::optional<Rational> ratseq_sup(const InstanceDescription& d) { return std::get<RatSeqInstance>(d).sup(); }

Problem build_rational_bound(std::string id, std::string variant) {
  auto p = make(std::move(id), {std::move(variant)}, 2);
  p->member = [](const InstanceDescription& d) { return ratseq_sup(d).has_value(); };
  p->valid = [](const InstanceDescription& d, const Witness& w) {
    auto s = ratseq_sup(d);
    if (!s || w[0] < 1) return false;
    return Rational(w[1], w[0]) >= *s;
  };
  p->enumerate = [](const InstanceDescription& d, Nat bound) {
    std::vector<Witness> out;
    auto s = ratseq_sup(d);
    if (!s) return out;
    Int b(bound);
    for (Int den = 1; den <= b; ++den) {
      for (Int num = -b; num <= b; ++num) {
        if (Rational(num, den) >= *s) out.push_back(Witness{den, num});
      }
    }
    return out;
  };
  return p;
}

}  // namespace

#define LEVIN_SINGLETON(name, expr) \
  Problem name() {                  \
    static const Problem p = expr;  \
    return p;                       \
  }

LEVIN_SINGLETON(fin, build_fin())
LEVIN_SINGLETON(conv, build_conv())
LEVIN_SINGLETON(bddseq, build_bddseq())
LEVIN_SINGLETON(qpre, build_qpre())
LEVIN_SINGLETON(potop, build_potop())
LEVIN_SINGLETON(disconn, build_disconnected("DisConn", {"graph", "column_graph"}))
LEVIN_SINGLETON(disconn_fun, build_disconnected("DisConn_fun", {"graph_fun", "action_graph"}))
LEVIN_SINGLETON(orbit, build_disconnected("Orbit_ge2", {"action"}))
LEVIN_SINGLETON(halftruth, build_halftruth())
LEVIN_SINGLETON(truth, build_truth())
LEVIN_SINGLETON(nondense, build_nondense())
LEVIN_SINGLETON(poatom, build_poatom())
LEVIN_SINGLETON(tr2, build_tr2())
LEVIN_SINGLETON(bddseq_q, build_rational_bound("BddSeq_Q", "ratseq"))
LEVIN_SINGLETON(bddseq_r, build_rational_bound("BddSeq_R", "realseq"))

#undef LEVIN_SINGLETON

const std::vector<Problem>& problems() {
  static const std::vector<Problem> all{fin(),         conv(),      bddseq(), qpre(),      potop(),
                                        disconn(),     disconn_fun(), orbit(),  halftruth(), truth(),
                                        nondense(),    poatom(),    tr2()};
  return all;
}

const std::vector<Problem>& auxiliary() {
  static const std::vector<Problem> all{bddseq_q(), bddseq_r()};
  return all;
}

Problem find_problem(const std::string& id) {
  for (const auto* list : {&problems(), &auxiliary()}) {
    for (const auto& p : *list) {
      if (p->id == id) return p;
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------------------

Pi01Family fin_pieces() {
  Pi01Family f;
  f.id = "fin_pieces";
  f.variants = {"seq"};
  f.increasing = true;
  f.at = [](Nat n) {
    Watcher w;
    w.condition = "x(m)=0 for m>=" + std::to_string(n);
    w.refutes = [n](StreamHandle& h, Nat s) { return s >= n && h.query(s) != 0; };
    w.holds = [n](const InstanceDescription& d) {
      auto z = seq(d).zero_from();
      return z && *z <= n;
    };
    return w;
  };
  f.least = [](const InstanceDescription& d) { return seq(d).zero_from(); };
  return f;
}

Pi01Family bounded_by() {
  Pi01Family f;
  f.id = "bounded_by";
  f.variants = {"seq"};
  f.increasing = true;
  f.at = [](Nat k) {
    Watcher w;
    w.condition = "x(n)<" + std::to_string(k) + " for all n";
    w.refutes = [k](StreamHandle& h, Nat s) { return h.query(s) >= k; };
    w.holds = [k](const InstanceDescription& d) {
      auto s = seq(d).sup();
      return s && *s < k;
    };
    return w;
  };
  f.least = [](const InstanceDescription& d) -> std::optional<Nat> {
    auto s = seq(d).sup();
    if (!s) return std::nullopt;
    return *s + 1;
  };
  return f;
}

Pi01Family potop_pieces() {
  Pi01Family f;
  f.id = "potop_pieces";
  f.variants = {"poset"};
  f.disjoint = true;
  f.at = [](Nat a) {
    Watcher w;
    w.condition = std::to_string(a) + " is the greatest element";
    // Cell 1+<a,b> is [a <= b]; stage s examines element s.
    w.refutes = [a](StreamHandle& h, Nat s) {
      if (s == 0 && h.query(1 + pair(a, a)) == 0) return true;
      return h.query(1 + pair(s, s)) != 0 && h.query(1 + pair(s, a)) == 0;
    };
    w.holds = [a](const InstanceDescription& d) { return std::get<PosetInstance>(d).greatest() == a; };
    return w;
  };
  f.least = [](const InstanceDescription& d) { return std::get<PosetInstance>(d).greatest(); };
  return f;
}

Pi01Family truth_columns() {
  Pi01Family f;
  f.id = "truth_columns";
  f.variants = {"family"};
  f.at = [](Nat n) {
    Watcher w;
    w.condition = "x_" + std::to_string(n) + "=0^inf";
    w.refutes = [n](StreamHandle& h, Nat s) { return h.query(pair(n, s)) != 0; };
    w.holds = [n](const InstanceDescription& d) { return family(d).column_zero(n); };
    return w;
  };
  f.least = [](const InstanceDescription& d) { return family(d).least_zero_column(); };
  return f;
}

Pi01Family constant_pieces() {
  Pi01Family f;
  f.id = "constant_pieces";
  f.variants = {"seq"};
  f.disjoint = true;
  f.at = [](Nat k) {
    Watcher w;
    w.condition = "x(n)=" + std::to_string(k) + " for all n";
    w.refutes = [k](StreamHandle& h, Nat s) { return h.query(s) != k; };
    w.holds = [k](const InstanceDescription& d) { return seq(d).stable_from() == Nat{0} && seq(d).value(0) == k; };
    return w;
  };
  f.least = [](const InstanceDescription& d) -> std::optional<Nat> {
    if (seq(d).stable_from() != Nat{0}) return std::nullopt;
    return seq(d).value(0);
  };
  return f;
}

}  // namespace levin::catalog
