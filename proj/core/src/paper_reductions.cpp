#include "levinlab/paper_reductions.hpp"

#include <algorithm>
#include <map>

#include "levinlab/catalog.hpp"

namespace levin {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Nat witness_nat(const Witness& w, std::size_t i) {
  auto v = w.nat(i);
  if (!v) throw std::invalid_argument("witness component " + std::to_string(i) + " is not a natural: " + to_string(w));
  return *v;
}

std::shared_ptr<Source> nat_source(std::function<Nat(Nat)> f) { return std::make_shared<FunctionSource>(std::move(f)); }
std::shared_ptr<Source> rat_source(std::function<Rational(Nat)> f) {
  return std::make_shared<RationalFunctionSource>(std::move(f));
}

// Probe over a family stream (cell <n,k> = x_n(k)); scans each column once.
ColumnProbe handle_probe(Handle h) {
  struct Scan {
    Nat scanned = 0;
    std::optional<Nat> first;
  };
  auto cache = std::make_shared<std::map<Nat, Scan>>();
  return [h, cache](Nat n, Nat i) -> std::optional<Nat> {
    auto& sc = (*cache)[n];
    while (!sc.first && sc.scanned <= i) {
      if (h->query(pair(n, sc.scanned)) != 0) sc.first = sc.scanned;
      ++sc.scanned;
    }
    if (sc.first && *sc.first <= i) return sc.first;
    return std::nullopt;
  };
}

std::tuple<Nat, Nat, Nat> untriple(Nat code) {
  auto [a, rest] = unpair(code);
  auto [b, c] = unpair(rest);
  return {a, b, c};
}

LevinReduction base(std::string id, std::string locus, Problem source, Problem target) {
  LevinReduction r;
  r.id = std::move(id);
  r.locus = std::move(locus);
  r.phi.variants = source->variants;
  r.source = std::move(source);
  r.target = std::move(target);
  return r;
}

WitnessMap same() {
  return [](const Witness& w, Handle) { return w; };
}

// ---------------------------------------------------------------------------
// Conv -> Fin

SeqInstance difference_flags(const SeqInstance& x) {
  Nat len = x.prefix.size();
  std::vector<Nat> prefix;
  for (Nat s = 0; s < len; ++s) prefix.push_back(x.value(s + 1) != x.value(s) ? 1 : 0);
  Tail tail = std::visit(overloaded{
                             [](const ConstTail&) -> Tail { return ConstTail{0}; },
                             [](const PeriodicTail& p) -> Tail {
                               std::vector<Nat> word;
                               for (Nat j = 0; j < p.word.size(); ++j) {
                                 word.push_back(p.word[(j + 1) % p.word.size()] != p.word[j] ? 1 : 0);
                               }
                               return PeriodicTail{word};
                             },
                             [](const RampTail&) -> Tail { return ConstTail{1}; },
                             [x](const std::shared_ptr<const DivergentTail>&) -> Tail {
                               auto d = std::make_shared<DivergentTail>();
                               d->value = [x](Nat s) -> Nat { return x.value(s + 1) != x.value(s) ? 1 : 0; };
                               d->sup = 1;
                               d->label = "difference flags";
                               return d;
                             },
                         },
                         x.tail);
  return make_seq(std::move(prefix), std::move(tail));
}

// ---------------------------------------------------------------------------
// Q_pre -> Conv: denominator predictions for y = x / b.

class Predictor {
 public:
  explicit Predictor(std::function<Rational(Nat)> q) : q_(std::move(q)) { scale_ = qpre_scale(q_(0)); }

  Nat scale() const { return scale_; }

  Nat at(Nat s) {
    while (history_.size() <= s) step();
    return history_[s];
  }

  Nat first_reaching(Nat target) {
    for (Nat s = 0;; ++s) {
      Nat n = at(s);
      if (n == target) return s;
      if (n > target) throw std::logic_error("denominator prediction passed " + std::to_string(target));
    }
  }

 private:
  // Stage s refutes the prediction n when every k/n with |k| <= n is more
  // than 2^-s away from q_s / b; the nearest candidates decide that.
  void step() {
    Nat s = history_.size();
    Rational y = q_(s) / Rational(scale_);
    Rational eps = pow2(-static_cast<long>(s));
    Int n(n_);
    Int c = floor(y * Rational(n) + Rational(1, 2));
    bool refuted = true;
    for (Int k = c - 1; k <= c + 1 && refuted; ++k) {
      if (k < -n || k > n) continue;
      if (abs(y - Rational(k, n)) <= eps) refuted = false;
    }
    if (refuted) ++n_;
    history_.push_back(n_);
  }

  std::function<Rational(Nat)> q_;
  Nat scale_ = 2;
  Nat n_ = 1;
  std::vector<Nat> history_;
};

Nat reduced_denominator(const Rational& q) { return static_cast<Nat>(boost::multiprecision::denominator(q)); }

// ---------------------------------------------------------------------------
// PO_top -> BddSeq: m_s is the greatest element among the arrived t < s.

class TopTracker {
 public:
  explicit TopTracker(std::function<bool(Nat, Nat)> leq) : leq_(std::move(leq)) { m_.push_back(std::nullopt); }

  std::optional<Nat> m(Nat s) {
    while (m_.size() <= s) advance();
    return m_[s];
  }

  Nat phi(Nat s) { return m(s + 1) == m(s) ? 0 : s; }

 private:
  void advance() {
    Nat e = m_.size() - 1;
    if (leq_(e, e)) {
      bool dominated = std::any_of(maximal_.begin(), maximal_.end(), [&](Nat m) { return leq_(e, m); });
      if (!dominated) {
        std::vector<Nat> kept;
        for (Nat m : maximal_) {
          if (!leq_(m, e)) kept.push_back(m);
        }
        kept.push_back(e);
        maximal_ = std::move(kept);
      }
    }
    m_.push_back(maximal_.size() == 1 ? std::optional<Nat>(maximal_.front()) : std::nullopt);
  }

  std::function<bool(Nat, Nat)> leq_;
  std::vector<Nat> maximal_;
  std::vector<std::optional<Nat>> m_;
};

std::function<bool(Nat, Nat)> order_cells(Handle h) {
  return [h](Nat a, Nat b) { return h->query(1 + pair(a, b)) != 0; };
}

// ---------------------------------------------------------------------------
// BddSeq -> PO_top: s joins P as a new top when x(s) exceeds all earlier values.

class RecordTracker {
 public:
  explicit RecordTracker(std::function<Nat(Nat)> x) : x_(std::move(x)) {}

  bool record(Nat s) {
    while (records_.size() <= s) {
      Nat v = x_(records_.size());
      records_.push_back(!max_ || v > *max_);
      if (!max_ || v > *max_) max_ = v;
    }
    return records_[s];
  }

 private:
  std::function<Nat(Nat)> x_;
  std::optional<Nat> max_;
  std::vector<bool> records_;
};

}  // namespace

Nat qpre_scale(const Rational& q0) { return static_cast<Nat>(ceil(abs(q0))) + 2; }

namespace reductions {

LevinReduction conv_to_fin() {
  auto r = base("conv_to_fin", "Conv <=_m Fin: phi(x)(s)=1 iff x(s+1)!=x(s)", catalog::conv(), catalog::fin());
  r.phi.desc = [](const InstanceDescription& d) -> InstanceDescription {
    return difference_flags(std::get<SeqInstance>(d));
  };
  r.phi.stream = [](Handle h) {
    return nat_source([h](Nat s) -> Nat { return h->query(s + 1) != h->query(s) ? 1 : 0; });
  };
  r.r_minus = same();
  r.r_plus = same();
  return r;
}

LevinReduction fin_to_qpre() {
  auto r = base("fin_to_qpre", "Fin <=_m Q_pre: x maps to sum over x(n)!=0 of 2^-n^2", catalog::fin(),
                catalog::qpre());
  r.phi.desc = [](const InstanceDescription& d) -> InstanceDescription {
    PreRealInstance p;
    p.support = std::get<SeqInstance>(d);
    return p;
  };
  r.phi.stream = [](Handle h) {
    return rat_source([h](Nat n) {
      Rational q = 0;
      for (Nat k = 0; k * k <= n + 2; ++k) {
        if (h->query(k) != 0) q += pow2(-static_cast<long>(k * k));
      }
      return q;
    });
  };
  r.r_minus = [](const Witness& w, Handle h) {
    Nat s = witness_nat(w, 0);
    Int num = 0;
    for (Nat n = 0; n <= s; ++n) {
      if (h->query(n) != 0) num += Int(1) << static_cast<unsigned>(s * s - n * n);
    }
    return Witness{Int(1) << static_cast<unsigned>(s * s), num};
  };
  r.r_plus = [](const Witness& w, Handle) {
    if (w[0] < 1) throw std::invalid_argument("pre-rational witness needs m >= 1");
    Rational v(w[1], w[0]);
    Int den = boost::multiprecision::denominator(v);
    Nat t = two_adic_valuation(den);
    Nat s = 0;
    while ((s + 1) * (s + 1) <= t) ++s;
    return Witness{Int(s + 1)};
  };
  return r;
}

LevinReduction qpre_to_conv() {
  auto r = base("qpre_to_conv", "Q_pre <=_m Conv: prediction of the denominator of x/b", catalog::qpre(),
                catalog::conv());
  r.phi.desc = [](const InstanceDescription& d) -> InstanceDescription {
    const auto& x = std::get<PreRealInstance>(d);
    auto machine = std::make_shared<Predictor>([x](Nat n) { return x.approximation(n); });
    if (x.rational()) {
      Nat target = reduced_denominator(x.exact() / Rational(machine->scale()));
      Nat stage = machine->first_reaching(target);
      std::vector<Nat> prefix;
      for (Nat s = 0; s < stage; ++s) prefix.push_back(machine->at(s));
      return make_seq(std::move(prefix), ConstTail{target});
    }
    auto tail = std::make_shared<DivergentTail>();
    tail->value = [machine](Nat s) { return machine->at(s); };
    tail->label = "denominator predictions";
    return make_seq({}, tail);
  };
  r.phi.stream = [](Handle h) {
    auto machine = std::make_shared<Predictor>([h](Nat n) { return h->query_rational(n); });
    return nat_source([machine](Nat s) { return machine->at(s); });
  };
  r.r_minus = [](const Witness& w, Handle h) {
    if (w[0] < 1) throw std::invalid_argument("pre-rational witness needs m >= 1");
    Predictor machine([h](Nat n) { return h->query_rational(n); });
    Nat target = reduced_denominator(Rational(w[1], w[0]) / Rational(machine.scale()));
    return Witness{Int(machine.first_reaching(target))};
  };
  r.r_plus = [](const Witness& w, Handle h) {
    Predictor machine([h](Nat n) { return h->query_rational(n); });
    Nat n = machine.at(witness_nat(w, 0));
    Nat b = machine.scale();
    // Least a with 2^-a < 1 / (2 n^2 b): then one numerator survives.
    Rational gap(Int(1), Int(2) * Int(n) * Int(n) * Int(b));
    long a = 0;
    while (pow2(-a) >= gap) ++a;
    Rational y = h->query_rational(static_cast<Nat>(a)) / Rational(b);
    Int k = floor(y * Rational(Int(n)) + Rational(1, 2));
    return Witness{Int(n), k * Int(b)};
  };
  return r;
}

LevinReduction bddseq_to_potop() {
  auto r = base("bddseq_to_potop", "BddSeq_omega <=_m PO_top: a new top element for each new maximum",
                catalog::bddseq(), catalog::potop());
  r.status = Expectation::Falsifiable;
  r.phi.desc = [](const InstanceDescription& d) -> InstanceDescription {
    const auto& x = std::get<SeqInstance>(d);
    PosetInstance p;
    Nat len = x.prefix.size();
    Nat scan = len + 1;
    if (auto* per = std::get_if<PeriodicTail>(&x.tail)) scan = len + per->word.size();
    std::optional<Nat> chain_start;
    if (std::holds_alternative<RampTail>(x.tail)) {
      Nat top = 0;
      for (Nat v : x.prefix) top = std::max(top, v);
      chain_start = std::max(len, top + 1);
      scan = *chain_start;
    } else if (x.computed()) {
      throw std::logic_error("bddseq_to_potop needs a finitely described sequence");
    }
    RecordTracker rec([&x](Nat s) { return x.value(s); });
    for (Nat s = 0; s < scan; ++s) {
      if (rec.record(s)) p.core.insert(s);
    }
    for (Nat a : p.core) {
      for (Nat b : p.core) {
        if (a < b) p.less.insert({a, b});
      }
    }
    if (chain_start) p.tail = ChainTail{*chain_start};
    return p;
  };
  r.phi.stream = [](Handle h) {
    auto rec = std::make_shared<RecordTracker>([h](Nat s) { return h->query(s); });
    return nat_source([rec](Nat c) -> Nat {
      if (c == 0) return 0;
      auto [a, b] = unpair(c - 1);
      return rec->record(a) && rec->record(b) && a <= b ? 1 : 0;
    });
  };
  // Greatest element of P among the indices t <= b.
  r.r_minus = [](const Witness& w, Handle h) {
    Nat b = witness_nat(w, 0);
    RecordTracker rec([h](Nat s) { return h->query(s); });
    Nat p = 0;
    for (Nat t = 0; t <= b; ++t) {
      if (rec.record(t)) p = t;
    }
    return Witness{Int(p)};
  };
  r.r_plus = same();
  return r;
}

LevinReduction potop_to_bddseq() {
  auto r = base("potop_to_bddseq", "PO_top <=_m BddSeq_omega: phi(x)(s)=s when m_{s+1}!=m_s",
                catalog::potop(), catalog::bddseq());
  r.phi.desc = [](const InstanceDescription& d) -> InstanceDescription {
    const auto& p = std::get<PosetInstance>(d);
    TopTracker tracker([&p](Nat a, Nat b) { return p.leq(a, b); });
    Nat settled = p.core.empty() ? 0 : *p.core.rbegin() + 1;
    Tail tail = ConstTail{0};
    if (auto* c = std::get_if<ChainTail>(&p.tail)) {
      settled = c->start;
      tail = RampTail{};
    } else if (auto* pr = std::get_if<PairsTail>(&p.tail)) {
      settled = pr->start;
      tail = RampTail{};
    }
    std::vector<Nat> prefix;
    for (Nat s = 0; s < settled; ++s) prefix.push_back(tracker.phi(s));
    return make_seq(std::move(prefix), tail);
  };
  r.phi.stream = [](Handle h) {
    auto tracker = std::make_shared<TopTracker>(order_cells(h));
    return nat_source([tracker](Nat s) { return tracker->phi(s); });
  };
  r.r_minus = same();
  r.r_plus = [](const Witness& w, Handle h) {
    TopTracker tracker(order_cells(h));
    auto m = tracker.m(witness_nat(w, 0) + 1);
    if (!m) throw std::logic_error("no greatest element at the stage after the bound");
    return Witness{Int(*m)};
  };
  return r;
}

LevinReduction disconn_sub_to_fun() {
  auto r = base("disconn_sub_to_fun", "DisConn <=_m DisConn_fun: a subset of [V]^2 as an inclusion map",
                catalog::disconn(), catalog::disconn_fun());
  r.phi.variants = {"graph"};
  r.phi.desc = [](const InstanceDescription& d) -> InstanceDescription {
    auto g = std::get<GraphInstance>(d);
    g.function_presentation = true;
    for (auto& e : g.edges) e.id = pair(std::min(e.u, e.v), std::max(e.u, e.v));
    return g;
  };
  r.phi.stream = [](Handle h) {
    return nat_source([h](Nat c) -> Nat {
      if (c % 2 == 0) return h->query(c);
      Nat e = (c - 1) / 2;
      auto [u, v] = unpair(e);
      return u < v && h->query(c) != 0 ? 1 + e : 0;
    });
  };
  r.r_minus = same();
  r.r_plus = same();
  return r;
}

LevinReduction disconn_fun_to_sub() {
  auto r = base("disconn_fun_to_sub", "DisConn_fun <=_m DisConn: a midpoint vertex 2<u,v,a>+1 on each edge",
                catalog::disconn_fun(), catalog::disconn());
  r.phi.variants = {"graph_fun"};
  r.phi.desc = [](const InstanceDescription& d) -> InstanceDescription {
    const auto& g = std::get<GraphInstance>(d);
    GraphInstance out;
    for (Nat v : g.vertices) out.vertices.insert(2 * v);
    for (const auto& e : g.edges) {
      Nat u = std::min(e.u, e.v);
      Nat v = std::max(e.u, e.v);
      Nat mid = 2 * triple(u, v, e.id) + 1;
      out.vertices.insert(mid);
      out.edges.push_back(TimedEdge{2 * u, mid, 2 * e.stage, 0});
      out.edges.push_back(TimedEdge{mid, 2 * v, 2 * e.stage + 1, 0});
    }
    for (auto& e : out.edges) e.id = pair(std::min(e.u, e.v), std::max(e.u, e.v));
    return out;
  };
  r.phi.stream = [](Handle h) {
    auto midpoint = [h](Nat w) {
      auto [u, v, e] = untriple((w - 1) / 2);
      if (u >= v) return std::optional<std::pair<Nat, Nat>>();
      Nat cell = h->query(2 * e + 1);
      if (cell == 0 || unpair(cell - 1) != std::pair<Nat, Nat>{u, v}) return std::optional<std::pair<Nat, Nat>>();
      return std::optional<std::pair<Nat, Nat>>(std::pair<Nat, Nat>{u, v});
    };
    return nat_source([h, midpoint](Nat c) -> Nat {
      if (c % 2 == 0) {
        Nat w = c / 2;
        if (w % 2 == 0) return h->query(w);
        return midpoint(w) ? 1 : 0;
      }
      auto [p, q] = unpair((c - 1) / 2);
      if (p >= q || p % 2 == q % 2) return 0;
      Nat even = p % 2 == 0 ? p : q;
      Nat odd = p % 2 == 0 ? q : p;
      auto ends = midpoint(odd);
      return ends && (even / 2 == ends->first || even / 2 == ends->second) ? 1 : 0;
    });
  };
  r.r_minus = [](const Witness& w, Handle) { return Witness{2 * w[0], 2 * w[1]}; };
  // Doubled vertices halve; a midpoint goes to its least endpoint.
  r.r_plus = [](const Witness& w, Handle) {
    Witness out;
    for (std::size_t i = 0; i < 2; ++i) {
      Nat v = witness_nat(w, i);
      out.parts.emplace_back(v % 2 == 0 ? v / 2 : std::get<0>(untriple((v - 1) / 2)));
    }
    return out;
  };
  return r;
}

LevinReduction orbit_to_disconnfun() {
  auto r = base("orbit_to_disconnfun", "Orbit_>=2 <=_m DisConn_fun: gamma(g,a)=(a,g.a)", catalog::orbit(),
                catalog::disconn_fun());
  r.phi.desc = [](const InstanceDescription& d) -> InstanceDescription {
    return ActionGraphInstance{std::get<ActionInstance>(d)};
  };
  r.phi.stream = [](Handle h) {
    return nat_source([h](Nat c) -> Nat {
      if (c % 2 == 0) return h->query(pair(0, c / 2)) != 0 ? 1 : 0;
      auto [g, a] = unpair((c - 1) / 2);
      Nat y = h->query(pair(g, a));
      if (y == 0 || y - 1 == a) return 0;
      return 1 + pair(std::min(a, y - 1), std::max(a, y - 1));
    });
  };
  r.r_minus = same();
  r.r_plus = same();
  return r;
}

LevinReduction disconnfun_to_orbit() {
  auto r = base("disconnfun_to_orbit", "DisConn_fun <=_m Orbit_>=2: the free group on E acting by transpositions",
                catalog::disconn_fun(), catalog::orbit());
  r.phi.variants = {"graph_fun"};
  r.phi.desc = [](const InstanceDescription& d) -> InstanceDescription {
    const auto& g = std::get<GraphInstance>(d);
    ActionInstance a;
    a.carrier = g.vertices;
    for (const auto& e : g.edges) a.generators[e.id] = free_group::Permutation{{e.u, e.v}, {e.v, e.u}};
    return a;
  };
  r.phi.stream = [](Handle h) {
    return nat_source([h](Nat c) -> Nat {
      auto [g, a] = unpair(c);
      auto word = free_group::decode(g);
      if (!free_group::is_reduced(word)) return 0;
      if (h->query(2 * a) == 0) return 0;
      for (auto it = word.rbegin(); it != word.rend(); ++it) {
        Nat cell = h->query(2 * free_group::generator_of(*it) + 1);
        if (cell == 0) return 0;
        auto [u, v] = unpair(cell - 1);
        a = a == u ? v : a == v ? u : a;
      }
      return 1 + a;
    });
  };
  r.r_minus = same();
  r.r_plus = same();
  return r;
}

LevinReduction halftruth_to_disconn() {
  auto r = base("halftruth_to_disconn", "HalfTruth <=_m DisConn: a path (n,0)-(n,1)-... cut when x_n!=0",
                catalog::halftruth(), catalog::disconn());
  r.phi.desc = [](const InstanceDescription& d) -> InstanceDescription {
    return ColumnGraphInstance{std::get<FamilySeqInstance>(d)};
  };
  r.phi.stream = [](Handle h) {
    auto probe = handle_probe(h);
    return nat_source([probe](Nat c) { return column_graph_cell(probe, c); });
  };
  r.r_minus = [](const Witness& w, Handle) {
    Nat n = witness_nat(w, 0);
    Nat m = witness_nat(w, 1);
    Nat a = ColumnGraphInstance::vertex(n, 0);
    Nat b = n == m ? ColumnGraphInstance::hub() : ColumnGraphInstance::vertex(m, 0);
    return Witness{Int(a), Int(b)};
  };
  r.r_plus = [](const Witness& w, Handle) {
    Nat a = witness_nat(w, 0);
    Nat b = witness_nat(w, 1);
    auto column = [](Nat v) { return unpair(v - 1).first; };
    if (a == ColumnGraphInstance::hub() && b == ColumnGraphInstance::hub()) return Witness{0, 0};
    if (a == ColumnGraphInstance::hub()) return Witness{Int(column(b)), Int(column(b))};
    if (b == ColumnGraphInstance::hub()) return Witness{Int(column(a)), Int(column(a))};
    return Witness{Int(column(a)), Int(column(b))};
  };
  return r;
}

namespace {

LevinReduction truth_to_order(std::string id, std::string locus, Problem target, ColumnOrderInstance::Kind kind) {
  auto r = base(std::move(id), std::move(locus), catalog::truth(), std::move(target));
  r.phi.desc = [kind](const InstanceDescription& d) -> InstanceDescription {
    return ColumnOrderInstance{kind, std::get<FamilySeqInstance>(d)};
  };
  r.phi.stream = [kind](Handle h) {
    auto probe = handle_probe(h);
    return nat_source([probe, kind](Nat c) -> Nat {
      if (c == 0) return 0;
      auto [a, b] = unpair(c - 1);
      return column_order_leq(kind, probe, a, b) ? 1 : 0;
    });
  };
  return r;
}

}  // namespace

LevinReduction truth_to_nondense() {
  auto r = truth_to_order("truth_to_nondense", "Truth <=_m NonDense: (n,0)<(n+1,0), filled densely once x_n!=0",
                          catalog::nondense(), ColumnOrderInstance::Kind::DenseIntervals);
  r.r_minus = [](const Witness& w, Handle) {
    Nat n = witness_nat(w, 0);
    return Witness{Int(pair(n, 0)), Int(pair(n + 1, 0))};
  };
  r.r_plus = [](const Witness& w, Handle) { return Witness{Int(unpair(witness_nat(w, 0)).first)}; };
  return r;
}

LevinReduction truth_to_poatom() {
  auto r = truth_to_order("truth_to_poatom", "Truth <=_m PO_atom: a descending chain under (n,0) once x_n!=0",
                          catalog::poatom(), ColumnOrderInstance::Kind::DescendingChains);
  r.r_minus = [](const Witness& w, Handle) { return Witness{Int(1 + pair(witness_nat(w, 0), 0))}; };
  r.r_plus = [](const Witness& w, Handle) {
    Nat a = witness_nat(w, 0);
    return Witness{Int(a == 0 ? 0 : unpair(a - 1).first)};
  };
  return r;
}

LevinReduction truth_to_tr2() {
  auto r = base("truth_to_tr2", "Truth <=_m Tr_2(>=2): 0^n 1^s in T while x_n looks zero",
                catalog::truth(), catalog::tr2());
  r.phi.desc = [](const InstanceDescription& d) -> InstanceDescription {
    const auto& f = std::get<FamilySeqInstance>(d);
    TreeInstance t;
    auto cutoff = [](const SeqInstance& s) -> std::optional<Nat> {
      auto first = s.first_nonzero();
      if (!first) return std::nullopt;
      return *first + 1;
    };
    for (const auto& [n, s] : f.exceptions) t.columns[n] = cutoff(s);
    std::visit(overloaded{
                   [&](const AllZeroDefault&) { t.default_cutoff = std::nullopt; },
                   [&](const NonZeroAtDefault& nz) { t.default_cutoff = nz.position + 1; },
                   [](const std::shared_ptr<const GeneratedColumns>&) {
                     throw std::logic_error("truth_to_tr2 needs a finitely described family");
                   },
               },
               f.fallback);
    return t;
  };
  r.phi.stream = [](Handle h) {
    auto probe = handle_probe(h);
    return nat_source([probe](Nat c) -> Nat { return column_tree_contains(probe, c) ? 1 : 0; });
  };
  r.r_minus = [](const Witness& w, Handle) {
    Nat n = witness_nat(w, 0);
    return Witness{Int(encode_string(std::string(n + 1, '0'))), Int(encode_string(std::string(n, '0') + "1"))};
  };
  r.r_plus = [](const Witness& w, Handle) {
    for (std::size_t i = 0; i < 2; ++i) {
      Nat code = witness_nat(w, i);
      if (code == 0) continue;
      auto s = decode_string(code);
      Nat m = 0;
      while (m < s.size() && s[m] == '0') ++m;
      if (m < s.size() && s.find('0', m) == std::string::npos) return Witness{Int(m)};
    }
    return Witness{0};
  };
  return r;
}

LevinReduction bddseq_omega_to_q() {
  auto r = base("bddseq_omega_to_q", "BddSeq_omega == BddSeq_Q: naturals as rationals", catalog::bddseq(),
                catalog::bddseq_q());
  r.phi.desc = [](const InstanceDescription& d) -> InstanceDescription {
    const auto& x = std::get<SeqInstance>(d);
    RatSeqInstance q;
    for (Nat v : x.prefix) q.prefix.emplace_back(v);
    std::visit(overloaded{
                   [&](const ConstTail& c) {
                     q.tail_kind = RatSeqInstance::TailKind::Const;
                     q.tail = {Rational(c.value)};
                   },
                   [&](const PeriodicTail& p) {
                     q.tail_kind = RatSeqInstance::TailKind::Periodic;
                     for (Nat v : p.word) q.tail.emplace_back(v);
                   },
                   [&](const RampTail&) { q.tail_kind = RatSeqInstance::TailKind::Ramp; },
                   [](const std::shared_ptr<const DivergentTail>&) {
                     throw std::logic_error("bddseq_omega_to_q needs a finitely described sequence");
                   },
               },
               x.tail);
    return q;
  };
  r.phi.stream = [](Handle h) { return rat_source([h](Nat n) { return Rational(h->query(n)); }); };
  r.r_minus = [](const Witness& w, Handle) { return Witness{1, w[0]}; };
  r.r_plus = [](const Witness& w, Handle) {
    if (w[0] < 1) throw std::invalid_argument("rational bound needs den >= 1");
    Int c = ceil(Rational(w[1], w[0]));
    return Witness{c < 0 ? Int(0) : c};
  };
  return r;
}

LevinReduction bddseq_q_to_r() {
  auto r = base("bddseq_q_to_r", "BddSeq_Q == BddSeq_R: rationals as constant pre-reals", catalog::bddseq_q(),
                catalog::bddseq_r());
  r.phi.desc = [](const InstanceDescription& d) -> InstanceDescription {
    auto q = std::get<RatSeqInstance>(d);
    q.real = true;
    q.jitter_length = 0;
    return q;
  };
  r.phi.stream = [](Handle h) { return rat_source([h](Nat c) { return h->query_rational(unpair(c).first); }); };
  r.r_minus = same();
  r.r_plus = same();
  return r;
}

LevinReduction bddseq_r_to_omega() {
  auto r = base("bddseq_r_to_omega", "BddSeq_R == BddSeq_omega: |m|+1 from an accuracy-1/2 approximation",
                catalog::bddseq_r(), catalog::bddseq());
  r.phi.desc = [](const InstanceDescription& d) -> InstanceDescription {
    const auto& x = std::get<RatSeqInstance>(d);
    auto cell = [x](Nat i) -> Nat {
      Int c = ceil(x.approximation(i, 1));
      return c < 0 ? 0 : static_cast<Nat>(c);
    };
    std::vector<Nat> prefix;
    for (Nat i = 0; i < x.prefix.size(); ++i) prefix.push_back(cell(i));
    Nat len = x.prefix.size();
    switch (x.tail_kind) {
      case RatSeqInstance::TailKind::Const:
        return make_seq(std::move(prefix), ConstTail{cell(len)});
      case RatSeqInstance::TailKind::Periodic: {
        std::vector<Nat> word;
        for (Nat j = 0; j < x.tail.size(); ++j) word.push_back(cell(len + j));
        return make_seq(std::move(prefix), PeriodicTail{word});
      }
      case RatSeqInstance::TailKind::Ramp:
        break;
    }
    if (x.jitter_length <= 1) return make_seq(std::move(prefix), RampTail{});
    auto tail = std::make_shared<DivergentTail>();
    tail->value = cell;
    tail->label = "ceilings of a ramp";
    return make_seq(std::move(prefix), tail);
  };
  r.phi.stream = [](Handle h) {
    return nat_source([h](Nat i) -> Nat {
      Int c = ceil(h->query_rational(pair(i, 1)));
      return c < 0 ? 0 : static_cast<Nat>(c);
    });
  };
  // A real bound b: with m the integer nearest b, |m|+1 bounds every ceiling.
  r.r_minus = [](const Witness& w, Handle) {
    if (w[0] < 1) throw std::invalid_argument("rational bound needs den >= 1");
    Int m = floor(Rational(w[1], w[0]) + Rational(1, 2));
    return Witness{(m < 0 ? Int(-m) : m) + 1};
  };
  r.r_plus = [](const Witness& w, Handle) { return Witness{2, 2 * w[0] + 1}; };
  return r;
}

}  // namespace reductions

const std::vector<CatalogEntry>& catalog_entries() {
  using namespace reductions;
  static const std::vector<CatalogEntry> entries{
      {"conv_to_fin", conv_to_fin()},
      {"fin_to_qpre", fin_to_qpre()},
      {"qpre_to_conv", qpre_to_conv()},
      {"bddseq_to_potop", bddseq_to_potop()},
      {"potop_to_bddseq", potop_to_bddseq()},
      {"disconn_sub_to_fun", disconn_sub_to_fun()},
      {"disconn_fun_to_sub", disconn_fun_to_sub()},
      {"orbit_to_disconnfun", orbit_to_disconnfun()},
      {"disconnfun_to_orbit", disconnfun_to_orbit()},
      {"halftruth_to_disconn", halftruth_to_disconn()},
      {"truth_to_nondense", truth_to_nondense()},
      {"truth_to_poatom", truth_to_poatom()},
      {"truth_to_tr2", truth_to_tr2()},
      {"bddseq_family_equivalences", bddseq_omega_to_q()},
      {"bddseq_family_equivalences", bddseq_q_to_r()},
      {"bddseq_family_equivalences", bddseq_r_to_omega()},
  };
  return entries;
}

std::optional<LevinReduction> find_reduction(const std::string& id) {
  for (const auto& e : catalog_entries()) {
    if (e.reduction.id == id) return e.reduction;
  }
  return std::nullopt;
}

std::vector<CatalogEntry> select_entries(const std::string& name) {
  std::vector<CatalogEntry> out;
  for (const auto& e : catalog_entries()) {
    if (e.group == name || e.reduction.id == name) out.push_back(e);
  }
  return out;
}

}  // namespace levin
