#include "levinlab/generic.hpp"

#include <algorithm>
#include <limits>

#include "levinlab/catalog.hpp"

namespace levin {

namespace {

// Descriptions are simulated on their own stream without a step limit: the
// oracle side knows that the simulated search terminates.
Handle own_handle(const InstanceDescription& d) {
  return open(stream_of(d), std::make_shared<Budget>(std::numeric_limits<Nat>::max()));
}

Nat witness_nat(const Witness& w, std::size_t i) {
  auto v = w.nat(i);
  if (!v) throw std::invalid_argument("witness component " + std::to_string(i) + " is not a natural: " + to_string(w));
  return *v;
}

std::shared_ptr<Source> nat_source(std::function<Nat(Nat)> f) { return std::make_shared<FunctionSource>(std::move(f)); }

WitnessMap same() {
  return [](const Witness& w, Handle) { return w; };
}

// Image of a member under a staged machine: outputs before the machine starts
// waiting on the least index, then zeros.
SeqInstance machine_image(const Pi01Family& family, StagedMachine::Emit emit, const InstanceDescription& d,
                          std::optional<Nat> sup) {
  auto machine = std::make_shared<StagedMachine>(family, own_handle(d), emit);
  if (auto k = family.least(d)) {
    Nat settled = machine->entered(*k);
    std::vector<Nat> prefix;
    for (Nat s = 0; s < settled; ++s) prefix.push_back(machine->output(s));
    return make_seq(std::move(prefix), ConstTail{0});
  }
  auto tail = std::make_shared<DivergentTail>();
  tail->value = [machine](Nat s) { return machine->output(s); };
  tail->sup = sup;
  tail->label = "refutations of " + family.id;
  return make_seq({}, tail);
}

// First stage at which watcher n refutes, scanning lazily.
class RefutationScan {
 public:
  RefutationScan(Pi01Family family, Handle h) : family_(std::move(family)), h_(std::move(h)) {}

  // Whether watcher n refutes at some stage <= s.
  bool refuted_by(Nat n, Nat s) {
    auto& st = state_[n];
    if (!st.watcher) st.watcher = std::make_shared<Watcher>(family_.at(n));
    while (!st.first && st.scanned <= s) {
      h_->tick();
      if (st.watcher->refutes(*h_, st.scanned)) st.first = st.scanned;
      ++st.scanned;
    }
    return st.first && *st.first <= s;
  }

 private:
  struct State {
    std::shared_ptr<Watcher> watcher;
    Nat scanned = 0;
    std::optional<Nat> first;
  };
  Pi01Family family_;
  Handle h_;
  std::map<Nat, State> state_;
};

// The demi machine: n_s is the largest n <= s such that every k <= n is
// refuted at some m <= s - n; nullopt when there is none.
class DemiMachine {
 public:
  DemiMachine(Pi01Family family, Handle h) : scan_(std::move(family), std::move(h)) {}

  std::optional<Nat> n_at(Nat s) {
    for (Nat n = s + 1; n-- > 0;) {
      bool all = true;
      for (Nat k = 0; k <= n && all; ++k) all = scan_.refuted_by(k, s - n);
      if (all) return n;
    }
    return std::nullopt;
  }

  Nat output(Nat s) {
    auto cur = n_at(s);
    if (!cur) return 0;
    auto prev = s == 0 ? std::nullopt : n_at(s - 1);
    return !prev || *cur > *prev ? 1 : 0;
  }

 private:
  RefutationScan scan_;
};

Problem union_of(const Pi01Family& family) { return witnessed_union(family); }

}  // namespace

StagedMachine::StagedMachine(Pi01Family family, Handle h, Emit emit)
    : family_(std::move(family)), h_(std::move(h)), emit_(emit) {}

void StagedMachine::step() {
  Nat s = out_.size();
  index_.push_back(n_);
  Watcher w = family_.at(n_);
  bool refuted = false;
  while (scanned_ <= s && !refuted) {
    h_->tick();
    refuted = w.refutes(*h_, scanned_);
    ++scanned_;
  }
  if (!refuted) {
    out_.push_back(0);
    return;
  }
  out_.push_back(emit_ == Emit::One ? 1 : n_);
  ++n_;
  scanned_ = 0;
  entered_[n_] = s + 1;
}

Nat StagedMachine::output(Nat s) {
  while (out_.size() <= s) step();
  return out_[s];
}

Nat StagedMachine::index_at(Nat s) {
  output(s);
  return index_[s];
}

Nat StagedMachine::entered(Nat n) {
  while (!entered_.count(n)) step();
  return entered_.at(n);
}

BinaryMatrix fin_matrix() {
  BinaryMatrix f;
  f.id = "x(m)=0";
  f.variants = {"seq"};
  f.eval = [](Nat m, StreamHandle& h) { return h.query(m) == 0; };
  f.ones_from = [](const InstanceDescription& d) { return std::get<SeqInstance>(d).zero_from(); };
  return f;
}

Normalized uw_normalize(const BinaryMatrix& f) {
  Normalized out;
  out.family.id = "uw(" + f.id + ")";
  out.family.variants = f.variants;
  out.family.disjoint = true;
  out.family.at = [f](Nat n) {
    Watcher w;
    w.condition = n == 0 ? "f=1 everywhere" : "f=1 from " + std::to_string(n) + ", f(" + std::to_string(n - 1) + ")=0";
    // The second conjunct is decided at stage 0.
    w.refutes = [f, n](StreamHandle& h, Nat s) {
      if (s == 0 && n > 0 && f.eval(n - 1, h)) return true;
      return s >= n && !f.eval(s, h);
    };
    w.holds = [f, n](const InstanceDescription& d) { return f.ones_from(d) == n; };
    return w;
  };
  out.family.least = f.ones_from;
  out.minimizer = [f](const Witness& w, Handle h) {
    Nat n = witness_nat(w, 0);
    while (n > 0) {
      h->tick();
      if (!f.eval(n - 1, *h)) break;
      --n;
    }
    return Witness{Int(n)};
  };
  return out;
}

LevinReduction normalization(Problem source, const Normalized& nf) {
  LevinReduction r;
  r.id = "normalize(" + source->id + ")";
  r.locus = "least witness: A_n = {x : f(m,x)=1 for m>=n, f(n-1,x)=0}";
  r.target = union_of(nf.family);
  r.phi = identity_transformer(source->variants);
  r.source = std::move(source);
  r.r_minus = nf.minimizer;
  r.r_plus = same();
  return r;
}

Pi01Family bddseq_matrix() {
  Pi01Family f;
  f.id = "x<=n";
  f.variants = {"seq"};
  f.increasing = true;
  f.at = [](Nat n) {
    Watcher w;
    w.condition = "x(m) <= " + std::to_string(n);
    w.refutes = [n](StreamHandle& h, Nat s) { return h.query(s) > n; };
    w.holds = [n](const InstanceDescription& d) {
      auto sup = std::get<SeqInstance>(d).sup();
      return sup && *sup <= n;
    };
    return w;
  };
  f.least = [](const InstanceDescription& d) { return std::get<SeqInstance>(d).sup(); };
  return f;
}

LevinReduction unique_to_fin(const Pi01Family& family) {
  LevinReduction r;
  r.id = "unique_to_fin(" + family.id + ")";
  r.locus = "Fin is complete for the unique witness property: r_-(n,x)=(s_n,phi(x))";
  r.source = union_of(family);
  r.target = catalog::fin();
  r.phi.variants = family.variants;
  r.phi.desc = [family](const InstanceDescription& d) -> InstanceDescription {
    return machine_image(family, StagedMachine::Emit::One, d, 1);
  };
  r.phi.stream = [family](Handle h) {
    auto m = std::make_shared<StagedMachine>(family, h, StagedMachine::Emit::One);
    return nat_source([m](Nat s) { return m->output(s); });
  };
  r.r_minus = [family](const Witness& w, Handle h) {
    StagedMachine m(family, h, StagedMachine::Emit::One);
    return Witness{Int(m.entered(witness_nat(w, 0)))};
  };
  r.r_plus = [family](const Witness& w, Handle h) {
    StagedMachine m(family, h, StagedMachine::Emit::One);
    return Witness{Int(m.index_at(witness_nat(w, 0)))};
  };
  return r;
}

LevinReduction increasing_to_bddseq(const Pi01Family& family) {
  LevinReduction r;
  r.id = "increasing_to_bddseq(" + family.id + ")";
  r.locus = "BddSeq is complete for the increasing witness property: r_+(x,(b,p))=(b+1,x)";
  r.source = union_of(family);
  r.target = catalog::bddseq();
  r.phi.variants = family.variants;
  r.phi.desc = [family](const InstanceDescription& d) -> InstanceDescription {
    return machine_image(family, StagedMachine::Emit::Index, d, std::nullopt);
  };
  r.phi.stream = [family](Handle h) {
    auto m = std::make_shared<StagedMachine>(family, h, StagedMachine::Emit::Index);
    return nat_source([m](Nat s) { return m->output(s); });
  };
  r.r_minus = same();
  r.r_plus = [](const Witness& w, Handle) { return Witness{w[0] + 1}; };
  return r;
}

LevinReduction demi_to_fin(const Pi01Family& family) {
  LevinReduction r;
  r.id = "demi_to_fin(" + family.id + ")";
  r.locus = "A <=_m' Fin: the largest n_s <= s fulfilling the refutation condition";
  r.source = union_of(family);
  r.target = catalog::fin();
  r.phi.variants = family.variants;
  r.phi.desc = [family](const InstanceDescription& d) -> InstanceDescription {
    auto machine = std::make_shared<DemiMachine>(family, own_handle(d));
    if (auto n = family.least(d)) {
      // n_s never exceeds n-1 and stays there once reached.
      Nat settled = 0;
      if (*n > 0) {
        while (machine->n_at(settled) != *n - 1) ++settled;
        ++settled;
      }
      std::vector<Nat> prefix;
      for (Nat s = 0; s < settled; ++s) prefix.push_back(machine->output(s));
      return make_seq(std::move(prefix), ConstTail{0});
    }
    auto tail = std::make_shared<DivergentTail>();
    tail->value = [machine](Nat s) { return machine->output(s); };
    tail->sup = 1;
    tail->label = "increases of n_s for " + family.id;
    return make_seq({}, tail);
  };
  r.phi.stream = [family](Handle h) {
    auto m = std::make_shared<DemiMachine>(family, h);
    return nat_source([m](Nat s) { return m->output(s); });
  };
  r.r_plus = [family](const Witness& w, Handle h) {
    DemiMachine m(family, h);
    auto n = m.n_at(witness_nat(w, 0));
    return Witness{Int(n ? *n + 1 : 0)};
  };
  return r;
}

namespace {

Transformer refutation_columns(const Pi01Family& family) {
  Transformer t;
  t.variants = family.variants;
  t.desc = [family](const InstanceDescription& d) -> InstanceDescription {
    auto scan = std::make_shared<RefutationScan>(family, own_handle(d));
    auto gen = std::make_shared<GeneratedColumns>();
    gen->zero = [family, d](Nat n) { return family.holds(n, d); };
    gen->column = [family, d, scan](Nat n) {
      if (family.holds(n, d)) return make_seq({}, ConstTail{0});
      Nat p = 0;
      while (!scan->refuted_by(n, p)) ++p;
      return make_seq(std::vector<Nat>(p, 0), ConstTail{1});
    };
    gen->least_zero = [family, d] { return family.least(d); };
    gen->label = "refutations of " + family.id;
    FamilySeqInstance f;
    f.fallback = std::shared_ptr<const GeneratedColumns>(gen);
    return f;
  };
  t.stream = [family](Handle h) {
    auto scan = std::make_shared<RefutationScan>(family, h);
    return nat_source([scan](Nat c) -> Nat {
      auto [n, s] = unpair(c);
      return scan->refuted_by(n, s) ? 1 : 0;
    });
  };
  return t;
}

}  // namespace

LevinReduction family_to_truth(const Pi01Family& family) {
  LevinReduction r;
  r.id = "family_to_truth(" + family.id + ")";
  r.locus = "Truth is complete for Sigma02 subobjects: column n turns 1 once A_n is refuted";
  r.source = union_of(family);
  r.target = catalog::truth();
  r.phi = refutation_columns(family);
  r.r_minus = same();
  r.r_plus = same();
  return r;
}

Problem half_problem(const Pi01Family& family, std::string id) {
  auto p = std::make_shared<WitnessedProblem>();
  p->id = id.empty() ? "Half(" + family.id + ")" : std::move(id);
  p->variants = family.variants;
  p->arity = 2;
  p->member = [family](const InstanceDescription& d) { return family.least(d).has_value(); };
  p->valid = [family](const InstanceDescription& d, const Witness& w) {
    auto a = w.nat(0);
    auto b = w.nat(1);
    return (a && family.holds(*a, d)) || (b && family.holds(*b, d));
  };
  return p;
}

LevinReduction half_of(const Pi01Family& family) {
  LevinReduction r;
  r.id = "half_of(" + family.id + ")";
  r.locus = "HalfTruth is half Sigma02-hard";
  r.source = half_problem(family);
  r.target = catalog::halftruth();
  r.phi = refutation_columns(family);
  r.r_minus = same();
  r.r_plus = same();
  return r;
}

Amalgamator fin_amalgamator() {
  return {"Fin", [](Handle, const std::vector<Witness>& ws) {
            Int best = 0;
            for (const auto& w : ws) best = std::max(best, w[0]);
            return Witness{best};
          }};
}

Amalgamator bddseq_amalgamator() {
  Amalgamator am = fin_amalgamator();
  am.problem = "BddSeq_omega";
  return am;
}

LevinReduction amalgamated_lift(Problem b, const Pi01Family& family, const Amalgamator& am) {
  LevinReduction r;
  r.id = "amalgamated_lift(" + b->id + ")";
  r.locus = "B <=_m A for amalgamable B and half hard A: (a,a) is a witness";
  r.target = half_problem(family);
  r.phi = identity_transformer(b->variants);
  r.source = std::move(b);
  r.r_minus = [](const Witness& w, Handle) { return Witness{w[0], w[0]}; };
  r.r_plus = [am](const Witness& w, Handle h) {
    return am.merge(h, {w.slice(0, 1), w.slice(1, 1)});
  };
  return r;
}

}  // namespace levin
