#include "levinlab/reduction.hpp"

#include <algorithm>

namespace levin {

std::string to_string(Expectation e) { return e == Expectation::Sound ? "pass" : "counterexample"; }

namespace {

// Cell 0 is the tag, cell i+1 is cell i of the wrapped handle.
class TagSource final : public Source {
 public:
  TagSource(Nat tag, Handle inner) : tag_(tag), inner_(std::move(inner)) {}
  bool rational() const override { return inner_->rational(); }
  Nat nat(Nat i) override { return i == 0 ? tag_ : inner_->query(i - 1); }
  Rational rat(Nat i) override { return i == 0 ? Rational(tag_) : inner_->query_rational(i - 1); }

 private:
  Nat tag_;
  Handle inner_;
};

Handle derived(std::shared_ptr<Source> s, const Handle& parent) { return open(std::move(s), parent->budget()); }

Witness pad(Witness w, std::size_t arity) {
  while (w.size() < arity) w.parts.emplace_back(0);
  return w;
}

}  // namespace

LevinReduction identity(Problem p) {
  LevinReduction r;
  r.id = "id_" + p->id;
  r.source = p;
  r.target = p;
  r.phi = identity_transformer(p->variants);
  r.r_minus = [](const Witness& w, Handle) { return w; };
  r.r_plus = [](const Witness& w, Handle) { return w; };
  return r;
}

LevinReduction compose(const LevinReduction& f, const LevinReduction& g) {
  LevinReduction r;
  r.id = f.id + ";" + g.id;
  r.locus = "composite";
  r.source = f.source;
  r.target = g.target;
  r.status = (f.status == Expectation::Sound && g.status == Expectation::Sound) ? Expectation::Sound
                                                                                 : Expectation::Falsifiable;
  auto fd = f.phi.desc;
  auto gd = g.phi.desc;
  auto fs = f.phi.stream;
  auto gs = g.phi.stream;
  r.phi.desc = [fd, gd](const InstanceDescription& d) { return gd(fd(d)); };
  r.phi.stream = [fs, gs](Handle h) { return gs(derived(fs(h), h)); };
  r.phi.variants = f.phi.variants;
  if (f.r_minus && g.r_minus) {
    r.r_minus = [fm = f.r_minus, gm = g.r_minus, fs](const Witness& w, Handle h) {
      return gm(fm(w, h), derived(fs(h), h));
    };
  }
  r.r_plus = [fp = f.r_plus, gp = g.r_plus, fs](const Witness& w, Handle h) {
    return fp(gp(w, derived(fs(h), h)), h);
  };
  return r;
}

LevinReduction demi_weakening(LevinReduction r) {
  r.id += "/demi";
  r.r_minus = nullptr;
  return r;
}

LevinReduction inject(Problem a, Problem b, Nat side) {
  LevinReduction r;
  Problem src = side == 0 ? a : b;
  r.id = "inj" + std::to_string(side) + "_" + a->id + "+" + b->id;
  r.source = src;
  r.target = join(a, b);
  r.phi.variants = src->variants;
  r.phi.desc = [side](const InstanceDescription& d) -> InstanceDescription {
    return JoinInstance{side, std::make_shared<const InstanceDescription>(d)};
  };
  r.phi.stream = [side](Handle h) -> std::shared_ptr<Source> { return std::make_shared<TagSource>(side, h); };
  std::size_t arity = r.target->arity;
  std::size_t inner = src->arity;
  r.r_minus = [side, arity](const Witness& w, Handle) { return pad(Witness{Int(side)}.concat(w), arity); };
  r.r_plus = [inner](const Witness& w, Handle) { return w.slice(1, inner); };
  return r;
}

LevinReduction case_split(const LevinReduction& f, const LevinReduction& g) {
  LevinReduction r;
  r.id = "split(" + f.id + "," + g.id + ")";
  r.source = join(f.source, g.source);
  r.target = f.target;
  r.phi.variants = {"join"};
  auto fd = f.phi.desc;
  auto gd = g.phi.desc;
  r.phi.desc = [fd, gd](const InstanceDescription& d) {
    const auto& j = std::get<JoinInstance>(d);
    return j.tag == 0 ? fd(*j.inner) : gd(*j.inner);
  };
  r.phi.stream = [fs = f.phi.stream, gs = g.phi.stream](Handle h) {
    Nat tag = h->query(0);
    auto inner = derived(std::make_shared<OffsetSource>(h, 1), h);
    return tag == 0 ? fs(inner) : gs(inner);
  };
  std::size_t fa = f.source->arity;
  std::size_t ga = g.source->arity;
  std::size_t arity = r.source->arity;
  if (f.r_minus && g.r_minus) {
    r.r_minus = [fm = f.r_minus, gm = g.r_minus, fa, ga](const Witness& w, Handle h) {
      Nat tag = h->query(0);
      auto inner = derived(std::make_shared<OffsetSource>(h, 1), h);
      return tag == 0 ? fm(w.slice(1, fa), inner) : gm(w.slice(1, ga), inner);
    };
  }
  r.r_plus = [fp = f.r_plus, gp = g.r_plus, arity](const Witness& w, Handle h) {
    Nat tag = h->query(0);
    auto inner = derived(std::make_shared<OffsetSource>(h, 1), h);
    Witness body = tag == 0 ? fp(w, inner) : gp(w, inner);
    return pad(Witness{Int(tag)}.concat(body), arity);
  };
  return r;
}

// ---------------------------------------------------------------------------

bool TrialRecord::passed() const {
  return membership_ok() && forward_failed == 0 && backward_failed == 0 && agreement_ok && continuity_ok &&
         split_failed == 0 && divergences == 0;
}

Invocation invoke(const WitnessMap& f, const Witness& w, const InstanceDescription& d, Nat budget) {
  Invocation out;
  auto h = open(stream_of(d), std::make_shared<Budget>(budget));
  try {
    out.output = f(w, h);
  } catch (const Divergence& e) {
    out.diverged = true;
    out.error = e.what();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.log = h->log();
  out.use = h->use();
  return out;
}

std::optional<bool> split_check(const LevinReduction& r, const InstanceDescription& d, const Witness& k,
                                Nat budget) {
  if (r.demi()) return std::nullopt;
  auto forward = invoke(r.r_minus, k, d, budget);
  if (!forward.output) return std::nullopt;
  auto back = invoke(r.r_plus, *forward.output, d, budget);
  if (!back.output) return std::nullopt;
  return *back.output == k;
}

namespace {

constexpr std::size_t kMaxFailures = 8;

void note(TrialRecord& rec, std::string what) {
  if (rec.failures.size() < kMaxFailures) rec.failures.push_back(std::move(what));
}

// Runs one witness-map call, with the continuity rerun when requested.
std::optional<Witness> run_map(TrialRecord& rec, const char* name, const WitnessMap& f, const Witness& w,
                               const InstanceDescription& d, Nat budget, bool continuity) {
  auto first = invoke(f, w, d, budget);
  rec.max_trace = std::max(rec.max_trace, first.use);
  if (first.diverged) {
    ++rec.divergences;
    note(rec, std::string(name) + to_string(w) + " diverged: " + first.error);
    return std::nullopt;
  }
  if (!first.output) {
    note(rec, std::string(name) + to_string(w) + " failed: " + first.error);
    return std::nullopt;
  }
  if (continuity) {
    auto second = invoke(f, w, d, 2 * budget);
    if (second.output != first.output || second.log != first.log) {
      rec.continuity_ok = false;
      note(rec, std::string(name) + to_string(w) + " changed under a doubled budget");
    }
  }
  return first.output;
}

bool checked_valid(TrialRecord& rec, const WitnessedProblem& p, const InstanceDescription& d, const Witness& w) {
  try {
    return valid_witness(p, d, w);
  } catch (const std::exception& e) {
    note(rec, p.id + " rejected " + to_string(w) + ": " + e.what());
    return false;
  }
}

// Reads the first `horizon` cells of the stream-level image; returns the
// values as strings together with the source query log.
struct Prefix {
  std::vector<std::string> cells;
  std::vector<QueryRecord> log;
  std::string error;
  bool diverged = false;
};

Prefix image_prefix(const Transformer& phi, const InstanceDescription& d, Nat horizon, Nat budget) {
  Prefix out;
  auto h = open(stream_of(d), std::make_shared<Budget>(budget));
  try {
    auto image = phi.stream(h);
    for (Nat i = 0; i < horizon; ++i) {
      out.cells.push_back(image->rational() ? to_string(image->rat(i)) : std::to_string(image->nat(i)));
    }
  } catch (const Divergence& e) {
    out.diverged = true;
    out.error = e.what();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.log = h->log();
  return out;
}

}  // namespace

TrialRecord verify(const LevinReduction& r, const InstanceDescription& d, const VerifyOptions& options) {
  TrialRecord rec;
  rec.entry = r.id;
  rec.digest = instance_digest(d);
  Nat budget = options.budget.value_or(default_budget(d, options.horizon));
  rec.continuity_checked = options.continuity;

  InstanceDescription image;
  try {
    rec.source_member = membership_of(*r.source, d);
    image = r.phi.desc(d);
    rec.target_member = membership_of(*r.target, image);
  } catch (const std::exception& e) {
    note(rec, std::string("membership: ") + e.what());
    rec.source_member = true;
    rec.target_member = false;
    return rec;
  }
  if (!rec.membership_ok()) {
    note(rec, "membership differs: source " + std::to_string(rec.source_member) + ", image " +
                  std::to_string(rec.target_member));
  }

  // (1)-(3): forward and backward witnesses.
  if (!r.demi()) {
    for (const auto& w : witnesses_upto(*r.source, d, options.bound)) {
      ++rec.forward_checked;
      auto v = run_map(rec, "r_minus", r.r_minus, w, d, budget, options.continuity);
      if (!v || !checked_valid(rec, *r.target, image, *v)) {
        ++rec.forward_failed;
        if (v) note(rec, "r_minus" + to_string(w) + " = " + to_string(*v) + " is not a valid witness");
      }
    }
  }
  for (const auto& v : witnesses_upto(*r.target, image, options.bound)) {
    ++rec.backward_checked;
    auto w = run_map(rec, "r_plus", r.r_plus, v, d, budget, options.continuity);
    if (!w || !checked_valid(rec, *r.source, d, *w)) {
      ++rec.backward_failed;
      if (w) note(rec, "r_plus" + to_string(v) + " = " + to_string(*w) + " is not a valid witness");
    }
  }

  // (4): stream-level and description-level images agree to the horizon. The
  // pass reads `horizon` cells, so it gets one witness-map budget per cell.
  Nat prefix_budget = budget * std::max<Nat>(options.horizon, 1);
  auto streamed = image_prefix(r.phi, d, options.horizon, prefix_budget);
  if (!streamed.error.empty()) {
    rec.agreement_ok = false;
    if (streamed.diverged) ++rec.divergences;
    note(rec, "image stream: " + streamed.error);
  } else {
    auto truth = stream_of(image);
    for (Nat i = 0; i < options.horizon; ++i) {
      std::string expect = truth->rational() ? to_string(truth->rat(i)) : std::to_string(truth->nat(i));
      if (expect != streamed.cells[i]) {
        rec.agreement_ok = false;
        note(rec, "image cell " + std::to_string(i) + ": stream " + streamed.cells[i] + ", description " + expect);
        break;
      }
    }
    if (options.continuity) {
      auto again = image_prefix(r.phi, d, options.horizon, 2 * prefix_budget);
      if (again.cells != streamed.cells || again.log != streamed.log) {
        rec.continuity_ok = false;
        note(rec, "image stream changed under a doubled budget");
      }
    }
  }

  // Split Lemma on instances tagged splittable.
  if (!r.demi() && splittable(d)) {
    for (const auto& k : witnesses_upto(*r.source, d, options.split_max)) {
      ++rec.split_checked;
      auto ok = split_check(r, d, k, budget);
      if (ok != true) {
        ++rec.split_failed;
        note(rec, "split check fails at " + to_string(k));
      }
    }
  }
  return rec;
}

}  // namespace levin
