#include "levinlab/problem.hpp"

#include <algorithm>

namespace levin {

std::optional<Nat> watch(const Watcher& w, StreamHandle& h, Nat t) {
  for (Nat s = 0; s <= t; ++s) {
    h.tick();
    if (w.refutes(h, s)) return s;
  }
  return std::nullopt;
}

bool WitnessedProblem::accepts(const InstanceDescription& d) const {
  auto name = variant_name(d);
  return std::find(variants.begin(), variants.end(), name) != variants.end();
}

namespace {

void require_variant(const WitnessedProblem& p, const InstanceDescription& d) {
  if (!p.accepts(d)) throw VariantMismatch(p.id + " does not take " + variant_name(d) + " instances");
}

std::vector<Nat> tuple_digits(Nat code, std::size_t arity, Nat base) {
  std::vector<Nat> digits(arity);
  for (std::size_t i = arity; i-- > 0;) {
    digits[i] = code % base;
    code /= base;
  }
  return digits;
}

}  // namespace

bool membership_of(const WitnessedProblem& p, const InstanceDescription& d) {
  require_variant(p, d);
  return p.member(d);
}

bool valid_witness(const WitnessedProblem& p, const InstanceDescription& d, const Witness& w) {
  require_variant(p, d);
  if (w.size() != p.arity) {
    throw SchemaMismatch(p.id + " expects " + std::to_string(p.arity) + "-component witnesses, got " + to_string(w));
  }
  return p.valid(d, w);
}

std::vector<Witness> natural_tuples(std::size_t arity, Nat bound) {
  std::vector<Witness> out;
  Nat base = bound + 1;
  Nat count = 1;
  for (std::size_t i = 0; i < arity; ++i) count *= base;
  out.reserve(count);
  for (Nat c = 0; c < count; ++c) {
    Witness w;
    for (Nat digit : tuple_digits(c, arity, base)) w.parts.emplace_back(digit);
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Witness> witnesses_upto(const WitnessedProblem& p, const InstanceDescription& d, Nat bound) {
  require_variant(p, d);
  std::vector<Witness> out;
  if (p.enumerate) {
    out = p.enumerate(d, bound);
  } else if (p.member(d)) {
    for (auto& w : natural_tuples(p.arity, bound)) {
      if (p.valid(d, w)) out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Problem witnessed_union(const Pi01Family& family, std::string id) {
  auto p = std::make_shared<WitnessedProblem>();
  p->id = id.empty() ? "union(" + family.id + ")" : std::move(id);
  p->variants = family.variants;
  p->arity = 1;
  p->member = [family](const InstanceDescription& d) { return family.least(d).has_value(); };
  p->valid = [family](const InstanceDescription& d, const Witness& w) {
    auto n = w.nat(0);
    return n && family.holds(*n, d);
  };
  return p;
}

Problem witnessed_intersection(Problem a, Problem b) {
  auto p = std::make_shared<WitnessedProblem>();
  p->id = a->id + "&" + b->id;
  for (const auto& v : a->variants) {
    if (std::find(b->variants.begin(), b->variants.end(), v) != b->variants.end()) p->variants.push_back(v);
  }
  p->arity = a->arity + b->arity;
  p->member = [a, b](const InstanceDescription& d) { return a->member(d) && b->member(d); };
  p->valid = [a, b](const InstanceDescription& d, const Witness& w) {
    return a->valid(d, w.slice(0, a->arity)) && b->valid(d, w.slice(a->arity, b->arity));
  };
  p->enumerate = [a, b](const InstanceDescription& d, Nat bound) {
    std::vector<Witness> out;
    auto left = witnesses_upto(*a, d, bound);
    if (left.empty()) return out;
    auto right = witnesses_upto(*b, d, bound);
    for (const auto& l : left) {
      for (const auto& r : right) out.push_back(l.concat(r));
    }
    return out;
  };
  return p;
}

Transformer identity_transformer(std::vector<std::string> variants) {
  Transformer t;
  t.desc = [](const InstanceDescription& d) { return d; };
  t.stream = [](Handle h) -> std::shared_ptr<Source> { return std::make_shared<OffsetSource>(std::move(h), 0); };
  t.variants = std::move(variants);
  return t;
}

Problem pullback(const Transformer& phi, Problem b, std::string id) {
  auto p = std::make_shared<WitnessedProblem>();
  p->id = id.empty() ? "pullback(" + b->id + ")" : std::move(id);
  p->variants = phi.variants;
  p->arity = b->arity;
  auto f = phi.desc;
  p->member = [f, b](const InstanceDescription& d) { return membership_of(*b, f(d)); };
  p->valid = [f, b](const InstanceDescription& d, const Witness& w) { return valid_witness(*b, f(d), w); };
  p->enumerate = [f, b](const InstanceDescription& d, Nat bound) { return witnesses_upto(*b, f(d), bound); };
  return p;
}

Problem join(Problem a, Problem b) {
  auto p = std::make_shared<WitnessedProblem>();
  p->id = a->id + "+" + b->id;
  p->variants = {"join"};
  p->arity = 1 + std::max(a->arity, b->arity);
  auto side = [a, b](Nat tag) { return tag == 0 ? a : b; };
  p->member = [side](const InstanceDescription& d) {
    const auto& j = std::get<JoinInstance>(d);
    if (j.tag > 1) return false;
    return membership_of(*side(j.tag), *j.inner);
  };
  p->valid = [side](const InstanceDescription& d, const Witness& w) {
    const auto& j = std::get<JoinInstance>(d);
    auto tag = w.nat(0);
    if (!tag || *tag != j.tag || j.tag > 1) return false;
    auto inner = side(j.tag);
    // Narrower side pads with zeros.
    auto body = w.slice(1, inner->arity);
    for (std::size_t i = 1 + inner->arity; i < w.size(); ++i) {
      if (w[i] != 0) return false;
    }
    return valid_witness(*inner, *j.inner, body);
  };
  p->enumerate = [side, arity = p->arity](const InstanceDescription& d, Nat bound) {
    std::vector<Witness> out;
    const auto& j = std::get<JoinInstance>(d);
    if (j.tag > 1) return out;
    auto inner = side(j.tag);
    for (const auto& w : witnesses_upto(*inner, *j.inner, bound)) {
      Witness full{Int(j.tag)};
      full = full.concat(w);
      while (full.size() < arity) full.parts.emplace_back(0);
      out.push_back(std::move(full));
    }
    return out;
  };
  return p;
}

}  // namespace levin
