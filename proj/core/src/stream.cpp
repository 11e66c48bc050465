#include "levinlab/stream.hpp"

namespace levin {

void Budget::charge(Nat steps) {
  used += steps;
  if (used > limit) {
    throw Divergence("step budget of " + std::to_string(limit) + " exhausted");
  }
}

Nat Source::nat(Nat) { throw std::logic_error("natural query on a rational-valued stream"); }

Rational Source::rat(Nat index) { return Rational(nat(index)); }

StreamHandle::StreamHandle(std::shared_ptr<Source> source, std::shared_ptr<Budget> budget)
    : source_(std::move(source)), budget_(std::move(budget)) {}

Nat StreamHandle::query(Nat index) {
  budget_->charge();
  Nat v = source_->nat(index);
  log_.push_back({index, v});
  if (index + 1 > use_) use_ = index + 1;
  return v;
}

Rational StreamHandle::query_rational(Nat index) {
  budget_->charge();
  Rational v = source_->rat(index);
  log_.push_back({index, fingerprint(v)});
  if (index + 1 > use_) use_ = index + 1;
  return v;
}

Handle open(std::shared_ptr<Source> source, std::shared_ptr<Budget> budget) {
  return std::make_shared<StreamHandle>(std::move(source), std::move(budget));
}

}  // namespace levin
