#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "levinlab/instances.hpp"
#include "levinlab/stream.hpp"
#include "levinlab/witness.hpp"

namespace levin {

class VariantMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SchemaMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A Pi01 condition. refutes(h, s) inspects the stream at stage s only; the
// condition fails iff some stage refutes it.
struct Watcher {
  std::string condition;
  std::function<bool(StreamHandle&, Nat)> refutes;
  std::function<bool(const InstanceDescription&)> holds;  // oracle
};

// First refuting stage s <= t, if any.
std::optional<Nat> watch(const Watcher& w, StreamHandle& h, Nat t);

// A uniformly Pi01 family (A_n). least(d) is the oracle for the least n with
// d in A_n.
struct Pi01Family {
  std::string id;
  std::function<Watcher(Nat)> at;
  std::function<std::optional<Nat>(const InstanceDescription&)> least;
  bool disjoint = false;
  bool increasing = false;
  // Variant names the family is defined on.
  std::vector<std::string> variants;

  bool holds(Nat n, const InstanceDescription& d) const { return at(n).holds(d); }
};

struct WitnessedProblem {
  std::string id;
  std::vector<std::string> variants;
  std::size_t arity = 1;
  std::function<bool(const InstanceDescription&)> member;
  std::function<bool(const InstanceDescription&, const Witness&)> valid;
  // Valid witnesses with all components of absolute value <= bound; when
  // unset, witnesses_upto enumerates all natural tuples.
  std::function<std::vector<Witness>(const InstanceDescription&, Nat)> enumerate;

  bool accepts(const InstanceDescription& d) const;
};

using Problem = std::shared_ptr<const WitnessedProblem>;

bool membership_of(const WitnessedProblem& p, const InstanceDescription& d);
bool valid_witness(const WitnessedProblem& p, const InstanceDescription& d, const Witness& w);
std::vector<Witness> witnesses_upto(const WitnessedProblem& p, const InstanceDescription& d, Nat bound);

// All natural tuples of the given arity with components <= bound, in witness order.
std::vector<Witness> natural_tuples(std::size_t arity, Nat bound);

// Witness n valid iff the instance lies in A_n.
Problem witnessed_union(const Pi01Family& family, std::string id = {});
// Witness (p, q) valid iff p valid for a and q valid for b.
Problem witnessed_intersection(Problem a, Problem b);

// An instance map given at both levels.
struct Transformer {
  std::function<InstanceDescription(const InstanceDescription&)> desc;
  std::function<std::shared_ptr<Source>(Handle)> stream;
  std::vector<std::string> variants;  // source variants
};

Transformer identity_transformer(std::vector<std::string> variants);

Problem pullback(const Transformer& phi, Problem b, std::string id = {});

// Tagged sum A + B over join instances; witness (tag, w).
Problem join(Problem a, Problem b);

}  // namespace levin
