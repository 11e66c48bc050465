#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levinlab/problem.hpp"
#include "levinlab/reduction.hpp"

namespace levin {

// Runs the watchers of a family one index at a time: while waiting on n it
// scans watcher n over all stages so far, and on the first refutation emits a
// token and moves to n+1. At most one refutation is handled per stage.
class StagedMachine {
 public:
  enum class Emit { One, Index };  // token 1, or the refuted index

  StagedMachine(Pi01Family family, Handle h, Emit emit);

  Nat output(Nat s);
  // Index being waited on after stages 0..s-1.
  Nat index_at(Nat s);
  // Stage at which the machine starts waiting on n; runs until then.
  Nat entered(Nat n);

 private:
  void step();

  Pi01Family family_;
  Handle h_;
  Emit emit_;
  Nat n_ = 0;
  Nat scanned_ = 0;  // stages of watcher n_ already checked
  std::vector<Nat> out_;
  std::vector<Nat> index_;        // index_[s] = n before stage s
  std::map<Nat, Nat> entered_{{0, 0}};
};

// A decidable binary matrix f(m, x), used by uw_normalize.
struct BinaryMatrix {
  std::string id;
  std::vector<std::string> variants;
  std::function<bool(Nat m, StreamHandle&)> eval;
  // Oracle: least n with f(m, x) = 1 for all m >= n.
  std::function<std::optional<Nat>(const InstanceDescription&)> ones_from;
};

// f(m, x) = [x(m) = 0].
BinaryMatrix fin_matrix();

// A_0: f = 1 everywhere; A_n: f(m) = 1 for m >= n and f(n-1) = 0.
struct Normalized {
  Pi01Family family;
  WitnessMap minimizer;  // n -> least n0 <= n with f = 1 on [n0, n)
};
Normalized uw_normalize(const BinaryMatrix& f);

// Reduction from `source` (witness n: f = 1 from n on) to the union of the
// normalized family; r_minus minimizes, r_plus is the identity.
LevinReduction normalization(Problem source, const Normalized& nf);

// A_n: x(m) <= n for all m. Increasing.
Pi01Family bddseq_matrix();

LevinReduction unique_to_fin(const Pi01Family& family);
LevinReduction increasing_to_bddseq(const Pi01Family& family);
// Demi reduction from the union of `family` (read as the matrix
// theta(k, m, x) = watcher k does not refute at stage m) to Fin.
LevinReduction demi_to_fin(const Pi01Family& family);
LevinReduction family_to_truth(const Pi01Family& family);

// Witness (a, b) valid iff x is in A_a or in A_b.
Problem half_problem(const Pi01Family& family, std::string id = {});
LevinReduction half_of(const Pi01Family& family);

struct Amalgamator {
  std::string problem;
  std::function<Witness(Handle, const std::vector<Witness>&)> merge;
};

Amalgamator fin_amalgamator();     // max rule
Amalgamator bddseq_amalgamator();  // max bound

// B -> Half(family) with phi the identity, r_minus(a) = (a, a) and r_plus the
// merge of both components.
LevinReduction amalgamated_lift(Problem b, const Pi01Family& family, const Amalgamator& am);

}  // namespace levin
