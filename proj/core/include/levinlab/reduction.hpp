#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levinlab/problem.hpp"

namespace levin {

enum class Expectation { Sound, Falsifiable };

std::string to_string(Expectation e);

using WitnessMap = std::function<Witness(const Witness&, Handle)>;

// A Levin reduction (phi, r_minus, r_plus). r_minus maps a source witness to a
// target witness, r_plus a target witness back to a source witness; both see
// the source instance only through its stream. Without r_minus this is a demi
// reduction.
struct LevinReduction {
  std::string id;
  std::string locus;
  Problem source;
  Problem target;
  Transformer phi;
  WitnessMap r_minus;
  WitnessMap r_plus;
  Expectation status = Expectation::Sound;

  bool demi() const { return !r_minus; }
};

LevinReduction identity(Problem p);
// f : A -> B then g : B -> C.
LevinReduction compose(const LevinReduction& f, const LevinReduction& g);
LevinReduction demi_weakening(LevinReduction r);
// The injection of a (side 0) or b (side 1) into join(a, b).
LevinReduction inject(Problem a, Problem b, Nat side);
// From f : A -> C and g : B -> C, the reduction A + B -> C.
LevinReduction case_split(const LevinReduction& f, const LevinReduction& g);

struct VerifyOptions {
  Nat horizon = 256;
  Nat bound = 16;
  std::optional<Nat> budget;  // per witness-map call; default from the instance
  bool continuity = false;    // rerun every call at twice the budget
  Nat split_max = 8;
};

struct TrialRecord {
  std::string entry;
  Nat trial = 0;
  std::string digest;

  bool source_member = false;
  bool target_member = false;
  Nat forward_checked = 0;
  Nat forward_failed = 0;
  Nat backward_checked = 0;
  Nat backward_failed = 0;
  bool agreement_ok = true;
  bool continuity_checked = false;
  bool continuity_ok = true;
  Nat split_checked = 0;
  Nat split_failed = 0;
  Nat divergences = 0;
  Nat max_trace = 0;  // longest prefix read by a single witness-map call
  std::vector<std::string> failures;

  bool membership_ok() const { return source_member == target_member; }
  bool passed() const;
};

TrialRecord verify(const LevinReduction& r, const InstanceDescription& d, const VerifyOptions& options = {});

// Outcome of a single witness-map call.
struct Invocation {
  std::optional<Witness> output;
  std::vector<QueryRecord> log;
  Nat use = 0;
  std::string error;  // empty unless the call failed
  bool diverged = false;
};

Invocation invoke(const WitnessMap& f, const Witness& w, const InstanceDescription& d, Nat budget);

// r_plus(r_minus(k)) == k; nullopt when a call fails.
std::optional<bool> split_check(const LevinReduction& r, const InstanceDescription& d, const Witness& k,
                                Nat budget);

// Digest of the instance used in reports.
std::string instance_digest(const InstanceDescription& d);

}  // namespace levin
