#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "levinlab/paper_reductions.hpp"
#include "levinlab/reduction.hpp"

namespace levin {

// Deterministic draws; avoids the implementation-defined std distributions so
// that reports are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  Nat below(Nat n);  // uniform in [0, n), n >= 1
  Nat range(Nat lo, Nat hi) { return lo + below(hi - lo + 1); }
  bool chance(Nat num, Nat den) { return below(den) < num; }

 private:
  std::uint64_t state_;
};

struct GeneratorProfile {
  std::string problem;
  std::string variant;
  std::uint64_t seed = 1;
  Nat non_member_every = 4;  // trial k with k % this == 0 is a non-member
  Nat non_member_extra = 3;  // other trials are non-members with chance 1/this
  Nat prefix_cap = 32;
  Nat universe_cap = 24;
  Nat stage_cap = 128;  // reveal stages stay below this (horizon / 2)
};

GeneratorProfile profile_for(const std::string& problem, const std::string& variant, std::uint64_t seed,
                             Nat horizon = 256);
// Whether trial k is meant to be a non-member.
bool non_member_slot(const GeneratorProfile& p, Nat k);
InstanceDescription generate(const GeneratorProfile& p, Nat k);
// Variants a generator exists for, per problem id.
std::vector<std::string> generatable_variants(const std::string& problem);

struct Counterexample {
  std::string kind;  // "adversary" or "trial"
  nlohmann::json instance;
  nlohmann::json base;  // instance sharing the prefix, for adversary records
  Nat fork = 0;
  std::string witness;
  std::string output;
  Nat trace = 0;
  Nat probes = 0;
  std::string reason;
};

struct EntryReport {
  std::string group;
  std::string entry;
  Expectation expected = Expectation::Sound;
  Nat trials = 0;
  Nat passed = 0;
  Nat non_members = 0;
  Nat divergences = 0;
  Nat continuity_checked = 0;
  Nat continuity_failed = 0;
  Nat split_checked = 0;
  Nat split_failed = 0;
  std::vector<TrialRecord> records;
  std::optional<Counterexample> counterexample;

  // "pass", "fail" or "counterexample".
  std::string verdict() const;
  bool matched() const;
};

struct SuiteOptions {
  Nat trials = 200;
  Nat horizon = 256;
  Nat bound = 16;
  std::uint64_t seed = 1;
  Nat continuity_every = 10;  // continuity rerun on trials k % this == 0
  Nat adversary_probes = 1000;
};

// `generator` names the problem whose generator feeds the entry; by default
// the source problem of r.
EntryReport run_entry(const LevinReduction& r, const std::string& group, const SuiteOptions& o,
                      const std::string& generator = {});
std::vector<EntryReport> run_suite(const std::vector<CatalogEntry>& entries, const SuiteOptions& o);

// Instances sharing the stream prefix of length `fork` with the base.
struct AdversaryFamily {
  InstanceDescription base;
  Nat fork = 0;
  std::vector<InstanceDescription> extensions;
};

// Zeros through `length`, then extensions with a single spike of value 1..max_value
// at each position in [fork, length).
AdversaryFamily spike_family(Nat fork, Nat length, Nat max_value);
// Poset analogue: the singleton {0}, extended by a new top at each stage in [fork, length).
AdversaryFamily late_top_family(Nat fork, Nat length);

// Looks for an extension e and a valid source witness w such that r_minus(w)
// reads only cells shared with the base yet answers invalidly on e.
std::optional<Counterexample> adversary_search(const LevinReduction& r, const AdversaryFamily& fam, Nat bound,
                                               Nat max_probes);

nlohmann::json trial_json(const TrialRecord& t);
nlohmann::json counterexample_json(const Counterexample& c);
nlohmann::json entry_summary_json(const EntryReport& e);
// One JSON object per line: every trial, then one summary per entry.
std::string report_lines(const std::vector<EntryReport>& reports);

}  // namespace levin
