// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "levinlab/catalog.hpp"
#include "levinlab/generic.hpp"
#include "levinlab/harness.hpp"
#include "levinlab/paper_reductions.hpp"
#include "levinlab/reduction.hpp"
#include "levinlab/serialize.hpp"

using namespace levin;
namespace R = levin::reductions;

namespace {

int failures = 0;

void line(int n, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << n << "  " << name << "  " << detail << std::endl;
  if (!ok) ++failures;
}

SuiteOptions options(Nat trials, std::uint64_t seed = 1) {
  SuiteOptions o;
  o.trials = trials;
  o.horizon = 256;
  o.bound = 16;
  o.seed = seed;
  return o;
}

bool all_pass(const EntryReport& e) { return e.trials > 0 && e.passed == e.trials && e.divergences == 0; }

std::string counts(const EntryReport& e) {
  std::ostringstream s;
  s << e.entry << " " << e.passed << "/" << e.trials;
  return s.str();
}

// Replays an adversary record from its serialized fields only.
bool replay(const LevinReduction& r, const Counterexample& c) {
  if (c.kind != "adversary") return false;
  try {
    auto ext = from_json(c.instance);
    auto base = from_json(c.base);
    auto w = parse_witness(c.witness);
    if (!w || !valid_witness(*r.source, ext, *w)) return false;
    auto inv = invoke(r.r_minus, *w, ext, default_budget(ext, 256));
    if (!inv.output || to_string(*inv.output) != c.output) return false;
    if (valid_witness(*r.target, r.phi.desc(ext), *inv.output)) return false;
    // Every cell read agrees with the base.
    auto a = stream_of(base);
    auto b = stream_of(ext);
    for (const auto& q : inv.log) {
      if (a->nat(q.index) != b->nat(q.index)) return false;
    }
    return !verify(r, ext).passed();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;

  // 1. Catalog soundness.
  auto t0 = clock::now();
  auto suite = run_suite(catalog_entries(), options(200));
  double seconds = std::chrono::duration<double>(clock::now() - t0).count();
  {
    const std::set<std::string> sound_groups{
        "conv_to_fin",         "fin_to_qpre",          "qpre_to_conv",       "potop_to_bddseq",
        "disconn_sub_to_fun",  "disconn_fun_to_sub",   "orbit_to_disconnfun", "disconnfun_to_orbit",
        "halftruth_to_disconn", "truth_to_nondense",   "truth_to_poatom",    "truth_to_tr2",
        "bddseq_family_equivalences"};
    std::set<std::string> seen;
    bool ok = seconds < 300;
    std::string bad;
    for (const auto& e : suite) {
      if (e.expected != Expectation::Sound) continue;
      seen.insert(e.group);
      bool good = all_pass(e) && e.non_members * 4 >= e.trials && e.trials == 200;
      if (!good) bad += " " + counts(e);
      ok = ok && good;
    }
    ok = ok && seen == sound_groups;
    std::ostringstream d;
    d << seen.size() << " groups, " << seconds << " s" << (bad.empty() ? "" : ", failing:" + bad);
    line(1, "catalog soundness", ok, d.str());
  }

  // 2. Mechanized falsification.
  {
    const EntryReport* e = nullptr;
    for (const auto& s : suite) {
      if (s.entry == "bddseq_to_potop") e = &s;
    }
    bool ok = e && e->counterexample && e->counterexample->kind == "adversary" &&
              e->counterexample->probes <= 1000 && replay(R::bddseq_to_potop(), *e->counterexample);
    std::string d = "no counterexample";
    if (e && e->counterexample) {
      d = "witness " + e->counterexample->witness + " -> " + e->counterexample->output + " after " +
          std::to_string(e->counterexample->probes) + " probes";
    }
    line(2, "mechanized falsification", ok, d);
  }

  // 3. Completeness machines.
  {
    auto nf = uw_normalize(fin_matrix());
    auto a = run_entry(unique_to_fin(catalog::potop_pieces()), "complete", options(100), "PO_top");
    auto b = run_entry(compose(normalization(catalog::fin(), nf), unique_to_fin(nf.family)), "complete",
                       options(100), "Fin");
    auto c = run_entry(increasing_to_bddseq(catalog::bounded_by()), "complete", options(100), "BddSeq_omega");
    auto neg = run_entry(increasing_to_bddseq(catalog::constant_pieces()), "complete", options(100), "Constant");
    Nat backward = 0;
    for (const auto& t : neg.records) backward += t.backward_failed;
    bool ok = all_pass(a) && all_pass(b) && all_pass(c) && backward > 0;
    line(3, "completeness machines", ok,
         counts(a) + ", " + counts(b) + ", " + counts(c) + ", negative control backward failures " +
             std::to_string(backward));
  }

  // 4. Demi-reductions.
  {
    auto a = run_entry(demi_to_fin(catalog::fin_pieces()), "demi", options(100), "Fin");
    auto b = run_entry(demi_to_fin(bddseq_matrix()), "demi", options(100), "BddSeq_omega");
    auto demi_ok = [](const EntryReport& e) {
      for (const auto& t : e.records) {
        if (!t.membership_ok() || t.backward_failed > 0 || t.forward_checked > 0) return false;
      }
      return all_pass(e);
    };
    line(4, "demi-reduction", demi_ok(a) && demi_ok(b), counts(a) + ", " + counts(b));
  }

  // 5. Algebra laws.
  {
    bool ok = true;
    std::string d;
    auto id = run_entry(identity(catalog::conv()), "laws", options(100));
    auto chain = run_entry(compose(R::conv_to_fin(), R::fin_to_qpre()), "laws", options(100));
    ok = all_pass(id) && all_pass(chain);
    d = counts(chain);
    for (Nat side = 0; side < 2; ++side) {
      auto inj = run_entry(inject(catalog::fin(), catalog::conv(), side), "laws", options(50),
                           side == 0 ? "Fin" : "Conv");
      ok = ok && all_pass(inj);
    }
    Nat weakened = 0;
    for (const auto& e : catalog_entries()) {
      if (e.reduction.status != Expectation::Sound) continue;
      auto w = run_entry(demi_weakening(e.reduction), "laws", options(50), e.reduction.source->id);
      if (!all_pass(w)) d += ", failing " + w.entry;
      ok = ok && all_pass(w);
      ++weakened;
    }
    line(5, "algebra laws", ok, d + ", " + std::to_string(weakened) + " demi weakenings");
  }

  // 6. Split Lemma.
  {
    const std::set<std::string> four{"halftruth_to_disconn", "truth_to_nondense", "truth_to_poatom", "truth_to_tr2"};
    bool ok = true;
    Nat checked = 0;
    Nat failed = 0;
    for (const auto& e : suite) {
      if (!four.count(e.entry)) continue;
      ok = ok && e.split_checked > 0;
      checked += e.split_checked;
      failed += e.split_failed;
    }
    // The all-zero instance directly, k up to 8.
    FamilySeqInstance zero;
    for (const auto& e : catalog_entries()) {
      if (!four.count(e.reduction.id)) continue;
      auto t = verify(e.reduction, zero);
      ok = ok && t.split_checked > 0;
      checked += t.split_checked;
      failed += t.split_failed;
    }
    ok = ok && failed == 0;
    line(6, "split lemma", ok, std::to_string(checked) + " checks, " + std::to_string(failed) + " failures");
  }

  // 7. Continuity.
  {
    Nat checked = 0;
    Nat failed = 0;
    Nat trials = 0;
    for (const auto& e : suite) {
      for (const auto& t : e.records) {
        if (!t.passed()) continue;
        ++trials;
        if (t.continuity_checked) {
          ++checked;
          failed += !t.continuity_ok;
        }
      }
    }
    bool ok = failed == 0 && checked * 10 >= trials - trials % 10 && checked > 0;
    line(7, "continuity", ok,
         std::to_string(checked) + " of " + std::to_string(trials) + " passing trials rerun, " +
             std::to_string(failed) + " differ");
  }

  // 8. Determinism, through files on disk.
  {
    auto dir = std::filesystem::temp_directory_path() / "levinlab-acceptance";
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string& name) {
      auto path = dir / name;
      std::ofstream(path, std::ios::binary) << report_lines(run_suite(catalog_entries(), options(200)));
      std::ifstream in(path, std::ios::binary);
      std::ostringstream s;
      s << in.rdbuf();
      return s.str();
    };
    auto a = write("a.jsonl");
    auto b = write("b.jsonl");
    bool ok = !a.empty() && a == b && a == report_lines(suite);
    line(8, "determinism", ok, std::to_string(a.size()) + " bytes per report");
    std::filesystem::remove_all(dir);
  }

  return failures == 0 ? 0 : 1;
}
