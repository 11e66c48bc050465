#include "support.hpp"

using namespace t;
namespace R = levin::reductions;

namespace {

SuiteOptions opts(Nat trials, std::uint64_t seed) {
  SuiteOptions o;
  o.trials = trials;
  o.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("rng is deterministic") {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    auto x = a.next();
    CHECK(x == b.next());
    differs = differs || x != c.next();
  }
  CHECK(differs);
  Rng r(7);
  for (int i = 0; i < 1000; ++i) CHECK(r.below(5) < 5);
}

TEST_CASE("generators hit the intended polarity") {
  for (const auto& p : catalog::problems()) {
    for (const auto& v : generatable_variants(p->id)) {
      CAPTURE(p->id);
      CAPTURE(v);
      auto profile = profile_for(p->id, v, 3);
      Nat non = 0;
      for (Nat k = 0; k < 200; ++k) {
        auto d = generate(profile, k);
        bool member = membership_of(*p, d);
        CHECK(member == !non_member_slot(profile, k));
        non += !member;
        CHECK(instance_digest(d) == instance_digest(generate(profile, k)));
      }
      CHECK(non * 4 >= 200);
      CHECK(non < 200);
    }
  }
}

TEST_CASE("constant generator polarity") {
  auto profile = profile_for("Constant", "seq", 3);
  auto pieces = catalog::constant_pieces();
  for (Nat k = 0; k < 200; ++k) {
    auto d = generate(profile, k);
    CHECK(pieces.least(d).has_value() == !non_member_slot(profile, k));
  }
}

TEST_CASE("reports are byte-identical across runs") {
  std::vector<CatalogEntry> few;
  for (const auto& e : catalog_entries()) {
    if (few.size() < 4) few.push_back(e);
  }
  auto a = report_lines(run_suite(few, opts(20, 77)));
  auto b = report_lines(run_suite(few, opts(20, 77)));
  CHECK(a == b);
  CHECK(a != report_lines(run_suite(few, opts(20, 78))));
  // Every line parses; summaries come last.
  std::istringstream in(a);
  std::string line, last;
  Nat n = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    last = line;
    ++n;
  }
  CHECK(n == 4 * 20 + 4);
  CHECK(nlohmann::json::parse(last).contains("summary"));
}

TEST_CASE("adversary finds the non-continuous transcription") {
  auto r = R::bddseq_to_potop();
  auto c = adversary_search(r, spike_family(50, 101, 3), 16, 1000);
  REQUIRE(c.has_value());
  CHECK(c->kind == "adversary");
  CHECK(c->probes <= 1000);

  // Replay from the recorded fields alone.
  auto ext = from_json(c->instance);
  auto w = parse_witness(c->witness);
  REQUIRE(w.has_value());
  CHECK(valid_witness(*r.source, ext, *w));
  auto out = fwd(r, *w, ext);
  CHECK(to_string(out) == c->output);
  CHECK_FALSE(valid_witness(*r.target, r.phi.desc(ext), out));
  auto base = from_json(c->base);
  CHECK(same_prefix(std::get<SeqInstance>(base), std::get<SeqInstance>(ext), c->fork));
  CHECK_FALSE(verify(r, ext).passed());

  // The catalog entry reports it and its verdict matches the expectation.
  auto rep = run_entry(r, "adversary", opts(20, 1));
  CHECK(rep.verdict() == "counterexample");
  CHECK(rep.matched());
}

TEST_CASE("adversary finds nothing on sound entries") {
  CHECK_FALSE(adversary_search(R::potop_to_bddseq(), late_top_family(50, 101), 16, 1000).has_value());
  CHECK_FALSE(adversary_search(R::conv_to_fin(), spike_family(50, 101, 3), 16, 1000).has_value());
  CHECK_FALSE(adversary_search(identity(catalog::bddseq()), spike_family(50, 101, 3), 16, 1000).has_value());
}

TEST_CASE("sound entries match and count their checks") {
  auto rep = run_entry(R::conv_to_fin(), "g", opts(30, 2));
  CHECK(rep.verdict() == "pass");
  CHECK(rep.matched());
  CHECK(rep.continuity_checked == 3);
  CHECK(rep.continuity_failed == 0);
  CHECK(rep.divergences == 0);
  auto j = entry_summary_json(rep);
  CHECK(j["summary"] == rep.entry);
  CHECK(j["verdict"] == "pass");
}
