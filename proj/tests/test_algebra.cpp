#include "support.hpp"

using namespace t;
namespace R = levin::reductions;

namespace {

SuiteOptions small(Nat trials) {
  SuiteOptions o;
  o.trials = trials;
  o.seed = 9;
  return o;
}

}  // namespace

TEST_CASE("identity passes") {
  for (const auto& p : {catalog::fin(), catalog::conv(), catalog::potop()}) {
    auto rep = run_entry(identity(p), "laws", small(25));
    CHECK(rep.passed == rep.trials);
  }
}

TEST_CASE("composition Conv -> Fin -> Q_pre") {
  auto r = compose(R::conv_to_fin(), R::fin_to_qpre());
  CHECK(r.source->id == "Conv");
  CHECK(r.target->id == "Q_pre");
  auto x = make_seq({3, 3, 5}, ConstTail{5});
  // Differences [0,1,0,...]: the value 2^-1.
  CHECK(std::get<PreRealInstance>(r.phi.desc(x)).exact() == Rational(1, 2));
  auto w = fwd(r, {2}, x);
  CHECK(valid_witness(*r.target, r.phi.desc(x), w));
  CHECK(valid_witness(*r.source, x, bwd(r, w, x)));
  auto rep = run_entry(r, "laws", small(50));
  CHECK(rep.passed == rep.trials);
}

TEST_CASE("join injections and case split") {
  auto a = catalog::fin();
  auto b = catalog::conv();
  auto j = join(a, b);
  CHECK(j->arity == 2);
  for (Nat side = 0; side < 2; ++side) {
    auto inj = inject(a, b, side);
    auto rep = run_entry(inj, "laws", small(25), side == 0 ? "Fin" : "Conv");
    // The generator is keyed by the source problem, which differs by side.
    CHECK(rep.passed == rep.trials);
  }
  auto x = make_seq({1, 0}, ConstTail{0});
  auto inj = inject(a, b, 0);
  auto jx = inj.phi.desc(x);
  CHECK(membership_of(*j, jx));
  CHECK(valid_witness(*j, jx, fwd(inj, {1}, x)));

  // Conv + Fin -> Fin by cases, then back through the injections.
  auto split = case_split(R::conv_to_fin(), identity(catalog::fin()));
  CHECK(split.source->id == join(catalog::conv(), catalog::fin())->id);
  auto back = compose(inject(catalog::conv(), catalog::fin(), 0), split);
  CHECK(run_entry(back, "laws", small(25), "Conv").passed == 25);
  auto back1 = compose(inject(catalog::conv(), catalog::fin(), 1), split);
  CHECK(run_entry(back1, "laws", small(25), "Fin").passed == 25);
}

TEST_CASE("demi weakening keeps passing") {
  for (const auto& e : catalog_entries()) {
    if (e.reduction.status != Expectation::Sound) continue;
    auto d = demi_weakening(e.reduction);
    CHECK(d.demi());
    CHECK(d.id == e.reduction.id + "/demi");
    auto rep = run_entry(d, "laws", small(10), e.reduction.source->id);
    CAPTURE(d.id);
    CHECK(rep.passed == rep.trials);
  }
}

TEST_CASE("variant and schema mismatches") {
  auto r = R::conv_to_fin();
  PosetInstance p;
  CHECK_THROWS_AS(membership_of(*r.source, p), VariantMismatch);
  auto x = make_seq({}, ConstTail{0});
  CHECK_THROWS_AS(valid_witness(*r.source, x, {1, 2}), SchemaMismatch);
  auto t = verify(r, p);
  CHECK_FALSE(t.passed());
}
