#include <set>

#include "support.hpp"

using namespace t;
namespace R = levin::reductions;

namespace {

SeqInstance spike_at(Nat p, Nat v = 1) {
  std::vector<Nat> prefix(p, 0);
  prefix.push_back(v);
  return make_seq(prefix, ConstTail{0});
}

FamilySeqInstance with_exception(Nat n, Nat p) {
  FamilySeqInstance f;
  f.exceptions[n] = spike_at(p);
  return f;
}

bool valid_target(const LevinReduction& r, const InstanceDescription& d, const Witness& w) {
  return valid_witness(*r.target, r.phi.desc(d), w);
}

bool valid_source(const LevinReduction& r, const InstanceDescription& d, const Witness& w) {
  return valid_witness(*r.source, d, w);
}

// Brute-force denominator prediction: n survives stage s iff some k in
// [-n, n] has |y - k/n| <= 2^-s.
std::vector<Nat> predictions(const PreRealInstance& x, Nat stages) {
  Rational b(static_cast<Int>(ceil(abs(x.approximation(0)))) + 2);
  Nat n = 1;
  std::vector<Nat> out;
  for (Nat s = 0; s < stages; ++s) {
    Rational y = x.approximation(s) / b;
    bool alive = false;
    for (long k = -static_cast<long>(n); k <= static_cast<long>(n) && !alive; ++k) {
      alive = abs(y - Rational(k, static_cast<long>(n))) <= pow2(-static_cast<long>(s));
    }
    if (!alive) ++n;
    out.push_back(n);
  }
  return out;
}

// m_s: the greatest among the elements a < s with [a <= a], if unique maximal.
std::optional<Nat> greatest_before(const PosetInstance& p, Nat s) {
  std::vector<Nat> arrived;
  for (Nat a = 0; a < s; ++a) {
    if (p.leq(a, a)) arrived.push_back(a);
  }
  for (Nat g : arrived) {
    bool top = true;
    for (Nat a : arrived) top = top && p.leq(a, g);
    if (top) return g;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("conv_to_fin: difference flags") {
  auto r = R::conv_to_fin();
  auto x = make_seq({3, 3, 5}, ConstTail{5});
  auto img = std::get<SeqInstance>(r.phi.desc(x));
  CHECK(same_prefix(img, make_seq({0, 1}, ConstTail{0}), 64));
  for (Nat s = 0; s < 64; ++s) CHECK(image_cell(r, x, s) == (x.value(s + 1) != x.value(s) ? 1u : 0u));
  CHECK(fwd(r, {2}, x) == Witness{2});
  CHECK(valid_target(r, x, {2}));

  auto c = make_seq({}, ConstTail{7});
  CHECK(std::get<SeqInstance>(r.phi.desc(c)).all_zero());
  CHECK(valid_target(r, c, fwd(r, {0}, c)));

  CHECK(bwd(r, {5}, x) == Witness{5});
  CHECK(valid_source(r, x, {5}));

  // Ramp differences are constantly 1: not eventually zero.
  auto ramp = make_seq({}, RampTail{});
  CHECK_FALSE(membership_of(*r.target, r.phi.desc(ramp)));
}

TEST_CASE("fin_to_qpre: sum of 2^-n^2 over the support") {
  auto r = R::fin_to_qpre();
  auto zero = make_seq({}, ConstTail{0});
  CHECK(std::get<PreRealInstance>(r.phi.desc(zero)).exact() == 0);
  CHECK(fwd(r, {0}, zero) == Witness{1, 0});

  auto one = make_seq({1}, ConstTail{0});
  auto w = fwd(r, {1}, one);
  CHECK(w == Witness{2, 2});
  CHECK(Rational(w[1], w[0]) == 1);
  CHECK(bwd(r, {1, 1}, one) == Witness{1});

  auto x = make_seq({0, 1, 1}, ConstTail{0});
  // 2^-1 + 2^-4
  CHECK(std::get<PreRealInstance>(r.phi.desc(x)).exact() == Rational(9, 16));
  CHECK(valid_target(r, x, fwd(r, {3}, x)));
  CHECK(valid_source(r, x, bwd(r, {16, 9}, x)));
}

TEST_CASE("qpre_to_conv: denominator prediction") {
  auto r = R::qpre_to_conv();
  PreRealInstance zero;
  CHECK(predictions(zero, 40) == std::vector<Nat>(40, 1));
  CHECK(fwd(r, {1, 0}, zero) == Witness{0});
  auto back = bwd(r, {0}, zero);
  CHECK(back[1] == 0);
  CHECK(valid_source(r, zero, back));

  PreRealInstance half;
  half.base = Rational(1, 2);
  CHECK(qpre_scale(half.approximation(0)) == 3);
  auto expect = predictions(half, 80);
  CHECK(expect.back() == 6);  // y = (1/2) / 3
  for (Nat s = 0; s < 80; ++s) CHECK(image_cell(r, half, s) == expect[s]);
  auto s = fwd(r, {2, 1}, half);
  CHECK(valid_target(r, half, s));
  auto mk = bwd(r, s, half);
  CHECK(Rational(mk[1], mk[0]) == Rational(1, 2));

  PreRealInstance irr;
  irr.support = make_seq({}, ConstTail{1});
  CHECK_FALSE(membership_of(*r.source, irr));
  CHECK_FALSE(membership_of(*r.target, r.phi.desc(irr)));
}

TEST_CASE("bddseq_to_potop: literal transcription") {
  auto r = R::bddseq_to_potop();
  CHECK(r.status == Expectation::Falsifiable);
  auto x = make_seq({2}, ConstTail{1});
  auto p = std::get<PosetInstance>(r.phi.desc(x));
  CHECK(p.core == std::set<Nat>{0});
  CHECK(fwd(r, {2}, x) == Witness{0});
  CHECK(valid_target(r, x, {0}));

  auto zero = make_seq({}, ConstTail{0});
  CHECK(fwd(r, {0}, zero) == Witness{0});
  CHECK(valid_target(r, zero, {0}));

  // Zeros, then 3 at stage 100: the bound 3 is answered from cells 0..3.
  std::vector<Nat> zeros(101, 0);
  auto base = make_seq(zeros, ConstTail{0});
  zeros[100] = 3;
  auto spike = make_seq(zeros, ConstTail{0});
  auto on_base = invoke(r.r_minus, {3}, base, 100000);
  auto on_spike = invoke(r.r_minus, {3}, spike, 100000);
  REQUIRE(on_spike.output);
  CHECK(on_base.output == on_spike.output);
  CHECK(on_spike.use <= 50);
  CHECK(valid_source(r, spike, {3}));
  CHECK_FALSE(valid_target(r, spike, *on_spike.output));
}

TEST_CASE("potop_to_bddseq: changes of the greatest element") {
  auto r = R::potop_to_bddseq();
  PosetInstance p;
  p.core = {3, 5};
  p.less = {{3, 5}};
  for (Nat s = 0; s < 40; ++s) {
    Nat expect = greatest_before(p, s + 1) != greatest_before(p, s) ? s : 0;
    CHECK(image_cell(r, p, s) == expect);
  }
  CHECK(image_cell(r, p, 3) == 3);
  CHECK(image_cell(r, p, 5) == 5);
  CHECK(fwd(r, {5}, p) == Witness{5});
  CHECK(valid_target(r, p, {5}));
  CHECK(bwd(r, {5}, p) == Witness{5});
  CHECK(greatest_before(p, 6) == Nat{5});

  PosetInstance single;
  single.core = {0};
  CHECK(image_cell(r, single, 0) == 0);
  CHECK(valid_target(r, single, fwd(r, {0}, single)));
  CHECK(bwd(r, {0}, single) == Witness{0});

  PosetInstance chain;
  chain.core = {0};
  chain.tail = ChainTail{4};
  CHECK_FALSE(membership_of(*r.source, chain));
  CHECK_FALSE(membership_of(*r.target, r.phi.desc(chain)));
}

TEST_CASE("disconn: subsets and functions") {
  auto to_sub = R::disconn_fun_to_sub();
  GraphInstance g;
  g.function_presentation = true;
  g.vertices = {1, 2, 3};
  g.edges = {TimedEdge{1, 2, 0, 0}};
  auto img = std::get<GraphInstance>(to_sub.phi.desc(g));
  Nat mid = 2 * cantor(1, cantor(2, 0)) + 1;
  std::set<std::pair<Nat, Nat>> edges;
  for (const auto& e : img.edges) edges.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  CHECK(edges == std::set<std::pair<Nat, Nat>>{{2, mid}, {4, mid}});
  for (Nat c = 0; c < 400; ++c) {
    CAPTURE(c);
    CHECK(image_cell(to_sub, g, c) == stream_of(img)->nat(c));
  }

  CHECK(valid_source(to_sub, g, {1, 3}));
  CHECK(fwd(to_sub, {1, 3}, g) == Witness{2, 6});
  CHECK(valid_target(to_sub, g, {2, 6}));
  CHECK(bwd(to_sub, {2, 6}, g) == Witness{1, 3});
  CHECK(bwd(to_sub, {Int(mid), 6}, g) == Witness{1, 3});

  GraphInstance empty;
  empty.function_presentation = true;
  empty.vertices = {0, 1, 2};
  for (Nat a = 0; a < 3; ++a) {
    for (Nat b = 0; b < 3; ++b) {
      if (a == b) continue;
      Witness w{Int(a), Int(b)};
      CHECK(bwd(to_sub, fwd(to_sub, w, empty), empty) == w);
    }
  }

  auto to_fun = R::disconn_sub_to_fun();
  GraphInstance s;
  s.vertices = {0, 1, 2};
  s.edges = {TimedEdge{0, 1, 3, cantor(0, 1)}};
  CHECK(image_cell(to_fun, s, 2 * cantor(0, 1) + 1) == 1 + cantor(0, 1));
  CHECK(fwd(to_fun, {0, 2}, s) == Witness{0, 2});
  CHECK(valid_target(to_fun, s, {0, 2}));
}

TEST_CASE("orbits and graphs") {
  auto r = R::orbit_to_disconnfun();
  ActionInstance a;
  a.carrier = {0, 1, 2};
  a.generators[0] = {{0, 1}, {1, 0}};
  auto img = ActionGraphInstance{a};
  CHECK(valid_source(r, a, {0, 2}));
  CHECK(fwd(r, {0, 2}, a) == Witness{0, 2});
  CHECK(valid_target(r, a, {0, 2}));
  CHECK_FALSE(valid_target(r, a, {0, 1}));
  // The letter for generator 0 is 0; edge <g,a> = <code(0), 0> joins 0 and 1.
  Nat e = cantor(free_group::encode({0}), 0);
  CHECK(image_cell(r, a, 2 * e + 1) == 1 + cantor(0, 1));
  (void)img;

  auto back = R::disconnfun_to_orbit();
  GraphInstance g;
  g.function_presentation = true;
  g.vertices = {0, 1, 2};
  g.edges = {TimedEdge{1, 2, 0, 7}};
  auto act = std::get<ActionInstance>(back.phi.desc(g));
  Nat word = free_group::encode({14});  // letter 2*7: generator 7
  CHECK(act.act(word, 1) == Nat{2});
  CHECK(act.act(word, 2) == Nat{1});
  CHECK(act.act(word, 0) == Nat{0});
  CHECK(image_cell(back, g, cantor(word, 1)) == 3);
  CHECK(fwd(back, {0, 1}, g) == Witness{0, 1});
  CHECK(valid_target(back, g, {0, 1}));

  ActionInstance trivial;
  trivial.carrier = {0, 1, 2};
  for (Nat x = 0; x < 3; ++x) {
    for (Nat y = 0; y < 3; ++y) {
      if (x == y) continue;
      Witness w{Int(x), Int(y)};
      CHECK(valid_source(r, trivial, w));
      CHECK(valid_target(r, trivial, fwd(r, w, trivial)));
    }
  }
}

TEST_CASE("halftruth_to_disconn") {
  auto r = R::halftruth_to_disconn();
  auto f = with_exception(0, 3);
  CHECK(fwd(r, {0, 1}, f) == Witness{Int(1 + cantor(0, 0)), Int(1 + cantor(1, 0))});
  CHECK(valid_target(r, f, fwd(r, {0, 1}, f)));
  CHECK(fwd(r, {1, 1}, f) == Witness{Int(1 + cantor(1, 0)), 0});
  CHECK(valid_target(r, f, fwd(r, {1, 1}, f)));
  CHECK(bwd(r, {Int(1 + cantor(2, 5)), 0}, f) == Witness{2, 2});
  // Column 0 is cut: its path reaches the hub.
  CHECK_FALSE(valid_target(r, f, {Int(1 + cantor(0, 0)), 0}));
}

TEST_CASE("truth_to_nondense") {
  auto r = R::truth_to_nondense();
  auto f = with_exception(0, 2);
  CHECK(fwd(r, {1}, f) == Witness{Int(cantor(1, 0)), Int(cantor(2, 0))});
  CHECK(valid_target(r, f, fwd(r, {1}, f)));
  CHECK(bwd(r, fwd(r, {1}, f), f) == Witness{1});
  CHECK_FALSE(valid_target(r, f, {Int(cantor(0, 0)), Int(cantor(1, 0))}));

  FamilySeqInstance zero;
  CHECK(fwd(r, {0}, zero) == Witness{Int(cantor(0, 0)), Int(cantor(1, 0))});
  for (Nat k = 0; k <= 8; ++k) CHECK(split_check(r, zero, {Int(k)}, 1'000'000) == true);
}

TEST_CASE("truth_to_poatom") {
  auto r = R::truth_to_poatom();
  FamilySeqInstance zero;
  CHECK(fwd(r, {2}, zero) == Witness{Int(1 + cantor(2, 0))});
  CHECK(valid_target(r, zero, {Int(1 + cantor(2, 0))}));
  auto f = with_exception(1, 4);
  CHECK_FALSE(valid_target(r, f, {Int(1 + cantor(1, 0))}));
  CHECK(valid_target(r, f, fwd(r, {0}, f)));
  CHECK(bwd(r, {Int(1 + cantor(3, 0))}, f) == Witness{3});
}

TEST_CASE("truth_to_tr2") {
  auto r = R::truth_to_tr2();
  FamilySeqInstance zero;
  CHECK(fwd(r, {0}, zero) == Witness{Int(string_code("0")), Int(string_code("1"))});
  CHECK(valid_target(r, zero, fwd(r, {0}, zero)));
  CHECK(bwd(r, fwd(r, {0}, zero), zero) == Witness{0});

  auto f = with_exception(0, 2);
  auto tree = std::get<TreeInstance>(r.phi.desc(f));
  CHECK(tree.contains(string_code("11")));
  CHECK_FALSE(tree.contains(string_code("111")));
  CHECK(tree.contains(string_code("01111")));
  CHECK(fwd(r, {1}, f) == Witness{Int(string_code("00")), Int(string_code("01"))});
  CHECK(bwd(r, {Int(string_code("000")), Int(string_code("001"))}, f) == Witness{2});
}

TEST_CASE("bounded sequence equivalences") {
  auto wq = R::bddseq_omega_to_q();
  auto x = make_seq({2}, ConstTail{1});
  auto q = fwd(wq, {2}, x);
  CHECK(Rational(q[1], q[0]) == 2);
  CHECK(valid_target(wq, x, q));
  CHECK(bwd(wq, q, x) == Witness{2});

  auto rw = R::bddseq_r_to_omega();
  RatSeqInstance rs;
  rs.real = true;
  rs.jitter_length = 3;
  rs.prefix = {Rational(12, 5)};
  rs.tail = {Rational(1)};
  // Real bound 5/2: the nearest integer 3, so 4.
  auto c = fwd(rw, {2, 5}, rs);
  CHECK(c == Witness{4});
  CHECK(valid_target(rw, rs, c));

  auto ramp = make_seq({}, RampTail{});
  CHECK_FALSE(membership_of(*wq.target, wq.phi.desc(ramp)));
}

TEST_CASE("catalog lookup") {
  CHECK(catalog_entries().size() == 16);
  CHECK(select_entries("bddseq_family_equivalences").size() == 3);
  CHECK(find_reduction("conv_to_fin").has_value());
  CHECK_FALSE(find_reduction("nope").has_value());
}
