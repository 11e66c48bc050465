#include <queue>

#include "support.hpp"

using namespace t;

TEST_CASE("pairing") {
  for (Nat a = 0; a < 40; ++a) {
    for (Nat b = 0; b < 40; ++b) {
      CHECK(pair(a, b) == cantor(a, b));
      CHECK(unpair(pair(a, b)) == std::pair<Nat, Nat>{a, b});
    }
  }
  for (Nat c = 0; c < 2000; ++c) CHECK(pair(unpair(c).first, unpair(c).second) == c);
  CHECK(triple(1, 2, 0) == cantor(1, cantor(2, 0)));
}

TEST_CASE("rational helpers") {
  CHECK(floor(Rational(-3, 2)) == -2);
  CHECK(ceil(Rational(-3, 2)) == -1);
  CHECK(floor(Rational(7, 7)) == 1);
  CHECK(ceil(Rational(1, 3)) == 1);
  CHECK(pow2(-3) == Rational(1, 8));
  CHECK(pow2(4) == 16);
  CHECK(two_adic_valuation(Int(48)) == 4);
  CHECK(two_adic_valuation(Int(1)) == 0);
  CHECK(to_string(Rational(-6, 4)) == "-3/2");
  CHECK(fingerprint(Rational(1, 2)) == fingerprint(Rational(2, 4)));
  CHECK(fingerprint(Rational(1, 2)) != fingerprint(Rational(1, 3)));
}

TEST_CASE("witness tokens") {
  Witness w{1, 2};
  CHECK(to_string(w) == "[1,2]");
  CHECK(parse_witness("[1,2]") == w);
  CHECK(parse_witness("(1,2)") == w);
  CHECK(parse_witness("1,2") == w);
  CHECK(parse_witness("3") == Witness{3});
  CHECK(parse_witness("[-4,9]") == Witness{-4, 9});
  CHECK_FALSE(parse_witness("[1,").has_value());
  CHECK_FALSE(parse_witness("x").has_value());
  CHECK(w.concat({5}) == Witness{1, 2, 5});
  CHECK(Witness{1, 2, 5}.slice(1, 2) == Witness{2, 5});
  CHECK_FALSE(Witness{-1}.nat(0).has_value());
  CHECK(Witness{1, 2} < Witness{1, 3});
}

TEST_CASE("stream handles log and charge") {
  auto src = std::make_shared<FunctionSource>([](Nat i) { return i * i; });
  auto h = open(src, std::make_shared<Budget>(5));
  CHECK(h->query(3) == 9);
  CHECK(h->query(1) == 1);
  CHECK(h->use() == 4);
  CHECK(h->log().size() == 2);
  CHECK(h->log()[0] == QueryRecord{3, 9});
  h->query(0);
  h->query(0);
  h->query(0);
  CHECK_THROWS_AS(h->query(0), Divergence);

  auto base = open(src, std::make_shared<Budget>(100));
  auto off = open(std::make_shared<OffsetSource>(base, 2), base->budget());
  CHECK(off->query(1) == 9);
  CHECK(base->log().back().index == 3);

  auto rat = open(std::make_shared<RationalFunctionSource>([](Nat i) { return Rational(1, Int(i + 1)); }),
                  std::make_shared<Budget>(10));
  CHECK(rat->rational());
  CHECK(rat->query_rational(2) == Rational(1, 3));
  CHECK(rat->log().back().value == fingerprint(Rational(1, 3)));
}

TEST_CASE("free group words") {
  using namespace free_group;
  Word w{0, 1, 2};
  CHECK_FALSE(is_reduced(w));
  CHECK(reduce(w) == Word{2});
  CHECK(multiply({2, 4}, inverse({2, 4})).empty());
  for (Nat c = 0; c < 500; ++c) CHECK(encode(decode(c)) == c);
  CHECK(decode(0).empty());

  std::map<Nat, Permutation> gens{{0, {{0, 1}, {1, 2}, {2, 0}}}};
  CHECK(act(gens, {0}, 0) == Nat{1});
  CHECK(act(gens, {1}, 0) == Nat{2});  // inverse letter
  CHECK(act(gens, {0, 0}, 0) == Nat{2});
  CHECK_FALSE(act(gens, {2}, 0).has_value());  // generator 1 missing
}
