#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace levin {

using Nat = std::uint64_t;
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Cantor pairing <a,b> = (a+b)(a+b+1)/2 + b. Throws std::overflow_error when
// the code does not fit in 64 bits.
Nat pair(Nat a, Nat b);
std::pair<Nat, Nat> unpair(Nat code);

// Iterated pairing <a,b,c> = <a,<b,c>>.
Nat triple(Nat a, Nat b, Nat c);

Int floor(const Rational& q);
Int ceil(const Rational& q);
Rational abs(const Rational& q);
Rational pow2(long exponent);  // 2^exponent, exponent may be negative

// 2-adic valuation of a positive integer.
Nat two_adic_valuation(const Int& v);

// Zig-zag coding of integers onto naturals: 0,-1,1,-2,2,... -> 0,1,2,3,4,...
Nat zigzag(std::int64_t v);

std::string to_string(const Rational& q);

// FNV-1a, used for instance digests and query-log value fingerprints.
class Fnv1a {
 public:
  void add(std::string_view bytes);
  void add(Nat v);
  Nat value() const { return state_; }

 private:
  Nat state_ = 14695981039346656037ull;
};

Nat fingerprint(const Rational& q);

}  // namespace levin
