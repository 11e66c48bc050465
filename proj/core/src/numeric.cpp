#include "levinlab/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace levin {

namespace {

Nat checked_add(Nat a, Nat b) {
  Nat r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("pairing overflow");
  return r;
}

Nat checked_mul(Nat a, Nat b) {
  Nat r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("pairing overflow");
  return r;
}

}  // namespace

Nat pair(Nat a, Nat b) {
  Nat s = checked_add(a, b);
  Nat t = s % 2 == 0 ? checked_mul(s / 2, checked_add(s, 1)) : checked_mul(s, (s + 1) / 2);
  return checked_add(t, b);
}

std::pair<Nat, Nat> unpair(Nat code) {
  // w = floor((sqrt(8z+1)-1)/2), corrected for floating point error.
  auto w = static_cast<Nat>((std::sqrt(8.0L * static_cast<long double>(code) + 1.0L) - 1.0L) / 2.0L);
  auto tri = [](Nat k) {
    return static_cast<unsigned __int128>(k) * (k + 1) / 2;
  };
  while (tri(w) > code) --w;
  while (tri(w + 1) <= code) ++w;
  Nat b = code - static_cast<Nat>(tri(w));
  return {w - b, b};
}

Nat triple(Nat a, Nat b, Nat c) { return pair(a, pair(b, c)); }

Int floor(const Rational& q) {
  Int n = boost::multiprecision::numerator(q);
  Int d = boost::multiprecision::denominator(q);
  Int f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

Int ceil(const Rational& q) { return -floor(-q); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow2(long exponent) {
  Int one = 1;
  if (exponent >= 0) return Rational(one << static_cast<unsigned>(exponent));
  return Rational(one, Int(one << static_cast<unsigned>(-exponent)));
}

Nat two_adic_valuation(const Int& v) {
  if (v <= 0) throw std::invalid_argument("valuation of non-positive integer");
  return boost::multiprecision::lsb(v);
}

Nat zigzag(std::int64_t v) {
  return v >= 0 ? static_cast<Nat>(v) * 2 : static_cast<Nat>(-(v + 1)) * 2 + 1;
}

std::string to_string(const Rational& q) {
  auto d = boost::multiprecision::denominator(q);
  if (d == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + d.str();
}

void Fnv1a::add(std::string_view bytes) {
  for (unsigned char c : bytes) {
    state_ ^= c;
    state_ *= 1099511628211ull;
  }
}

void Fnv1a::add(Nat v) {
  for (int i = 0; i < 8; ++i) {
    state_ ^= (v >> (8 * i)) & 0xffu;
    state_ *= 1099511628211ull;
  }
}

Nat fingerprint(const Rational& q) {
  Fnv1a h;
  h.add(to_string(q));
  return h.value();
}

}  // namespace levin
