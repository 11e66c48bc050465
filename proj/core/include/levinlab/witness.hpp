#pragma once

#include <compare>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levinlab/numeric.hpp"

namespace levin {

// A finite witness token: a tuple of integers. Most schemas use naturals;
// the pre-rational schema carries a signed numerator.
struct Witness {
  std::vector<Int> parts;

  Witness() = default;
  Witness(std::initializer_list<Int> init) : parts(init) {}
  explicit Witness(std::vector<Int> p) : parts(std::move(p)) {}

  std::size_t size() const { return parts.size(); }
  const Int& operator[](std::size_t i) const { return parts.at(i); }

  // Component i as a natural; nullopt when negative or wider than 64 bits.
  std::optional<Nat> nat(std::size_t i) const;

  // Largest absolute value among the components.
  Int magnitude() const;

  Witness slice(std::size_t from, std::size_t count) const;
  Witness concat(const Witness& other) const;

  friend bool operator==(const Witness&, const Witness&) = default;
  friend std::strong_ordering operator<=>(const Witness& a, const Witness& b);
};

// Bracketed tuple, e.g. "[1,2]".
std::string to_string(const Witness& w);

// Accepts "[1,2]", "(1,2)", "1,2" or "3". Returns nullopt on malformed input.
std::optional<Witness> parse_witness(std::string_view text);

}  // namespace levin
