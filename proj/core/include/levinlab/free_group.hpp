#pragma once

#include <map>
#include <optional>
#include <vector>

#include "levinlab/numeric.hpp"

namespace levin::free_group {

// Letter 2i is generator i, letter 2i+1 its inverse. A word is a list of
// letters read left to right; as a group element it acts right to left.
using Word = std::vector<Nat>;

inline Nat inverse_letter(Nat letter) { return letter ^ 1u; }
inline Nat generator_of(Nat letter) { return letter / 2; }

bool is_reduced(const Word& w);
Word reduce(Word w);
Word multiply(const Word& a, const Word& b);  // concatenate and reduce
Word inverse(const Word& w);                  // reverse and invert letters

// Bijective list coding: code([]) = 0, code(l::rest) = 1 + <l, code(rest)>.
Nat encode(const Word& w);
Word decode(Nat code);

// A permutation of a finite carrier, stored as a map; missing points are fixed.
using Permutation = std::map<Nat, Nat>;

Nat apply(const Permutation& p, Nat a);
Nat apply_inverse(const Permutation& p, Nat a);

// Action of a word when generator i acts by generators.at(i). Returns nullopt
// when the word mentions a generator that is not present.
std::optional<Nat> act(const std::map<Nat, Permutation>& generators, const Word& w, Nat a);

}  // namespace levin::free_group
