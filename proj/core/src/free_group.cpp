#include "levinlab/free_group.hpp"

#include <algorithm>

namespace levin::free_group {

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == inverse_letter(w[i - 1])) return false;
  }
  return true;
}

Word reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (Nat l : w) {
    if (!out.empty() && out.back() == inverse_letter(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word multiply(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return reduce(std::move(w));
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = inverse_letter(l);
  return out;
}

Nat encode(const Word& w) {
  Nat code = 0;
  for (auto it = w.rbegin(); it != w.rend(); ++it) code = 1 + pair(*it, code);
  return code;
}

Word decode(Nat code) {
  Word w;
  while (code != 0) {
    auto [letter, rest] = unpair(code - 1);
    w.push_back(letter);
    code = rest;
  }
  return w;
}

Nat apply(const Permutation& p, Nat a) {
  auto it = p.find(a);
  return it == p.end() ? a : it->second;
}

Nat apply_inverse(const Permutation& p, Nat a) {
  for (const auto& [from, to] : p) {
    if (to == a) return from;
  }
  return a;
}

std::optional<Nat> act(const std::map<Nat, Permutation>& generators, const Word& w, Nat a) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    auto g = generators.find(generator_of(*it));
    if (g == generators.end()) return std::nullopt;
    a = (*it % 2 == 0) ? apply(g->second, a) : apply_inverse(g->second, a);
  }
  return a;
}

}  // namespace levin::free_group
