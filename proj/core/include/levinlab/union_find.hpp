#pragma once

#include <map>

#include "levinlab/numeric.hpp"

namespace levin {

// Disjoint sets over sparse natural keys.
class UnionFind {
 public:
  Nat find(Nat x) {
    auto it = parent_.find(x);
    if (it == parent_.end()) {
      parent_.emplace(x, x);
      return x;
    }
    if (it->second == x) return x;
    Nat root = find(it->second);
    parent_[x] = root;
    return root;
  }

  void unite(Nat a, Nat b) {
    Nat ra = find(a);
    Nat rb = find(b);
    if (ra == rb) return;
    if (ra < rb) {
      parent_[rb] = ra;
    } else {
      parent_[ra] = rb;
    }
  }

  bool connected(Nat a, Nat b) { return find(a) == find(b); }

 private:
  std::map<Nat, Nat> parent_;
};

}  // namespace levin
