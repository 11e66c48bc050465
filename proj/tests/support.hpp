#pragma once

#include <limits>
#include <string>

#include <doctest.h>

#include "levinlab/catalog.hpp"
#include "levinlab/generic.hpp"
#include "levinlab/harness.hpp"
#include "levinlab/paper_reductions.hpp"
#include "levinlab/reduction.hpp"
#include "levinlab/serialize.hpp"

namespace t {

using namespace levin;

// Oracles kept independent of the library's own coding functions.
inline Nat cantor(Nat a, Nat b) { return (a + b) * (a + b + 1) / 2 + b; }
inline Nat string_code(const std::string& bits) {
  Nat c = 1;
  for (char ch : bits) c = 2 * c + (ch == '1');
  return c;
}

inline Handle handle_of(const InstanceDescription& d) {
  return open(stream_of(d), std::make_shared<Budget>(std::numeric_limits<Nat>::max()));
}

inline Witness run_map(const WitnessMap& m, const Witness& w, const InstanceDescription& d) {
  auto inv = invoke(m, w, d, 1'000'000);
  INFO("witness map error: " << inv.error);
  REQUIRE(inv.output.has_value());
  return *inv.output;
}

inline Witness fwd(const LevinReduction& r, const Witness& w, const InstanceDescription& d) {
  return run_map(r.r_minus, w, d);
}
inline Witness bwd(const LevinReduction& r, const Witness& w, const InstanceDescription& d) {
  return run_map(r.r_plus, w, d);
}

// Cell i of the stream image of d.
inline Nat image_cell(const LevinReduction& r, const InstanceDescription& d, Nat i) {
  auto src = handle_of(d);
  auto img = open(r.phi.stream(src), src->budget());
  return img->query(i);
}

inline bool same_prefix(const SeqInstance& a, const SeqInstance& b, Nat n) {
  for (Nat i = 0; i < n; ++i) {
    if (a.value(i) != b.value(i)) return false;
  }
  return true;
}

inline VerifyOptions quick() {
  VerifyOptions o;
  o.horizon = 256;
  o.bound = 16;
  return o;
}

}  // namespace t
