#include <queue>

#include "support.hpp"

using namespace t;

namespace {

const std::vector<std::pair<std::string, std::string>> kProfiles{
    {"Fin", "seq"},           {"Conv", "seq"},
    {"BddSeq_omega", "seq"},  {"Q_pre", "prereal"},
    {"PO_top", "poset"},      {"DisConn", "graph"},
    {"DisConn", "column_graph"}, {"DisConn_fun", "graph_fun"},
    {"DisConn_fun", "action_graph"}, {"Orbit_ge2", "action"},
    {"HalfTruth", "family"},  {"Truth", "family"},
    {"NonDense", "column_linear_order"}, {"PO_atom", "column_bottomed_order"},
    {"Tr2_ge2", "tree"},      {"BddSeq_Q", "ratseq"},
    {"BddSeq_R", "realseq"},
};

// Components by breadth-first search over the edge list.
std::map<Nat, Nat> bfs_components(const GraphInstance& g) {
  std::map<Nat, std::vector<Nat>> adj;
  for (const auto& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::map<Nat, Nat> comp;
  for (Nat v : g.vertices) {
    if (comp.count(v)) continue;
    std::queue<Nat> q;
    q.push(v);
    comp[v] = v;
    while (!q.empty()) {
      Nat u = q.front();
      q.pop();
      for (Nat w : adj[u]) {
        if (!comp.count(w)) {
          comp[w] = v;
          q.push(w);
        }
      }
    }
  }
  return comp;
}

std::set<Nat> orbit_of(const ActionInstance& a, Nat x) {
  std::set<Nat> seen{x};
  std::queue<Nat> q;
  q.push(x);
  while (!q.empty()) {
    Nat u = q.front();
    q.pop();
    for (const auto& [id, perm] : a.generators) {
      auto it = perm.find(u);
      Nat v = it == perm.end() ? u : it->second;
      if (seen.insert(v).second) q.push(v);
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("sequence oracles") {
  auto x = make_seq({4, 0, 2, 0}, ConstTail{0});
  CHECK(x.zero_from() == Nat{3});
  CHECK(x.stable_from() == Nat{3});
  CHECK(x.sup() == Nat{4});
  CHECK(x.first_nonzero() == Nat{0});
  auto p = make_seq({1}, PeriodicTail{{2, 3}});
  CHECK(p.value(1) == 2);
  CHECK(p.value(4) == 3);
  CHECK_FALSE(p.zero_from());
  CHECK_FALSE(p.stable_from());
  CHECK(p.sup() == Nat{3});
  auto r = make_seq({7}, RampTail{});
  CHECK(r.value(10) == 10);
  CHECK_FALSE(r.sup());
}

TEST_CASE("membership oracles agree with brute force") {
  auto graphs = profile_for("DisConn", "graph", 21);
  for (Nat k = 0; k < 60; ++k) {
    auto g = std::get<GraphInstance>(generate(graphs, k));
    auto comp = bfs_components(g);
    std::set<Nat> roots;
    for (auto& [v, c] : comp) roots.insert(c);
    CHECK(membership_of(*catalog::disconn(), g) == (roots.size() >= 2));
    for (Nat a : g.vertices) {
      for (Nat b : g.vertices) CHECK(g.connected(a, b) == (comp[a] == comp[b]));
    }
    CHECK(non_member_slot(graphs, k) == (roots.size() < 2));
  }
  auto actions = profile_for("Orbit_ge2", "action", 21);
  for (Nat k = 0; k < 60; ++k) {
    auto a = std::get<ActionInstance>(generate(actions, k));
    Nat x = *a.carrier.begin();
    bool two = orbit_of(a, x).size() < a.carrier.size();
    CHECK(membership_of(*catalog::orbit(), a) == two);
    for (Nat y : a.carrier) CHECK(a.same_orbit(x, y) == (orbit_of(a, x).count(y) > 0));
  }
  auto posets = profile_for("PO_top", "poset", 21);
  for (Nat k = 0; k < 60; ++k) {
    auto p = std::get<PosetInstance>(generate(posets, k));
    std::optional<Nat> top;
    if (std::holds_alternative<NoTail>(p.tail) || std::holds_alternative<BelowTail>(p.tail)) {
      for (Nat g : p.core) {
        bool all = true;
        for (Nat a = 0; a < 200; ++a) all = all && (!p.contains(a) || p.leq(a, g));
        if (all) top = g;
      }
    }
    CHECK(p.greatest() == top);
  }
}

TEST_CASE("pre-real approximations") {
  auto profile = profile_for("Q_pre", "prereal", 4);
  for (Nat k = 0; k < 40; ++k) {
    auto x = std::get<PreRealInstance>(generate(profile, k));
    if (!x.rational()) continue;
    for (Nat n = 0; n < 30; ++n) CHECK(abs(x.approximation(n) - x.exact()) <= pow2(-static_cast<long>(n)));
  }
}

TEST_CASE("trees from families") {
  FamilySeqInstance zero;
  auto t = std::get<TreeInstance>(reductions::truth_to_tr2().phi.desc(zero));
  CHECK(t.paths_capped() == 2);
  FamilySeqInstance none;
  none.fallback = NonZeroAtDefault{3};
  auto u = std::get<TreeInstance>(reductions::truth_to_tr2().phi.desc(none));
  CHECK(u.paths_capped() == 1);
  CHECK(u.contains(string_code("0111")));
  CHECK_FALSE(u.contains(string_code("01111")));
}

TEST_CASE("watchers agree with their oracles") {
  struct Case {
    Pi01Family family;
    std::string problem;
    std::string variant;
  };
  std::vector<Case> cases{
      {catalog::fin_pieces(), "Fin", "seq"},
      {catalog::bounded_by(), "BddSeq_omega", "seq"},
      {catalog::potop_pieces(), "PO_top", "poset"},
      {catalog::truth_columns(), "Truth", "family"},
      {catalog::constant_pieces(), "Constant", "seq"},
      {bddseq_matrix(), "BddSeq_omega", "seq"},
      {uw_normalize(fin_matrix()).family, "Fin", "seq"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.family.id);
    auto profile = profile_for(c.problem, c.variant, 8);
    for (Nat k = 0; k < 30; ++k) {
      auto d = generate(profile, k);
      Nat holding = 0;
      std::optional<Nat> least;
      for (Nat n = 0; n < 14; ++n) {
        auto h = handle_of(d);
        bool holds = c.family.holds(n, d);
        auto refuted = watch(c.family.at(n), *h, 300);
        CHECK(holds == !refuted.has_value());
        if (holds) {
          ++holding;
          if (!least) least = n;
        }
        if (c.family.increasing && n > 0 && c.family.holds(n - 1, d)) CHECK(holds);
      }
      if (c.family.disjoint) CHECK(holding <= 1);
      if (least) CHECK(c.family.least(d) == least);
    }
  }
}

TEST_CASE("witness enumeration") {
  auto x = make_seq({1, 0, 2}, ConstTail{0});
  auto ws = witnesses_upto(*catalog::fin(), x, 6);
  CHECK(ws == std::vector<Witness>{{3}, {4}, {5}, {6}});
  auto q = witnesses_upto(*catalog::qpre(), PreRealInstance{Rational(1, 2)}, 4);
  for (const auto& w : q) CHECK(Rational(w[1], w[0]) == Rational(1, 2));
  CHECK(q.size() == 2);  // (2,1), (4,2)
  CHECK(natural_tuples(2, 2).size() == 9);
}

TEST_CASE("instance files round-trip") {
  for (const auto& [problem, variant] : kProfiles) {
    auto profile = profile_for(problem, variant, 13);
    for (Nat k = 0; k < 20; ++k) {
      CAPTURE(problem);
      CAPTURE(variant);
      auto d = generate(profile, k);
      CHECK(variant_name(d) == variant);
      CHECK(catalog::find_problem(problem)->accepts(d));
      InstanceFile f{1, problem, d};
      auto text = write_instance_file(f);
      auto back = read_instance_file(text);
      CHECK(back.problem == problem);
      CHECK(write_instance_file(back) == text);
      CHECK(instance_digest(back.instance) == instance_digest(d));
      CHECK(membership_of(*catalog::find_problem(problem), back.instance) ==
            membership_of(*catalog::find_problem(problem), d));
    }
  }
}

TEST_CASE("instance files are strict") {
  auto ok = R"({"format":1,"problem":"Fin","instance":{"variant":"seq","prefix":[1],"tail":{"kind":"const","value":0}}})";
  CHECK(std::get<SeqInstance>(read_instance_file(ok).instance).value(0) == 1);
  CHECK_THROWS_AS(read_instance_file(R"({"format":1,"problem":"Fin","instance":{"variant":"seq","prefix":[1],"tail":{"kind":"const","value":0},"extra":1}})"), FormatError);
  CHECK_THROWS_AS(read_instance_file(R"({"format":1,"problem":"Fin","instance":{"variant":"seq","prefix":[1]}})"), FormatError);
  CHECK_THROWS_AS(read_instance_file(R"({"format":2,"problem":"Fin","instance":{"variant":"seq","prefix":[],"tail":{"kind":"ramp"}}})"), FormatError);
  CHECK_THROWS_AS(read_instance_file("not json"), FormatError);
  // A loop and a non-bijective generator.
  CHECK_THROWS_AS(from_json(nlohmann::json::parse(R"({"variant":"graph","vertices":[0,1],"edges":[{"u":1,"v":1,"stage":0}]})")), FormatError);
  CHECK_THROWS_AS(from_json(nlohmann::json::parse(R"({"variant":"action","carrier":[0,1],"generators":[{"id":0,"map":[[0,1],[1,1]]}]})")), FormatError);

  // Images of non-members carry computed parts: printable, not readable.
  auto img = reductions::qpre_to_conv().phi.desc(PreRealInstance{0, make_seq({}, ConstTail{1})});
  CHECK_FALSE(serializable(img));
  CHECK_THROWS_AS(from_json(to_json(img)), FormatError);
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
}
