#include "levinlab/serialize.hpp"

#include <initializer_list>

#include "levinlab/reduction.hpp"

namespace levin {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---------------------------------------------------------------------------
// writing

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

json seq_json(const SeqInstance& s) {
  json tail = std::visit(overloaded{
                             [](const ConstTail& c) { return json{{"kind", "const"}, {"value", c.value}}; },
                             [](const PeriodicTail& p) { return json{{"kind", "periodic"}, {"word", p.word}}; },
                             [](const RampTail&) { return json{{"kind", "ramp"}}; },
                             [](const std::shared_ptr<const DivergentTail>& d) {
                               json j{{"kind", "computed"}, {"label", d->label}};
                               j["sup"] = d->sup ? json(*d->sup) : json(nullptr);
                               return j;
                             },
                         },
                         s.tail);
  return json{{"prefix", s.prefix}, {"tail", tail}};
}

json family_json(const FamilySeqInstance& f) {
  json exceptions = json::array();
  for (const auto& [n, s] : f.exceptions) exceptions.push_back(json{{"index", n}, {"column", seq_json(s)}});
  json fallback = std::visit(
      overloaded{
          [](const AllZeroDefault&) { return json{{"kind", "all_zero"}}; },
          [](const NonZeroAtDefault& d) { return json{{"kind", "nonzero_at"}, {"position", d.position}}; },
          [](const std::shared_ptr<const GeneratedColumns>& g) { return json{{"kind", "computed"}, {"label", g->label}}; },
      },
      f.fallback);
  return json{{"exceptions", exceptions}, {"default", fallback}};
}

json action_json(const ActionInstance& a) {
  json gens = json::array();
  for (const auto& [id, perm] : a.generators) {
    json map = json::array();
    for (const auto& [from, to] : perm) map.push_back(json::array({from, to}));
    gens.push_back(json{{"id", id}, {"map", map}});
  }
  return json{{"carrier", a.carrier}, {"generators", gens}};
}

json optional_nat(const std::optional<Nat>& v) { return v ? json(*v) : json(nullptr); }

json body(const InstanceDescription& d) {
  return std::visit(
      overloaded{
          [](const SeqInstance& s) { return seq_json(s); },
          [](const FamilySeqInstance& f) { return family_json(f); },
          [](const PreRealInstance& p) {
            return json{{"base", to_string(p.base)},
                        {"support", seq_json(p.support)},
                        {"jitter_length", p.jitter_length},
                        {"jitter_sign", p.jitter_sign}};
          },
          [](const RatSeqInstance& r) {
            const char* kind = r.tail_kind == RatSeqInstance::TailKind::Const      ? "const"
                               : r.tail_kind == RatSeqInstance::TailKind::Periodic ? "periodic"
                                                                                   : "ramp";
            return json{{"prefix", rationals(r.prefix)},
                        {"tail", json{{"kind", kind}, {"values", rationals(r.tail)}}},
                        {"jitter_length", r.jitter_length}};
          },
          [](const GraphInstance& g) {
            json edges = json::array();
            for (const auto& e : g.edges) {
              json je{{"u", e.u}, {"v", e.v}, {"stage", e.stage}};
              if (g.function_presentation) je["id"] = e.id;
              edges.push_back(je);
            }
            return json{{"vertices", g.vertices}, {"edges", edges}};
          },
          [](const ColumnGraphInstance& g) { return json{{"family", family_json(g.family)}}; },
          [](const ActionInstance& a) { return action_json(a); },
          [](const ActionGraphInstance& a) { return json{{"action", action_json(a.action)}}; },
          [](const PosetInstance& p) {
            json less = json::array();
            for (const auto& [a, b] : p.less) less.push_back(json::array({a, b}));
            json tail = std::visit(overloaded{
                                       [](const NoTail&) { return json{{"kind", "none"}}; },
                                       [](const ChainTail& t) { return json{{"kind", "chain"}, {"start", t.start}}; },
                                       [](const PairsTail& t) { return json{{"kind", "pairs"}, {"start", t.start}}; },
                                       [](const BelowTail& t) {
                                         return json{{"kind", "below"}, {"start", t.start}, {"top", t.top}};
                                       },
                                   },
                                   p.tail);
            return json{{"core", p.core}, {"less", less}, {"tail", tail}};
          },
          [](const ColumnOrderInstance& o) { return json{{"family", family_json(o.family)}}; },
          [](const TreeInstance& t) {
            json columns = json::array();
            for (const auto& [n, c] : t.columns) columns.push_back(json{{"index", n}, {"cutoff", optional_nat(c)}});
            return json{{"spine_depth", optional_nat(t.spine_depth)},
                        {"columns", columns},
                        {"default_cutoff", optional_nat(t.default_cutoff)}};
          },
          [](const JoinInstance& j) { return json{{"tag", j.tag}, {"inner", to_json(*j.inner)}}; },
      },
      d);
}

// ---------------------------------------------------------------------------
// reading

void expect_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw FormatError(where + ": unknown field \"" + k + "\"");
  }
  for (const char* key : keys) {
    if (!j.contains(key)) throw FormatError(where + ": missing field \"" + std::string(key) + "\"");
  }
}

Nat nat(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw FormatError(where + ": expected a natural number");
  }
  return j.get<Nat>();
}

std::vector<Nat> nats(const json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array");
  std::vector<Nat> out;
  for (const auto& v : j) out.push_back(nat(v, where));
  return out;
}

std::optional<Nat> optional_nat(const json& j, const std::string& where) {
  if (j.is_null()) return std::nullopt;
  return nat(j, where);
}

Rational rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw FormatError(where + ": expected a rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception&) {
    throw FormatError(where + ": malformed rational \"" + j.get<std::string>() + "\"");
  }
}

std::string kind_of(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) throw FormatError(where + ": missing kind");
  return j["kind"].get<std::string>();
}

SeqInstance seq_from(const json& j, const std::string& where) {
  expect_keys(j, {"prefix", "tail"}, where);
  auto prefix = nats(j["prefix"], where + ".prefix");
  const json& t = j["tail"];
  auto kind = kind_of(t, where + ".tail");
  if (kind == "const") {
    expect_keys(t, {"kind", "value"}, where + ".tail");
    return make_seq(prefix, ConstTail{nat(t["value"], where + ".tail.value")});
  }
  if (kind == "periodic") {
    expect_keys(t, {"kind", "word"}, where + ".tail");
    auto word = nats(t["word"], where + ".tail.word");
    if (word.empty()) throw FormatError(where + ".tail.word: must be nonempty");
    return make_seq(prefix, PeriodicTail{word});
  }
  if (kind == "ramp") {
    expect_keys(t, {"kind"}, where + ".tail");
    return make_seq(prefix, RampTail{});
  }
  if (kind == "computed") throw FormatError(where + ".tail: computed tails are print-only");
  throw FormatError(where + ".tail: unknown kind \"" + kind + "\"");
}

FamilySeqInstance family_from(const json& j, const std::string& where) {
  expect_keys(j, {"exceptions", "default"}, where);
  FamilySeqInstance f;
  if (!j["exceptions"].is_array()) throw FormatError(where + ".exceptions: expected an array");
  for (const auto& e : j["exceptions"]) {
    expect_keys(e, {"index", "column"}, where + ".exceptions");
    Nat n = nat(e["index"], where + ".exceptions.index");
    if (!f.exceptions.emplace(n, seq_from(e["column"], where + ".exceptions.column")).second) {
      throw FormatError(where + ".exceptions: duplicate index " + std::to_string(n));
    }
  }
  const json& d = j["default"];
  auto kind = kind_of(d, where + ".default");
  if (kind == "all_zero") {
    expect_keys(d, {"kind"}, where + ".default");
    f.fallback = AllZeroDefault{};
  } else if (kind == "nonzero_at") {
    expect_keys(d, {"kind", "position"}, where + ".default");
    f.fallback = NonZeroAtDefault{nat(d["position"], where + ".default.position")};
  } else if (kind == "computed") {
    throw FormatError(where + ".default: computed columns are print-only");
  } else {
    throw FormatError(where + ".default: unknown kind \"" + kind + "\"");
  }
  return f;
}

ActionInstance action_from(const json& j, const std::string& where) {
  expect_keys(j, {"carrier", "generators"}, where);
  ActionInstance a;
  for (Nat v : nats(j["carrier"], where + ".carrier")) a.carrier.insert(v);
  if (!j["generators"].is_array()) throw FormatError(where + ".generators: expected an array");
  for (const auto& g : j["generators"]) {
    expect_keys(g, {"id", "map"}, where + ".generators");
    free_group::Permutation perm;
    std::set<Nat> images;
    for (const auto& pair : g["map"]) {
      auto ab = nats(pair, where + ".generators.map");
      if (ab.size() != 2) throw FormatError(where + ".generators.map: expected pairs");
      if (!a.carrier.count(ab[0]) || !a.carrier.count(ab[1])) {
        throw FormatError(where + ".generators.map: point outside the carrier");
      }
      if (!perm.emplace(ab[0], ab[1]).second || !images.insert(ab[1]).second) {
        throw FormatError(where + ".generators.map: not a bijection");
      }
    }
    for (const auto& [from, to] : perm) {
      if (!perm.count(to)) throw FormatError(where + ".generators.map: not a bijection");
    }
    if (!a.generators.emplace(nat(g["id"], where + ".generators.id"), perm).second) {
      throw FormatError(where + ".generators: duplicate id");
    }
  }
  return a;
}

std::vector<Rational> rationals_from(const json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational(v, where));
  return out;
}

InstanceDescription from_json_at(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string()) {
    throw FormatError(where + ": missing variant tag");
  }
  auto variant = j["variant"].get<std::string>();
  json rest = j;
  rest.erase("variant");
  if (variant == "seq") return seq_from(rest, where);
  if (variant == "family") return family_from(rest, where);
  if (variant == "prereal") {
    expect_keys(rest, {"base", "support", "jitter_length", "jitter_sign"}, where);
    PreRealInstance p;
    p.base = rational(rest["base"], where + ".base");
    p.support = seq_from(rest["support"], where + ".support");
    p.jitter_length = nat(rest["jitter_length"], where + ".jitter_length");
    if (!rest["jitter_sign"].is_number_integer()) throw FormatError(where + ".jitter_sign: expected +1 or -1");
    p.jitter_sign = rest["jitter_sign"].get<int>();
    if (p.jitter_sign != 1 && p.jitter_sign != -1) throw FormatError(where + ".jitter_sign: expected +1 or -1");
    return p;
  }
  if (variant == "ratseq" || variant == "realseq") {
    expect_keys(rest, {"prefix", "tail", "jitter_length"}, where);
    RatSeqInstance r;
    r.real = variant == "realseq";
    r.prefix = rationals_from(rest["prefix"], where + ".prefix");
    const json& t = rest["tail"];
    expect_keys(t, {"kind", "values"}, where + ".tail");
    auto kind = kind_of(t, where + ".tail");
    r.tail = rationals_from(t["values"], where + ".tail.values");
    if (kind == "const") {
      r.tail_kind = RatSeqInstance::TailKind::Const;
      if (r.tail.size() != 1) throw FormatError(where + ".tail: const takes one value");
    } else if (kind == "periodic") {
      r.tail_kind = RatSeqInstance::TailKind::Periodic;
      if (r.tail.empty()) throw FormatError(where + ".tail: periodic word must be nonempty");
    } else if (kind == "ramp") {
      r.tail_kind = RatSeqInstance::TailKind::Ramp;
      if (!r.tail.empty()) throw FormatError(where + ".tail: ramp takes no values");
    } else {
      throw FormatError(where + ".tail: unknown kind \"" + kind + "\"");
    }
    r.jitter_length = nat(rest["jitter_length"], where + ".jitter_length");
    if (!r.real && r.jitter_length != 0) throw FormatError(where + ": jitter needs a realseq");
    return r;
  }
  if (variant == "graph" || variant == "graph_fun") {
    expect_keys(rest, {"vertices", "edges"}, where);
    GraphInstance g;
    g.function_presentation = variant == "graph_fun";
    for (Nat v : nats(rest["vertices"], where + ".vertices")) g.vertices.insert(v);
    if (!rest["edges"].is_array()) throw FormatError(where + ".edges: expected an array");
    std::optional<Nat> last_stage;
    std::set<Nat> ids;
    for (const auto& e : rest["edges"]) {
      if (g.function_presentation) {
        expect_keys(e, {"u", "v", "stage", "id"}, where + ".edges");
      } else {
        expect_keys(e, {"u", "v", "stage"}, where + ".edges");
      }
      TimedEdge te{nat(e["u"], where), nat(e["v"], where), nat(e["stage"], where), 0};
      te.id = g.function_presentation ? nat(e["id"], where) : pair(std::min(te.u, te.v), std::max(te.u, te.v));
      if (!g.vertices.count(te.u) || !g.vertices.count(te.v)) throw FormatError(where + ".edges: endpoint not a vertex");
      if (te.u == te.v) throw FormatError(where + ".edges: loops are not allowed");
      if (last_stage && te.stage <= *last_stage) throw FormatError(where + ".edges: stages must increase");
      if (!ids.insert(te.id).second) throw FormatError(where + ".edges: duplicate edge");
      last_stage = te.stage;
      g.edges.push_back(te);
    }
    return g;
  }
  if (variant == "column_graph") {
    expect_keys(rest, {"family"}, where);
    return ColumnGraphInstance{family_from(rest["family"], where + ".family")};
  }
  if (variant == "action") return action_from(rest, where);
  if (variant == "action_graph") {
    expect_keys(rest, {"action"}, where);
    return ActionGraphInstance{action_from(rest["action"], where + ".action")};
  }
  if (variant == "poset") {
    expect_keys(rest, {"core", "less", "tail"}, where);
    PosetInstance p;
    for (Nat v : nats(rest["core"], where + ".core")) p.core.insert(v);
    for (const auto& pair : rest["less"]) {
      auto ab = nats(pair, where + ".less");
      if (ab.size() != 2 || !p.core.count(ab[0]) || !p.core.count(ab[1]) || ab[0] == ab[1]) {
        throw FormatError(where + ".less: expected pairs of distinct core elements");
      }
      p.less.insert({ab[0], ab[1]});
    }
    for (const auto& [a, b] : p.less) {
      if (p.less.count({b, a})) throw FormatError(where + ".less: not antisymmetric");
      for (const auto& [c, e] : p.less) {
        if (c == b && !p.less.count({a, e})) throw FormatError(where + ".less: not transitively closed");
      }
    }
    const json& t = rest["tail"];
    auto kind = kind_of(t, where + ".tail");
    Nat bound = p.core.empty() ? 0 : *p.core.rbegin() + 1;
    auto start = [&](const json& tj) {
      Nat s = nat(tj["start"], where + ".tail.start");
      if (s < bound) throw FormatError(where + ".tail.start: must exceed every core element");
      return s;
    };
    if (kind == "none") {
      expect_keys(t, {"kind"}, where + ".tail");
      p.tail = NoTail{};
    } else if (kind == "chain") {
      expect_keys(t, {"kind", "start"}, where + ".tail");
      p.tail = ChainTail{start(t)};
    } else if (kind == "pairs") {
      expect_keys(t, {"kind", "start"}, where + ".tail");
      p.tail = PairsTail{start(t)};
    } else if (kind == "below") {
      expect_keys(t, {"kind", "start", "top"}, where + ".tail");
      Nat top = nat(t["top"], where + ".tail.top");
      if (!p.core.count(top)) throw FormatError(where + ".tail.top: not a core element");
      p.tail = BelowTail{start(t), top};
    } else {
      throw FormatError(where + ".tail: unknown kind \"" + kind + "\"");
    }
    return p;
  }
  if (variant == "column_linear_order" || variant == "column_bottomed_order") {
    expect_keys(rest, {"family"}, where);
    ColumnOrderInstance o;
    o.kind = variant == "column_linear_order" ? ColumnOrderInstance::Kind::DenseIntervals
                                              : ColumnOrderInstance::Kind::DescendingChains;
    o.family = family_from(rest["family"], where + ".family");
    return o;
  }
  if (variant == "tree") {
    expect_keys(rest, {"spine_depth", "columns", "default_cutoff"}, where);
    TreeInstance t;
    t.spine_depth = optional_nat(rest["spine_depth"], where + ".spine_depth");
    t.default_cutoff = optional_nat(rest["default_cutoff"], where + ".default_cutoff");
    for (const auto& c : rest["columns"]) {
      expect_keys(c, {"index", "cutoff"}, where + ".columns");
      t.columns[nat(c["index"], where + ".columns.index")] = optional_nat(c["cutoff"], where + ".columns.cutoff");
    }
    return t;
  }
  if (variant == "join") {
    expect_keys(rest, {"tag", "inner"}, where);
    JoinInstance j;
    j.tag = nat(rest["tag"], where + ".tag");
    j.inner = std::make_shared<const InstanceDescription>(from_json_at(rest["inner"], where + ".inner"));
    return j;
  }
  throw FormatError(where + ": unknown variant \"" + variant + "\"");
}

bool seq_plain(const SeqInstance& s) { return !s.computed(); }

bool family_plain(const FamilySeqInstance& f) {
  if (std::holds_alternative<std::shared_ptr<const GeneratedColumns>>(f.fallback)) return false;
  for (const auto& [n, s] : f.exceptions) {
    if (!seq_plain(s)) return false;
  }
  return true;
}

}  // namespace

json to_json(const InstanceDescription& d) {
  json j{{"variant", variant_name(d)}};
  j.update(body(d));
  return j;
}

InstanceDescription from_json(const json& j) { return from_json_at(j, "instance"); }

bool serializable(const InstanceDescription& d) {
  return std::visit(overloaded{
                        [](const SeqInstance& s) { return seq_plain(s); },
                        [](const FamilySeqInstance& f) { return family_plain(f); },
                        [](const PreRealInstance& p) { return seq_plain(p.support); },
                        [](const ColumnGraphInstance& g) { return family_plain(g.family); },
                        [](const ColumnOrderInstance& o) { return family_plain(o.family); },
                        [](const JoinInstance& j) { return serializable(*j.inner); },
                        [](const auto&) { return true; },
                    },
                    d);
}

std::string write_instance_file(const InstanceFile& f) {
  json j{{"format", f.format}, {"problem", f.problem}, {"instance", to_json(f.instance)}};
  return j.dump(2) + "\n";
}

InstanceFile read_instance_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("not JSON: ") + e.what());
  }
  expect_keys(j, {"format", "problem", "instance"}, "file");
  InstanceFile f;
  if (!j["format"].is_number_integer() || j["format"].get<int>() != 1) throw FormatError("file: unsupported format");
  if (!j["problem"].is_string()) throw FormatError("file.problem: expected a string");
  f.problem = j["problem"].get<std::string>();
  f.instance = from_json(j["instance"]);
  return f;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(Int(text));
  Int den(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator");
  return Rational(Int(text.substr(0, slash)), den);
}

std::string instance_digest(const InstanceDescription& d) {
  Fnv1a h;
  h.add(to_json(d).dump());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h.value()));
  return buf;
}

}  // namespace levin
