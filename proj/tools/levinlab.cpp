// levinlab: list, gen, run, chain, verify, report.
//
// Exit codes: 0 expected verdicts matched, 1 mismatch, 2 usage or format
// error, 3 divergence.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "levinlab/catalog.hpp"
#include "levinlab/harness.hpp"
#include "levinlab/paper_reductions.hpp"
#include "levinlab/serialize.hpp"

using namespace levin;

namespace {

constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kDivergence = 3;

struct Exit {
  int code;
  std::string message;
};

std::uint64_t default_seed() {
  if (const char* s = std::getenv("LEVINLAB_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw Exit{kUsage, "LEVINLAB_SEED is not a natural number"};
    }
  }
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Exit{kUsage, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Exit{kUsage, "cannot write " + path};
  out << text;
}

LevinReduction reduction_named(const std::string& id) {
  auto r = find_reduction(id);
  if (!r) throw Exit{kUsage, "unknown reduction " + id};
  return *r;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

LevinReduction chain_of(const std::vector<std::string>& ids) {
  if (ids.empty()) throw Exit{kUsage, "empty chain"};
  auto r = reduction_named(ids.front());
  for (std::size_t i = 1; i < ids.size(); ++i) r = compose(r, reduction_named(ids[i]));
  return r;
}

// ---------------------------------------------------------------------------

void cmd_list(bool problems, bool reductions, bool graph) {
  if (!problems && !reductions && !graph) problems = reductions = true;
  if (problems) {
    std::cout << "problems:\n";
    for (const auto& p : catalog::problems()) {
      std::cout << "  " << p->id << "  arity " << p->arity << "  variants";
      for (const auto& v : p->variants) std::cout << ' ' << v;
      std::cout << '\n';
    }
    std::cout << "auxiliary:\n";
    for (const auto& p : catalog::auxiliary()) std::cout << "  " << p->id << '\n';
  }
  if (reductions) {
    std::cout << "reductions:\n";
    for (const auto& e : catalog_entries()) {
      const auto& r = e.reduction;
      std::cout << "  " << r.id << "  " << r.source->id << " -> " << r.target->id << "  expected "
                << to_string(r.status) << "  [" << e.group << "]\n    " << r.locus << '\n';
    }
  }
  if (graph) {
    std::cout << "digraph reductions {\n";
    for (const auto& e : catalog_entries()) {
      const auto& r = e.reduction;
      if (r.status != Expectation::Sound) continue;
      std::cout << "  \"" << r.source->id << "\" -> \"" << r.target->id << "\" [label=\"" << r.id << "\"];\n";
    }
    std::cout << "}\n";
  }
}

int cmd_gen(const std::string& problem, std::string variant, std::uint64_t seed, Nat index, Nat count,
            const std::string& out) {
  auto variants = generatable_variants(problem);
  if (variants.empty()) throw Exit{kUsage, "no generator for " + problem};
  if (variant.empty()) variant = variants.front();
  if (std::find(variants.begin(), variants.end(), variant) == variants.end()) {
    throw Exit{kUsage, "no generator for variant " + variant + " of " + problem};
  }
  auto profile = profile_for(problem, variant, seed);
  std::string text;
  for (Nat k = index; k < index + count; ++k) {
    InstanceFile f{1, problem, generate(profile, k)};
    text += count == 1 ? write_instance_file(f) + "\n" : nlohmann::json::parse(write_instance_file(f)).dump() + "\n";
  }
  write_text(out, text);
  return 0;
}

std::string cell_text(StreamHandle& h, Nat i) {
  return h.rational() ? to_string(h.query_rational(i)) : std::to_string(h.query(i));
}

int cmd_run(const LevinReduction& r, const std::string& path, Nat horizon, const std::vector<std::string>& forward,
            const std::vector<std::string>& backward) {
  InstanceFile f;
  try {
    f = read_instance_file(read_file(path));
  } catch (const FormatError& e) {
    throw Exit{kUsage, e.what()};
  }
  const auto& d = f.instance;
  auto v = variant_name(d);
  if (std::find(r.phi.variants.begin(), r.phi.variants.end(), v) == r.phi.variants.end()) {
    throw Exit{kUsage, "variant mismatch: " + r.id + " does not accept " + v};
  }
  Nat budget = default_budget(d, horizon);
  nlohmann::json out;
  out["reduction"] = r.id;
  out["source"] = r.source->id;
  out["target"] = r.target->id;
  try {
    auto image = r.phi.desc(d);
    out["image"] = to_json(image);
    auto src = open(stream_of(d), std::make_shared<Budget>(budget * horizon));
    auto img = open(r.phi.stream(src), src->budget());
    std::vector<std::string> cells;
    for (Nat i = 0; i < horizon; ++i) cells.push_back(cell_text(*img, i));
    out["image_prefix"] = cells;
  } catch (const Divergence& e) {
    std::cout << out.dump(2) << '\n';
    throw Exit{kDivergence, std::string("divergence: ") + e.what()};
  }
  auto translate = [&](const WitnessMap& m, const std::string& token, const char* key) {
    auto w = parse_witness(token);
    if (!w) throw Exit{kUsage, "malformed witness " + token};
    auto inv = invoke(m, *w, d, budget);
    nlohmann::json j;
    j["in"] = to_string(*w);
    if (inv.output) j["out"] = to_string(*inv.output);
    if (!inv.error.empty()) j["error"] = inv.error;
    j["trace"] = inv.use;
    out[key].push_back(j);
    return inv.diverged;
  };
  bool diverged = false;
  if (!forward.empty() && r.demi()) throw Exit{kUsage, r.id + " is a demi reduction: no forward witness map"};
  for (const auto& t : forward) diverged |= translate(r.r_minus, t, "r_minus");
  for (const auto& t : backward) diverged |= translate(r.r_plus, t, "r_plus");
  std::cout << out.dump(2) << '\n';
  return diverged ? kDivergence : 0;
}

int cmd_verify(const std::vector<std::string>& names, bool all, const SuiteOptions& o, const std::string& out,
               bool quiet) {
  std::vector<CatalogEntry> entries;
  if (all) {
    entries = catalog_entries();
  } else {
    if (names.empty()) throw Exit{kUsage, "verify needs --entry or --all"};
    for (const auto& n : names) {
      auto sel = select_entries(n);
      if (sel.empty()) throw Exit{kUsage, "unknown entry " + n};
      entries.insert(entries.end(), sel.begin(), sel.end());
    }
  }
  auto reports = run_suite(entries, o);
  write_text(out.empty() ? "levinlab-report.jsonl" : out, report_lines(reports));
  bool ok = true;
  bool diverged = false;
  for (const auto& e : reports) {
    ok = ok && e.matched();
    diverged = diverged || e.divergences > 0;
    if (!quiet) {
      std::cout << e.entry << ": " << e.verdict() << " (" << e.passed << "/" << e.trials << " trials, "
                << e.non_members << " non-members, expected " << to_string(e.expected) << ")"
                << (e.matched() ? "" : "  MISMATCH") << '\n';
    }
  }
  if (!ok) return diverged ? kDivergence : kMismatch;
  return 0;
}

int cmd_report(const std::string& from) {
  std::map<std::string, std::string> verdicts;
  if (!from.empty()) {
    std::stringstream ss(read_file(from));
    std::string line;
    while (std::getline(ss, line)) {
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw Exit{kUsage, std::string("malformed report line: ") + e.what()};
      }
      if (j.contains("summary")) verdicts[j["summary"]] = j["verdict"];
    }
  }
  std::cout << "digraph reductions {\n";
  for (const auto& e : catalog_entries()) {
    const auto& r = e.reduction;
    auto it = verdicts.find(r.id);
    std::string verdict = it == verdicts.end() ? "expected " + to_string(r.status) : it->second;
    std::string style = verdict == "pass" || verdict == "expected pass" ? "solid" : "dashed";
    std::cout << "  \"" << r.source->id << "\" -> \"" << r.target->id << "\" [label=\"" << r.id << ": " << verdict
              << "\", style=" << style << "];\n";
  }
  std::cout << "}\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Levin reductions between witnessed problems: run, compose and verify"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List problems and reductions");
  bool l_problems = false, l_reductions = false, l_graph = false;
  list->add_flag("--problems", l_problems);
  list->add_flag("--reductions", l_reductions);
  list->add_flag("--graph", l_graph, "DOT digraph of the expected-sound reductions");

  std::uint64_t seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate instance files from a profile");
  std::string g_problem, g_variant, g_out;
  Nat g_index = 0, g_count = 1;
  gen->add_option("problem", g_problem)->required();
  gen->add_option("--variant", g_variant);
  gen->add_option("--seed", seed);
  gen->add_option("--index", g_index);
  gen->add_option("--count", g_count);
  gen->add_option("-o,--out", g_out);

  auto* run = app.add_subcommand("run", "Apply a reduction to an instance file");
  std::string r_id, r_file, r_chain;
  Nat r_horizon = 32;
  std::vector<std::string> r_forward, r_backward;
  run->add_option("reduction", r_id);
  run->add_option("file", r_file);
  run->add_option("--chain", r_chain, "comma separated reductions to compose");
  run->add_option("--horizon", r_horizon);
  run->add_option("--witness", r_forward, "source witness to map forward");
  run->add_option("--back", r_backward, "target witness to map back");

  auto* chain = app.add_subcommand("chain", "Alias of run --chain");
  std::string c_ids, c_file;
  chain->add_option("reductions", c_ids)->required();
  chain->add_option("file", c_file)->required();
  chain->add_option("--horizon", r_horizon);
  chain->add_option("--witness", r_forward);
  chain->add_option("--back", r_backward);

  auto* verify = app.add_subcommand("verify", "Verify catalog entries on generated suites");
  SuiteOptions o;
  std::vector<std::string> v_entries;
  bool v_all = false, v_quiet = false;
  std::string v_out;
  verify->add_option("--entry", v_entries, "entry id or group");
  verify->add_flag("--all", v_all);
  verify->add_option("--trials", o.trials);
  verify->add_option("--horizon", o.horizon);
  verify->add_option("--bound", o.bound);
  verify->add_option("--seed", seed);
  verify->add_option("-o,--out", v_out, "report file (default levinlab-report.jsonl, - for stdout)");
  verify->add_flag("-q,--quiet", v_quiet);

  auto* report = app.add_subcommand("report", "Reduction digraph annotated with verdicts");
  std::string rep_from;
  report->add_option("--from", rep_from, "report file written by verify");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (seed == 0) seed = default_seed();
    if (*list) {
      cmd_list(l_problems, l_reductions, l_graph);
      return 0;
    }
    if (*gen) return cmd_gen(g_problem, g_variant, seed, g_index, g_count, g_out);
    if (*run) {
      if (!r_chain.empty()) {
        if (!r_id.empty() && r_file.empty()) r_file = r_id;
        return cmd_run(chain_of(split_commas(r_chain)), r_file, r_horizon, r_forward, r_backward);
      }
      if (r_id.empty() || r_file.empty()) throw Exit{kUsage, "run needs a reduction id and a file, or --chain"};
      return cmd_run(reduction_named(r_id), r_file, r_horizon, r_forward, r_backward);
    }
    if (*chain) return cmd_run(chain_of(split_commas(c_ids)), c_file, r_horizon, r_forward, r_backward);
    if (*verify) {
      o.seed = seed;
      return cmd_verify(v_entries, v_all, o, v_out, v_quiet);
    }
    if (*report) return cmd_report(rep_from);
  } catch (const Exit& e) {
    std::cerr << "levinlab: " << e.message << '\n';
    return e.code;
  } catch (const Divergence& e) {
    std::cerr << "levinlab: divergence: " << e.what() << '\n';
    return kDivergence;
  } catch (const std::exception& e) {
    std::cerr << "levinlab: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
