#include <benchmark/benchmark.h>

#include <limits>

#include "levinlab/catalog.hpp"
#include "levinlab/generic.hpp"
#include "levinlab/harness.hpp"
#include "levinlab/paper_reductions.hpp"

using namespace levin;

namespace {

Handle unlimited(const InstanceDescription& d) {
  return open(stream_of(d), std::make_shared<Budget>(std::numeric_limits<Nat>::max()));
}

const LevinReduction& entry(const std::string& id) {
  for (const auto& e : catalog_entries()) {
    if (e.reduction.id == id) return e.reduction;
  }
  throw std::runtime_error("no entry " + id);
}

// One verify call per iteration, cycling through generated instances.
void BM_Verify(benchmark::State& state, const std::string& id) {
  const auto& r = entry(id);
  auto profile = profile_for(r.source->id, r.phi.variants.front(), 1);
  std::vector<InstanceDescription> pool;
  for (Nat k = 0; k < 32; ++k) pool.push_back(generate(profile, k));
  Nat k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(verify(r, pool[k++ % pool.size()]).passed());
}
BENCHMARK_CAPTURE(BM_Verify, conv_to_fin, std::string("conv_to_fin"));
BENCHMARK_CAPTURE(BM_Verify, qpre_to_conv, std::string("qpre_to_conv"));
BENCHMARK_CAPTURE(BM_Verify, disconnfun_to_orbit, std::string("disconnfun_to_orbit"));
BENCHMARK_CAPTURE(BM_Verify, truth_to_tr2, std::string("truth_to_tr2"));

// Reading a prefix of the stream image.
void BM_ImagePrefix(benchmark::State& state, const std::string& id) {
  const auto& r = entry(id);
  auto d = generate(profile_for(r.source->id, r.phi.variants.front(), 1), 1);
  Nat n = static_cast<Nat>(state.range(0));
  for (auto _ : state) {
    auto src = unlimited(d);
    auto img = open(r.phi.stream(src), src->budget());
    Nat sum = 0;
    for (Nat i = 0; i < n; ++i) sum += img->query(i);
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK_CAPTURE(BM_ImagePrefix, qpre_to_conv, std::string("qpre_to_conv"))->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(BM_ImagePrefix, potop_to_bddseq, std::string("potop_to_bddseq"))->Arg(64)->Arg(256);

void BM_StagedMachine(benchmark::State& state) {
  auto r = unique_to_fin(catalog::potop_pieces());
  auto d = generate(profile_for("PO_top", "poset", 1), 1);
  Nat n = static_cast<Nat>(state.range(0));
  for (auto _ : state) {
    auto src = unlimited(d);
    auto img = open(r.phi.stream(src), src->budget());
    benchmark::DoNotOptimize(img->query(n - 1));
  }
}
BENCHMARK(BM_StagedMachine)->Arg(64)->Arg(256);

void BM_Generate(benchmark::State& state) {
  auto profile = profile_for("DisConn_fun", "graph_fun", 1);
  Nat k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(instance_digest(generate(profile, k++)));
}
BENCHMARK(BM_Generate);

void BM_Suite(benchmark::State& state) {
  SuiteOptions o;
  o.trials = 20;
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(catalog_entries(), o).size());
}
BENCHMARK(BM_Suite)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
