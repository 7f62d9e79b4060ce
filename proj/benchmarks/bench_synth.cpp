#include <benchmark/benchmark.h>

#include <string>

#include "bilens/syntax.hpp"
#include "bilens/synth.hpp"

using namespace bilens;

namespace {

const SynthTask& corpus_task(const std::string& file, const std::string& name, SpecFile& keep) {
  keep = parse_spec_file(std::string(BILENS_CORPUS_DIR) + "/" + file);
  return *keep.find_task(name);
}

void run_task(benchmark::State& state, const std::string& file, const std::string& name, SynthMode mode) {
  SpecFile spec;
  const SynthTask& t = corpus_task(file, name, spec);
  SynthConfig cfg = SynthConfig::for_mode(mode);
  std::size_t pops = 0;
  for (auto _ : state) {
    SynthResult r = synth_lens(t.source, t.target, t.examples, spec.definitions, nullptr, cfg);
    pops = r.stats.pops;
    benchmark::DoNotOptimize(r);
  }
  state.counters["pops"] = static_cast<double>(pops);
}

void BM_SynthTitle(benchmark::State& state) { run_task(state, "title.spec", "title", SynthMode::Full); }
BENCHMARK(BM_SynthTitle)->Unit(benchmark::kMillisecond);

void BM_SynthDate(benchmark::State& state) { run_task(state, "micro/02_date.spec", "date", SynthMode::Full); }
BENCHMARK(BM_SynthDate)->Unit(benchmark::kMillisecond);

// Same task under each search configuration.
void BM_SynthUrepByMode(benchmark::State& state) {
  auto mode = static_cast<SynthMode>(state.range(0));
  state.SetLabel(to_string(mode));
  run_task(state, "micro/04_urep.spec", "urep", mode);
}
BENCHMARK(BM_SynthUrepByMode)
    ->Arg(static_cast<int>(SynthMode::Full))
    ->Arg(static_cast<int>(SynthMode::NoFpe))
    ->Arg(static_cast<int>(SynthMode::NoEr))
    ->Arg(static_cast<int>(SynthMode::NoUd))
    ->Unit(benchmark::kMillisecond);

}  // namespace
