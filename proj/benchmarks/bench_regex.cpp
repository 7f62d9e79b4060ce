#include <benchmark/benchmark.h>

#include <string>

#include "bilens/automata.hpp"
#include "bilens/dnf.hpp"
#include "bilens/regex_analysis.hpp"
#include "bilens/syntax.hpp"

using namespace bilens;

namespace {

// title formats with n characters allowed in the text
Regex title_like(int n) {
  std::string chars = "\"a\"";
  for (int i = 1; i < n; ++i) chars += " | \"" + std::string(1, static_cast<char>('a' + i)) + "\"";
  return parse_regex("\"Title: \" (" + chars + ") (" + chars + ")* \",\" | \"\"");
}

Regex nested_stars(int depth) {
  std::string r = "\"a\"";
  for (int i = 0; i < depth; ++i) r = "(\"<\" (" + r + ")* \">\" | \"b\")";
  return parse_regex(r);
}

void BM_DfaBuild(benchmark::State& state) {
  Regex r = title_like(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Dfa::build(r));
}
BENCHMARK(BM_DfaBuild)->Arg(2)->Arg(8)->Arg(26);

void BM_StronglyUnambiguous(benchmark::State& state) {
  Regex r = nested_stars(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(strongly_unambiguous(r));
}
BENCHMARK(BM_StronglyUnambiguous)->Arg(1)->Arg(3)->Arg(6);

void BM_LangEquiv(benchmark::State& state) {
  Regex a = title_like(static_cast<int>(state.range(0)));
  Regex b = to_regex(to_dnf(a));
  for (auto _ : state) benchmark::DoNotOptimize(lang_equiv(a, b));
}
BENCHMARK(BM_LangEquiv)->Arg(2)->Arg(8)->Arg(26);

void BM_ToDnf(benchmark::State& state) {
  Regex r = nested_stars(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(to_dnf(r));
}
BENCHMARK(BM_ToDnf)->Arg(1)->Arg(3)->Arg(6);

}  // namespace
