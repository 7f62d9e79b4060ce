#include <benchmark/benchmark.h>

// The packaged benchmark_main archive is LTO bytecode from another compiler
// release, so main lives here.
BENCHMARK_MAIN();
