#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bilens/lens.hpp"
#include "bilens/syntax.hpp"
#include "bilens/synth.hpp"

namespace bilens::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kBadInput = 2;

struct TaskOutcome {
  std::string task;
  bool success = false;
  SynthStats stats;
  std::optional<Lens> lens;
  std::string error;
};

// Walks the file's declarations in order. Hand-written lenses are added to
// the library as they appear; each task is synthesized and, on success,
// registered under its own name with the task's formats as endpoints so later
// tasks can reuse it at variable boundaries. With `only`, tasks after the
// named one are skipped. Failed tasks are reported and the walk continues.
std::vector<TaskOutcome> synthesize_spec(const SpecFile& spec, const SynthConfig& config, LensLibrary& lib,
                                         const std::optional<std::string>& only = std::nullopt);

// A lens file holding the definitions, the hand-written lenses and every
// synthesized lens, parseable by parse_spec.
std::string render_lens_file(const SpecFile& spec, const std::vector<TaskOutcome>& outcomes);

std::string csv_header();
std::string csv_row(const TaskOutcome& outcome, SynthMode mode);

int cmd_synth(const std::string& spec_path, const std::optional<std::string>& task, const SynthConfig& config,
              std::ostream& out, std::ostream& err);

// Input is taken verbatim; callers strip line terminators if they want to.
int cmd_run(const std::string& lens_path, const std::string& lens_name, bool put, const std::string& input,
            const SynthConfig& config, std::ostream& out, std::ostream& err);

int cmd_check(const std::string& spec_path, std::ostream& out, std::ostream& err);

// `path` is a spec file or a directory whose *.spec files run in name order.
int cmd_bench(const std::string& path, SynthMode mode, std::size_t max_pops, double max_seconds, std::ostream& out,
              std::ostream& err);

}  // namespace bilens::cli
