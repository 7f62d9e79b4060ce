#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "bilens_cli/commands.hpp"

namespace {

struct Budget {
  std::size_t pops = 1000000;
  double secs = 60.0;
};

void add_budget(CLI::App* cmd, Budget& b) {
  cmd->add_option("--budget-pops", b.pops, "Queue pop budget per task")->capture_default_str();
  cmd->add_option("--budget-secs", b.secs, "Wall-clock budget per task, in seconds")->capture_default_str();
}

// Runs `body` against stdout or the --out file.
template <class F>
int with_output(const std::string& out_path, F body) {
  if (out_path.empty()) return body(std::cout);
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return bilens::cli::kFailure;
  }
  return body(f);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace bilens;
  CLI::App app{"Synthesize and run bijective string lenses between regular formats"};
  app.require_subcommand(1);

  const std::map<std::string, SynthMode> modes{
      {"full", SynthMode::Full}, {"nofpe", SynthMode::NoFpe}, {"noer", SynthMode::NoEr}, {"noud", SynthMode::NoUd}};

  std::string spec_path;
  std::string out_path;
  std::string task;
  SynthMode mode = SynthMode::Full;
  Budget budget;

  auto* synth = app.add_subcommand("synth", "Synthesize every task of a spec file, in order");
  synth->add_option("spec", spec_path, "Spec file")->required()->check(CLI::ExistingFile);
  synth->add_option("--task", task, "Stop after this task");
  synth->add_option("--mode", mode, "Inference stages: full, nofpe, noer, noud")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  synth->add_option("--out", out_path, "Write the lens file here");
  add_budget(synth, budget);

  std::string lens_name;
  std::string input_path;
  bool do_get = false;
  bool do_put = false;
  bool raw = false;
  auto* run = app.add_subcommand("run", "Run a named lens forward or backward");
  run->add_option("lens_file", spec_path, "Lens or spec file")->required()->check(CLI::ExistingFile);
  run->add_option("--lens", lens_name, "Lens name")->required();
  auto* get_flag = run->add_flag("--get", do_get, "Source to target");
  auto* put_flag = run->add_flag("--put", do_put, "Target to source");
  get_flag->excludes(put_flag);
  run->add_option("--input", input_path, "Read input from a file instead of stdin")->check(CLI::ExistingFile);
  run->add_flag("--raw", raw, "Keep a trailing newline in the input");
  run->add_option("--out", out_path, "Write the result here");
  add_budget(run, budget);

  auto* check = app.add_subcommand("check", "Validate formats and examples without synthesizing");
  check->add_option("spec", spec_path, "Spec file")->required()->check(CLI::ExistingFile);
  check->add_option("--out", out_path, "Write the report here");

  auto* bench = app.add_subcommand("bench", "Run a corpus and print CSV statistics");
  bench->add_option("path", spec_path, "Spec file or directory of .spec files")->required()->check(CLI::ExistingPath);
  bench->add_option("--mode", mode, "Inference stages: full, nofpe, noer, noud")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  bench->add_option("--out", out_path, "Write the CSV here");
  add_budget(bench, budget);

  CLI11_PARSE(app, argc, argv);

  SynthConfig config = SynthConfig::for_mode(mode);
  config.max_pops = budget.pops;
  config.max_seconds = budget.secs;

  if (synth->parsed()) {
    std::optional<std::string> only;
    if (!task.empty()) only = task;
    return with_output(out_path, [&](std::ostream& o) { return cli::cmd_synth(spec_path, only, config, o, std::cerr); });
  }
  if (run->parsed()) {
    if (!do_get && !do_put) {
      std::cerr << "error: pass --get or --put\n";
      return cli::kFailure;
    }
    std::string input;
    if (input_path.empty()) {
      input.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
      std::ifstream f(input_path, std::ios::binary);
      input.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    if (!raw && !input.empty() && input.back() == '\n') {
      input.pop_back();
      if (!input.empty() && input.back() == '\r') input.pop_back();
    }
    return with_output(out_path, [&](std::ostream& o) {
      return cli::cmd_run(spec_path, lens_name, do_put, input, config, o, std::cerr);
    });
  }
  if (check->parsed()) {
    return with_output(out_path, [&](std::ostream& o) { return cli::cmd_check(spec_path, o, std::cerr); });
  }
  return with_output(out_path, [&](std::ostream& o) {
    return cli::cmd_bench(spec_path, mode, budget.pops, budget.secs, o, std::cerr);
  });
}
