#include "bilens_cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "bilens/errors.hpp"
#include "bilens/language_cache.hpp"
#include "bilens/regex_analysis.hpp"

namespace bilens::cli {

namespace {

void register_decl(const LensDecl& decl, const Definitions& defs, LensLibrary& lib) {
  if (decl.source && decl.target) {
    lib.add(decl.name, decl.lens, defs, *decl.source, *decl.target);
  } else {
    lib.add(decl.name, decl.lens, defs);
  }
}

TaskOutcome run_task(const SynthTask& task, const Definitions& defs, const SynthConfig& config,
                     LensLibrary& lib) {
  TaskOutcome o;
  o.task = task.name;
  Synthesizer synth(defs, &lib, config);
  try {
    SynthResult r = synth.synth_lens(task.source, task.target, task.examples);
    o.stats = r.stats;
    o.lens = r.lens;
    o.success = true;
    lib.add(task.name, r.lens, defs, task.source, task.target);
  } catch (const Error& e) {
    o.stats = synth.stats();
    o.lens.reset();
    o.success = false;
    o.error = e.what();
  }
  return o;
}

std::string stats_comment(const TaskOutcome& o) {
  std::ostringstream s;
  s << "# " << o.task << ": expansions=" << o.stats.expansions << " forced=" << o.stats.forced
    << " pops=" << o.stats.pops << " wall_ms=" << o.stats.wall_ms;
  return s.str();
}

}  // namespace

std::vector<TaskOutcome> synthesize_spec(const SpecFile& spec, const SynthConfig& config, LensLibrary& lib,
                                         const std::optional<std::string>& only) {
  std::vector<TaskOutcome> out;
  for (const auto& item : spec.items) {
    if (item.kind == SpecFile::Item::Kind::Lens) {
      register_decl(spec.lenses[item.index], spec.definitions, lib);
      continue;
    }
    const SynthTask& task = spec.tasks[item.index];
    out.push_back(run_task(task, spec.definitions, config, lib));
    if (only && task.name == *only) break;
  }
  return out;
}

std::string render_lens_file(const SpecFile& spec, const std::vector<TaskOutcome>& outcomes) {
  SpecFile file;
  file.definitions = spec.definitions;
  std::string trailer;
  for (const auto& item : spec.items) {
    if (item.kind == SpecFile::Item::Kind::Lens) {
      file.items.push_back({SpecFile::Item::Kind::Lens, file.lenses.size()});
      file.lenses.push_back(spec.lenses[item.index]);
      continue;
    }
    const SynthTask& task = spec.tasks[item.index];
    auto it = std::find_if(outcomes.begin(), outcomes.end(), [&](const TaskOutcome& o) { return o.task == task.name; });
    if (it == outcomes.end() || !it->success) continue;
    file.items.push_back({SpecFile::Item::Kind::Lens, file.lenses.size()});
    file.lenses.push_back(LensDecl{task.name, *it->lens, task.source, task.target});
    trailer += stats_comment(*it) + "\n";
  }
  return print_spec(file) + trailer;
}

std::string csv_header() { return "task,mode,success,wall_ms,pops,expansions_total,expansions_forced"; }

std::string csv_row(const TaskOutcome& o, SynthMode mode) {
  std::ostringstream s;
  s << o.task << ',' << to_string(mode) << ',' << (o.success ? 1 : 0) << ',' << o.stats.wall_ms << ','
    << o.stats.pops << ',' << o.stats.expansions << ',' << o.stats.forced;
  return s.str();
}

int cmd_synth(const std::string& spec_path, const std::optional<std::string>& task, const SynthConfig& config,
              std::ostream& out, std::ostream& err) {
  try {
    SpecFile spec = parse_spec_file(spec_path);
    if (task && !spec.find_task(*task)) {
      err << "error: no task named " << *task << "\n";
      return kFailure;
    }
    LensLibrary lib;
    auto outcomes = synthesize_spec(spec, config, lib, task);
    int code = kOk;
    for (const auto& o : outcomes) {
      if (!o.success) {
        err << "error: task " << o.task << ": " << o.error << "\n";
        code = kFailure;
      }
    }
    out << render_lens_file(spec, outcomes);
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

int cmd_run(const std::string& lens_path, const std::string& lens_name, bool put, const std::string& input,
            const SynthConfig& config, std::ostream& out, std::ostream& err) {
  try {
    SpecFile spec = parse_spec_file(lens_path);
    if (!spec.find_lens(lens_name) && !spec.find_task(lens_name)) {
      err << "error: no lens named " << lens_name << "\n";
      return kFailure;
    }
    LensLibrary lib;
    // Register declarations up to the requested one; tasks are synthesized on
    // the way so that spec files can be run directly.
    for (const auto& item : spec.items) {
      bool is_lens = item.kind == SpecFile::Item::Kind::Lens;
      const std::string& name = is_lens ? spec.lenses[item.index].name : spec.tasks[item.index].name;
      if (is_lens) {
        register_decl(spec.lenses[item.index], spec.definitions, lib);
      } else {
        TaskOutcome o = run_task(spec.tasks[item.index], spec.definitions, config, lib);
        if (!o.success && name == lens_name) {
          err << "error: task " << name << ": " << o.error << "\n";
          return kFailure;
        }
      }
      if (name == lens_name) break;
    }
    LensRunner runner(Lens::ref(lens_name), spec.definitions, &lib);
    out << (put ? runner.put(input) : runner.get(input)) << "\n";
    return kOk;
  } catch (const InputNotInSource& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const InputNotInTarget& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

int cmd_check(const std::string& spec_path, std::ostream& out, std::ostream& err) {
  SpecFile spec;
  try {
    spec = parse_spec_file(spec_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  bool all_ok = true;
  auto verdict = [&](bool ok) {
    all_ok = all_ok && ok;
    return ok ? "ok" : "FAIL";
  };
  LensLibrary lib;
  LanguageCache cache(spec.definitions);
  for (const auto& item : spec.items) {
    if (item.kind == SpecFile::Item::Kind::Lens) {
      const LensDecl& decl = spec.lenses[item.index];
      try {
        register_decl(decl, spec.definitions, lib);
        out << "lens " << decl.name << ": typechecks: " << verdict(true) << "\n";
      } catch (const Error& e) {
        out << "lens " << decl.name << ": typechecks: " << verdict(false) << " (" << e.what() << ")\n";
      }
      continue;
    }
    const SynthTask& task = spec.tasks[item.index];
    Regex src;
    Regex tgt;
    try {
      src = resolve(task.source, spec.definitions);
      tgt = resolve(task.target, spec.definitions);
    } catch (const UnboundVariable& e) {
      out << "task " << task.name << ": names bound: " << verdict(false) << " (" << e.what() << ")\n";
      continue;
    }
    out << "task " << task.name << ": source strongly unambiguous: " << verdict(strongly_unambiguous(src)) << "\n";
    out << "task " << task.name << ": target strongly unambiguous: " << verdict(strongly_unambiguous(tgt)) << "\n";
    for (std::size_t i = 0; i < task.examples.size(); ++i) {
      const auto& [a, b] = task.examples[i];
      out << "task " << task.name << ": example " << i + 1 << " source parses: " << verdict(cache.accepts(src, a))
          << "\n";
      out << "task " << task.name << ": example " << i + 1 << " target parses: " << verdict(cache.accepts(tgt, b))
          << "\n";
    }
  }
  return all_ok ? kOk : kFailure;
}

int cmd_bench(const std::string& path, SynthMode mode, std::size_t max_pops, double max_seconds, std::ostream& out,
              std::ostream& err) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".spec") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.emplace_back(path);
  }
  SynthConfig config = SynthConfig::for_mode(mode);
  config.max_pops = max_pops;
  config.max_seconds = max_seconds;
  out << csv_header() << "\n";
  int code = kOk;
  for (const auto& file : files) {
    try {
      SpecFile spec = parse_spec_file(file.string());
      LensLibrary lib;
      for (const auto& o : synthesize_spec(spec, config, lib)) out << csv_row(o, mode) << "\n";
    } catch (const Error& e) {
      err << "error: " << file.string() << ": " << e.what() << "\n";
      code = kFailure;
    }
  }
  return code;
}

}  // namespace bilens::cli
