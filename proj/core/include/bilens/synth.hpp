#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bilens/dnf.hpp"
#include "bilens/dnf_lens.hpp"
#include "bilens/exampled.hpp"
#include "bilens/language_cache.hpp"
#include "bilens/lens.hpp"

namespace bilens {

using Example = std::pair<std::string, std::string>;
using Examples = std::vector<Example>;

enum class SynthMode { Full, NoFpe, NoEr, NoUd };
const char* to_string(SynthMode mode);
std::optional<SynthMode> parse_mode(const std::string& text);

struct SynthConfig {
  bool expand_required = true;
  bool fix_problem_elts = true;
  bool substitute_upfront = false;
  bool use_library = true;
  std::size_t max_pops = 1000000;
  double max_seconds = 60.0;

  static SynthConfig for_mode(SynthMode mode);
};

struct SynthStats {
  std::size_t pops = 0;
  std::size_t pushes = 0;
  std::size_t expansions = 0;         // expansion count of the solution
  std::size_t forced = 0;             // forced expansions on the solution's path
  std::size_t forced_total = 0;       // forced substitutions over the whole run
  std::size_t reveal_candidates = 0;  // candidates produced by problem-element fixing
  double wall_ms = 0.0;
};

struct QueueElement {
  DnfRegex src;
  DnfRegex tgt;
  std::size_t expansions = 0;
  std::size_t forced = 0;
};

struct SynthResult {
  Lens lens;
  DnfLens dnf_lens;
  DnfRegex src;  // the expanded types the DNF lens is typed against
  DnfRegex tgt;
  SynthStats stats;
};

// One synthesis run. Not thread-safe; independent runs may proceed in
// parallel.
class Synthesizer {
 public:
  Synthesizer(const Definitions& defs, const LensLibrary* lib = nullptr, SynthConfig config = {});

  const SynthConfig& config() const { return config_; }
  const SynthStats& stats() const { return stats_; }

  std::optional<DnfLens> rigid_synth(const DnfRegex& src, const DnfRegex& tgt, const Examples& exs);

  QueueElement expand_required(QueueElement qe);
  std::vector<QueueElement> fix_problem_elts(const QueueElement& qe);
  std::vector<QueueElement> expand_once(const QueueElement& qe);
  std::vector<QueueElement> expand(const QueueElement& qe);

  // Throws BudgetExhausted.
  SynthResult synth_dnf_lens(const DnfRegex& src, const DnfRegex& tgt, const Examples& exs);
  // Throws ValidationFailed or BudgetExhausted.
  SynthResult synth_lens(const Regex& r, const Regex& s, const Examples& exs);

  void validate(const Regex& r, const Regex& s, const Examples& exs);

 private:
  StarDepthSet current(const DnfRegex& d) const;
  StarDepthSet transitive(const DnfRegex& d) const;
  std::size_t force_expand(DnfRegex& d, const std::string& klass, std::size_t depth);
  void reveal(const DnfRegex& d, bool on_source, const StarDepthPair& want, const QueueElement& qe,
              std::vector<QueueElement>& out);

  Definitions defs_;
  const LensLibrary* lib_;
  SynthConfig config_;
  VarClasses classes_;
  LanguageCache cache_;
  SynthStats stats_;
};

std::optional<DnfLens> rigid_synth(const DnfRegex& src, const DnfRegex& tgt, const Examples& exs,
                                   const Definitions& defs, const LensLibrary* lib = nullptr);
SynthResult synth_lens(const Regex& r, const Regex& s, const Examples& exs, const Definitions& defs,
                       const LensLibrary* lib = nullptr, SynthConfig config = {});

}  // namespace bilens
