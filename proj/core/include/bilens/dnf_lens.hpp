#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bilens/dnf.hpp"
#include "bilens/language_cache.hpp"
#include "bilens/lens.hpp"
#include "bilens/permutation.hpp"

namespace bilens {

struct DnfLens;

// Either iterates a DNF lens under a star, or relates two named types. A
// Var lens with equal names and no `via` lens is the identity.
struct AtomLens {
  enum class Kind { Iterate, Var };

  Kind kind = Kind::Var;
  std::shared_ptr<const DnfLens> body;  // Iterate
  std::string source_name;              // Var
  std::string target_name;              // Var
  std::optional<Lens> via;              // Var, when the names differ

  static AtomLens iterate(DnfLens body);
  static AtomLens identity(std::string name);
  static AtomLens between(std::string source, std::string target, Lens via);

  friend bool operator==(const AtomLens& a, const AtomLens& b);
};

// Permutations at both levels map a target slot to the lens whose output
// fills it: target slot j holds the image of lens perm(j).
struct SequenceLens {
  std::vector<std::pair<std::string, std::string>> strings{{"", ""}};
  std::vector<AtomLens> atoms;
  Permutation perm;

  friend bool operator==(const SequenceLens&, const SequenceLens&) = default;
};

struct DnfLens {
  std::vector<SequenceLens> seqs;
  Permutation perm;

  friend bool operator==(const DnfLens&, const DnfLens&) = default;
};

std::string to_string(const DnfLens& dl);

DnfLens identity_dnf_lens(const DnfRegex& d);

// Types read off the lens itself. Sequences appear in lens order.
DnfRegex dnf_lens_source(const DnfLens& dl);
DnfRegex dnf_lens_target(const DnfLens& dl);
Sequence sequence_lens_source(const SequenceLens& sql);
Sequence sequence_lens_target(const SequenceLens& sql);

// The first violated typing premise, or nullopt when dl : src <=> tgt.
std::optional<std::string> dnf_lens_type_error(const DnfLens& dl, const DnfRegex& src, const DnfRegex& tgt,
                                               const Definitions& defs, const LensLibrary* lib = nullptr);
bool typecheck_dnf_lens(const DnfLens& dl, const DnfRegex& src, const DnfRegex& tgt, const Definitions& defs,
                        const LensLibrary* lib = nullptr);

class DnfLensRunner {
 public:
  DnfLensRunner(DnfLens dl, const Definitions& defs, const LensLibrary* lib = nullptr);

  std::string get(std::string_view s);  // throws InputNotInSource
  std::string put(std::string_view t);  // throws InputNotInTarget

 private:
  std::optional<std::string> get_dnf(const DnfLens& dl, std::string_view s);
  std::optional<std::string> put_dnf(const DnfLens& dl, std::string_view t);
  std::string get_atom(const AtomLens& al, std::string_view s);
  std::string put_atom(const AtomLens& al, std::string_view t);
  LensRunner& via_runner(const Lens& l);
  const DnfRegex& source_of(const DnfLens& dl);
  const DnfRegex& target_of(const DnfLens& dl);

  DnfLens dl_;
  Definitions defs_;
  const LensLibrary* lib_;
  LanguageCache cache_;
  std::map<const DnfLens*, DnfRegex> sources_;
  std::map<const DnfLens*, DnfRegex> targets_;
  std::map<std::string, std::unique_ptr<LensRunner>> vias_;
};

std::string dnf_lens_get(const DnfLens& dl, std::string_view s, const Definitions& defs,
                         const LensLibrary* lib = nullptr);
std::string dnf_lens_put(const DnfLens& dl, std::string_view t, const Definitions& defs,
                         const LensLibrary* lib = nullptr);

// Structural translation into combinators.
Lens dnf_lens_to_lens(const DnfLens& dl);

// Semantics-preserving cleanup: merges constants, factors common prefixes and
// suffixes of ors, and collapses identity subterms.
Lens simplify_lens(const Lens& l, const Definitions& defs, const LensLibrary* lib = nullptr);
Regex simplify_regex(const Regex& r);

}  // namespace bilens
