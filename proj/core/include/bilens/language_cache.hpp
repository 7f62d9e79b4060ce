#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bilens/automata.hpp"
#include "bilens/dnf.hpp"
#include "bilens/regex.hpp"

namespace bilens {

// Memoized automata for membership tests and unique splitting of strings
// against regexes and DNF pieces. Not thread-safe; use one per run.
class LanguageCache {
 public:
  explicit LanguageCache(Definitions defs);

  const Definitions& definitions() const { return defs_; }

  // Vars are resolved against the definitions. Keyed by node identity.
  const Dfa& dfa(const Regex& r);
  bool accepts(const Regex& r, std::string_view s) { return dfa(r).accepts(s); }

  bool accepts(const DnfRegex& d, std::string_view s);
  bool accepts(const Sequence& sq, std::string_view s);
  bool accepts(const Atom& a, std::string_view s);

  // The first sequence of d whose language contains s.
  std::optional<std::size_t> find_sequence(const DnfRegex& d, std::string_view s);
  // The substring matched by each atom; throws NoParse or AmbiguityViolation.
  std::vector<std::string> split_sequence(const Sequence& sq, std::string_view s);
  // The factorization of s into words of the body; throws as above.
  std::vector<std::string> split_star(const DnfRegex& body, std::string_view s);

 private:
  struct SequenceMatcher {
    std::vector<const Dfa*> atoms;
    std::vector<const Dfa*> suffixes;  // suffixes[j]: s_j A_{j+1} ... s_n
  };
  struct StarMatcher {
    const Dfa* body = nullptr;
    const Dfa* whole = nullptr;
  };

  const Dfa& keyed(const std::string& key, const Regex& r);
  const SequenceMatcher& sequence_matcher(const Sequence& sq);
  const StarMatcher& star_matcher(const DnfRegex& body);

  Definitions defs_;
  std::unordered_map<const void*, std::pair<Regex, const Dfa*>> by_node_;
  std::unordered_map<std::string, std::unique_ptr<Dfa>> by_key_;
  std::unordered_map<std::string, SequenceMatcher> sequences_;
  std::unordered_map<std::string, StarMatcher> stars_;
};

}  // namespace bilens
