#include "bilens/language_cache.hpp"

#include "bilens/errors.hpp"

namespace bilens {

LanguageCache::LanguageCache(Definitions defs) : defs_(std::move(defs)) {}

const Dfa& LanguageCache::keyed(const std::string& key, const Regex& r) {
  auto it = by_key_.find(key);
  if (it != by_key_.end()) return *it->second;
  auto d = std::make_unique<Dfa>(Dfa::build(resolve(r, defs_)));
  const Dfa& ref = *d;
  by_key_.emplace(key, std::move(d));
  return ref;
}

const Dfa& LanguageCache::dfa(const Regex& r) {
  auto it = by_node_.find(r.node_id());
  if (it != by_node_.end()) return *it->second.second;
  const Dfa& d = keyed("R" + to_string(r), r);
  by_node_.emplace(r.node_id(), std::make_pair(r, &d));
  return d;
}

bool LanguageCache::accepts(const DnfRegex& d, std::string_view s) {
  return find_sequence(d, s).has_value();
}

bool LanguageCache::accepts(const Sequence& sq, std::string_view s) {
  return sequence_matcher(sq).suffixes.front()->accepts(s);
}

bool LanguageCache::accepts(const Atom& a, std::string_view s) {
  return keyed("A" + to_string(a), to_regex(a)).accepts(s);
}

const LanguageCache::SequenceMatcher& LanguageCache::sequence_matcher(const Sequence& sq) {
  std::string key = to_string(sq);
  auto it = sequences_.find(key);
  if (it != sequences_.end()) return it->second;
  SequenceMatcher m;
  for (const auto& a : sq.atoms) m.atoms.push_back(&keyed("A" + to_string(a), to_regex(a)));
  for (std::size_t j = 0; j < sq.strings.size(); ++j) {
    Sequence suffix;
    suffix.strings.assign(sq.strings.begin() + static_cast<std::ptrdiff_t>(j), sq.strings.end());
    suffix.atoms.assign(sq.atoms.begin() + static_cast<std::ptrdiff_t>(j), sq.atoms.end());
    m.suffixes.push_back(&keyed("S" + to_string(suffix), to_regex(suffix)));
  }
  return sequences_.emplace(std::move(key), std::move(m)).first->second;
}

const LanguageCache::StarMatcher& LanguageCache::star_matcher(const DnfRegex& body) {
  std::string key = to_string(body);
  auto it = stars_.find(key);
  if (it != stars_.end()) return it->second;
  Regex b = to_regex(body);
  StarMatcher m;
  m.body = &keyed("D" + key, b);
  m.whole = &keyed("A(" + key + ")*", Regex::star(b));
  return stars_.emplace(std::move(key), m).first->second;
}

std::optional<std::size_t> LanguageCache::find_sequence(const DnfRegex& d, std::string_view s) {
  for (std::size_t i = 0; i < d.sequences.size(); ++i) {
    if (accepts(d.sequences[i], s)) return i;
  }
  return std::nullopt;
}

std::vector<std::string> LanguageCache::split_sequence(const Sequence& sq, std::string_view s) {
  const SequenceMatcher& m = sequence_matcher(sq);
  if (!m.suffixes.front()->accepts(s)) throw NoParse("string not in sequence " + to_string(sq));
  std::vector<std::string> pieces;
  std::size_t pos = sq.strings[0].size();
  for (std::size_t j = 0; j < sq.atoms.size(); ++j) {
    std::size_t found = 0;
    std::size_t end = 0;
    for (std::size_t k : m.atoms[j]->match_ends(s, pos)) {
      if (m.suffixes[j + 1]->accepts(s.substr(k))) {
        ++found;
        end = k;
      }
    }
    if (found == 0) throw NoParse("no split for sequence " + to_string(sq));
    if (found > 1) throw AmbiguityViolation("ambiguous split for sequence " + to_string(sq));
    pieces.emplace_back(s.substr(pos, end - pos));
    pos = end + sq.strings[j + 1].size();
  }
  return pieces;
}

std::vector<std::string> LanguageCache::split_star(const DnfRegex& body, std::string_view s) {
  const StarMatcher& m = star_matcher(body);
  if (!m.whole->accepts(s)) throw NoParse("string not in iteration of " + to_string(body));
  std::vector<std::string> pieces;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t found = 0;
    std::size_t end = 0;
    for (std::size_t k : m.body->match_ends(s, pos)) {
      if (k == pos) continue;
      if (m.whole->accepts(s.substr(k))) {
        ++found;
        end = k;
      }
    }
    if (found == 0) throw NoParse("no factorization under " + to_string(body));
    if (found > 1) throw AmbiguityViolation("ambiguous factorization under " + to_string(body));
    pieces.emplace_back(s.substr(pos, end - pos));
    pos = end;
  }
  return pieces;
}

}  // namespace bilens
