#include "bilens/parse_tree.hpp"

#include <memory>
#include <unordered_map>

#include "bilens/automata.hpp"
#include "bilens/errors.hpp"

namespace bilens {

namespace {

void flatten_into(const ParseTree& t, std::string& out) {
  if (t.kind == ParseKind::Leaf) {
    out += t.text;
    return;
  }
  for (const auto& c : t.children) flatten_into(c, out);
}

class Parser {
 public:
  explicit Parser(const Definitions& defs) : defs_(defs) {}

  ParseTree parse(const Regex& r, std::string_view s) {
    switch (r.kind()) {
      case RegexKind::Str:
        if (s != r.text()) throw NoParse("literal mismatch");
        return ParseTree{ParseKind::Leaf, std::string(s), {}, false};
      case RegexKind::Empty:
        throw NoParse("empty language");
      case RegexKind::Var: {
        ParseTree t{ParseKind::Var, r.text(), {}, false};
        t.children.push_back(parse(defs_.at(r.text()), s));
        return t;
      }
      case RegexKind::Or: {
        bool in_left = dfa(r.left()).accepts(s);
        bool in_right = dfa(r.right()).accepts(s);
        if (in_left && in_right) throw AmbiguityViolation("string matches both branches of " + to_string(r));
        if (!in_left && !in_right) throw NoParse("no branch matches");
        ParseTree t{ParseKind::Or, "", {}, in_right};
        t.children.push_back(parse(in_left ? r.left() : r.right(), s));
        return t;
      }
      case RegexKind::Concat: {
        const Dfa& rd = dfa(r.right());
        std::size_t found = 0;
        std::size_t split = 0;
        for (std::size_t k : dfa(r.left()).match_ends(s, 0)) {
          if (rd.accepts(s.substr(k))) {
            ++found;
            split = k;
          }
        }
        if (found == 0) throw NoParse("no split");
        if (found > 1) throw AmbiguityViolation("multiple splits for " + to_string(r));
        ParseTree t{ParseKind::Concat, "", {}, false};
        t.children.push_back(parse(r.left(), s.substr(0, split)));
        t.children.push_back(parse(r.right(), s.substr(split)));
        return t;
      }
      case RegexKind::Star: {
        const Dfa& body = dfa(r.inner());
        const Dfa& whole = dfa(r);
        ParseTree t{ParseKind::Star, "", {}, false};
        std::size_t pos = 0;
        while (pos < s.size()) {
          std::size_t found = 0;
          std::size_t next = 0;
          for (std::size_t k : body.match_ends(s.substr(pos), 0)) {
            if (k == 0) continue;
            if (whole.accepts(s.substr(pos + k))) {
              ++found;
              next = pos + k;
            }
          }
          if (found == 0) throw NoParse("no factorization");
          if (found > 1) throw AmbiguityViolation("multiple factorizations for " + to_string(r));
          t.children.push_back(parse(r.inner(), s.substr(pos, next - pos)));
          pos = next;
        }
        return t;
      }
    }
    throw NoParse("unreachable");
  }

  const Dfa& dfa(const Regex& r) {
    auto it = cache_.find(r.node_id());
    if (it != cache_.end()) return *it->second.second;
    auto d = std::make_unique<Dfa>(Dfa::build(resolve(r, defs_)));
    const Dfa& ref = *d;
    cache_.emplace(r.node_id(), std::make_pair(r, std::move(d)));
    return ref;
  }

 private:
  const Definitions& defs_;
  // Keeps the regex alive so its node address stays a valid key.
  std::unordered_map<const void*, std::pair<Regex, std::unique_ptr<Dfa>>> cache_;
};

}  // namespace

std::string flatten(const ParseTree& t) {
  std::string out;
  flatten_into(t, out);
  return out;
}

ParseTree parse_unique(const Regex& r, std::string_view s, const Definitions& defs) {
  Parser p(defs);
  if (!p.dfa(r).accepts(s)) throw NoParse("string not in language of " + to_string(r));
  return p.parse(r, s);
}

}  // namespace bilens
