#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bilens/regex.hpp"

namespace bilens {

enum class ParseKind { Leaf, Star, Concat, Or, Var };

struct ParseTree {
  ParseKind kind = ParseKind::Leaf;
  std::string text;  // Leaf: the matched literal; Var: the name
  std::vector<ParseTree> children;
  bool right_branch = false;  // Or only

  friend bool operator==(const ParseTree&, const ParseTree&) = default;
};

std::string flatten(const ParseTree& t);

// Unique parse of s against r, keeping Var boundaries. Throws NoParse when
// s is not in L(r) and AmbiguityViolation when a second parse exists.
ParseTree parse_unique(const Regex& r, std::string_view s, const Definitions& defs);

}  // namespace bilens
