#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bilens {

enum class RegexKind { Str, Empty, Star, Concat, Or, Var };

// Immutable regular expression over bytes 0x00-0x7F. Copies share structure.
class Regex {
 public:
  Regex();  // the empty language

  static Regex str(std::string s);
  static Regex epsilon() { return str(""); }
  static Regex empty();
  static Regex star(Regex inner);
  static Regex concat(Regex left, Regex right);
  static Regex alt(Regex left, Regex right);
  static Regex var(std::string name);

  RegexKind kind() const;
  // String literal for Str, identifier for Var, empty otherwise.
  const std::string& text() const;
  const Regex& inner() const;  // Star
  const Regex& left() const;   // Concat, Or
  const Regex& right() const;  // Concat, Or

  // Identity of the shared node, usable as a cache key while the regex lives.
  const void* node_id() const { return node_.get(); }

  friend bool operator==(const Regex& a, const Regex& b);
  friend bool operator!=(const Regex& a, const Regex& b) { return !(a == b); }
  friend bool has_vars(const Regex& r);

 private:
  struct Node;
  explicit Regex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Right-associated chains; an empty list yields epsilon / the empty language.
Regex concat_all(const std::vector<Regex>& parts);
Regex alt_all(const std::vector<Regex>& branches);

// Concrete syntax shared with spec files.
std::string to_string(const Regex& r);
std::string quote(std::string_view s);

std::size_t depth(const Regex& r);
std::size_t size(const Regex& r);
bool has_vars(const Regex& r);
std::set<std::string> free_vars(const Regex& r);

// Ordered, acyclic name bindings; a body may only mention earlier names.
class Definitions {
 public:
  void add(const std::string& name, const Regex& body);
  bool contains(const std::string& name) const;
  const Regex& at(const std::string& name) const;  // throws UnboundVariable
  const std::vector<std::pair<std::string, Regex>>& bindings() const { return bindings_; }
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }

  friend bool operator==(const Definitions& a, const Definitions& b) {
    return a.bindings_ == b.bindings_;
  }

 private:
  std::vector<std::pair<std::string, Regex>> bindings_;
  std::unordered_map<std::string, std::size_t> index_;
};

Regex resolve(const Regex& r, const Definitions& defs);

}  // namespace bilens
