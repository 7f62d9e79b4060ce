#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "bilens/regex.hpp"

namespace bilens {

struct DnfRegex;

// A starred DNF regex or an opaque user-defined name.
class Atom {
 public:
  enum class Kind { Star, Var };

  static Atom star(DnfRegex body);
  static Atom var(std::string name);

  Kind kind() const { return kind_; }
  bool is_star() const { return kind_ == Kind::Star; }
  bool is_var() const { return kind_ == Kind::Var; }
  const DnfRegex& body() const { return *body_; }  // Star only
  const std::string& name() const { return name_; }  // Var only

  friend bool operator==(const Atom& a, const Atom& b);

 private:
  Kind kind_ = Kind::Var;
  std::shared_ptr<const DnfRegex> body_;
  std::string name_;
};

// s0 A1 s1 ... An sn; always strings.size() == atoms.size() + 1.
struct Sequence {
  std::vector<std::string> strings{""};
  std::vector<Atom> atoms;

  static Sequence literal(std::string s);
  static Sequence of_atom(Atom a);

  friend bool operator==(const Sequence&, const Sequence&) = default;
};

// Disjunction of sequences; no sequences denotes the empty language.
struct DnfRegex {
  std::vector<Sequence> sequences;

  friend bool operator==(const DnfRegex&, const DnfRegex&) = default;
};

Sequence seq_concat(const Sequence& sq, const Sequence& tq);
DnfRegex dnf_concat(const DnfRegex& d1, const DnfRegex& d2);
DnfRegex dnf_or(const DnfRegex& d1, const DnfRegex& d2);
DnfRegex atom_to_dnf(const Atom& a);

DnfRegex to_dnf(const Regex& r);
Regex to_regex(const DnfRegex& d);
Regex to_regex(const Sequence& sq);
Regex to_regex(const Atom& a);

// Injective textual form, e.g. <["a" X ""] | [""]>; used as a structural key.
std::string to_string(const DnfRegex& d);
std::string to_string(const Sequence& sq);
std::string to_string(const Atom& a);

DnfRegex unroll_star_left(const Atom& a);
DnfRegex unroll_star_right(const Atom& a);

enum class RewriteRule { UnrollL, UnrollR, Substitute };
const char* to_string(RewriteRule rule);

struct PathStep {
  std::size_t seq = 0;
  std::size_t atom = 0;
  friend bool operator==(const PathStep&, const PathStep&) = default;
};
// Successive steps descend into star bodies.
using RewritePath = std::vector<PathStep>;

DnfRegex apply_rewrite_at(const DnfRegex& d, const RewritePath& path, RewriteRule rule,
                          const Definitions& defs);

struct AtomSite {
  RewritePath path;
  std::size_t depth = 0;  // stars strictly above the atom
  const Atom* atom = nullptr;
};

// Every atom occurrence in pre-order, nested stars included.
std::vector<AtomSite> atom_sites(const DnfRegex& d);

struct StarDepthPair {
  std::string name;
  std::size_t depth = 0;
  friend auto operator<=>(const StarDepthPair&, const StarDepthPair&) = default;
};
using StarDepthSet = std::set<StarDepthPair>;

StarDepthSet current_set(const DnfRegex& d);
StarDepthSet transitive_set(const DnfRegex& d, const Definitions& defs);
// Pairs reachable from inside `d` measured relative to its own top level.
StarDepthSet transitive_set_at(const DnfRegex& d, const Definitions& defs, std::size_t offset);

}  // namespace bilens
