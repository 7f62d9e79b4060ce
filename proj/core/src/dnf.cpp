#include "bilens/dnf.hpp"

#include <map>

#include "bilens/errors.hpp"

namespace bilens {

Atom Atom::star(DnfRegex body) {
  Atom a;
  a.kind_ = Kind::Star;
  a.body_ = std::make_shared<const DnfRegex>(std::move(body));
  return a;
}

Atom Atom::var(std::string name) {
  Atom a;
  a.kind_ = Kind::Var;
  a.name_ = std::move(name);
  return a;
}

bool operator==(const Atom& a, const Atom& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == Atom::Kind::Var) return a.name_ == b.name_;
  return a.body_ == b.body_ || *a.body_ == *b.body_;
}

Sequence Sequence::literal(std::string s) {
  Sequence sq;
  sq.strings[0] = std::move(s);
  return sq;
}

Sequence Sequence::of_atom(Atom a) {
  Sequence sq;
  sq.atoms.push_back(std::move(a));
  sq.strings.emplace_back();
  return sq;
}

Sequence seq_concat(const Sequence& sq, const Sequence& tq) {
  Sequence out = sq;
  out.strings.back() += tq.strings.front();
  out.atoms.insert(out.atoms.end(), tq.atoms.begin(), tq.atoms.end());
  out.strings.insert(out.strings.end(), tq.strings.begin() + 1, tq.strings.end());
  return out;
}

DnfRegex dnf_concat(const DnfRegex& d1, const DnfRegex& d2) {
  DnfRegex out;
  out.sequences.reserve(d1.sequences.size() * d2.sequences.size());
  for (const auto& sq : d1.sequences) {
    for (const auto& tq : d2.sequences) out.sequences.push_back(seq_concat(sq, tq));
  }
  return out;
}

DnfRegex dnf_or(const DnfRegex& d1, const DnfRegex& d2) {
  DnfRegex out = d1;
  out.sequences.insert(out.sequences.end(), d2.sequences.begin(), d2.sequences.end());
  return out;
}

DnfRegex atom_to_dnf(const Atom& a) { return DnfRegex{{Sequence::of_atom(a)}}; }

DnfRegex to_dnf(const Regex& r) {
  switch (r.kind()) {
    case RegexKind::Str:
      return DnfRegex{{Sequence::literal(r.text())}};
    case RegexKind::Empty:
      return DnfRegex{};
    case RegexKind::Star:
      return atom_to_dnf(Atom::star(to_dnf(r.inner())));
    case RegexKind::Concat:
      return dnf_concat(to_dnf(r.left()), to_dnf(r.right()));
    case RegexKind::Or:
      return dnf_or(to_dnf(r.left()), to_dnf(r.right()));
    case RegexKind::Var:
      return atom_to_dnf(Atom::var(r.text()));
  }
  return DnfRegex{};
}

Regex to_regex(const Atom& a) {
  if (a.is_var()) return Regex::var(a.name());
  return Regex::star(to_regex(a.body()));
}

Regex to_regex(const Sequence& sq) {
  std::vector<Regex> parts;
  for (std::size_t i = 0; i < sq.strings.size(); ++i) {
    if (!sq.strings[i].empty()) parts.push_back(Regex::str(sq.strings[i]));
    if (i < sq.atoms.size()) parts.push_back(to_regex(sq.atoms[i]));
  }
  return concat_all(parts);
}

Regex to_regex(const DnfRegex& d) {
  std::vector<Regex> branches;
  branches.reserve(d.sequences.size());
  for (const auto& sq : d.sequences) branches.push_back(to_regex(sq));
  return alt_all(branches);
}

namespace {

void print(const DnfRegex& d, std::string& out);

void print(const Atom& a, std::string& out) {
  if (a.is_var()) {
    out += a.name();
    return;
  }
  out += '(';
  print(a.body(), out);
  out += ")*";
}

void print(const Sequence& sq, std::string& out) {
  out += '[';
  for (std::size_t i = 0; i < sq.strings.size(); ++i) {
    if (i > 0) out += ' ';
    out += quote(sq.strings[i]);
    if (i < sq.atoms.size()) {
      out += ' ';
      print(sq.atoms[i], out);
    }
  }
  out += ']';
}

void print(const DnfRegex& d, std::string& out) {
  out += '<';
  for (std::size_t i = 0; i < d.sequences.size(); ++i) {
    if (i > 0) out += " | ";
    print(d.sequences[i], out);
  }
  out += '>';
}

}  // namespace

std::string to_string(const DnfRegex& d) {
  std::string out;
  print(d, out);
  return out;
}

std::string to_string(const Sequence& sq) {
  std::string out;
  print(sq, out);
  return out;
}

std::string to_string(const Atom& a) {
  std::string out;
  print(a, out);
  return out;
}

DnfRegex unroll_star_left(const Atom& a) {
  if (!a.is_star()) throw NotAStar("cannot unroll variable " + a.name());
  DnfRegex eps{{Sequence::literal("")}};
  return dnf_or(eps, dnf_concat(a.body(), atom_to_dnf(a)));
}

DnfRegex unroll_star_right(const Atom& a) {
  if (!a.is_star()) throw NotAStar("cannot unroll variable " + a.name());
  DnfRegex eps{{Sequence::literal("")}};
  return dnf_or(eps, dnf_concat(atom_to_dnf(a), a.body()));
}

const char* to_string(RewriteRule rule) {
  switch (rule) {
    case RewriteRule::UnrollL:
      return "UnrollL";
    case RewriteRule::UnrollR:
      return "UnrollR";
    case RewriteRule::Substitute:
      return "Substitute";
  }
  return "?";
}

namespace {

DnfRegex rewrite(const DnfRegex& d, const RewritePath& path, std::size_t idx, RewriteRule rule,
                 const Definitions& defs) {
  const PathStep& step = path[idx];
  if (step.seq >= d.sequences.size()) throw BadPath("sequence index out of range");
  const Sequence& sq = d.sequences[step.seq];
  if (step.atom >= sq.atoms.size()) throw BadPath("atom index out of range");
  const Atom& a = sq.atoms[step.atom];

  DnfRegex replacement;
  if (idx + 1 < path.size()) {
    if (!a.is_star()) throw BadPath("path descends into a variable");
    replacement = atom_to_dnf(Atom::star(rewrite(a.body(), path, idx + 1, rule, defs)));
  } else {
    switch (rule) {
      case RewriteRule::UnrollL:
        if (!a.is_star()) throw RuleInapplicable("UnrollL needs a star atom");
        replacement = unroll_star_left(a);
        break;
      case RewriteRule::UnrollR:
        if (!a.is_star()) throw RuleInapplicable("UnrollR needs a star atom");
        replacement = unroll_star_right(a);
        break;
      case RewriteRule::Substitute:
        if (!a.is_var()) throw RuleInapplicable("Substitute needs a variable atom");
        replacement = to_dnf(defs.at(a.name()));
        break;
    }
  }

  Sequence prefix;
  prefix.strings.assign(sq.strings.begin(), sq.strings.begin() + static_cast<std::ptrdiff_t>(step.atom) + 1);
  prefix.atoms.assign(sq.atoms.begin(), sq.atoms.begin() + static_cast<std::ptrdiff_t>(step.atom));
  Sequence suffix;
  suffix.strings.assign(sq.strings.begin() + static_cast<std::ptrdiff_t>(step.atom) + 1, sq.strings.end());
  suffix.atoms.assign(sq.atoms.begin() + static_cast<std::ptrdiff_t>(step.atom) + 1, sq.atoms.end());

  DnfRegex middle = dnf_concat(dnf_concat(DnfRegex{{prefix}}, replacement), DnfRegex{{suffix}});
  DnfRegex out;
  out.sequences.assign(d.sequences.begin(), d.sequences.begin() + static_cast<std::ptrdiff_t>(step.seq));
  out.sequences.insert(out.sequences.end(), middle.sequences.begin(), middle.sequences.end());
  out.sequences.insert(out.sequences.end(), d.sequences.begin() + static_cast<std::ptrdiff_t>(step.seq) + 1,
                       d.sequences.end());
  return out;
}

void collect_sites(const DnfRegex& d, RewritePath& prefix, std::size_t depth, std::vector<AtomSite>& out) {
  for (std::size_t i = 0; i < d.sequences.size(); ++i) {
    const Sequence& sq = d.sequences[i];
    for (std::size_t j = 0; j < sq.atoms.size(); ++j) {
      prefix.push_back({i, j});
      out.push_back({prefix, depth, &sq.atoms[j]});
      if (sq.atoms[j].is_star()) collect_sites(sq.atoms[j].body(), prefix, depth + 1, out);
      prefix.pop_back();
    }
  }
}

void collect_current(const DnfRegex& d, std::size_t depth, StarDepthSet& out) {
  for (const auto& sq : d.sequences) {
    for (const auto& a : sq.atoms) {
      if (a.is_var()) {
        out.insert({a.name(), depth});
      } else {
        collect_current(a.body(), depth + 1, out);
      }
    }
  }
}

class TransitiveSets {
 public:
  explicit TransitiveSets(const Definitions& defs) : defs_(defs) {}

  void collect(const DnfRegex& d, std::size_t offset, StarDepthSet& out) {
    for (const auto& sq : d.sequences) {
      for (const auto& a : sq.atoms) {
        if (a.is_var()) {
          out.insert({a.name(), offset});
          for (const auto& p : of_var(a.name())) out.insert({p.name, p.depth + offset});
        } else {
          // The body stays under the star, and an unrolling exposes a copy
          // one level shallower.
          collect(a.body(), offset, out);
          collect(a.body(), offset + 1, out);
        }
      }
    }
  }

 private:
  const StarDepthSet& of_var(const std::string& name) {
    auto it = memo_.find(name);
    if (it != memo_.end()) return it->second;
    StarDepthSet rel;
    collect(to_dnf(defs_.at(name)), 0, rel);
    return memo_.emplace(name, std::move(rel)).first->second;
  }

  const Definitions& defs_;
  std::map<std::string, StarDepthSet> memo_;
};

}  // namespace

DnfRegex apply_rewrite_at(const DnfRegex& d, const RewritePath& path, RewriteRule rule,
                          const Definitions& defs) {
  if (path.empty()) throw BadPath("empty path");
  return rewrite(d, path, 0, rule, defs);
}

std::vector<AtomSite> atom_sites(const DnfRegex& d) {
  std::vector<AtomSite> out;
  RewritePath prefix;
  collect_sites(d, prefix, 0, out);
  return out;
}

StarDepthSet current_set(const DnfRegex& d) {
  StarDepthSet out;
  collect_current(d, 0, out);
  return out;
}

StarDepthSet transitive_set(const DnfRegex& d, const Definitions& defs) {
  return transitive_set_at(d, defs, 0);
}

StarDepthSet transitive_set_at(const DnfRegex& d, const Definitions& defs, std::size_t offset) {
  StarDepthSet out;
  TransitiveSets ts(defs);
  ts.collect(d, offset, out);
  return out;
}

}  // namespace bilens
