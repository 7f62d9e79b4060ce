#include "bilens/dnf_lens.hpp"
#include "bilens/errors.hpp"
#include "bilens/regex_analysis.hpp"

namespace bilens {

Regex simplify_regex(const Regex& r) {
  switch (r.kind()) {
    case RegexKind::Star: {
      Regex in = simplify_regex(r.inner());
      if (in.kind() == RegexKind::Empty || (in.kind() == RegexKind::Str && in.text().empty())) return Regex::epsilon();
      return Regex::star(in);
    }
    case RegexKind::Or: {
      Regex a = simplify_regex(r.left());
      Regex b = simplify_regex(r.right());
      if (a.kind() == RegexKind::Empty) return b;
      if (b.kind() == RegexKind::Empty) return a;
      return Regex::alt(a, b);
    }
    case RegexKind::Concat: {
      Regex a = simplify_regex(r.left());
      Regex b = simplify_regex(r.right());
      if (a.kind() == RegexKind::Empty || b.kind() == RegexKind::Empty) return Regex::empty();
      if (a.kind() == RegexKind::Str && a.text().empty()) return b;
      if (b.kind() == RegexKind::Str && b.text().empty()) return a;
      if (a.kind() == RegexKind::Str && b.kind() == RegexKind::Str) return Regex::str(a.text() + b.text());
      if (a.kind() == RegexKind::Str && b.kind() == RegexKind::Concat && b.left().kind() == RegexKind::Str) {
        return Regex::concat(Regex::str(a.text() + b.left().text()), b.right());
      }
      return Regex::concat(a, b);
    }
    default:
      return r;
  }
}

namespace {

class Simplifier {
 public:
  Simplifier(const Definitions& defs, const LensLibrary* lib) : defs_(defs), lib_(lib) {}

  Lens run(const Lens& l) {
    switch (l.kind()) {
      case LensKind::Const:
        if (l.source_text() == l.target_text()) return Lens::identity(Regex::str(l.source_text()));
        return l;
      case LensKind::Identity:
        return Lens::identity(simplify_regex(l.regex()));
      case LensKind::Ref:
        return l;
      case LensKind::Iterate: {
        Lens in = run(l.inner());
        Lens out = Lens::iterate(in);
        if (auto r = plain_identity(in)) return collapse(out, Regex::star(*r));
        return out;
      }
      case LensKind::Swap:
        return Lens::swap(run(l.left()), run(l.right()));
      case LensKind::Compose:
        return Lens::compose(run(l.left()), run(l.right()));
      case LensKind::Concat:
        return concat(l);
      case LensKind::Or:
        return alt(l);
    }
    return l;
  }

 private:
  static void flatten(const Lens& l, LensKind kind, std::vector<Lens>& out) {
    if (l.kind() == kind) {
      flatten(l.left(), kind, out);
      flatten(l.right(), kind, out);
    } else {
      out.push_back(l);
    }
  }

  // The regex of an identity lens over a Var-free type.
  static std::optional<Regex> plain_identity(const Lens& l) {
    if (l.kind() == LensKind::Identity && !has_vars(l.regex())) return l.regex();
    return std::nullopt;
  }

  // Constant parts, counting identities on a single string.
  static std::optional<std::pair<std::string, std::string>> as_const(const Lens& l) {
    if (l.kind() == LensKind::Const) return std::make_pair(l.source_text(), l.target_text());
    if (l.kind() == LensKind::Identity && l.regex().kind() == RegexKind::Str) {
      return std::make_pair(l.regex().text(), l.regex().text());
    }
    return std::nullopt;
  }

  static Lens make_const(const std::string& a, const std::string& b) {
    return a == b ? Lens::identity(Regex::str(a)) : Lens::constant(a, b);
  }

  bool well_typed(const Lens& l) {
    try {
      typecheck_lens(l, defs_, lib_);
      return true;
    } catch (const Error&) {
      return false;
    }
  }

  Lens collapse(const Lens& original, const Regex& r) {
    Lens id = Lens::identity(simplify_regex(r));
    return strongly_unambiguous(id.regex()) ? id : original;
  }

  Lens concat(const Lens& l) {
    std::vector<Lens> parts;
    flatten(l, LensKind::Concat, parts);
    std::vector<Lens> out;
    for (const auto& p : parts) {
      Lens s = run(p);
      auto c = as_const(s);
      if (c && c->first.empty() && c->second.empty()) continue;
      if (!out.empty()) {
        auto prev = as_const(out.back());
        if (prev && c) {
          out.back() = make_const(prev->first + c->first, prev->second + c->second);
          continue;
        }
        auto pr = plain_identity(out.back());
        auto cr = plain_identity(s);
        if (pr && cr) {
          Lens merged = collapse(s, Regex::concat(*pr, *cr));
          if (merged != s) {
            out.back() = merged;
            continue;
          }
        }
      }
      out.push_back(s);
    }
    return concat_all(out);
  }

  Lens alt(const Lens& l) {
    std::vector<Lens> branches;
    flatten(l, LensKind::Or, branches);
    std::vector<Lens> simplified;
    for (const auto& b : branches) simplified.push_back(run(b));
    Lens plain = rebuild_or(simplified);

    Lens result = plain;
    if (auto factored = factor(simplified)) {
      if (well_typed(*factored)) result = *factored;
    }
    std::vector<Regex> ids;
    std::vector<Lens> top;
    flatten(result, LensKind::Or, top);
    for (const auto& b : top) {
      auto r = plain_identity(b);
      if (!r) return result;
      ids.push_back(*r);
    }
    return collapse(result, alt_all(ids));
  }

  static Lens rebuild_or(const std::vector<Lens>& branches) {
    Lens out = branches.back();
    for (std::size_t i = branches.size() - 1; i-- > 0;) out = Lens::alt(branches[i], out);
    return out;
  }

  // Pulls out the longest common prefix and suffix of the branch chains.
  std::optional<Lens> factor(const std::vector<Lens>& branches) {
    std::vector<std::vector<Lens>> chains;
    for (const auto& b : branches) {
      std::vector<Lens> c;
      flatten(b, LensKind::Concat, c);
      chains.push_back(std::move(c));
    }
    std::size_t shortest = chains[0].size();
    for (const auto& c : chains) shortest = std::min(shortest, c.size());
    std::size_t pre = 0;
    while (pre < shortest && same_at(chains, [pre](const std::vector<Lens>&) { return pre; })) ++pre;
    std::size_t suf = 0;
    while (suf + pre < shortest &&
           same_at(chains, [suf](const std::vector<Lens>& c) { return c.size() - 1 - suf; })) {
      ++suf;
    }
    if (pre == 0 && suf == 0) return std::nullopt;
    std::vector<Lens> rests;
    for (const auto& c : chains) {
      std::vector<Lens> mid(c.begin() + static_cast<std::ptrdiff_t>(pre),
                            c.end() - static_cast<std::ptrdiff_t>(suf));
      rests.push_back(run(concat_all(mid)));
    }
    std::vector<Lens> parts(chains[0].begin(), chains[0].begin() + static_cast<std::ptrdiff_t>(pre));
    parts.push_back(alt(rebuild_or(rests)));
    parts.insert(parts.end(), chains[0].end() - static_cast<std::ptrdiff_t>(suf), chains[0].end());
    return concat(concat_all(parts));
  }

  template <typename Index>
  static bool same_at(const std::vector<std::vector<Lens>>& chains, Index index) {
    const Lens& first = chains[0][index(chains[0])];
    for (const auto& c : chains) {
      if (c[index(c)] != first) return false;
    }
    return true;
  }

  const Definitions& defs_;
  const LensLibrary* lib_;
};

}  // namespace

Lens simplify_lens(const Lens& l, const Definitions& defs, const LensLibrary* lib) {
  Simplifier s(defs, lib);
  Lens cur = l;
  for (int round = 0; round < 16; ++round) {
    Lens next = s.run(cur);
    if (next == cur) break;
    cur = next;
  }
  return cur;
}

}  // namespace bilens
