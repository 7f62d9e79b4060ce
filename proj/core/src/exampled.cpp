#include "bilens/exampled.hpp"

#include <algorithm>
#include <deque>

#include "bilens/errors.hpp"
#include "bilens/regex_analysis.hpp"

namespace bilens {

VarClasses::VarClasses(const LensLibrary& lib, const Definitions& defs) : lib_(&lib), defs_(defs) {
  std::map<std::string, std::vector<std::pair<std::string, Lens>>> edges;
  for (const auto& e : lib.entries()) {
    if (e.source.kind() != RegexKind::Var || e.target.kind() != RegexKind::Var) continue;
    const std::string& a = e.source.text();
    const std::string& b = e.target.text();
    if (a == b) continue;
    Lens fwd = Lens::ref(e.name);
    Lens bwd = Lens::ref(e.name, true);
    direct_.emplace(std::make_pair(a, b), fwd);
    direct_.emplace(std::make_pair(b, a), bwd);
    edges[a].emplace_back(b, fwd);
    edges[b].emplace_back(a, bwd);
  }
  // Breadth-first from the smallest member of each component; the path lens
  // from a member to the representative is the reversed path.
  for (const auto& [start, unused] : edges) {
    if (rep_.count(start)) continue;
    std::vector<std::string> members;
    std::deque<std::string> queue{start};
    std::set<std::string> seen{start};
    while (!queue.empty()) {
      std::string cur = queue.front();
      queue.pop_front();
      members.push_back(cur);
      for (const auto& [next, l] : edges[cur]) {
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
    const std::string rep = *std::min_element(members.begin(), members.end());
    rep_[rep] = rep;
    std::map<std::string, Lens> from_rep;
    std::deque<std::string> q2{rep};
    while (!q2.empty()) {
      std::string cur = q2.front();
      q2.pop_front();
      for (const auto& [next, l] : edges[cur]) {
        if (next == rep || from_rep.count(next)) continue;
        from_rep[next] = cur == rep ? l : Lens::compose(from_rep.at(cur), l);
        rep_[next] = rep;
        q2.push_back(next);
      }
    }
    for (const auto& [name, l] : from_rep) to_rep_[name] = invert(l);
  }
}

const std::string& VarClasses::representative(const std::string& name) const {
  auto it = rep_.find(name);
  return it == rep_.end() ? name : it->second;
}

bool VarClasses::related(const std::string& a, const std::string& b) const {
  return representative(a) == representative(b);
}

std::optional<Lens> VarClasses::lens_between(const std::string& from, const std::string& to) const {
  if (from == to) return std::nullopt;
  if (!related(from, to)) throw Error("no library lens relates " + from + " and " + to);
  auto d = direct_.find({from, to});
  if (d != direct_.end()) return d->second;
  const std::string& rep = representative(from);
  if (to == rep) return to_rep_.at(from);
  if (from == rep) return invert(to_rep_.at(to));
  return Lens::compose(to_rep_.at(from), invert(to_rep_.at(to)));
}

std::string VarClasses::canonical(const std::string& name, std::string_view s) {
  auto it = to_rep_.find(name);
  if (it == to_rep_.end()) return std::string(s);
  auto r = runners_.find(name);
  if (r == runners_.end()) r = runners_.emplace(name, std::make_unique<LensRunner>(it->second, defs_, lib_)).first;
  return r->second->get(s);
}

StarDepthSet VarClasses::canonical(const StarDepthSet& pairs) const {
  if (rep_.empty()) return pairs;
  StarDepthSet out;
  for (const auto& p : pairs) out.insert({representative(p.name), p.depth});
  return out;
}

namespace {

IlSet labels(const Sils& sils) {
  IlSet out;
  for (const auto& s : sils) out.insert(s.label);
  return out;
}

template <typename T, typename Cmp>
std::vector<std::size_t> sorted_order(const std::vector<T>& items, Cmp cmp) {
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cmp(items[a], items[b]) < 0; });
  return order;
}

}  // namespace

ExampledDnf Embedder::embed(const DnfRegex& d, const Sils& sils) {
  ExampledDnf out;
  out.dnf = &d;
  out.ils = labels(sils);
  std::vector<Sils> per_seq(d.sequences.size());
  for (const auto& s : sils) {
    auto i = cache_.find_sequence(d, s.text);
    if (!i) throw ExampleDoesNotParse("example does not parse: " + quote(s.text));
    per_seq[*i].push_back(s);
  }
  for (std::size_t i = 0; i < d.sequences.size(); ++i) out.seqs.push_back(embed_seq(d.sequences[i], per_seq[i]));
  out.order = sorted_order(out.seqs, [](const ExampledSeq& a, const ExampledSeq& b) { return cmp_exampled(a, b); });
  return out;
}

ExampledSeq Embedder::embed_seq(const Sequence& sq, const Sils& sils) {
  ExampledSeq out;
  out.seq = &sq;
  out.ils = labels(sils);
  std::vector<Sils> per_atom(sq.atoms.size());
  for (const auto& s : sils) {
    std::vector<std::string> pieces = cache_.split_sequence(sq, s.text);
    for (std::size_t k = 0; k < pieces.size(); ++k) per_atom[k].push_back({pieces[k], s.label});
  }
  for (std::size_t k = 0; k < sq.atoms.size(); ++k) out.atoms.push_back(embed_atom(sq.atoms[k], per_atom[k]));
  out.order = sorted_order(out.atoms, [](const ExampledAtom& a, const ExampledAtom& b) { return cmp_exampled(a, b); });
  return out;
}

ExampledAtom Embedder::embed_atom(const Atom& a, const Sils& sils) {
  ExampledAtom out;
  out.atom = &a;
  out.ils = labels(sils);
  if (a.is_var()) {
    out.klass = classes_.representative(a.name());
    for (const auto& s : sils) out.contents.emplace_back(s.label, classes_.canonical(a.name(), s.text));
    std::sort(out.contents.begin(), out.contents.end());
    return out;
  }
  Sils inner;
  for (const auto& s : sils) {
    std::vector<std::string> pieces = cache_.split_star(a.body(), s.text);
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      IntList label;
      label.reserve(s.label.size() + 1);
      label.push_back(static_cast<int>(j + 1));
      label.insert(label.end(), s.label.begin(), s.label.end());
      inner.push_back({pieces[j], std::move(label)});
    }
  }
  out.body = std::make_shared<ExampledDnf>(embed(a.body(), inner));
  return out;
}

ExampledDnf embed_examples(const DnfRegex& d, const Sils& labelled, const Definitions& defs) {
  LanguageCache cache(defs);
  VarClasses classes;
  return Embedder(cache, classes).embed(d, labelled);
}

namespace {

template <typename T>
std::weak_ordering compare_sorted(const std::vector<T>& xs, const std::vector<std::size_t>& xo,
                                  const std::vector<T>& ys, const std::vector<std::size_t>& yo) {
  std::size_t n = std::min(xo.size(), yo.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = cmp_exampled(xs[xo[i]], ys[yo[i]]);
    if (c != 0) return c;
  }
  return xo.size() <=> yo.size();
}

}  // namespace

std::weak_ordering cmp_exampled(const ExampledAtom& x, const ExampledAtom& y) {
  bool xs = x.atom->is_star();
  bool ys = y.atom->is_star();
  if (xs != ys) return xs ? std::weak_ordering::greater : std::weak_ordering::less;
  if (!xs) {
    if (auto c = x.klass <=> y.klass; c != 0) return c;
    if (auto c = x.contents <=> y.contents; c != 0) return c;
    return x.ils <=> y.ils;
  }
  if (auto c = cmp_exampled(*x.body, *y.body); c != 0) return c;
  return x.ils <=> y.ils;
}

std::weak_ordering cmp_exampled(const ExampledSeq& x, const ExampledSeq& y) {
  if (auto c = compare_sorted(x.atoms, x.order, y.atoms, y.order); c != 0) return c;
  return x.ils <=> y.ils;
}

std::weak_ordering cmp_exampled(const ExampledDnf& x, const ExampledDnf& y) {
  if (auto c = compare_sorted(x.seqs, x.order, y.seqs, y.order); c != 0) return c;
  return x.ils <=> y.ils;
}

namespace {

std::optional<AtomLens> rigid_atom(const ExampledAtom& a, const ExampledAtom& b, const VarClasses& classes);

std::optional<SequenceLens> rigid_seq(const ExampledSeq& a, const ExampledSeq& b, const VarClasses& classes) {
  if (a.ils != b.ils || a.atoms.size() != b.atoms.size()) return std::nullopt;
  const std::size_t n = a.atoms.size();
  SequenceLens sql;
  sql.strings.clear();
  for (std::size_t i = 0; i <= n; ++i) sql.strings.emplace_back(a.seq->strings[i], b.seq->strings[i]);
  std::vector<std::optional<AtomLens>> lenses(n);
  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t i = a.order[k];
    std::size_t j = b.order[k];
    lenses[i] = rigid_atom(a.atoms[i], b.atoms[j], classes);
    if (!lenses[i]) return std::nullopt;
    perm[j] = i;
  }
  for (auto& l : lenses) sql.atoms.push_back(std::move(*l));
  sql.perm = Permutation(std::move(perm));
  return sql;
}

std::optional<AtomLens> rigid_atom(const ExampledAtom& a, const ExampledAtom& b, const VarClasses& classes) {
  if (a.ils != b.ils) return std::nullopt;
  if (a.atom->is_var() && b.atom->is_var()) {
    if (a.klass != b.klass || a.contents != b.contents) return std::nullopt;
    const std::string& from = a.atom->name();
    const std::string& to = b.atom->name();
    if (from == to) return AtomLens::identity(from);
    return AtomLens::between(from, to, *classes.lens_between(from, to));
  }
  if (a.atom->is_star() && b.atom->is_star()) {
    auto inner = rigid_synth_exampled(*a.body, *b.body, classes);
    if (!inner) return std::nullopt;
    return AtomLens::iterate(std::move(*inner));
  }
  return std::nullopt;
}

}  // namespace

std::optional<DnfLens> rigid_synth_exampled(const ExampledDnf& src, const ExampledDnf& tgt,
                                            const VarClasses& classes) {
  if (src.ils != tgt.ils || src.seqs.size() != tgt.seqs.size()) return std::nullopt;
  const std::size_t n = src.seqs.size();
  std::vector<std::optional<SequenceLens>> lenses(n);
  std::vector<std::size_t> perm(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t i = src.order[k];
    std::size_t j = tgt.order[k];
    lenses[i] = rigid_seq(src.seqs[i], tgt.seqs[j], classes);
    if (!lenses[i]) return std::nullopt;
    perm[j] = i;
  }
  DnfLens dl;
  for (auto& l : lenses) dl.seqs.push_back(std::move(*l));
  dl.perm = Permutation(std::move(perm));
  return dl;
}

}  // namespace bilens
