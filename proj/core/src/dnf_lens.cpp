#include "bilens/dnf_lens.hpp"

#include <algorithm>

#include "bilens/errors.hpp"
#include "bilens/regex_analysis.hpp"

namespace bilens {

AtomLens AtomLens::iterate(DnfLens body) {
  AtomLens al;
  al.kind = Kind::Iterate;
  al.body = std::make_shared<const DnfLens>(std::move(body));
  return al;
}

AtomLens AtomLens::identity(std::string name) {
  AtomLens al;
  al.kind = Kind::Var;
  al.source_name = name;
  al.target_name = std::move(name);
  return al;
}

AtomLens AtomLens::between(std::string source, std::string target, Lens via) {
  AtomLens al;
  al.kind = Kind::Var;
  al.source_name = std::move(source);
  al.target_name = std::move(target);
  al.via = std::move(via);
  return al;
}

bool operator==(const AtomLens& a, const AtomLens& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == AtomLens::Kind::Iterate) return a.body == b.body || *a.body == *b.body;
  return a.source_name == b.source_name && a.target_name == b.target_name && a.via == b.via;
}

namespace {

void print(const DnfLens& dl, std::string& out);

void print(const AtomLens& al, std::string& out) {
  if (al.kind == AtomLens::Kind::Iterate) {
    out += "iterate";
    print(*al.body, out);
    return;
  }
  if (!al.via) {
    out += "id(" + al.source_name + ")";
  } else {
    out += "{" + al.source_name + " <=> " + al.target_name + " via " + pretty_print(*al.via) + "}";
  }
}

void print(const SequenceLens& sql, std::string& out) {
  out += '[';
  for (std::size_t i = 0; i < sql.strings.size(); ++i) {
    if (i > 0) out += ' ';
    out += "(" + quote(sql.strings[i].first) + "," + quote(sql.strings[i].second) + ")";
    if (i < sql.atoms.size()) {
      out += ' ';
      print(sql.atoms[i], out);
    }
  }
  out += "] " + to_string(sql.perm);
}

void print(const DnfLens& dl, std::string& out) {
  out += '<';
  for (std::size_t i = 0; i < dl.seqs.size(); ++i) {
    if (i > 0) out += " | ";
    print(dl.seqs[i], out);
  }
  out += "> " + to_string(dl.perm);
}

}  // namespace

std::string to_string(const DnfLens& dl) {
  std::string out;
  print(dl, out);
  return out;
}

DnfLens identity_dnf_lens(const DnfRegex& d) {
  DnfLens dl;
  for (const auto& sq : d.sequences) {
    SequenceLens sql;
    sql.strings.clear();
    for (const auto& s : sq.strings) sql.strings.emplace_back(s, s);
    for (const auto& a : sq.atoms) {
      sql.atoms.push_back(a.is_star() ? AtomLens::iterate(identity_dnf_lens(a.body())) : AtomLens::identity(a.name()));
    }
    sql.perm = Permutation::identity(sq.atoms.size());
    dl.seqs.push_back(std::move(sql));
  }
  dl.perm = Permutation::identity(d.sequences.size());
  return dl;
}

namespace {

Atom atom_source(const AtomLens& al) {
  if (al.kind == AtomLens::Kind::Iterate) return Atom::star(dnf_lens_source(*al.body));
  return Atom::var(al.source_name);
}

Atom atom_target(const AtomLens& al) {
  if (al.kind == AtomLens::Kind::Iterate) return Atom::star(dnf_lens_target(*al.body));
  return Atom::var(al.target_name);
}

}  // namespace

Sequence sequence_lens_source(const SequenceLens& sql) {
  Sequence sq;
  sq.strings.clear();
  for (const auto& p : sql.strings) sq.strings.push_back(p.first);
  for (const auto& al : sql.atoms) sq.atoms.push_back(atom_source(al));
  return sq;
}

Sequence sequence_lens_target(const SequenceLens& sql) {
  Sequence sq;
  sq.strings.clear();
  for (const auto& p : sql.strings) sq.strings.push_back(p.second);
  for (std::size_t j = 0; j < sql.atoms.size(); ++j) {
    std::size_t k = j < sql.perm.size() ? sql.perm(j) : j;
    sq.atoms.push_back(atom_target(sql.atoms.at(k)));
  }
  return sq;
}

DnfRegex dnf_lens_source(const DnfLens& dl) {
  DnfRegex d;
  for (const auto& sql : dl.seqs) d.sequences.push_back(sequence_lens_source(sql));
  return d;
}

DnfRegex dnf_lens_target(const DnfLens& dl) {
  DnfRegex d;
  for (const auto& sql : dl.seqs) d.sequences.push_back(sequence_lens_target(sql));
  return d;
}

namespace {

class DnfLensChecker {
 public:
  DnfLensChecker(const Definitions& defs, const LensLibrary* lib) : defs_(defs), lib_(lib) {}

  std::optional<std::string> dnf(const DnfLens& dl, const DnfRegex& src, const DnfRegex& tgt) {
    const std::size_t n = dl.seqs.size();
    if (src.sequences.size() != n || tgt.sequences.size() != n) {
      return "sequence count mismatch in " + to_string(src) + " <=> " + to_string(tgt);
    }
    if (dl.perm.size() != n || !dl.perm.valid()) return "invalid sequence permutation " + to_string(dl.perm);
    if (auto e = pairwise_disjoint(src)) return e;
    if (auto e = pairwise_disjoint(tgt)) return e;
    Permutation slot = dl.perm.inverse();
    for (std::size_t i = 0; i < n; ++i) {
      if (auto e = sequence(dl.seqs[i], src.sequences[i], tgt.sequences[slot(i)])) return e;
    }
    return std::nullopt;
  }

 private:
  Regex res(const Regex& r) { return resolve(r, defs_); }

  std::optional<std::string> pairwise_disjoint(const DnfRegex& d) {
    std::vector<Regex> rs;
    for (const auto& sq : d.sequences) rs.push_back(res(to_regex(sq)));
    for (std::size_t i = 0; i < rs.size(); ++i) {
      for (std::size_t j = i + 1; j < rs.size(); ++j) {
        if (!languages_disjoint(rs[i], rs[j])) return "overlapping sequences in " + to_string(d);
      }
    }
    return std::nullopt;
  }

  std::optional<std::string> unambiguous_sequence(const Sequence& sq) {
    Regex acc = Regex::str(sq.strings[0]);
    for (std::size_t k = 0; k < sq.atoms.size(); ++k) {
      Regex a = res(to_regex(sq.atoms[k]));
      if (!unambig_concat(acc, a)) return "ambiguous sequence " + to_string(sq);
      acc = Regex::concat(Regex::concat(acc, a), Regex::str(sq.strings[k + 1]));
    }
    return std::nullopt;
  }

  std::optional<std::string> sequence(const SequenceLens& sql, const Sequence& sq, const Sequence& tq) {
    const std::size_t n = sql.atoms.size();
    if (sql.strings.size() != n + 1 || sq.atoms.size() != n || tq.atoms.size() != n) {
      return "atom count mismatch between " + to_string(sq) + " and " + to_string(tq);
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (sql.strings[i].first != sq.strings[i] || sql.strings[i].second != tq.strings[i]) {
        return "string mismatch between lens and " + to_string(sq) + " <=> " + to_string(tq);
      }
    }
    if (sql.perm.size() != n || !sql.perm.valid()) return "invalid atom permutation " + to_string(sql.perm);
    if (auto e = unambiguous_sequence(sq)) return e;
    if (auto e = unambiguous_sequence(tq)) return e;
    Permutation slot = sql.perm.inverse();
    for (std::size_t k = 0; k < n; ++k) {
      if (auto e = atom(sql.atoms[k], sq.atoms[k], tq.atoms[slot(k)])) return e;
    }
    return std::nullopt;
  }

  std::optional<std::string> atom(const AtomLens& al, const Atom& a, const Atom& b) {
    if (al.kind == AtomLens::Kind::Iterate) {
      if (!a.is_star() || !b.is_star()) return "iterate lens against non-star atoms";
      if (!unambig_iter(res(to_regex(a.body())))) return "ambiguous iteration " + to_string(a);
      if (!unambig_iter(res(to_regex(b.body())))) return "ambiguous iteration " + to_string(b);
      return dnf(*al.body, a.body(), b.body());
    }
    if (!a.is_var() || !b.is_var()) return "variable lens against non-variable atoms";
    if (a.name() != al.source_name || b.name() != al.target_name) {
      return "variable lens " + al.source_name + " <=> " + al.target_name + " against " + a.name() + " <=> " +
             b.name();
    }
    if (!al.via) {
      if (al.source_name != al.target_name) return "missing lens between " + a.name() + " and " + b.name();
      return std::nullopt;
    }
    try {
      LensType t = typecheck_lens(*al.via, defs_, lib_);
      if (!lang_equiv(res(t.source), res(Regex::var(a.name()))) ||
          !lang_equiv(res(t.target), res(Regex::var(b.name())))) {
        return "lens " + pretty_print(*al.via) + " does not relate " + a.name() + " and " + b.name();
      }
    } catch (const Error& e) {
      return std::string("ill-typed variable lens: ") + e.what();
    }
    return std::nullopt;
  }

  const Definitions& defs_;
  const LensLibrary* lib_;
};

}  // namespace

std::optional<std::string> dnf_lens_type_error(const DnfLens& dl, const DnfRegex& src, const DnfRegex& tgt,
                                               const Definitions& defs, const LensLibrary* lib) {
  try {
    return DnfLensChecker(defs, lib).dnf(dl, src, tgt);
  } catch (const UnboundVariable& e) {
    return std::string(e.what());
  }
}

bool typecheck_dnf_lens(const DnfLens& dl, const DnfRegex& src, const DnfRegex& tgt, const Definitions& defs,
                        const LensLibrary* lib) {
  return !dnf_lens_type_error(dl, src, tgt, defs, lib).has_value();
}

DnfLensRunner::DnfLensRunner(DnfLens dl, const Definitions& defs, const LensLibrary* lib)
    : dl_(std::move(dl)), defs_(defs), lib_(lib), cache_(defs) {}

const DnfRegex& DnfLensRunner::source_of(const DnfLens& dl) {
  auto it = sources_.find(&dl);
  if (it == sources_.end()) it = sources_.emplace(&dl, dnf_lens_source(dl)).first;
  return it->second;
}

const DnfRegex& DnfLensRunner::target_of(const DnfLens& dl) {
  auto it = targets_.find(&dl);
  if (it == targets_.end()) it = targets_.emplace(&dl, dnf_lens_target(dl)).first;
  return it->second;
}

LensRunner& DnfLensRunner::via_runner(const Lens& l) {
  std::string key = pretty_print(l);
  auto it = vias_.find(key);
  if (it == vias_.end()) it = vias_.emplace(key, std::make_unique<LensRunner>(l, defs_, lib_)).first;
  return *it->second;
}

std::string DnfLensRunner::get(std::string_view s) {
  auto out = get_dnf(dl_, s);
  if (!out) throw InputNotInSource("input not in the source of the DNF lens");
  return *out;
}

std::string DnfLensRunner::put(std::string_view t) {
  auto out = put_dnf(dl_, t);
  if (!out) throw InputNotInTarget("input not in the target of the DNF lens");
  return *out;
}

// The sequence-level permutation is applied here; the top-level one never is,
// since each sequence lens carries its own source and target.
std::optional<std::string> DnfLensRunner::get_dnf(const DnfLens& dl, std::string_view s) {
  const DnfRegex& src = source_of(dl);
  auto i = cache_.find_sequence(src, s);
  if (!i) return std::nullopt;
  const SequenceLens& sql = dl.seqs[*i];
  std::vector<std::string> pieces = cache_.split_sequence(src.sequences[*i], s);
  std::vector<std::string> outs;
  outs.reserve(pieces.size());
  for (std::size_t k = 0; k < pieces.size(); ++k) outs.push_back(get_atom(sql.atoms[k], pieces[k]));
  std::string out = sql.strings[0].second;
  for (std::size_t j = 0; j < outs.size(); ++j) {
    out += outs[sql.perm(j)];
    out += sql.strings[j + 1].second;
  }
  return out;
}

std::optional<std::string> DnfLensRunner::put_dnf(const DnfLens& dl, std::string_view t) {
  const DnfRegex& tgt = target_of(dl);
  auto i = cache_.find_sequence(tgt, t);
  if (!i) return std::nullopt;
  const SequenceLens& sql = dl.seqs[*i];
  std::vector<std::string> pieces = cache_.split_sequence(tgt.sequences[*i], t);
  std::vector<std::string> ins(pieces.size());
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    std::size_t k = sql.perm(j);
    ins[k] = put_atom(sql.atoms[k], pieces[j]);
  }
  std::string out = sql.strings[0].first;
  for (std::size_t k = 0; k < ins.size(); ++k) {
    out += ins[k];
    out += sql.strings[k + 1].first;
  }
  return out;
}

std::string DnfLensRunner::get_atom(const AtomLens& al, std::string_view s) {
  if (al.kind == AtomLens::Kind::Var) return al.via ? via_runner(*al.via).get(s) : std::string(s);
  std::string out;
  for (const auto& piece : cache_.split_star(source_of(*al.body), s)) {
    auto o = get_dnf(*al.body, piece);
    if (!o) throw InputNotInSource("iterated piece not in source");
    out += *o;
  }
  return out;
}

std::string DnfLensRunner::put_atom(const AtomLens& al, std::string_view t) {
  if (al.kind == AtomLens::Kind::Var) return al.via ? via_runner(*al.via).put(t) : std::string(t);
  std::string out;
  for (const auto& piece : cache_.split_star(target_of(*al.body), t)) {
    auto o = put_dnf(*al.body, piece);
    if (!o) throw InputNotInTarget("iterated piece not in target");
    out += *o;
  }
  return out;
}

std::string dnf_lens_get(const DnfLens& dl, std::string_view s, const Definitions& defs, const LensLibrary* lib) {
  return DnfLensRunner(dl, defs, lib).get(s);
}

std::string dnf_lens_put(const DnfLens& dl, std::string_view t, const Definitions& defs, const LensLibrary* lib) {
  return DnfLensRunner(dl, defs, lib).put(t);
}

namespace {

Lens atom_to_lens(const AtomLens& al) {
  if (al.kind == AtomLens::Kind::Iterate) return Lens::iterate(dnf_lens_to_lens(*al.body));
  if (al.via) return *al.via;
  return Lens::identity(Regex::var(al.source_name));
}

Regex atom_target_regex(const AtomLens& al) { return to_regex(atom_target(al)); }

// Arranges chunks [lo, hi), given in source order, so that chunk i lands at
// target slot pos[i]. The chunks of the range occupy a contiguous block of
// slots.
class Arranger {
 public:
  Arranger(const std::vector<Lens>& chunks, const std::vector<Regex>& targets, const std::vector<std::size_t>& pos)
      : chunks_(chunks), targets_(targets), pos_(pos) {}

  Lens build(std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return chunks_[lo];
    for (std::size_t m = lo + 1; m < hi; ++m) {
      auto [lmin, lmax] = std::minmax_element(pos_.begin() + static_cast<std::ptrdiff_t>(lo),
                                              pos_.begin() + static_cast<std::ptrdiff_t>(m));
      auto [rmin, rmax] = std::minmax_element(pos_.begin() + static_cast<std::ptrdiff_t>(m),
                                              pos_.begin() + static_cast<std::ptrdiff_t>(hi));
      if (*lmax < *rmin) return Lens::concat(build(lo, m), build(m, hi));
      if (*lmin > *rmax) return Lens::swap(build(lo, m), build(m, hi));
    }
    return bubble(lo, hi);
  }

 private:
  // Not separable: apply the chunks in source order, then sort their
  // outputs with adjacent swaps of identity lenses.
  Lens bubble(std::size_t lo, std::size_t hi) {
    std::vector<Lens> first(chunks_.begin() + static_cast<std::ptrdiff_t>(lo),
                            chunks_.begin() + static_cast<std::ptrdiff_t>(hi));
    Lens out = concat_all(first);
    std::vector<std::size_t> order;
    for (std::size_t i = lo; i < hi; ++i) order.push_back(i);
    for (;;) {
      std::size_t j = 0;
      while (j + 1 < order.size() && pos_[order[j]] < pos_[order[j + 1]]) ++j;
      if (j + 1 >= order.size()) break;
      std::vector<Lens> stage;
      for (std::size_t k = 0; k < order.size(); ++k) {
        if (k == j) {
          stage.push_back(Lens::swap(Lens::identity(targets_[order[j]]), Lens::identity(targets_[order[j + 1]])));
          ++k;
        } else {
          stage.push_back(Lens::identity(targets_[order[k]]));
        }
      }
      out = Lens::compose(out, concat_all(stage));
      std::swap(order[j], order[j + 1]);
    }
    return out;
  }

  const std::vector<Lens>& chunks_;
  const std::vector<Regex>& targets_;
  const std::vector<std::size_t>& pos_;
};

Lens sequence_to_lens(const SequenceLens& sql) {
  const std::size_t n = sql.atoms.size();
  Lens head = Lens::constant(sql.strings[0].first, sql.strings[0].second);
  if (n == 0) return head;
  Permutation slot = sql.perm.inverse();
  std::vector<Lens> chunks;
  std::vector<Regex> targets;
  std::vector<std::size_t> pos;
  for (std::size_t k = 0; k < n; ++k) {
    const std::string& after = sql.strings[slot(k) + 1].second;
    chunks.push_back(Lens::concat(atom_to_lens(sql.atoms[k]), Lens::constant(sql.strings[k + 1].first, after)));
    targets.push_back(Regex::concat(atom_target_regex(sql.atoms[k]), Regex::str(after)));
    pos.push_back(slot(k));
  }
  Arranger arranger(chunks, targets, pos);
  return Lens::concat(head, arranger.build(0, n));
}

}  // namespace

Lens dnf_lens_to_lens(const DnfLens& dl) {
  if (dl.seqs.empty()) return Lens::identity(Regex::empty());
  std::vector<Lens> branches;
  for (const auto& sql : dl.seqs) branches.push_back(sequence_to_lens(sql));
  Lens out = branches.back();
  for (std::size_t i = branches.size() - 1; i-- > 0;) out = Lens::alt(branches[i], out);
  return out;
}

}  // namespace bilens
