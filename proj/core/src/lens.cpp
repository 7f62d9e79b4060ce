#include "bilens/lens.hpp"

#include "bilens/errors.hpp"
#include "bilens/regex_analysis.hpp"

namespace bilens {

struct Lens::Node {
  LensKind kind = LensKind::Const;
  std::string s1;
  std::string s2;
  bool inverted = false;
  Regex regex;
  Lens lhs;
  Lens rhs;
};

namespace {

const std::shared_ptr<const Lens::Node>& unit_node() {
  static const std::shared_ptr<const Lens::Node> node = std::make_shared<const Lens::Node>();
  return node;
}

}  // namespace

Lens::Lens() : node_(nullptr) {}

Lens Lens::constant(std::string s1, std::string s2) {
  auto n = std::make_shared<Node>();
  n->kind = LensKind::Const;
  n->s1 = std::move(s1);
  n->s2 = std::move(s2);
  return Lens(std::move(n));
}

Lens Lens::iterate(Lens l) {
  auto n = std::make_shared<Node>();
  n->kind = LensKind::Iterate;
  n->lhs = std::move(l);
  return Lens(std::move(n));
}

namespace {

template <typename NodeT>
std::shared_ptr<NodeT> binary(LensKind kind, Lens l1, Lens l2) {
  auto n = std::make_shared<NodeT>();
  n->kind = kind;
  n->lhs = std::move(l1);
  n->rhs = std::move(l2);
  return n;
}

}  // namespace

Lens Lens::concat(Lens l1, Lens l2) { return Lens(binary<Node>(LensKind::Concat, std::move(l1), std::move(l2))); }
Lens Lens::swap(Lens l1, Lens l2) { return Lens(binary<Node>(LensKind::Swap, std::move(l1), std::move(l2))); }
Lens Lens::alt(Lens l1, Lens l2) { return Lens(binary<Node>(LensKind::Or, std::move(l1), std::move(l2))); }
Lens Lens::compose(Lens l1, Lens l2) { return Lens(binary<Node>(LensKind::Compose, std::move(l1), std::move(l2))); }

Lens Lens::identity(Regex r) {
  auto n = std::make_shared<Node>();
  n->kind = LensKind::Identity;
  n->regex = std::move(r);
  return Lens(std::move(n));
}

Lens Lens::ref(std::string name, bool inverted) {
  auto n = std::make_shared<Node>();
  n->kind = LensKind::Ref;
  n->s1 = std::move(name);
  n->inverted = inverted;
  return Lens(std::move(n));
}

namespace {
const Lens::Node& node_of(const std::shared_ptr<const Lens::Node>& p) { return p ? *p : *unit_node(); }
}  // namespace

LensKind Lens::kind() const { return node_of(node_).kind; }
const std::string& Lens::source_text() const { return node_of(node_).s1; }
const std::string& Lens::target_text() const { return node_of(node_).s2; }
const std::string& Lens::name() const { return node_of(node_).s1; }
bool Lens::inverted() const { return node_of(node_).inverted; }
const Regex& Lens::regex() const { return node_of(node_).regex; }
const Lens& Lens::inner() const { return node_of(node_).lhs; }
const Lens& Lens::left() const { return node_of(node_).lhs; }
const Lens& Lens::right() const { return node_of(node_).rhs; }

bool operator==(const Lens& a, const Lens& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case LensKind::Const:
      return a.source_text() == b.source_text() && a.target_text() == b.target_text();
    case LensKind::Identity:
      return a.regex() == b.regex();
    case LensKind::Ref:
      return a.name() == b.name() && a.inverted() == b.inverted();
    case LensKind::Iterate:
      return a.inner() == b.inner();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

Lens concat_all(const std::vector<Lens>& parts) {
  if (parts.empty()) return Lens::constant("", "");
  Lens out = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) out = Lens::concat(parts[i], out);
  return out;
}

Lens invert(const Lens& l) {
  switch (l.kind()) {
    case LensKind::Const:
      return Lens::constant(l.target_text(), l.source_text());
    case LensKind::Identity:
      return l;
    case LensKind::Ref:
      return Lens::ref(l.name(), !l.inverted());
    case LensKind::Iterate:
      return Lens::iterate(invert(l.inner()));
    case LensKind::Concat:
      return Lens::concat(invert(l.left()), invert(l.right()));
    case LensKind::Swap:
      return Lens::swap(invert(l.right()), invert(l.left()));
    case LensKind::Or:
      return Lens::alt(invert(l.left()), invert(l.right()));
    case LensKind::Compose:
      return Lens::compose(invert(l.right()), invert(l.left()));
  }
  return l;
}

namespace {

// 0: compose, 1: or, 2: concat, 3: atomic
int precedence(const Lens& l) {
  switch (l.kind()) {
    case LensKind::Compose:
      return 0;
    case LensKind::Or:
      return 1;
    case LensKind::Concat:
      return 2;
    default:
      return 3;
  }
}

void print(const Lens& l, std::string& out);

void print_child(const Lens& l, bool parens, std::string& out) {
  if (parens) out += '(';
  print(l, out);
  if (parens) out += ')';
}

void print_infix(const Lens& l, const char* op, std::string& out) {
  int p = precedence(l);
  print_child(l.left(), precedence(l.left()) <= p, out);
  out += op;
  print_child(l.right(), precedence(l.right()) < p, out);
}

void print(const Lens& l, std::string& out) {
  switch (l.kind()) {
    case LensKind::Const:
      out += "const(" + quote(l.source_text()) + ", " + quote(l.target_text()) + ")";
      break;
    case LensKind::Identity:
      out += "id(" + to_string(l.regex()) + ")";
      break;
    case LensKind::Ref:
      out += l.inverted() ? "inverse(" + l.name() + ")" : l.name();
      break;
    case LensKind::Iterate:
      out += "iterate(";
      print(l.inner(), out);
      out += ')';
      break;
    case LensKind::Swap:
      out += "swap(";
      print(l.left(), out);
      out += ", ";
      print(l.right(), out);
      out += ')';
      break;
    case LensKind::Concat:
      print_infix(l, " . ", out);
      break;
    case LensKind::Or:
      print_infix(l, " | ", out);
      break;
    case LensKind::Compose:
      print_infix(l, " ; ", out);
      break;
  }
}

}  // namespace

std::string pretty_print(const Lens& l) {
  std::string out;
  print(l, out);
  return out;
}

void LensLibrary::add(const std::string& name, const Lens& lens, const Definitions& defs) {
  if (index_.count(name)) throw Error("duplicate lens name: " + name);
  LensType t = typecheck_lens(lens, defs, this);
  index_.emplace(name, entries_.size());
  entries_.push_back({name, lens, t.source, t.target});
}

void LensLibrary::add(const std::string& name, const Lens& lens, const Definitions& defs, const Regex& source,
                      const Regex& target) {
  if (index_.count(name)) throw Error("duplicate lens name: " + name);
  LensType t = typecheck_lens(lens, defs, this);
  if (!lang_equiv(resolve(source, defs), resolve(t.source, defs))) {
    throw LensTypeError(LensErrorKind::ComposeTypeMismatch, name + ": declared source " + to_string(source));
  }
  if (!lang_equiv(resolve(target, defs), resolve(t.target, defs))) {
    throw LensTypeError(LensErrorKind::ComposeTypeMismatch, name + ": declared target " + to_string(target));
  }
  index_.emplace(name, entries_.size());
  entries_.push_back({name, lens, source, target});
}

const LensLibrary::Entry* LensLibrary::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

LensRunner::LensRunner(Lens l, const Definitions& defs, const LensLibrary* lib)
    : lens_(std::move(l)), defs_(defs), lib_(lib), cache_(defs) {
  check(lens_);
}

LensRunner::~LensRunner() = default;

const LensType& LensRunner::type() const { return type_of(lens_); }

const LensType& LensRunner::type_of(const Lens& l) const { return types_.at(l.node_id()); }

namespace {

std::string describe(const Lens& l) {
  std::string s = pretty_print(l);
  if (s.size() > 160) s = s.substr(0, 157) + "...";
  return s;
}

}  // namespace

const LensType& LensRunner::check(const Lens& l) {
  auto found = types_.find(l.node_id());
  if (found != types_.end()) return found->second;
  LensType t;
  switch (l.kind()) {
    case LensKind::Const:
      t = {Regex::str(l.source_text()), Regex::str(l.target_text())};
      break;
    case LensKind::Identity: {
      const Regex& r = l.regex();
      if (r.kind() == RegexKind::Var) {
        defs_.at(r.text());
      } else if (!strongly_unambiguous(resolve(r, defs_))) {
        throw LensTypeError(LensErrorKind::AmbiguousIdentity, describe(l));
      }
      t = {r, r};
      break;
    }
    case LensKind::Ref: {
      const LensLibrary::Entry* e = lib_ ? lib_->find(l.name()) : nullptr;
      if (!e) throw LensTypeError(LensErrorKind::UnknownLens, l.name());
      t = l.inverted() ? LensType{e->target, e->source} : LensType{e->source, e->target};
      break;
    }
    case LensKind::Iterate: {
      LensType in = check(l.inner());
      if (!unambig_iter(resolve(in.source, defs_)) || !unambig_iter(resolve(in.target, defs_))) {
        throw LensTypeError(LensErrorKind::AmbiguousIteration, describe(l));
      }
      t = {Regex::star(in.source), Regex::star(in.target)};
      break;
    }
    case LensKind::Concat:
    case LensKind::Swap: {
      LensType a = check(l.left());
      LensType b = check(l.right());
      bool swap = l.kind() == LensKind::Swap;
      Regex tl = swap ? b.target : a.target;
      Regex tr = swap ? a.target : b.target;
      if (!unambig_concat(resolve(a.source, defs_), resolve(b.source, defs_)) ||
          !unambig_concat(resolve(tl, defs_), resolve(tr, defs_))) {
        throw LensTypeError(LensErrorKind::AmbiguousConcat, describe(l));
      }
      t = {Regex::concat(a.source, b.source), Regex::concat(tl, tr)};
      break;
    }
    case LensKind::Or: {
      LensType a = check(l.left());
      LensType b = check(l.right());
      if (!languages_disjoint(resolve(a.source, defs_), resolve(b.source, defs_)) ||
          !languages_disjoint(resolve(a.target, defs_), resolve(b.target, defs_))) {
        throw LensTypeError(LensErrorKind::OverlappingOr, describe(l));
      }
      t = {Regex::alt(a.source, b.source), Regex::alt(a.target, b.target)};
      break;
    }
    case LensKind::Compose: {
      LensType a = check(l.left());
      LensType b = check(l.right());
      if (!lang_equiv(resolve(a.target, defs_), resolve(b.source, defs_))) {
        throw LensTypeError(LensErrorKind::ComposeTypeMismatch, describe(l));
      }
      t = {a.source, b.target};
      break;
    }
  }
  return types_.emplace(l.node_id(), std::move(t)).first->second;
}

bool LensRunner::in_source(std::string_view s) { return cache_.accepts(type().source, s); }
bool LensRunner::in_target(std::string_view t) { return cache_.accepts(type().target, t); }

std::string LensRunner::get(std::string_view s) {
  if (!in_source(s)) throw InputNotInSource("input not in source language of " + describe(lens_));
  return get_rec(lens_, s);
}

std::string LensRunner::put(std::string_view t) {
  if (!in_target(t)) throw InputNotInTarget("input not in target language of " + describe(lens_));
  return put_rec(lens_, t);
}

LensRunner& LensRunner::library_runner(const std::string& name) {
  auto it = refs_.find(name);
  if (it != refs_.end()) return *it->second;
  const LensLibrary::Entry* e = lib_->find(name);
  auto runner = std::make_unique<LensRunner>(e->lens, defs_, lib_);
  LensRunner& ref = *runner;
  refs_.emplace(name, std::move(runner));
  return ref;
}

namespace {

std::size_t unique_split(const Dfa& left, const Dfa& right, std::string_view s) {
  std::size_t found = 0;
  std::size_t split = 0;
  for (std::size_t k : left.match_ends(s, 0)) {
    if (right.accepts(s.substr(k))) {
      ++found;
      split = k;
    }
  }
  if (found == 0) throw NoParse("no split");
  if (found > 1) throw AmbiguityViolation("ambiguous split during evaluation");
  return split;
}

std::vector<std::string_view> unique_factors(const Dfa& body, const Dfa& whole, std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t found = 0;
    std::size_t end = 0;
    for (std::size_t k : body.match_ends(s, pos)) {
      if (k > pos && whole.accepts(s.substr(k))) {
        ++found;
        end = k;
      }
    }
    if (found == 0) throw NoParse("no factorization");
    if (found > 1) throw AmbiguityViolation("ambiguous factorization during evaluation");
    out.push_back(s.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

}  // namespace

std::string LensRunner::get_rec(const Lens& l, std::string_view s) {
  switch (l.kind()) {
    case LensKind::Const:
      if (s != l.source_text()) throw InputNotInSource("constant mismatch");
      return l.target_text();
    case LensKind::Identity:
      return std::string(s);
    case LensKind::Ref: {
      LensRunner& r = library_runner(l.name());
      return l.inverted() ? r.put_rec(r.lens_, s) : r.get_rec(r.lens_, s);
    }
    case LensKind::Iterate: {
      const LensType& t = type_of(l);
      std::string out;
      for (auto piece : unique_factors(cache_.dfa(t.source.inner()), cache_.dfa(t.source), s)) {
        out += get_rec(l.inner(), piece);
      }
      return out;
    }
    case LensKind::Concat:
    case LensKind::Swap: {
      std::size_t k = unique_split(cache_.dfa(type_of(l.left()).source), cache_.dfa(type_of(l.right()).source), s);
      std::string a = get_rec(l.left(), s.substr(0, k));
      std::string b = get_rec(l.right(), s.substr(k));
      return l.kind() == LensKind::Swap ? b + a : a + b;
    }
    case LensKind::Or:
      if (cache_.accepts(type_of(l.left()).source, s)) return get_rec(l.left(), s);
      return get_rec(l.right(), s);
    case LensKind::Compose:
      return get_rec(l.right(), get_rec(l.left(), s));
  }
  throw Error("unreachable lens kind");
}

std::string LensRunner::put_rec(const Lens& l, std::string_view t) {
  switch (l.kind()) {
    case LensKind::Const:
      if (t != l.target_text()) throw InputNotInTarget("constant mismatch");
      return l.source_text();
    case LensKind::Identity:
      return std::string(t);
    case LensKind::Ref: {
      LensRunner& r = library_runner(l.name());
      return l.inverted() ? r.get_rec(r.lens_, t) : r.put_rec(r.lens_, t);
    }
    case LensKind::Iterate: {
      const LensType& ty = type_of(l);
      std::string out;
      for (auto piece : unique_factors(cache_.dfa(ty.target.inner()), cache_.dfa(ty.target), t)) {
        out += put_rec(l.inner(), piece);
      }
      return out;
    }
    case LensKind::Concat: {
      std::size_t k = unique_split(cache_.dfa(type_of(l.left()).target), cache_.dfa(type_of(l.right()).target), t);
      return put_rec(l.left(), t.substr(0, k)) + put_rec(l.right(), t.substr(k));
    }
    case LensKind::Swap: {
      // Target is S2 S1.
      std::size_t k = unique_split(cache_.dfa(type_of(l.right()).target), cache_.dfa(type_of(l.left()).target), t);
      return put_rec(l.left(), t.substr(k)) + put_rec(l.right(), t.substr(0, k));
    }
    case LensKind::Or:
      if (cache_.accepts(type_of(l.left()).target, t)) return put_rec(l.left(), t);
      return put_rec(l.right(), t);
    case LensKind::Compose:
      return put_rec(l.left(), put_rec(l.right(), t));
  }
  throw Error("unreachable lens kind");
}

LensType typecheck_lens(const Lens& l, const Definitions& defs, const LensLibrary* lib) {
  return LensRunner(l, defs, lib).type();
}

std::string lens_get(const Lens& l, std::string_view s, const Definitions& defs, const LensLibrary* lib) {
  return LensRunner(l, defs, lib).get(s);
}

std::string lens_put(const Lens& l, std::string_view t, const Definitions& defs, const LensLibrary* lib) {
  return LensRunner(l, defs, lib).put(t);
}

}  // namespace bilens
