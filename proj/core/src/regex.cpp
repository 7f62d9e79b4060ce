#include "bilens/regex.hpp"

#include <algorithm>
#include <cstdio>

#include "bilens/errors.hpp"

namespace bilens {

struct Regex::Node {
  RegexKind kind;
  std::string text;
  Regex lhs;
  Regex rhs;
  bool has_var = false;
};

Regex::Regex() = default;

Regex Regex::str(std::string s) {
  auto n = std::make_shared<Node>();
  n->kind = RegexKind::Str;
  n->text = std::move(s);
  return Regex(std::move(n));
}

Regex Regex::empty() { return Regex(); }

Regex Regex::star(Regex inner) {
  auto n = std::make_shared<Node>();
  n->kind = RegexKind::Star;
  n->has_var = has_vars(inner);
  n->lhs = std::move(inner);
  return Regex(std::move(n));
}

Regex Regex::concat(Regex left, Regex right) {
  auto n = std::make_shared<Node>();
  n->kind = RegexKind::Concat;
  n->has_var = has_vars(left) || has_vars(right);
  n->lhs = std::move(left);
  n->rhs = std::move(right);
  return Regex(std::move(n));
}

Regex Regex::alt(Regex left, Regex right) {
  auto n = std::make_shared<Node>();
  n->kind = RegexKind::Or;
  n->has_var = has_vars(left) || has_vars(right);
  n->lhs = std::move(left);
  n->rhs = std::move(right);
  return Regex(std::move(n));
}

Regex Regex::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = RegexKind::Var;
  n->text = std::move(name);
  n->has_var = true;
  return Regex(std::move(n));
}

RegexKind Regex::kind() const { return node_ ? node_->kind : RegexKind::Empty; }

const std::string& Regex::text() const {
  static const std::string none;
  return node_ ? node_->text : none;
}

const Regex& Regex::inner() const { return node_->lhs; }
const Regex& Regex::left() const { return node_->lhs; }
const Regex& Regex::right() const { return node_->rhs; }

bool operator==(const Regex& a, const Regex& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case RegexKind::Empty:
      return true;
    case RegexKind::Str:
    case RegexKind::Var:
      return a.text() == b.text();
    case RegexKind::Star:
      return a.inner() == b.inner();
    case RegexKind::Concat:
    case RegexKind::Or:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

Regex concat_all(const std::vector<Regex>& parts) {
  if (parts.empty()) return Regex::epsilon();
  Regex out = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) out = Regex::concat(parts[i], out);
  return out;
}

Regex alt_all(const std::vector<Regex>& branches) {
  if (branches.empty()) return Regex::empty();
  Regex out = branches.back();
  for (std::size_t i = branches.size() - 1; i-- > 0;) out = Regex::alt(branches[i], out);
  return out;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (c < 0x20 || c >= 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\x%02X", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += '"';
  return out;
}

namespace {

// 0: or, 1: concat, 2: star, 3: atomic
int precedence(const Regex& r) {
  switch (r.kind()) {
    case RegexKind::Or:
      return 0;
    case RegexKind::Concat:
      return 1;
    case RegexKind::Star:
      return 2;
    default:
      return 3;
  }
}

void print(const Regex& r, std::string& out);

void print_at(const Regex& r, int min_prec, std::string& out) {
  if (precedence(r) < min_prec) {
    out += '(';
    print(r, out);
    out += ')';
  } else {
    print(r, out);
  }
}

void print(const Regex& r, std::string& out) {
  switch (r.kind()) {
    case RegexKind::Empty:
      out += "empty";
      break;
    case RegexKind::Str:
      out += quote(r.text());
      break;
    case RegexKind::Var:
      out += r.text();
      break;
    case RegexKind::Star:
      print_at(r.inner(), 2, out);
      out += '*';
      break;
    case RegexKind::Concat:
      print_at(r.left(), 2, out);
      out += ' ';
      print_at(r.right(), 1, out);
      break;
    case RegexKind::Or:
      print_at(r.left(), 1, out);
      out += " | ";
      print_at(r.right(), 0, out);
      break;
  }
}

void collect_vars(const Regex& r, std::set<std::string>& out) {
  switch (r.kind()) {
    case RegexKind::Var:
      out.insert(r.text());
      break;
    case RegexKind::Star:
      collect_vars(r.inner(), out);
      break;
    case RegexKind::Concat:
    case RegexKind::Or:
      collect_vars(r.left(), out);
      collect_vars(r.right(), out);
      break;
    default:
      break;
  }
}

}  // namespace

std::string to_string(const Regex& r) {
  std::string out;
  print(r, out);
  return out;
}

std::size_t depth(const Regex& r) {
  switch (r.kind()) {
    case RegexKind::Star:
      return 1 + depth(r.inner());
    case RegexKind::Concat:
    case RegexKind::Or:
      return 1 + std::max(depth(r.left()), depth(r.right()));
    default:
      return 0;
  }
}

std::size_t size(const Regex& r) {
  switch (r.kind()) {
    case RegexKind::Star:
      return 1 + size(r.inner());
    case RegexKind::Concat:
    case RegexKind::Or:
      return 1 + size(r.left()) + size(r.right());
    default:
      return 1;
  }
}

bool has_vars(const Regex& r) { return r.node_ && r.node_->has_var; }

std::set<std::string> free_vars(const Regex& r) {
  std::set<std::string> out;
  collect_vars(r, out);
  return out;
}

void Definitions::add(const std::string& name, const Regex& body) {
  if (index_.count(name)) throw Error("duplicate definition: " + name);
  for (const auto& v : free_vars(body)) {
    if (!index_.count(v)) throw UnboundVariable(v);
  }
  index_.emplace(name, bindings_.size());
  bindings_.emplace_back(name, body);
}

bool Definitions::contains(const std::string& name) const { return index_.count(name) > 0; }

const Regex& Definitions::at(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw UnboundVariable(name);
  return bindings_[it->second].second;
}

namespace {

Regex resolve_rec(const Regex& r, const Definitions& defs,
                  std::unordered_map<std::string, Regex>& memo) {
  switch (r.kind()) {
    case RegexKind::Var: {
      auto it = memo.find(r.text());
      if (it != memo.end()) return it->second;
      Regex body = resolve_rec(defs.at(r.text()), defs, memo);
      memo.emplace(r.text(), body);
      return body;
    }
    case RegexKind::Star:
      if (!has_vars(r)) return r;
      return Regex::star(resolve_rec(r.inner(), defs, memo));
    case RegexKind::Concat:
      if (!has_vars(r)) return r;
      return Regex::concat(resolve_rec(r.left(), defs, memo), resolve_rec(r.right(), defs, memo));
    case RegexKind::Or:
      if (!has_vars(r)) return r;
      return Regex::alt(resolve_rec(r.left(), defs, memo), resolve_rec(r.right(), defs, memo));
    default:
      return r;
  }
}

}  // namespace

Regex resolve(const Regex& r, const Definitions& defs) {
  std::unordered_map<std::string, Regex> memo;
  return resolve_rec(r, defs, memo);
}

}  // namespace bilens
