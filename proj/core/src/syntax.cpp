#include "bilens/syntax.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "bilens/errors.hpp"

namespace bilens {

namespace {

enum class Tok { Ident, String, Class, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier, decoded string, class body, or punctuation
  std::size_t line = 1;
  std::size_t col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                                      src_[pos_] == '\'')) {
          t.text += advance();
        }
      } else if (c == '"') {
        t.kind = Tok::String;
        advance();
        for (;;) {
          if (pos_ >= src_.size() || src_[pos_] == '\n') throw SyntaxError(t.line, t.col, "unterminated string");
          char d = advance();
          if (d == '"') break;
          t.text += d == '\\' ? escape(t) : d;
        }
      } else if (c == '[') {
        t.kind = Tok::Class;
        advance();
        for (;;) {
          if (pos_ >= src_.size() || src_[pos_] == '\n') throw SyntaxError(t.line, t.col, "unterminated class");
          char d = advance();
          if (d == ']') break;
          if (d == '\\') {
            // Keep escapes for the class parser, marked with a backslash.
            t.text += '\\';
            t.text += escape(t);
          } else {
            t.text += d;
          }
        }
      } else {
        t.kind = Tok::Punct;
        for (const char* p : {"<=>", "<->"}) {
          if (src_.substr(pos_, 3) == p) {
            t.text = p;
            advance();
            advance();
            advance();
            break;
          }
        }
        if (t.text.empty()) {
          if (std::string_view("=;:{}(),|.*").find(c) == std::string_view::npos) {
            throw SyntaxError(line_, col_, std::string("unexpected character '") + c + "'");
          }
          t.text = std::string(1, advance());
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' || src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  char escape(const Token& t) {
    if (pos_ >= src_.size()) throw SyntaxError(t.line, t.col, "dangling escape");
    char e = advance();
    switch (e) {
      case 'n':
        return '\n';
      case 't':
        return '\t';
      case 'r':
        return '\r';
      case 'x': {
        if (pos_ + 2 > src_.size()) throw SyntaxError(line_, col_, "bad hex escape");
        std::string hex{advance(), advance()};
        std::size_t used = 0;
        int v = 0;
        try {
          v = std::stoi(hex, &used, 16);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != 2) throw SyntaxError(line_, col_, "bad hex escape");
        return static_cast<char>(v);
      }
      default:
        return e;
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"typedef", "class", "synth", "lens",    "with",   "empty",
                                       "const",   "swap",  "iterate", "id", "inverse"};
  return k;
}

Regex expand_class(const Token& t) {
  std::string body = t.text;
  bool negate = !body.empty() && body[0] == '^';
  if (negate) body.erase(0, 1);
  // Decode into (char, escaped) pairs.
  std::vector<std::pair<char, bool>> chars;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '\\' && i + 1 < body.size()) {
      chars.emplace_back(body[i + 1], true);
      ++i;
    } else {
      chars.emplace_back(body[i], false);
    }
  }
  std::set<unsigned char> members;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    unsigned char lo = static_cast<unsigned char>(chars[i].first);
    if (i + 2 < chars.size() && chars[i + 1].first == '-' && !chars[i + 1].second) {
      unsigned char hi = static_cast<unsigned char>(chars[i + 2].first);
      if (hi < lo) throw SyntaxError(t.line, t.col, "reversed class range");
      for (unsigned c = lo; c <= hi; ++c) members.insert(static_cast<unsigned char>(c));
      i += 2;
    } else {
      members.insert(lo);
    }
  }
  std::vector<Regex> branches;
  if (negate) {
    for (unsigned c = 0x20; c < 0x7f; ++c) {
      if (!members.count(static_cast<unsigned char>(c))) branches.push_back(Regex::str(std::string(1, static_cast<char>(c))));
    }
  } else {
    for (unsigned char c : members) {
      if (c >= 0x80) throw SyntaxError(t.line, t.col, "class member outside the 7-bit alphabet");
      branches.push_back(Regex::str(std::string(1, static_cast<char>(c))));
    }
  }
  return alt_all(branches);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

  SpecFile spec() {
    SpecFile f;
    std::set<std::string> names;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind != Tok::Ident) fail("expected a declaration");
      if (t.text == "typedef") {
        next();
        std::string name = fresh_name(names);
        expect("=");
        Regex body = regex();
        expect(";");
        try {
          f.definitions.add(name, body);
        } catch (const UnboundVariable& e) {
          fail("unknown name " + e.name() + " in typedef " + name);
        }
      } else if (t.text == "class") {
        next();
        std::string name = fresh_name(names);
        expect("=");
        Regex body = regex();
        expect(";");
        if (has_vars(body)) fail("class bodies may not mention typedefs");
        f.char_classes.emplace_back(name, body);
        classes_[name] = body;
      } else if (t.text == "synth") {
        next();
        SynthTask task;
        task.name = fresh_name(names);
        expect(":");
        task.source = bound_regex(f.definitions);
        expect("<=>");
        task.target = bound_regex(f.definitions);
        if (accept("with")) {
          expect("{");
          if (!accept("}")) {
            do {
              std::string a = string();
              expect("<->");
              std::string b = string();
              task.examples.emplace_back(a, b);
            } while (accept(","));
            expect("}");
          }
        }
        expect(";");
        f.items.push_back({SpecFile::Item::Kind::Task, f.tasks.size()});
        f.tasks.push_back(std::move(task));
      } else if (t.text == "lens") {
        next();
        LensDecl decl;
        decl.name = fresh_name(names);
        if (accept(":")) {
          decl.source = bound_regex(f.definitions);
          expect("<=>");
          decl.target = bound_regex(f.definitions);
        }
        expect("=");
        decl.lens = lens();
        expect(";");
        f.items.push_back({SpecFile::Item::Kind::Lens, f.lenses.size()});
        f.lenses.push_back(std::move(decl));
      } else {
        fail("expected typedef, class, synth or lens");
      }
    }
    return f;
  }

  Regex whole_regex() {
    Regex r = regex();
    if (peek().kind != Tok::End) fail("trailing input after regex");
    return r;
  }

  Lens whole_lens() {
    Lens l = lens();
    if (peek().kind != Tok::End) fail("trailing input after lens");
    return l;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(peek().line, peek().col, msg + (peek().kind == Tok::End ? " at end of input" : " near '" + peek().text + "'"));
  }

  bool is_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool is_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

  bool accept(const char* p) {
    if (is_punct(p) || is_word(p)) {
      next();
      return true;
    }
    return false;
  }

  void expect(const char* p) {
    if (!accept(p)) fail(std::string("expected '") + p + "'");
  }

  std::string string() {
    if (peek().kind != Tok::String) fail("expected a string literal");
    return next().text;
  }

  std::string ident() {
    if (peek().kind != Tok::Ident || keywords().count(peek().text)) fail("expected a name");
    return next().text;
  }

  std::string fresh_name(std::set<std::string>& names) {
    std::size_t line = peek().line;
    std::size_t col = peek().col;
    std::string n = ident();
    if (!names.insert(n).second) throw SyntaxError(line, col, "duplicate name " + n);
    return n;
  }

  bool starts_primary() const {
    const Token& t = peek();
    if (t.kind == Tok::String || t.kind == Tok::Class) return true;
    if (t.kind == Tok::Ident) return t.text == "empty" || !keywords().count(t.text);
    return t.kind == Tok::Punct && t.text == "(";
  }

  static bool starts_lens(const Token& t) {
    if (t.kind == Tok::Punct) return t.text == "(";
    if (t.kind != Tok::Ident) return false;
    static const std::set<std::string> heads{"const", "swap", "iterate", "id", "inverse"};
    return heads.count(t.text) || !keywords().count(t.text);
  }

  // A regex whose names must already be defined.
  Regex bound_regex(const Definitions& defs) {
    std::size_t line = peek().line;
    std::size_t col = peek().col;
    Regex r = regex();
    for (const auto& v : free_vars(r)) {
      if (!defs.contains(v)) throw SyntaxError(line, col, "unknown name " + v);
    }
    return r;
  }

  Regex regex() {
    std::vector<Regex> branches{sequence()};
    while (accept("|")) branches.push_back(sequence());
    return alt_all(branches);
  }

  Regex sequence() {
    std::vector<Regex> parts{postfix()};
    for (;;) {
      if (accept(".")) {
        parts.push_back(postfix());
      } else if (starts_primary()) {
        parts.push_back(postfix());
      } else {
        break;
      }
    }
    return concat_all(parts);
  }

  Regex postfix() {
    Regex r = primary();
    while (accept("*")) r = Regex::star(r);
    return r;
  }

  Regex primary() {
    const Token& t = peek();
    if (t.kind == Tok::String) return Regex::str(next().text);
    if (t.kind == Tok::Class) return expand_class(next());
    if (accept("(")) {
      Regex r = regex();
      expect(")");
      return r;
    }
    if (accept("empty")) return Regex::empty();
    std::string name = ident();
    auto it = classes_.find(name);
    if (it != classes_.end()) return it->second;
    return Regex::var(name);
  }

  Lens lens() {
    std::vector<Lens> parts{lens_or()};
    // A ';' not followed by a lens term ends the enclosing declaration.
    while (is_punct(";") && starts_lens(toks_[pos_ + 1])) {
      next();
      parts.push_back(lens_or());
    }
    Lens out = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) out = Lens::compose(parts[i], out);
    return out;
  }

  Lens lens_or() {
    std::vector<Lens> parts{lens_concat()};
    while (accept("|")) parts.push_back(lens_concat());
    Lens out = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) out = Lens::alt(parts[i], out);
    return out;
  }

  Lens lens_concat() {
    std::vector<Lens> parts{lens_atom()};
    while (accept(".")) parts.push_back(lens_atom());
    return concat_all(parts);
  }

  Lens lens_atom() {
    if (accept("(")) {
      Lens l = lens();
      expect(")");
      return l;
    }
    if (accept("const")) {
      expect("(");
      std::string a = string();
      expect(",");
      std::string b = string();
      expect(")");
      return Lens::constant(a, b);
    }
    if (accept("swap")) {
      expect("(");
      Lens a = lens();
      expect(",");
      Lens b = lens();
      expect(")");
      return Lens::swap(a, b);
    }
    if (accept("iterate")) {
      expect("(");
      Lens a = lens();
      expect(")");
      return Lens::iterate(a);
    }
    if (accept("id")) {
      expect("(");
      Regex r = regex();
      expect(")");
      return Lens::identity(r);
    }
    if (accept("inverse")) {
      expect("(");
      std::string n = ident();
      expect(")");
      return Lens::ref(n, true);
    }
    return Lens::ref(ident());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, Regex> classes_;
};

}  // namespace

const SynthTask* SpecFile::find_task(const std::string& name) const {
  for (const auto& t : tasks) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

const LensDecl* SpecFile::find_lens(const std::string& name) const {
  for (const auto& l : lenses) {
    if (l.name == name) return &l;
  }
  return nullptr;
}

Regex parse_regex(std::string_view text) { return Parser(text).whole_regex(); }

Lens parse_lens(std::string_view text) { return Parser(text).whole_lens(); }

SpecFile parse_spec(std::string_view text) { return Parser(text).spec(); }

SpecFile parse_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string print_spec(const SpecFile& spec) {
  std::string out;
  for (const auto& [name, body] : spec.char_classes) out += "class " + name + " = " + to_string(body) + ";\n";
  for (const auto& [name, body] : spec.definitions.bindings()) {
    out += "typedef " + name + " = " + to_string(body) + ";\n";
  }
  for (const auto& item : spec.items) {
    if (item.kind == SpecFile::Item::Kind::Task) {
      const SynthTask& t = spec.tasks[item.index];
      out += "synth " + t.name + " : " + to_string(t.source) + " <=> " + to_string(t.target);
      if (!t.examples.empty()) {
        out += " with {";
        for (std::size_t i = 0; i < t.examples.size(); ++i) {
          out += i == 0 ? " " : ", ";
          out += quote(t.examples[i].first) + " <-> " + quote(t.examples[i].second);
        }
        out += " }";
      }
      out += ";\n";
    } else {
      const LensDecl& l = spec.lenses[item.index];
      out += "lens " + l.name;
      if (l.source && l.target) out += " : " + to_string(*l.source) + " <=> " + to_string(*l.target);
      out += " = " + pretty_print(l.lens) + ";\n";
    }
  }
  return out;
}

}  // namespace bilens
