#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bilens/language_cache.hpp"
#include "bilens/regex.hpp"

namespace bilens {

enum class LensKind { Const, Iterate, Concat, Swap, Or, Compose, Identity, Ref };

// Bijective lens term. Ref names an entry of a LensLibrary, optionally used
// right to left.
class Lens {
 public:
  Lens();  // const("", "")

  static Lens constant(std::string s1, std::string s2);
  static Lens iterate(Lens l);
  static Lens concat(Lens l1, Lens l2);
  static Lens swap(Lens l1, Lens l2);
  static Lens alt(Lens l1, Lens l2);
  static Lens compose(Lens l1, Lens l2);
  static Lens identity(Regex r);
  static Lens ref(std::string name, bool inverted = false);

  LensKind kind() const;
  const std::string& source_text() const;  // Const
  const std::string& target_text() const;  // Const
  const std::string& name() const;         // Ref
  bool inverted() const;                   // Ref
  const Regex& regex() const;              // Identity
  const Lens& inner() const;               // Iterate
  const Lens& left() const;
  const Lens& right() const;

  const void* node_id() const { return node_.get(); }

  friend bool operator==(const Lens& a, const Lens& b);
  friend bool operator!=(const Lens& a, const Lens& b) { return !(a == b); }

  struct Node;  // opaque

 private:
  explicit Lens(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct LensType {
  Regex source;
  Regex target;
};

std::string pretty_print(const Lens& l);
inline std::string to_string(const Lens& l) { return pretty_print(l); }

// The lens read right to left.
Lens invert(const Lens& l);

// Right-associated concat chain; the empty list is const("", "").
Lens concat_all(const std::vector<Lens>& parts);

class LensLibrary {
 public:
  struct Entry {
    std::string name;
    Lens lens;
    Regex source;
    Regex target;
  };

  // Typechecks the lens against this library and stores it.
  void add(const std::string& name, const Lens& lens, const Definitions& defs);
  // Same, but records the given endpoints after checking they denote the
  // languages the lens actually relates.
  void add(const std::string& name, const Lens& lens, const Definitions& defs, const Regex& source,
           const Regex& target);
  const Entry* find(const std::string& name) const;
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

LensType typecheck_lens(const Lens& l, const Definitions& defs, const LensLibrary* lib = nullptr);
std::string lens_get(const Lens& l, std::string_view s, const Definitions& defs,
                     const LensLibrary* lib = nullptr);
std::string lens_put(const Lens& l, std::string_view t, const Definitions& defs,
                     const LensLibrary* lib = nullptr);

// Typechecks once, then evaluates many strings with shared automata.
class LensRunner {
 public:
  LensRunner(Lens l, const Definitions& defs, const LensLibrary* lib = nullptr);
  ~LensRunner();

  const Lens& lens() const { return lens_; }
  const LensType& type() const;
  bool in_source(std::string_view s);
  bool in_target(std::string_view t);
  std::string get(std::string_view s);  // throws InputNotInSource
  std::string put(std::string_view t);  // throws InputNotInTarget

 private:
  const LensType& check(const Lens& l);
  std::string get_rec(const Lens& l, std::string_view s);
  std::string put_rec(const Lens& l, std::string_view t);
  LensRunner& library_runner(const std::string& name);
  const LensType& type_of(const Lens& l) const;

  Lens lens_;
  Definitions defs_;
  const LensLibrary* lib_;
  LanguageCache cache_;
  std::unordered_map<const void*, LensType> types_;
  std::map<std::string, std::unique_ptr<LensRunner>> refs_;
};

}  // namespace bilens
