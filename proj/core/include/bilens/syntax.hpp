#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bilens/lens.hpp"
#include "bilens/regex.hpp"
#include "bilens/synth.hpp"

namespace bilens {

struct SynthTask {
  std::string name;
  Regex source;
  Regex target;
  Examples examples;

  friend bool operator==(const SynthTask&, const SynthTask&) = default;
};

struct LensDecl {
  std::string name;
  Lens lens;
  // Declared endpoints; when present they name the types the lens relates.
  std::optional<Regex> source;
  std::optional<Regex> target;

  friend bool operator==(const LensDecl&, const LensDecl&) = default;
};

struct SpecFile {
  struct Item {
    enum class Kind { Task, Lens };
    Kind kind;
    std::size_t index;
    friend bool operator==(const Item&, const Item&) = default;
  };

  Definitions definitions;
  // Aliases inlined wherever they are mentioned.
  std::vector<std::pair<std::string, Regex>> char_classes;
  std::vector<SynthTask> tasks;
  std::vector<LensDecl> lenses;
  std::vector<Item> items;  // tasks and lens declarations in file order

  const SynthTask* find_task(const std::string& name) const;
  const LensDecl* find_lens(const std::string& name) const;
};

// Throw SyntaxError(line, col, message).
Regex parse_regex(std::string_view text);
Lens parse_lens(std::string_view text);
SpecFile parse_spec(std::string_view text);
SpecFile parse_spec_file(const std::string& path);

std::string print_spec(const SpecFile& spec);

}  // namespace bilens
