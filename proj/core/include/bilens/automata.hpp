#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "bilens/regex.hpp"

namespace bilens {

// The symbols an automaton distinguishes. Bytes outside the set lead to the
// dead state.
class Alphabet {
 public:
  Alphabet();
  static Alphabet of(const Regex& r);
  static Alphabet merge(const Alphabet& a, const Alphabet& b);

  void add(unsigned char c);
  std::size_t size() const { return symbols_.size(); }
  int index_of(unsigned char c) const { return c < 128 ? index_[c] : -1; }
  unsigned char symbol(std::size_t i) const { return symbols_[i]; }
  const std::vector<unsigned char>& symbols() const { return symbols_; }

 private:
  std::array<int, 128> index_;
  std::vector<unsigned char> symbols_;
};

// Complete deterministic automaton built by subset construction from a
// Thompson NFA. State 0 is the dead state.
class Dfa {
 public:
  static constexpr int kDead = 0;

  // The regex must be Var-free.
  static Dfa build(const Regex& r);
  static Dfa build(const Regex& r, const Alphabet& sigma);

  const Alphabet& alphabet() const { return sigma_; }
  std::size_t num_states() const { return accepting_.size(); }
  int start() const { return start_; }
  bool accepting(int state) const { return accepting_[state]; }
  // True when some accepting state is reachable from `state`.
  bool live(int state) const { return live_[state]; }
  int next(int state, std::size_t symbol_index) const {
    return table_[static_cast<std::size_t>(state) * sigma_.size() + symbol_index];
  }
  int step(int state, unsigned char c) const {
    int i = sigma_.index_of(c);
    return i < 0 ? kDead : next(state, static_cast<std::size_t>(i));
  }

  bool accepts(std::string_view s) const;
  bool empty_language() const { return !live_[start_]; }
  // All j >= from with s[from, j) accepted, ascending.
  std::vector<std::size_t> match_ends(std::string_view s, std::size_t from) const;

 private:
  Alphabet sigma_;
  int start_ = 0;
  std::vector<int> table_;
  std::vector<bool> accepting_;
  std::vector<bool> live_;
};

}  // namespace bilens
