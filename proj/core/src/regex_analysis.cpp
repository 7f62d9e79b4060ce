#include "bilens/regex_analysis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "bilens/automata.hpp"
#include "bilens/errors.hpp"

namespace bilens {

bool nullable(const Regex& r) {
  switch (r.kind()) {
    case RegexKind::Str:
      return r.text().empty();
    case RegexKind::Empty:
      return false;
    case RegexKind::Star:
      return true;
    case RegexKind::Concat:
      return nullable(r.left()) && nullable(r.right());
    case RegexKind::Or:
      return nullable(r.left()) || nullable(r.right());
    case RegexKind::Var:
      throw UnboundVariable(r.text());
  }
  return false;
}

bool language_empty(const Regex& r) { return Dfa::build(r).empty_language(); }

namespace {

// Breadth-first search over the product automaton; `stop` decides whether a
// reachable pair is a witness.
template <typename Stop>
bool product_search(const Dfa& a, const Dfa& b, Stop stop) {
  const std::size_t k = a.alphabet().size();
  const std::size_t nb = b.num_states();
  std::vector<char> seen(a.num_states() * nb, 0);
  std::deque<std::pair<int, int>> queue;
  queue.emplace_back(a.start(), b.start());
  seen[static_cast<std::size_t>(a.start()) * nb + static_cast<std::size_t>(b.start())] = 1;
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    if (stop(p, q)) return true;
    for (std::size_t s = 0; s < k; ++s) {
      int p2 = a.next(p, s);
      int q2 = b.next(q, s);
      std::size_t key = static_cast<std::size_t>(p2) * nb + static_cast<std::size_t>(q2);
      if (!seen[key]) {
        seen[key] = 1;
        queue.emplace_back(p2, q2);
      }
    }
  }
  return false;
}

}  // namespace

bool languages_disjoint(const Regex& r1, const Regex& r2) {
  Alphabet sigma = Alphabet::merge(Alphabet::of(r1), Alphabet::of(r2));
  Dfa a = Dfa::build(r1, sigma);
  Dfa b = Dfa::build(r2, sigma);
  return !product_search(a, b, [&](int p, int q) { return a.accepting(p) && b.accepting(q); });
}

bool lang_equiv(const Regex& r1, const Regex& r2) {
  Alphabet sigma = Alphabet::merge(Alphabet::of(r1), Alphabet::of(r2));
  Dfa a = Dfa::build(r1, sigma);
  Dfa b = Dfa::build(r2, sigma);
  return !product_search(a, b, [&](int p, int q) { return a.accepting(p) != b.accepting(q); });
}

bool unambig_concat(const Regex& r1, const Regex& r2) {
  Alphabet sigma = Alphabet::merge(Alphabet::of(r1), Alphabet::of(r2));
  Dfa d1 = Dfa::build(r1, sigma);
  Dfa d2 = Dfa::build(r2, sigma);
  if (d1.empty_language() || d2.empty_language()) return true;
  const std::size_t k = sigma.size();
  const std::size_t n1 = d1.num_states();
  const std::size_t n2 = d2.num_states();

  // Overlaps A = {v | u in L1, uv in L1}: run d1 from every accepting state
  // at once. Subset states are interned on demand.
  std::map<std::vector<int>, int> set_ids;
  std::vector<std::vector<int>> sets;
  std::vector<bool> set_accepts;
  auto intern = [&](std::vector<int> set) {
    auto [it, fresh] = set_ids.emplace(set, static_cast<int>(sets.size()));
    if (fresh) {
      bool acc = false;
      for (int q : set) acc = acc || d1.accepting(q);
      set_accepts.push_back(acc);
      sets.push_back(std::move(set));
    }
    return it->second;
  };
  std::vector<int> init;
  for (std::size_t q = 0; q < n1; ++q) {
    if (d1.accepting(static_cast<int>(q))) init.push_back(static_cast<int>(q));
  }
  int a_start = intern(init);

  // Prefix-of-L2 test B = {v | w in L2, vw in L2}: state q of d2 is final
  // when L(q) and L2 intersect, decided by backward search over d2 x d2.
  std::vector<std::vector<std::size_t>> preds(n2 * n2);
  for (std::size_t p = 0; p < n2; ++p) {
    for (std::size_t q = 0; q < n2; ++q) {
      for (std::size_t s = 0; s < k; ++s) {
        std::size_t to = static_cast<std::size_t>(d2.next(static_cast<int>(p), s)) * n2 +
                         static_cast<std::size_t>(d2.next(static_cast<int>(q), s));
        preds[to].push_back(p * n2 + q);
      }
    }
  }
  std::vector<char> meets(n2 * n2, 0);
  std::vector<std::size_t> stack;
  for (std::size_t p = 0; p < n2; ++p) {
    for (std::size_t q = 0; q < n2; ++q) {
      if (d2.accepting(static_cast<int>(p)) && d2.accepting(static_cast<int>(q))) {
        meets[p * n2 + q] = 1;
        stack.push_back(p * n2 + q);
      }
    }
  }
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t y : preds[x]) {
      if (!meets[y]) {
        meets[y] = 1;
        stack.push_back(y);
      }
    }
  }
  auto b_final = [&](int q) {
    return meets[static_cast<std::size_t>(q) * n2 + static_cast<std::size_t>(d2.start())] != 0;
  };

  // Search A x B for a nonempty common word.
  std::map<std::tuple<int, int, bool>, char> seen;
  std::deque<std::tuple<int, int, bool>> queue;
  queue.emplace_back(a_start, d2.start(), false);
  seen[{a_start, d2.start(), false}] = 1;
  while (!queue.empty()) {
    auto [x, q, stepped] = queue.front();
    queue.pop_front();
    if (stepped && set_accepts[static_cast<std::size_t>(x)] && b_final(q)) return false;
    for (std::size_t s = 0; s < k; ++s) {
      int q2 = d2.next(q, s);
      if (!d2.live(q2)) continue;
      std::vector<int> next;
      for (int p : sets[static_cast<std::size_t>(x)]) {
        int p2 = d1.next(p, s);
        if (d1.live(p2)) next.push_back(p2);
      }
      if (next.empty()) continue;
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      int x2 = intern(std::move(next));
      std::tuple<int, int, bool> key{x2, q2, true};
      if (seen.emplace(key, 1).second) queue.push_back(key);
    }
  }
  return true;
}

bool unambig_iter(const Regex& r) {
  if (nullable(r)) return false;
  return unambig_concat(r, Regex::star(r));
}

bool strongly_unambiguous(const Regex& r) {
  if (language_empty(r)) return true;
  switch (r.kind()) {
    case RegexKind::Str:
    case RegexKind::Empty:
      return true;
    case RegexKind::Concat:
      return strongly_unambiguous(r.left()) && strongly_unambiguous(r.right()) &&
             unambig_concat(r.left(), r.right());
    case RegexKind::Or:
      return strongly_unambiguous(r.left()) && strongly_unambiguous(r.right()) &&
             languages_disjoint(r.left(), r.right());
    case RegexKind::Star:
      return strongly_unambiguous(r.inner()) && unambig_iter(r.inner());
    case RegexKind::Var:
      throw UnboundVariable(r.text());
  }
  return false;
}

std::set<std::string> enumerate_strings(const Regex& r, std::size_t max_len) {
  Dfa d = Dfa::build(r);
  std::set<std::string> out;
  std::string cur;
  const std::size_t k = d.alphabet().size();
  // Depth-first walk restricted to live states.
  auto walk = [&](auto&& self, int q) -> void {
    if (d.accepting(q)) out.insert(cur);
    if (cur.size() == max_len) return;
    for (std::size_t s = 0; s < k; ++s) {
      int q2 = d.next(q, s);
      if (!d.live(q2)) continue;
      cur.push_back(static_cast<char>(d.alphabet().symbol(s)));
      self(self, q2);
      cur.pop_back();
    }
  };
  if (d.live(d.start())) walk(walk, d.start());
  return out;
}

}  // namespace bilens
