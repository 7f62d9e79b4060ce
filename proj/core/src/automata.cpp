#include "bilens/automata.hpp"

#include <algorithm>
#include <map>

#include "bilens/errors.hpp"

namespace bilens {

Alphabet::Alphabet() { index_.fill(-1); }

void Alphabet::add(unsigned char c) {
  if (c >= 128) throw Error("byte outside the 7-bit alphabet in regex literal");
  if (index_[c] >= 0) return;
  symbols_.insert(std::upper_bound(symbols_.begin(), symbols_.end(), c), c);
  for (std::size_t i = 0; i < symbols_.size(); ++i) index_[symbols_[i]] = static_cast<int>(i);
}

namespace {

void collect_symbols(const Regex& r, Alphabet& sigma) {
  switch (r.kind()) {
    case RegexKind::Str:
      for (unsigned char c : r.text()) sigma.add(c);
      break;
    case RegexKind::Star:
      collect_symbols(r.inner(), sigma);
      break;
    case RegexKind::Concat:
    case RegexKind::Or:
      collect_symbols(r.left(), sigma);
      collect_symbols(r.right(), sigma);
      break;
    case RegexKind::Var:
      throw UnboundVariable(r.text());
    case RegexKind::Empty:
      break;
  }
}

struct Nfa {
  std::vector<std::vector<int>> eps;
  std::vector<std::vector<std::pair<int, int>>> moves;  // (symbol index, target)

  int add_state() {
    eps.emplace_back();
    moves.emplace_back();
    return static_cast<int>(eps.size()) - 1;
  }
};

struct Fragment {
  int start;
  int accept;
};

Fragment thompson(const Regex& r, const Alphabet& sigma, Nfa& nfa) {
  switch (r.kind()) {
    case RegexKind::Empty: {
      int s = nfa.add_state();
      int a = nfa.add_state();
      return {s, a};
    }
    case RegexKind::Str: {
      int s = nfa.add_state();
      int cur = s;
      for (unsigned char c : r.text()) {
        int n = nfa.add_state();
        nfa.moves[cur].emplace_back(sigma.index_of(c), n);
        cur = n;
      }
      return {s, cur};
    }
    case RegexKind::Star: {
      Fragment f = thompson(r.inner(), sigma, nfa);
      int s = nfa.add_state();
      int a = nfa.add_state();
      nfa.eps[s].push_back(f.start);
      nfa.eps[s].push_back(a);
      nfa.eps[f.accept].push_back(f.start);
      nfa.eps[f.accept].push_back(a);
      return {s, a};
    }
    case RegexKind::Concat: {
      Fragment f = thompson(r.left(), sigma, nfa);
      Fragment g = thompson(r.right(), sigma, nfa);
      nfa.eps[f.accept].push_back(g.start);
      return {f.start, g.accept};
    }
    case RegexKind::Or: {
      Fragment f = thompson(r.left(), sigma, nfa);
      Fragment g = thompson(r.right(), sigma, nfa);
      int s = nfa.add_state();
      int a = nfa.add_state();
      nfa.eps[s].push_back(f.start);
      nfa.eps[s].push_back(g.start);
      nfa.eps[f.accept].push_back(a);
      nfa.eps[g.accept].push_back(a);
      return {s, a};
    }
    case RegexKind::Var:
      throw UnboundVariable(r.text());
  }
  throw Error("unreachable regex kind");
}

void close(const Nfa& nfa, std::vector<int>& set, std::vector<char>& mark) {
  std::vector<int> stack(set.begin(), set.end());
  for (int s : set) mark[s] = 1;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int t : nfa.eps[s]) {
      if (!mark[t]) {
        mark[t] = 1;
        set.push_back(t);
        stack.push_back(t);
      }
    }
  }
  for (int s : set) mark[s] = 0;
  std::sort(set.begin(), set.end());
}

}  // namespace

Alphabet Alphabet::of(const Regex& r) {
  Alphabet sigma;
  collect_symbols(r, sigma);
  return sigma;
}

Alphabet Alphabet::merge(const Alphabet& a, const Alphabet& b) {
  Alphabet out = a;
  for (unsigned char c : b.symbols()) out.add(c);
  return out;
}

Dfa Dfa::build(const Regex& r) { return build(r, Alphabet::of(r)); }

Dfa Dfa::build(const Regex& r, const Alphabet& sigma) {
  // Every symbol of r must be in sigma.
  Alphabet used = Alphabet::of(r);
  for (unsigned char c : used.symbols()) {
    if (sigma.index_of(c) < 0) throw Error("alphabet does not cover regex symbols");
  }
  Nfa nfa;
  Fragment frag = thompson(r, sigma, nfa);
  const std::size_t k = sigma.size();

  Dfa dfa;
  dfa.sigma_ = sigma;
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> sets;
  std::vector<char> mark(nfa.eps.size(), 0);

  // Dead state first.
  ids.emplace(std::vector<int>{}, 0);
  sets.emplace_back();
  dfa.table_.assign(k, 0);
  dfa.accepting_.push_back(false);

  std::vector<int> init{frag.start};
  close(nfa, init, mark);
  auto intern = [&](std::vector<int> set) {
    auto [it, fresh] = ids.emplace(set, static_cast<int>(sets.size()));
    if (fresh) {
      dfa.accepting_.push_back(std::binary_search(set.begin(), set.end(), frag.accept));
      sets.push_back(std::move(set));
      dfa.table_.resize(dfa.table_.size() + k, 0);
    }
    return it->second;
  };
  dfa.start_ = intern(init);

  std::vector<std::vector<int>> buckets(k);
  for (std::size_t q = 1; q < sets.size(); ++q) {
    for (auto& b : buckets) b.clear();
    for (int s : sets[q]) {
      for (auto [sym, t] : nfa.moves[s]) buckets[static_cast<std::size_t>(sym)].push_back(t);
    }
    for (std::size_t a = 0; a < k; ++a) {
      if (buckets[a].empty()) continue;
      std::vector<int> next = buckets[a];
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      close(nfa, next, mark);
      int id = intern(std::move(next));
      dfa.table_[q * k + a] = id;
    }
  }

  // Backward reachability from accepting states.
  const std::size_t n = sets.size();
  std::vector<std::vector<int>> preds(n);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t a = 0; a < k; ++a) preds[static_cast<std::size_t>(dfa.table_[q * k + a])].push_back(static_cast<int>(q));
  }
  dfa.live_.assign(n, false);
  std::vector<int> stack;
  for (std::size_t q = 0; q < n; ++q) {
    if (dfa.accepting_[q]) {
      dfa.live_[q] = true;
      stack.push_back(static_cast<int>(q));
    }
  }
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int p : preds[static_cast<std::size_t>(q)]) {
      if (!dfa.live_[static_cast<std::size_t>(p)]) {
        dfa.live_[static_cast<std::size_t>(p)] = true;
        stack.push_back(p);
      }
    }
  }
  return dfa;
}

bool Dfa::accepts(std::string_view s) const {
  int q = start_;
  for (unsigned char c : s) {
    q = step(q, c);
    if (q == kDead) return false;
  }
  return accepting_[static_cast<std::size_t>(q)];
}

std::vector<std::size_t> Dfa::match_ends(std::string_view s, std::size_t from) const {
  std::vector<std::size_t> out;
  int q = start_;
  if (accepting_[static_cast<std::size_t>(q)]) out.push_back(from);
  for (std::size_t i = from; i < s.size(); ++i) {
    q = step(q, static_cast<unsigned char>(s[i]));
    if (!live_[static_cast<std::size_t>(q)]) break;
    if (accepting_[static_cast<std::size_t>(q)]) out.push_back(i + 1);
  }
  return out;
}

}  // namespace bilens
