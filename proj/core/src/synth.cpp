#include "bilens/synth.hpp"

#include <chrono>
#include <queue>
#include <unordered_set>

#include "bilens/errors.hpp"
#include "bilens/regex_analysis.hpp"

namespace bilens {

const char* to_string(SynthMode mode) {
  switch (mode) {
    case SynthMode::Full:
      return "full";
    case SynthMode::NoFpe:
      return "nofpe";
    case SynthMode::NoEr:
      return "noer";
    case SynthMode::NoUd:
      return "noud";
  }
  return "?";
}

std::optional<SynthMode> parse_mode(const std::string& text) {
  for (SynthMode m : {SynthMode::Full, SynthMode::NoFpe, SynthMode::NoEr, SynthMode::NoUd}) {
    if (text == to_string(m)) return m;
  }
  return std::nullopt;
}

SynthConfig SynthConfig::for_mode(SynthMode mode) {
  SynthConfig c;
  switch (mode) {
    case SynthMode::Full:
      break;
    case SynthMode::NoFpe:
      c.use_library = false;
      c.fix_problem_elts = false;
      break;
    case SynthMode::NoEr:
      c.use_library = false;
      c.fix_problem_elts = false;
      c.expand_required = false;
      break;
    case SynthMode::NoUd:
      c.use_library = false;
      c.fix_problem_elts = false;
      c.expand_required = false;
      c.substitute_upfront = true;
      break;
  }
  return c;
}

Synthesizer::Synthesizer(const Definitions& defs, const LensLibrary* lib, SynthConfig config)
    : defs_(defs),
      lib_(config.use_library ? lib : nullptr),
      config_(config),
      classes_(lib_ ? VarClasses(*lib_, defs) : VarClasses()),
      cache_(defs) {}

StarDepthSet Synthesizer::current(const DnfRegex& d) const { return classes_.canonical(current_set(d)); }

StarDepthSet Synthesizer::transitive(const DnfRegex& d) const {
  return classes_.canonical(transitive_set(d, defs_));
}

std::optional<DnfLens> Synthesizer::rigid_synth(const DnfRegex& src, const DnfRegex& tgt, const Examples& exs) {
  Sils ls;
  Sils lt;
  for (std::size_t i = 0; i < exs.size(); ++i) {
    IntList label{static_cast<int>(i + 1)};
    ls.push_back({exs[i].first, label});
    lt.push_back({exs[i].second, label});
  }
  Embedder embedder(cache_, classes_);
  ExampledDnf es = embedder.embed(src, ls);
  ExampledDnf et = embedder.embed(tgt, lt);
  return rigid_synth_exampled(es, et, classes_);
}

std::size_t Synthesizer::force_expand(DnfRegex& d, const std::string& klass, std::size_t depth) {
  std::size_t count = 0;
  for (;;) {
    std::optional<RewritePath> hit;
    for (const auto& site : atom_sites(d)) {
      if (site.depth == depth && site.atom->is_var() && classes_.representative(site.atom->name()) == klass) {
        hit = site.path;
        break;
      }
    }
    if (!hit) return count;
    d = apply_rewrite_at(d, *hit, RewriteRule::Substitute, defs_);
    ++count;
  }
}

QueueElement Synthesizer::expand_required(QueueElement qe) {
  for (;;) {
    bool changed = false;
    for (int side = 0; side < 2; ++side) {
      DnfRegex& mine = side == 0 ? qe.src : qe.tgt;
      const DnfRegex& other = side == 0 ? qe.tgt : qe.src;
      StarDepthSet reachable = transitive(other);
      for (const auto& p : current(mine)) {
        if (reachable.count(p)) continue;
        std::size_t n = force_expand(mine, p.name, p.depth);
        qe.expansions += n;
        qe.forced += n;
        stats_.forced_total += n;
        changed = changed || n > 0;
      }
    }
    if (!changed) return qe;
  }
}

namespace {

std::string key_of(const DnfRegex& src, const DnfRegex& tgt) { return to_string(src) + " <=> " + to_string(tgt); }

void push_unique(std::vector<QueueElement>& out, std::unordered_set<std::string>& seen, QueueElement qe) {
  if (seen.insert(key_of(qe.src, qe.tgt)).second) out.push_back(std::move(qe));
}

}  // namespace

void Synthesizer::reveal(const DnfRegex& d, bool on_source, const StarDepthPair& want, const QueueElement& qe,
                         std::vector<QueueElement>& out) {
  auto emit = [&](const RewritePath& path, RewriteRule rule) {
    QueueElement next = qe;
    (on_source ? next.src : next.tgt) = apply_rewrite_at(d, path, rule, defs_);
    next.expansions += 1;
    out.push_back(std::move(next));
  };
  for (const auto& site : atom_sites(d)) {
    if (want.depth < site.depth) continue;
    StarDepthPair rel{want.name, want.depth - site.depth};
    if (site.atom->is_star()) {
      if (classes_.canonical(transitive_set_at(site.atom->body(), defs_, 0)).count(rel)) {
        emit(site.path, RewriteRule::UnrollL);
        emit(site.path, RewriteRule::UnrollR);
      }
    } else if (classes_.canonical(transitive_set(to_dnf(defs_.at(site.atom->name())), defs_)).count(rel)) {
      emit(site.path, RewriteRule::Substitute);
    }
  }
}

std::vector<QueueElement> Synthesizer::fix_problem_elts(const QueueElement& qe) {
  std::vector<QueueElement> raw;
  StarDepthSet cs = current(qe.src);
  StarDepthSet ct = current(qe.tgt);
  for (const auto& p : cs) {
    if (!ct.count(p)) reveal(qe.tgt, false, p, qe, raw);
  }
  for (const auto& p : ct) {
    if (!cs.count(p)) reveal(qe.src, true, p, qe, raw);
  }
  std::vector<QueueElement> out;
  std::unordered_set<std::string> seen;
  for (auto& e : raw) push_unique(out, seen, std::move(e));
  stats_.reveal_candidates += out.size();
  return out;
}

std::vector<QueueElement> Synthesizer::expand_once(const QueueElement& qe) {
  std::vector<QueueElement> out;
  std::unordered_set<std::string> seen;
  for (int side = 0; side < 2; ++side) {
    const DnfRegex& d = side == 0 ? qe.src : qe.tgt;
    for (const auto& site : atom_sites(d)) {
      std::vector<RewriteRule> rules;
      if (site.atom->is_star()) {
        rules = {RewriteRule::UnrollL, RewriteRule::UnrollR};
      } else {
        rules = {RewriteRule::Substitute};
      }
      for (RewriteRule rule : rules) {
        QueueElement next = qe;
        (side == 0 ? next.src : next.tgt) = apply_rewrite_at(d, site.path, rule, defs_);
        next.expansions += 1;
        push_unique(out, seen, std::move(next));
      }
    }
  }
  return out;
}

std::vector<QueueElement> Synthesizer::expand(const QueueElement& qe) {
  QueueElement base = config_.expand_required ? expand_required(qe) : qe;
  if (config_.fix_problem_elts) {
    std::vector<QueueElement> fixes = fix_problem_elts(base);
    if (!fixes.empty()) return fixes;
  }
  // A pair changed only by forced substitutions has not been tried yet.
  if (base.expansions != qe.expansions) return {base};
  return expand_once(base);
}

SynthResult Synthesizer::synth_dnf_lens(const DnfRegex& src, const DnfRegex& tgt, const Examples& exs) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  auto elapsed_ms = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - started).count(); };

  struct Entry {
    std::size_t expansions;
    std::size_t order;
    QueueElement qe;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.expansions != b.expansions) return a.expansions > b.expansions;
      return a.order > b.order;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, Later> queue;
  std::unordered_set<std::string> visited;
  std::size_t counter = 0;
  auto push = [&](QueueElement qe) {
    if (!visited.insert(key_of(qe.src, qe.tgt)).second) return;
    std::size_t e = qe.expansions;
    queue.push(Entry{e, counter++, std::move(qe)});
    ++stats_.pushes;
  };
  push(QueueElement{src, tgt, 0, 0});

  while (!queue.empty()) {
    if (stats_.pops >= config_.max_pops) {
      stats_.wall_ms = elapsed_ms();
      throw BudgetExhausted("pop budget of " + std::to_string(config_.max_pops) + " exhausted");
    }
    if (elapsed_ms() > config_.max_seconds * 1000.0) {
      stats_.wall_ms = elapsed_ms();
      throw BudgetExhausted("time budget exhausted");
    }
    QueueElement qe = queue.top().qe;
    queue.pop();
    ++stats_.pops;
    if (auto dl = rigid_synth(qe.src, qe.tgt, exs)) {
      stats_.expansions = qe.expansions;
      stats_.forced = qe.forced;
      stats_.wall_ms = elapsed_ms();
      return SynthResult{dnf_lens_to_lens(*dl), std::move(*dl), std::move(qe.src), std::move(qe.tgt), stats_};
    }
    for (auto& child : expand(qe)) push(std::move(child));
  }
  stats_.wall_ms = elapsed_ms();
  throw BudgetExhausted("search space exhausted without a lens");
}

void Synthesizer::validate(const Regex& r, const Regex& s, const Examples& exs) {
  Regex rr;
  Regex rs;
  try {
    rr = resolve(r, defs_);
    rs = resolve(s, defs_);
  } catch (const UnboundVariable& e) {
    throw ValidationFailed(e.what());
  }
  if (!strongly_unambiguous(rr)) throw ValidationFailed("source is not strongly unambiguous: " + to_string(r));
  if (!strongly_unambiguous(rs)) throw ValidationFailed("target is not strongly unambiguous: " + to_string(s));
  for (const auto& [a, b] : exs) {
    if (!cache_.accepts(rr, a)) throw ValidationFailed("example source not in source language: " + quote(a));
    if (!cache_.accepts(rs, b)) throw ValidationFailed("example target not in target language: " + quote(b));
  }
}

SynthResult Synthesizer::synth_lens(const Regex& r, const Regex& s, const Examples& exs) {
  validate(r, s, exs);
  Regex r2 = config_.substitute_upfront ? resolve(r, defs_) : r;
  Regex s2 = config_.substitute_upfront ? resolve(s, defs_) : s;
  SynthResult result = synth_dnf_lens(to_dnf(r2), to_dnf(s2), exs);
  result.lens = simplify_lens(result.lens, defs_, lib_);
  return result;
}

std::optional<DnfLens> rigid_synth(const DnfRegex& src, const DnfRegex& tgt, const Examples& exs,
                                   const Definitions& defs, const LensLibrary* lib) {
  return Synthesizer(defs, lib).rigid_synth(src, tgt, exs);
}

SynthResult synth_lens(const Regex& r, const Regex& s, const Examples& exs, const Definitions& defs,
                       const LensLibrary* lib, SynthConfig config) {
  return Synthesizer(defs, lib, config).synth_lens(r, s, exs);
}

}  // namespace bilens
