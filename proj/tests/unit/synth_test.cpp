#include <gtest/gtest.h>

#include <random>

#include "bilens/errors.hpp"
#include "bilens/regex_analysis.hpp"
#include "bilens/synth.hpp"
#include "bilens/syntax.hpp"
#include "oracles.hpp"

using namespace bilens;

namespace {

Regex R(std::string_view s) { return parse_regex(s); }
DnfRegex D(std::string_view s) { return to_dnf(R(s)); }

Definitions title_defs(const char* text_char = "\"a\" | \"b\"") {
  Definitions d;
  d.add("text_char", R(text_char));
  d.add("legacy_title", R("\"<Field Id=2>\" text_char* \"</Field>\""));
  d.add("modern_title", R("(\"Title: \" text_char text_char* \",\") | \"\""));
  return d;
}

Definitions u_defs() {
  Definitions d;
  d.add("U", R("\"a\" | \"b\""));
  return d;
}

// Every returned lens must typecheck against the task and honour its examples.
void expect_sound(const Lens& l, const Regex& r, const Regex& s, const Examples& exs, const Definitions& defs,
                  const LensLibrary* lib = nullptr) {
  LensType t = typecheck_lens(l, defs, lib);
  EXPECT_TRUE(lang_equiv(resolve(t.source, defs), resolve(r, defs))) << pretty_print(l);
  EXPECT_TRUE(lang_equiv(resolve(t.target, defs), resolve(s, defs))) << pretty_print(l);
  for (const auto& [a, b] : exs) EXPECT_EQ(lens_get(l, a, defs, lib), b) << pretty_print(l);
}

}  // namespace

TEST(Embed, StarLabels) {
  DnfRegex d = D("\"a\"*");
  ExampledDnf e = embed_examples(d, {{"aa", {1}}}, {});
  EXPECT_EQ(e.ils, (IlSet{{1}}));
  ASSERT_EQ(e.seqs.size(), 1u);
  ASSERT_EQ(e.seqs[0].atoms.size(), 1u);
  const ExampledAtom& star = e.seqs[0].atoms[0];
  EXPECT_EQ(star.ils, (IlSet{{1}}));
  ASSERT_TRUE(star.body);
  EXPECT_EQ(star.body->ils, (IlSet{{1, 1}, {2, 1}}));
}

TEST(Embed, NoExamplesMeansEmptyLabels) {
  ExampledDnf e = embed_examples(D("\"a\"* | \"b\""), {}, {});
  EXPECT_TRUE(e.ils.empty());
  for (const auto& s : e.seqs) EXPECT_TRUE(s.ils.empty());
}

TEST(Embed, TitleStringPicksNonemptyBranch) {
  Definitions defs = title_defs("[a-zA-Z0-9 ]");
  DnfRegex d = D("\"<Field Id=2></Field>\" | (\"<Field Id=2>\" text_char text_char* \"</Field>\")");
  ExampledDnf e = embed_examples(d, {{"<Field Id=2>Return 400 on bad PUT request</Field>", {1}}}, defs);
  EXPECT_TRUE(e.seqs[0].ils.empty());
  EXPECT_EQ(e.seqs[1].ils, (IlSet{{1}}));
  EXPECT_THROW(embed_examples(d, {{"nope", {1}}}, defs), ExampleDoesNotParse);
}

TEST(CmpExampled, OrderingFacts) {
  Definitions defs = title_defs();
  DnfRegex d = D("text_char");
  ExampledDnf x = embed_examples(d, {}, defs);
  EXPECT_EQ(cmp_exampled(x, x), std::weak_ordering::equivalent);
  ExampledDnf only_a = embed_examples(d, {{"a", {1}}}, defs);
  ExampledDnf only_b = embed_examples(d, {{"b", {1}}}, defs);
  const ExampledAtom& va = only_a.seqs[0].atoms[0];
  const ExampledAtom& vb = only_b.seqs[0].atoms[0];
  EXPECT_EQ(cmp_exampled(va, vb), std::weak_ordering::less);
  EXPECT_EQ(cmp_exampled(vb, va), std::weak_ordering::greater);
}

TEST(CmpExampled, EmptyTitleSequencesMatch) {
  Definitions defs = title_defs();
  ExampledDnf legacy = embed_examples(D("\"<Field Id=2></Field>\" | (\"<Field Id=2>\" text_char text_char* \"</Field>\")"), {}, defs);
  ExampledDnf modern = embed_examples(D("(\"Title: \" text_char text_char* \",\") | \"\""), {}, defs);
  EXPECT_EQ(cmp_exampled(legacy.seqs[0], modern.seqs[1]), std::weak_ordering::equivalent);
  EXPECT_EQ(cmp_exampled(legacy.seqs[1], modern.seqs[0]), std::weak_ordering::equivalent);
  EXPECT_EQ(cmp_exampled(legacy, modern), std::weak_ordering::equivalent);
}

TEST(RigidSynth, TitleIsSwap) {
  Definitions defs = title_defs();
  auto dl = rigid_synth(D("\"<Field Id=2></Field>\" | (\"<Field Id=2>\" text_char text_char* \"</Field>\")"),
                        D("(\"Title: \" text_char text_char* \",\") | \"\""), {}, defs);
  ASSERT_TRUE(dl);
  EXPECT_EQ(dl->perm, Permutation({1, 0}));
}

TEST(RigidSynth, ConstantSequence) {
  auto dl = rigid_synth(D("\"a\""), D("\"b\""), {{"a", "b"}}, {});
  ASSERT_TRUE(dl);
  ASSERT_EQ(dl->seqs.size(), 1u);
  EXPECT_EQ(dl->seqs[0].strings, (std::vector<std::pair<std::string, std::string>>{{"a", "b"}}));
}

TEST(RigidSynth, ExamplesPickThePermutation) {
  DnfRegex src = D("\"a\" | \"b\"");
  DnfRegex tgt = D("\"x\" | \"y\"");
  auto dl = rigid_synth(src, tgt, {{"a", "y"}}, {});
  ASSERT_TRUE(dl);
  EXPECT_EQ(dnf_lens_get(*dl, "a", {}), "y");
  EXPECT_EQ(dnf_lens_get(*dl, "b", {}), "x");
  // Of the two alignments only one agrees with the example.
  int agreeing = 0;
  for (auto perm : {std::vector<std::size_t>{0, 1}, std::vector<std::size_t>{1, 0}}) {
    DnfLens cand = *dl;
    cand.perm = Permutation(perm);
    if (typecheck_dnf_lens(cand, src, tgt, {}) && dnf_lens_get(cand, "a", {}) == "y") ++agreeing;
  }
  EXPECT_EQ(agreeing, 1);
}

TEST(RigidSynth, FailsOnShapeMismatch) {
  EXPECT_FALSE(rigid_synth(D("\"a\" | \"b\""), D("\"x\""), {}, {}));
  EXPECT_FALSE(rigid_synth(D("\"a\"*"), D("\"x\""), {}, {}));
}

TEST(ExpandRequired, TitleForcesBothNames) {
  Definitions defs = title_defs();
  Synthesizer s(defs);
  QueueElement qe = s.expand_required({D("legacy_title"), D("modern_title"), 0, 0});
  EXPECT_EQ(qe.forced, 2u);
  EXPECT_EQ(qe.expansions, 2u);
  EXPECT_EQ(qe.src, to_dnf(defs.at("legacy_title")));
  EXPECT_EQ(qe.tgt, to_dnf(defs.at("modern_title")));
}

TEST(ExpandRequired, NothingToDo) {
  Synthesizer s({});
  QueueElement qe = s.expand_required({D("\"a\"*"), D("\"b\""), 3, 0});
  EXPECT_EQ(qe.expansions, 3u);
  EXPECT_EQ(qe.src, D("\"a\"*"));
  Definitions defs;
  defs.add("X", R("\"a\""));
  Synthesizer t(defs);
  QueueElement same = t.expand_required({D("X"), D("X"), 0, 0});
  EXPECT_EQ(same.src, D("X"));
  EXPECT_EQ(same.expansions, 0u);
}

TEST(FixProblemElts, TitleRevealsTwoUnrollings) {
  Definitions defs = title_defs();
  Synthesizer s(defs);
  QueueElement base = s.expand_required({D("legacy_title"), D("modern_title"), 0, 0});
  auto fixes = s.fix_problem_elts(base);
  ASSERT_EQ(fixes.size(), 2u);
  const Atom& star = base.src.sequences[0].atoms[0];
  EXPECT_EQ(fixes[0].src, apply_rewrite_at(base.src, {{0, 0}}, RewriteRule::UnrollL, defs));
  EXPECT_EQ(fixes[1].src, apply_rewrite_at(base.src, {{0, 0}}, RewriteRule::UnrollR, defs));
  EXPECT_TRUE(star.is_star());
  for (const auto& f : fixes) {
    EXPECT_EQ(f.tgt, base.tgt);
    EXPECT_EQ(f.expansions, base.expansions + 1);
  }
}

TEST(FixProblemElts, EqualCurrentSetsGiveNothing) {
  Synthesizer s(u_defs());
  EXPECT_TRUE(s.fix_problem_elts({D("U"), D("U"), 0, 0}).empty());
}

TEST(FixProblemElts, SubstitutionRevealsHiddenName) {
  Definitions d = u_defs();
  d.add("W", R("\"<\" U \">\""));
  Synthesizer s(d);
  auto fixes = s.fix_problem_elts({D("W"), D("\"[\" U \"]\""), 0, 0});
  ASSERT_EQ(fixes.size(), 1u);
  EXPECT_EQ(fixes[0].src, D("\"<\" U \">\""));
}

TEST(ExpandOnce, Examples) {
  Synthesizer s({});
  EXPECT_TRUE(s.expand_once({D("\"a\""), D("\"a\""), 0, 0}).empty());
  EXPECT_EQ(s.expand_once({D("\"a\"*"), D("\"b\""), 0, 0}).size(), 2u);
}

TEST(Expand, RoutesThroughEachBranch) {
  Definitions defs = title_defs();
  // Forced substitutions followed by a reveal.
  Synthesizer a(defs);
  auto title = a.expand({D("legacy_title"), D("modern_title"), 0, 0});
  EXPECT_EQ(title.size(), 2u);
  EXPECT_EQ(a.stats().forced_total, 2u);
  // Nothing forced and nothing to reveal: plain enumeration.
  Definitions u = u_defs();
  Synthesizer b(u);
  QueueElement urep{D("\"\" | U | U U U*"), D("\"\" | U U*"), 0, 0};
  auto children = b.expand(urep);
  EXPECT_EQ(b.stats().forced_total, 0u);
  EXPECT_EQ(b.stats().reveal_candidates, 0u);
  EXPECT_EQ(children.size(), b.expand_once(urep).size());
  EXPECT_FALSE(children.empty());
}

TEST(SynthDnfLens, IdentityNeedsNoExpansions) {
  DnfRegex d = D("(\"a\" | \"b\")* \"c\"");
  Synthesizer s({});
  SynthResult r = s.synth_dnf_lens(d, d, {});
  EXPECT_EQ(r.stats.pops, 1u);
  EXPECT_EQ(r.stats.expansions, 0u);
  EXPECT_EQ(r.dnf_lens, identity_dnf_lens(d));
}

TEST(SynthDnfLens, TitleWithoutExamples) {
  Definitions defs = title_defs("[a-zA-Z0-9 ]");
  SynthResult r = Synthesizer(defs).synth_dnf_lens(D("legacy_title"), D("modern_title"), {});
  EXPECT_EQ(dnf_lens_get(r.dnf_lens, "<Field Id=2>Return 400 on bad PUT request</Field>", defs),
            "Title: Return 400 on bad PUT request,");
  EXPECT_EQ(r.stats.forced, 2u);
  EXPECT_EQ(r.stats.expansions, 3u);
}

TEST(SynthDnfLens, URepetitionNeedsEnumeration) {
  Definitions defs = u_defs();
  SynthResult r = Synthesizer(defs).synth_dnf_lens(D("\"\" | U | U U U*"), D("\"\" | U U*"), {});
  EXPECT_GT(r.stats.expansions, 0u);
  EXPECT_TRUE(typecheck_dnf_lens(r.dnf_lens, r.src, r.tgt, defs));
}

TEST(SynthDnfLens, BudgetIsEnforced) {
  SynthConfig cfg;
  cfg.max_pops = 3;
  Synthesizer s({}, nullptr, cfg);
  // An infinite language never matches a finite one.
  EXPECT_THROW(s.synth_dnf_lens(D("\"a\"*"), D("\"b\""), {}), BudgetExhausted);
  EXPECT_EQ(s.stats().pops, 3u);
}

TEST(SynthLens, Examples) {
  Definitions defs = title_defs("[a-zA-Z0-9 ]");
  Lens title = synth_lens(Regex::var("legacy_title"), Regex::var("modern_title"), {}, defs).lens;
  EXPECT_EQ(lens_get(title, "<Field Id=2>Return 400 on bad PUT request</Field>", defs),
            "Title: Return 400 on bad PUT request,");
  expect_sound(title, Regex::var("legacy_title"), Regex::var("modern_title"), {}, defs);

  Regex r = R("(\"a\" | \"b\")* \"c\"");
  Lens id = synth_lens(r, r, {}, {}).lens;
  for (const auto& s : enumerate_strings(r, 5)) EXPECT_EQ(lens_get(id, s, {}), s);

  Examples exs{{"a", "y"}};
  Lens ab = synth_lens(R("\"a\" | \"b\""), R("\"x\" | \"y\""), exs, {}).lens;
  expect_sound(ab, R("\"a\" | \"b\""), R("\"x\" | \"y\""), exs, {});
  EXPECT_EQ(lens_get(ab, "b", {}), "x");
}

TEST(SynthLens, ValidationFailures) {
  EXPECT_THROW(synth_lens(R("\"a\"* \"a\"*"), R("\"a\"*"), {}, {}), ValidationFailed);
  EXPECT_THROW(synth_lens(R("\"a\""), R("\"b\""), {{"a", "c"}}, {}), ValidationFailed);
  EXPECT_THROW(synth_lens(R("X"), R("\"b\""), {}, {}), ValidationFailed);
}

TEST(SynthLens, DeterminizesPermutations) {
  Regex src = R("\"a\" | \"b\"");
  Regex tgt = R("\"x\" | \"y\"");
  Lens none1 = synth_lens(src, tgt, {}, {}).lens;
  Lens none2 = synth_lens(src, tgt, {}, {}).lens;
  EXPECT_EQ(none1, none2);
  Lens ax = synth_lens(src, tgt, {{"a", "x"}}, {}).lens;
  Lens ay = synth_lens(src, tgt, {{"a", "y"}}, {}).lens;
  EXPECT_EQ(lens_get(ax, "a", {}), "x");
  EXPECT_EQ(lens_get(ay, "a", {}), "y");
}

TEST(SynthLens, VariablesWithDifferentNames) {
  Definitions d;
  d.add("X", R("\"a\" | \"b\""));
  d.add("Y", R("\"x\" | \"y\""));
  Examples exs{{"a", "y"}};
  Lens l = synth_lens(Regex::var("X"), Regex::var("Y"), exs, d).lens;
  expect_sound(l, Regex::var("X"), Regex::var("Y"), exs, d);
}

TEST(SynthLens, ReusesLibraryAtVariableBoundary) {
  Definitions d;
  d.add("key", R("\"k\" (\"a\" | \"b\")"));
  d.add("val", R("\"0\" | \"1\""));
  d.add("entry_src", R("key \"=\" val"));
  d.add("entry_tgt", R("val \":\" key"));
  LensLibrary lib;
  Lens entry = synth_lens(Regex::var("entry_src"), Regex::var("entry_tgt"), {}, d, &lib).lens;
  lib.add("entry", entry, d, Regex::var("entry_src"), Regex::var("entry_tgt"));
  Regex src = R("\"[\" (entry_src \";\")* \"]\"");
  Regex tgt = R("\"{\" (entry_tgt \",\")* \"}\"");
  SynthResult r = synth_lens(src, tgt, {}, d, &lib);
  EXPECT_NE(pretty_print(r.lens).find("entry"), std::string::npos) << pretty_print(r.lens);
  expect_sound(r.lens, src, tgt, {}, d, &lib);
  EXPECT_EQ(lens_get(r.lens, "[ka=1;kb=0;]", d, &lib), "{1:ka,0:kb,}");
  // Without the library the names cannot be related directly.
  SynthConfig nolib = SynthConfig::for_mode(SynthMode::NoFpe);
  SynthResult plain = synth_lens(src, tgt, {}, d, &lib, nolib);
  EXPECT_EQ(pretty_print(plain.lens).find("entry "), std::string::npos);
}

TEST(SynthProperties, RandomTasksAreSoundAndBijective) {
  std::mt19937 rng(51);
  int solved = 0;
  for (int i = 0; i < 400 && solved < 40; ++i) {
    Lens l = bilens_test::random_lens(rng, 3);
    LensType t;
    try {
      t = typecheck_lens(l, {});
    } catch (const LensTypeError&) {
      continue;
    }
    auto sources = enumerate_strings(t.source, 6);
    if (sources.empty()) continue;
    std::string s = bilens_test::pick(rng, sources);
    Examples exs{{s, lens_get(l, s, {})}};
    SynthConfig cfg;
    cfg.max_pops = 20000;
    Lens got = synth_lens(t.source, t.target, exs, {}, nullptr, cfg).lens;
    ++solved;
    expect_sound(got, t.source, t.target, exs, {});
    LensRunner run(got, {});
    for (const auto& x : enumerate_strings(t.source, 10)) ASSERT_EQ(run.put(run.get(x)), x);
    for (const auto& y : enumerate_strings(t.target, 10)) ASSERT_EQ(run.get(run.put(y)), y);
  }
  EXPECT_GE(solved, 30);
}

// Rewrites the first star r* met in pre-order into "" | r r*, which keeps
// both the language and strong unambiguity.
Regex unroll_first_star(const Regex& r, bool& done) {
  if (done) return r;
  switch (r.kind()) {
    case RegexKind::Star:
      done = true;
      return Regex::alt(Regex::epsilon(), Regex::concat(r.inner(), r));
    case RegexKind::Concat: {
      Regex left = unroll_first_star(r.left(), done);
      return Regex::concat(left, unroll_first_star(r.right(), done));
    }
    case RegexKind::Or: {
      Regex left = unroll_first_star(r.left(), done);
      return Regex::alt(left, unroll_first_star(r.right(), done));
    }
    default:
      return r;
  }
}

TEST(SynthProperties, SearchRecoversFromUnrolledTypes) {
  std::mt19937 rng(52);
  int solved = 0;
  std::size_t expanded = 0;
  for (int i = 0; i < 2000 && solved < 30; ++i) {
    Lens l = bilens_test::random_lens(rng, 3);
    LensType t;
    try {
      t = typecheck_lens(l, {});
    } catch (const LensTypeError&) {
      continue;
    }
    bool done = false;
    Regex tgt = unroll_first_star(t.target, done);
    if (!done) continue;
    ASSERT_TRUE(strongly_unambiguous(tgt)) << to_string(tgt);
    auto sources = enumerate_strings(t.source, 6);
    if (sources.empty()) continue;
    std::string s = bilens_test::pick(rng, sources);
    Examples exs{{s, lens_get(l, s, {})}};
    SynthConfig cfg;
    cfg.max_pops = 2000;
    cfg.max_seconds = 5;
    SynthResult r = synth_lens(t.source, tgt, exs, {}, nullptr, cfg);
    ++solved;
    if (r.stats.expansions > 0) ++expanded;
    expect_sound(r.lens, t.source, tgt, exs, {});
  }
  EXPECT_GE(solved, 30);
  EXPECT_GT(expanded, 10u);
}

TEST(SynthProperties, RigidSuccessPreservesCurrentSets) {
  Definitions defs = title_defs();
  SynthResult r = Synthesizer(defs).synth_dnf_lens(D("legacy_title"), D("modern_title"), {});
  EXPECT_EQ(current_set(r.src), current_set(r.tgt));
}
