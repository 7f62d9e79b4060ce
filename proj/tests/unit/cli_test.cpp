#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bilens/errors.hpp"
#include "bilens/regex_analysis.hpp"
#include "bilens_cli/commands.hpp"

using namespace bilens;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("bilens_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }
  std::string path() const { return path_.string(); }

 private:
  fs::path path_;
};

const std::string kCorpus = BILENS_CORPUS_DIR;

}  // namespace

TEST(CmdSynth, TitleSpecPrintsLensAndStats) {
  std::ostringstream out, err;
  int rc = cli::cmd_synth(kCorpus + "/title.spec", std::nullopt, SynthConfig{}, out, err);
  EXPECT_EQ(rc, cli::kOk) << err.str();
  EXPECT_NE(out.str().find("lens title : legacy_title <=> modern_title = "), std::string::npos);
  EXPECT_NE(out.str().find("# title: expansions=3 forced=2 pops="), std::string::npos);
}

TEST(CmdSynth, OutputReparsesAndRuns) {
  TempDir dir;
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_synth(kCorpus + "/title.spec", std::nullopt, SynthConfig{}, out, err), cli::kOk);
  std::string lens_file = dir.write("title.lens", out.str());
  SpecFile reparsed = parse_spec_file(lens_file);
  ASSERT_EQ(reparsed.lenses.size(), 1u);
  std::ostringstream got, gerr;
  ASSERT_EQ(cli::cmd_run(lens_file, "title", false, "<Field Id=2>Return 400 on bad PUT request</Field>", SynthConfig{},
                         got, gerr),
            cli::kOk)
      << gerr.str();
  EXPECT_EQ(got.str(), "Title: Return 400 on bad PUT request,\n");
  std::ostringstream back, berr;
  ASSERT_EQ(cli::cmd_run(lens_file, "title", true, "Title: Return 400 on bad PUT request,", SynthConfig{}, back, berr),
            cli::kOk);
  EXPECT_EQ(back.str(), "<Field Id=2>Return 400 on bad PUT request</Field>\n");
}

TEST(CmdSynth, UnsatisfiableExampleIsValidationFailure) {
  TempDir dir;
  std::string spec = dir.write("bad.spec", "synth t : \"a\" <=> \"b\" with { \"a\" <-> \"c\" };\n");
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_synth(spec, std::nullopt, SynthConfig{}, out, err), cli::kFailure);
  EXPECT_NE(err.str().find("task t:"), std::string::npos);
  EXPECT_NE(err.str().find("target"), std::string::npos);
}

TEST(CmdSynth, CompositionalFileReusesFirstLens) {
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_synth(kCorpus + "/micro/10_compose.spec", std::nullopt, SynthConfig{}, out, err), cli::kOk);
  SpecFile f = parse_spec(out.str());
  const LensDecl* entries = f.find_lens("entries");
  ASSERT_NE(entries, nullptr);
  EXPECT_NE(pretty_print(entries->lens).find("entry ."), std::string::npos) << pretty_print(entries->lens);
}

TEST(CmdSynth, UnknownTask) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_synth(kCorpus + "/title.spec", std::string("nope"), SynthConfig{}, out, err), cli::kFailure);
}

TEST(CmdRun, BadInputExitsTwo) {
  TempDir dir;
  std::string spec = dir.write("l.spec", "lens ab = const(\"a\", \"b\");\n");
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_run(spec, "ab", false, "zz", SynthConfig{}, out, err), cli::kBadInput);
  EXPECT_EQ(cli::cmd_run(spec, "ab", true, "zz", SynthConfig{}, out, err), cli::kBadInput);
  std::ostringstream ok;
  EXPECT_EQ(cli::cmd_run(spec, "ab", false, "a", SynthConfig{}, ok, err), cli::kOk);
  EXPECT_EQ(ok.str(), "b\n");
  EXPECT_EQ(cli::cmd_run(spec, "missing", false, "a", SynthConfig{}, ok, err), cli::kFailure);
}

TEST(CmdRun, PutInvertsGetOnCorpus) {
  for (const auto& entry : fs::directory_iterator(kCorpus + "/micro")) {
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_synth(entry.path().string(), std::nullopt, SynthConfig{}, out, err), cli::kOk) << err.str();
    SpecFile f = parse_spec(out.str());
    LensLibrary lib;
    for (const auto& decl : f.lenses) lib.add(decl.name, decl.lens, f.definitions, *decl.source, *decl.target);
    for (const auto& decl : f.lenses) {
      LensRunner run(Lens::ref(decl.name), f.definitions, &lib);
      std::size_t n = 0;
      for (const auto& s : enumerate_strings(resolve(*decl.source, f.definitions), 14)) {
        ASSERT_EQ(run.put(run.get(s)), s) << decl.name;
        if (++n == 200) break;
      }
    }
  }
}

TEST(CmdCheck, Reports) {
  TempDir dir;
  std::string good = dir.write("good.spec", "synth t : \"a\" | \"b\" <=> \"x\" | \"y\" with { \"a\" <-> \"y\" };\n");
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_check(good, out, err), cli::kOk);
  EXPECT_EQ(out.str().find("FAIL"), std::string::npos);

  std::string amb = dir.write("amb.spec", "synth t : \"a\"* \"a\"* <=> \"a\"*;\n");
  std::ostringstream out2;
  EXPECT_EQ(cli::cmd_check(amb, out2, err), cli::kFailure);
  EXPECT_NE(out2.str().find("source strongly unambiguous: FAIL"), std::string::npos);

  std::string ex = dir.write("ex.spec", "synth t : \"a\" <=> \"b\" with { \"q\" <-> \"b\" };\n");
  std::ostringstream out3;
  EXPECT_EQ(cli::cmd_check(ex, out3, err), cli::kFailure);
  EXPECT_NE(out3.str().find("example 1 source parses: FAIL"), std::string::npos);
}

TEST(CmdBench, CsvForMicroCorpus) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_bench(kCorpus + "/micro", SynthMode::Full, 100000, 60.0, out, err), cli::kOk);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "task,mode,success,wall_ms,pops,expansions_total,expansions_forced");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_NE(line.find(",full,1,"), std::string::npos) << line;
  }
  EXPECT_GE(rows, 10);
}

TEST(CmdBench, EmptyCorpus) {
  TempDir dir;
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_bench(dir.path(), SynthMode::Full, 1000, 1.0, out, err), cli::kOk);
  EXPECT_EQ(out.str(), cli::csv_header() + "\n");
}

TEST(CmdBench, FailuresAreRowsNotErrors) {
  TempDir dir;
  std::string spec = dir.write("hard.spec", "synth hard : \"a\"* <=> \"b\";\n");
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_bench(spec, SynthMode::NoEr, 50, 5.0, out, err), cli::kOk);
  EXPECT_NE(out.str().find("hard,noer,0,"), std::string::npos) << out.str();
}
