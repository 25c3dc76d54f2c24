#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stylo/cli.h"
#include "stylo/corpus.h"
#include "stylo/experiments.h"

namespace stylo {
namespace {

namespace fs = std::filesystem;

const std::string kData = STYLO_TEST_DATA_DIR;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("stylo_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  int Run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::Run(args, out_, err_);
  }

  static std::string Slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Run({}), cli::kUsageError);
  EXPECT_EQ(Run({"frobnicate"}), cli::kUsageError);
  EXPECT_EQ(Run({"extract"}), cli::kUsageError);
  EXPECT_EQ(Run({"--help"}), cli::kSuccess);
  EXPECT_NE(out_.str().find("synth"), std::string::npos);
}

TEST_F(CliTest, MissingCorpusIsDataError) {
  EXPECT_EQ(Run({"extract", "-c", Path("nope.jsonl")}), cli::kDataError);
  EXPECT_NE(err_.str().find("nope.jsonl"), std::string::npos);
}

TEST_F(CliTest, BadConfigKeyIsUsageError) {
  ASSERT_EQ(Run({"synth", "--authors", "10", "--tweets", "5", "-o",
                 Path("c.jsonl")}),
            cli::kSuccess);
  EXPECT_EQ(Run({"run", "-c", Path("c.jsonl"), "--set", "bogus.key=1"}),
            cli::kUsageError);
  EXPECT_NE(err_.str().find("bogus.key"), std::string::npos);
}

TEST_F(CliTest, SynthExtractValidate) {
  ASSERT_EQ(Run({"synth", "--languages", "aa,bb", "--authors", "6", "--tweets",
                 "4", "--seed", "3", "-o", Path("c.jsonl")}),
            cli::kSuccess);
  Corpus c = LoadCorpus(Path("c.jsonl"));
  EXPECT_EQ(c.size(), 12u);
  ASSERT_EQ(Run({"extract", "-c", Path("c.jsonl"), "-o", Path("f.tsv")}),
            cli::kSuccess);
  std::string tsv = Slurp(Path("f.tsv"));
  EXPECT_EQ(tsv.rfind("#stylo-features schema_version=1\nid\tlang\tgender\t", 0),
            0u);
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 14);
  EXPECT_EQ(Run({"validate", "-c", Path("c.jsonl"), "--strict"}), cli::kSuccess);
  EXPECT_NE(out_.str().find("aa\t3\t3\tyes"), std::string::npos);
}

TEST_F(CliTest, StrictValidateFlagsImbalance) {
  EXPECT_EQ(Run({"validate", "-c", kData + "/corpus_2.jsonl"}), cli::kSuccess);
  EXPECT_EQ(Run({"validate", "-c", kData + "/corpus_2.jsonl", "--strict"}),
            cli::kDataError);
}

TEST_F(CliTest, ConvertInfersLanguageFromFileName) {
  ASSERT_EQ(Run({"convert", "-i", kData + "/TwiSty-IT.json", "-o",
                 Path("it.jsonl")}),
            cli::kSuccess);
  Corpus c = LoadCorpus(Path("it.jsonl"));
  EXPECT_EQ(c.size(), 3u);
  EXPECT_EQ(c.languages(), (std::vector<std::string>{"it"}));
  EXPECT_NE(err_.str().find("skipping"), std::string::npos);
}

TEST_F(CliTest, GradcheckPasses) {
  EXPECT_EQ(Run({"gradcheck", "--model", "ffnn2", "--samples", "3"}),
            cli::kSuccess);
  EXPECT_EQ(Run({"gradcheck", "--model", "ffnn9"}), cli::kUsageError);
}

TEST_F(CliTest, RunWritesBothReportsDeterministically) {
  ASSERT_EQ(Run({"synth", "--languages", "aa,bb", "--authors", "20", "--tweets",
                 "10", "--signal", "2", "-o", Path("c.jsonl")}),
            cli::kSuccess);
  std::vector<std::string> args = {
      "run", "-c", Path("c.jsonl"), "--runs", "2", "--set",
      "train.ffnn.max_epochs=5", "--set", "hidden_width=4",
      "--report", Path("r1")};
  ASSERT_EQ(Run(args), cli::kSuccess) << err_.str();
  args.back() = Path("r2");
  args.insert(args.end(), {"--jobs", "3"});
  ASSERT_EQ(Run(args), cli::kSuccess);
  std::string first = Slurp(Path("r1.tsv"));
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, Slurp(Path("r2.tsv")));
  std::istringstream in(first);
  EXPECT_EQ(ParseDelimitedReport(in).cells.size(), 8u);
  EXPECT_NE(Slurp(Path("r1.txt")).find("Lang\tIns\tLR\tFFNN1\tFFNN2\tFFNN3\n"),
            std::string::npos);
}

TEST_F(CliTest, TrainThenPredict) {
  ASSERT_EQ(Run({"synth", "--languages", "aa", "--authors", "40", "--tweets",
                 "20", "--signal", "3", "-o", Path("c.jsonl")}),
            cli::kSuccess);
  ASSERT_EQ(Run({"train", "-c", Path("c.jsonl"), "--model", "LR", "-o",
                 Path("m.txt"), "--standardizer", Path("s.txt")}),
            cli::kSuccess)
      << err_.str();
  ASSERT_EQ(Run({"predict", "-c", Path("c.jsonl"), "--model", Path("m.txt"),
                 "--standardizer", Path("s.txt")}),
            cli::kSuccess)
      << err_.str();
  std::string preds = out_.str();
  EXPECT_EQ(preds.rfind("id\tlang\tgender\tp_female\tpredicted\n", 0), 0u);
  EXPECT_EQ(std::count(preds.begin(), preds.end(), '\n'), 41);
}

}  // namespace
}  // namespace stylo
