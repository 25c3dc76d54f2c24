#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "stylo/error.h"
#include "stylo/experiments.h"

namespace stylo {
namespace {

const std::string kData = STYLO_TEST_DATA_DIR;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Drops the '#' spec echo lines.
std::string TableBody(const std::string& report) {
  std::istringstream in(report);
  std::string line, body;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    body += line + '\n';
  }
  return body;
}

CellResult Cell(std::string lang, ModelKind model, size_t ins,
                std::vector<double> runs) {
  CellResult c;
  c.language = std::move(lang);
  c.model = model;
  c.instance_count = ins;
  RunAggregate agg = AggregateRuns(runs);
  c.accuracy_mean = agg.mean;
  c.accuracy_std = agg.std;
  c.per_run_accuracies = std::move(runs);
  return c;
}

ResultTable HoldoutTable() {
  ResultTable t;
  t.setting = Setting::kCL;
  t.spec_echo.setting = Setting::kCL;
  t.spec_echo.runs = 1;
  const double de[] = {0.5726, 0.7709, 0.7989, 0.8352};
  const double it[] = {0.5948, 0.7680, 0.7908, 0.8562};
  for (size_t k = 0; k < 4; ++k) {
    t.cells.push_back(Cell("de", kAllModelKinds[k], 358, {de[k]}));
  }
  for (size_t k = 0; k < 4; ++k) {
    t.cells.push_back(Cell("it", kAllModelKinds[k], 306, {it[k]}));
  }
  return t;
}

TEST(TextReport, MatchesHoldoutGolden) {
  std::string text = EmitReport(HoldoutTable(), ReportFormat::kText);
  EXPECT_EQ(TableBody(text), ReadFile(kData + "/holdout_layout.txt"));
  EXPECT_EQ(text.rfind("# setting=cl\n", 0), 0u);
}

CellResult Fixed(std::string lang, ModelKind model, size_t ins, double mean,
                 double std, size_t runs) {
  CellResult c;
  c.language = std::move(lang);
  c.model = model;
  c.instance_count = ins;
  c.accuracy_mean = mean;
  c.accuracy_std = std;
  c.per_run_accuracies.assign(runs, mean);
  return c;
}

TEST(TextReport, StdAndMissingCells) {
  ResultTable t;
  t.setting = Setting::kCL;
  t.cells = {
      Fixed("de", ModelKind::kLogistic, 200, 0.6, 0.025, 2),
      Fixed("de", ModelKind::kFfnn1, 200, 0.75, 0.0125, 2),
      Fixed("de", ModelKind::kFfnn3, 200, 0.8, 0.0, 1),
      Fixed("it", ModelKind::kLogistic, 120, 0.55, 0.05, 3),
      Fixed("it", ModelKind::kFfnn1, 120, 0.625, 0.005, 3),
      Fixed("it", ModelKind::kFfnn3, 120, 0.9, 0.0, 1),
  };
  std::string text = EmitReport(t, ReportFormat::kText);
  EXPECT_EQ(TableBody(text), ReadFile(kData + "/table_with_std.txt"));
}

TEST(TextReport, SixLanguageShape) {
  ResultTable t;
  const char* langs[] = {"de", "en", "fr", "it", "nl", "pt"};
  for (const char* lang : langs) {
    for (ModelKind k : kAllModelKinds) t.cells.push_back(Cell(lang, k, 10, {0.5}));
  }
  std::istringstream body(TableBody(EmitReport(t, ReportFormat::kText)));
  std::string line;
  std::getline(body, line);
  EXPECT_EQ(line, "Lang\tIns\tLR\tFFNN1\tFFNN2\tFFNN3");
  size_t rows = 0;
  while (std::getline(body, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 5);
  }
  EXPECT_EQ(rows, 6u);
}

TEST(DelimitedReport, RoundTrips) {
  ResultTable t = HoldoutTable();
  t.cells[0].per_run_accuracies = {0.1 + 0.2, 1.0 / 3.0};
  RunAggregate agg = AggregateRuns(t.cells[0].per_run_accuracies);
  t.cells[0].accuracy_mean = agg.mean;
  t.cells[0].accuracy_std = agg.std;
  std::string text = EmitReport(t, ReportFormat::kDelimited);
  std::istringstream in(text);
  ResultTable back = ParseDelimitedReport(in);
  ASSERT_EQ(back.cells.size(), t.cells.size());
  EXPECT_EQ(back.setting, Setting::kCL);
  for (size_t i = 0; i < t.cells.size(); ++i) {
    EXPECT_EQ(back.cells[i].language, t.cells[i].language);
    EXPECT_EQ(back.cells[i].model, t.cells[i].model);
    EXPECT_EQ(back.cells[i].instance_count, t.cells[i].instance_count);
    EXPECT_EQ(back.cells[i].accuracy_mean, t.cells[i].accuracy_mean);
    EXPECT_EQ(back.cells[i].accuracy_std, t.cells[i].accuracy_std);
    EXPECT_EQ(back.cells[i].per_run_accuracies, t.cells[i].per_run_accuracies);
  }
  EXPECT_EQ(EmitReport(back, ReportFormat::kDelimited), text);
}

TEST(DelimitedReport, RejectsMalformed) {
  std::istringstream in("setting\tlang\nIL\tde\n");
  EXPECT_THROW(ParseDelimitedReport(in), DataError);
}

}  // namespace
}  // namespace stylo
