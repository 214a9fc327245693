#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include <unistd.h>

#include "seeprivacy/pipeline.hpp"
#include "support/expected.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace seeprivacy;
namespace fs = std::filesystem;

namespace {

GroundTruthContext gt(BBox b, DataType t, ContextKind k = ContextKind::textual) { return {b, t, k}; }
Context pred(BBox b, DataType t, ContextKind k = ContextKind::textual) { return {b, t, k, "", 1.0}; }

// Scratch copy of one micro app that a test may corrupt.
class ScratchDataset {
 public:
  ScratchDataset() {
    root_ = fs::temp_directory_path() /
            ("seeprivacy_ds_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::remove_all(root_);
    fs::create_directories(root_ / "apps");
    fs::copy(fixtures::dir() / "micro" / "apps" / "app_a", app(), fs::copy_options::recursive);
  }
  ~ScratchDataset() { fs::remove_all(root_); }
  fs::path root() const { return root_; }
  fs::path app() const { return root_ / "apps" / "app_a"; }
  void write(const fs::path& rel, const std::string& content) const { std::ofstream(app() / rel) << content; }

 private:
  static inline int counter_ = 0;
  fs::path root_;
};

DatasetSchemaError schema_error(const fs::path& root) {
  try {
    load_dataset(root, true);
  } catch (const DatasetSchemaError& e) {
    return e;
  }
  ADD_FAILURE() << "dataset unexpectedly valid";
  return DatasetSchemaError("", "", "");
}

}  // namespace

TEST(Iou, Examples) {
  EXPECT_DOUBLE_EQ(iou({0, 0, 2, 1}, {1, 0, 2, 1}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {0, 0, 10, 10}), 1.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {10, 0, 10, 10}), 0.0);
  EXPECT_DOUBLE_EQ(iou({0, 0, 10, 10}, {0, 0, 5, 10}), 0.5);
}

TEST(Matching, StrictBetaAndOneToOne) {
  const auto L = DataType::Location;
  // IoU exactly 0.5 does not match.
  auto c = match_contexts(std::vector{pred({0, 0, 5, 10}, L)}, std::vector{gt({0, 0, 10, 10}, L)}, 0.5);
  EXPECT_EQ(c[L], (Counts{0, 1, 1}));
  c = match_contexts(std::vector{pred({0, 0, 6, 10}, L)}, std::vector{gt({0, 0, 10, 10}, L)}, 0.5);
  EXPECT_EQ(c[L], (Counts{1, 0, 0}));
  // Type mismatch never matches.
  c = match_contexts(std::vector{pred({0, 0, 10, 10}, DataType::Email)}, std::vector{gt({0, 0, 10, 10}, L)}, 0.5);
  EXPECT_EQ(c[DataType::Email], (Counts{0, 1, 0}));
  EXPECT_EQ(c[L], (Counts{0, 0, 1}));
  // Two predictions on one box: one tp, one fp.
  c = match_contexts(std::vector{pred({0, 0, 10, 10}, L), pred({0, 0, 10, 9}, L)},
                     std::vector{gt({0, 0, 10, 10}, L)}, 0.5);
  EXPECT_EQ(c[L], (Counts{1, 1, 0}));
  // Greedy by IoU: the best pair is claimed first.
  c = match_contexts(std::vector{pred({0, 0, 10, 8}, L), pred({0, 0, 10, 10}, L)},
                     std::vector{gt({0, 0, 10, 10}, L), gt({0, 0, 10, 7}, L)}, 0.5);
  EXPECT_EQ(c[L], (Counts{2, 0, 0}));
}

TEST(Coverage, Examples) {
  const auto L = DataType::Location, B = DataType::Birthday;
  const std::vector<GroundTruthContext> g = {gt({0, 0, 10, 10}, L), gt({0, 20, 10, 10}, L), gt({50, 50, 10, 10}, B)};
  EXPECT_DOUBLE_EQ(*coverage_rate(std::vector{pred({0, 20, 10, 10}, L)}, g, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(*coverage_rate(std::vector{pred({0, 20, 10, 10}, L), pred({50, 50, 10, 10}, B)}, g, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(*coverage_rate(std::vector<Context>{}, g, 0.5), 0.0);
  EXPECT_FALSE(coverage_rate(std::vector{pred({0, 0, 1, 1}, L)}, std::vector<GroundTruthContext>{}, 0.5));
}

TEST(Table, AveragesOverCategoriesWithGroundTruth) {
  CategoryCounts c;
  c[DataType::Name] = {1, 1, 0};   // acc 1/2, p 1/2, r 1
  c[DataType::Phone] = {0, 2, 0};  // no ground truth: excluded
  c[DataType::Email] = {1, 0, 2};  // acc 1/3, p 1, r 1/3
  const auto t = make_table(c);
  EXPECT_EQ(t.rows.size(), 12u);
  EXPECT_EQ(t.averaged_categories, 2u);
  EXPECT_DOUBLE_EQ(t.accuracy, (0.5 + 1.0 / 3.0) / 2);
  EXPECT_DOUBLE_EQ(t.precision, 0.75);
  EXPECT_DOUBLE_EQ(t.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(t.rows[ordinal(DataType::Phone)].precision, 0.0);
}

TEST(SegmentSimilarity, Examples) {
  EXPECT_DOUBLE_EQ(segment_similarity("We collect your location.", "we collect your location"), 1.0);
  EXPECT_DOUBLE_EQ(segment_similarity("abc", "xyz"), 0.0);
  EXPECT_DOUBLE_EQ(segment_similarity("abcd", "bc"), 1.0);
  // Two phrases against one: sum of both ratios, divided by min(2, 1).
  EXPECT_DOUBLE_EQ(segment_similarity("abcd, bcxx", "bc"), 2.0);
  // Non-ASCII letters keep their case: "héllo" vs "hÉllo" share "llo".
  EXPECT_DOUBLE_EQ(segment_similarity("héllo", "HÉLLO"), 3.0 / 5.0);
  EXPECT_THROW(segment_similarity("...", "abc"), DegenerateSegment);
  EXPECT_THROW(segment_similarity("abc", " ; "), DegenerateSegment);
}

TEST(SegmentSimilarity, MatchesBruteForceOracle) {
  std::mt19937 rng(123);
  const std::vector<std::string> alphabet = {"a", "b", "c", "A", " ", ".", ",", ";", ":", "!", "?", "\n", "é", "ü"};
  std::uniform_int_distribution<int> len(1, 30), pick(0, static_cast<int>(alphabet.size()) - 1);
  int checked = 0;
  for (int round = 0; round < 400; ++round) {
    std::string a, b;
    for (int k = len(rng); k > 0; --k) a += alphabet[pick(rng)];
    for (int k = len(rng); k > 0; --k) b += alphabet[pick(rng)];
    if (oracle::phrases(a).empty() || oracle::phrases(b).empty()) {
      EXPECT_THROW(segment_similarity(a, b), DegenerateSegment);
      continue;
    }
    EXPECT_NEAR(segment_similarity(a, b), oracle::segment_sim(a, b), 1e-12) << a << " | " << b;
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(Dataset, LoadsMicroInOrder) {
  const auto ds = load_dataset(fixtures::dir() / "micro", true);
  ASSERT_EQ(ds.apps.size(), 3u);
  EXPECT_EQ(ds.apps[0].app_id, "app_a");
  EXPECT_EQ(ds.screenshot_count(), 10u);
  EXPECT_EQ(ds.apps[0].screenshots[0].key, "1");
  EXPECT_TRUE(ds.apps[0].screenshots[0].ocr);
  EXPECT_EQ(ds.apps[0].segments.size(), 4u);
  EXPECT_FALSE(ds.apps[0].segments.at(DataType::Photos).found);
}

TEST(Dataset, SchemaErrorsNameFileAndField) {
  {
    ScratchDataset s;
    s.write("annotations/1.json", R"({"contexts":[{"bbox":{"x":1,"y":1,"w":5},"data_type":"Location","kind":"textual"}]})");
    const auto e = schema_error(s.root());
    EXPECT_NE(e.file().find("1.json"), std::string::npos);
    EXPECT_EQ(e.field(), "contexts[0].bbox.h");
  }
  {
    ScratchDataset s;
    s.write("annotations/2.json", R"({"contexts":[{"bbox":{"x":1,"y":1,"w":5,"h":5},"data_type":"Weather","kind":"textual"}]})");
    EXPECT_EQ(schema_error(s.root()).field(), "contexts[0].data_type");
  }
  {
    ScratchDataset s;
    s.write("annotations/2.json", R"({"contexts":[{"bbox":{"x":1,"y":1,"w":5,"h":5},"data_type":"Name","kind":"visual"}]})");
    EXPECT_EQ(schema_error(s.root()).field(), "contexts[0].kind");
  }
  {
    ScratchDataset s;
    s.write("annotations/1.json", R"({"contexts":[{"bbox":{"x":350,"y":1,"w":50,"h":5},"data_type":"Name","kind":"textual"}]})");
    EXPECT_EQ(schema_error(s.root()).field(), "contexts[0].bbox");
  }
  {
    ScratchDataset s;
    s.write("segments.json", R"({"Name":{"found":false,"text":"nothing"}})");
    EXPECT_EQ(schema_error(s.root()).field(), "Name.text");
  }
  {
    ScratchDataset s;
    s.write("segments.json", R"({"Name":{"found":"yes","text":"x"}})");
    EXPECT_EQ(schema_error(s.root()).field(), "Name.found");
  }
  {
    ScratchDataset s;
    fs::remove(s.app() / "annotations" / "3.json");
    EXPECT_NE(schema_error(s.root()).file().find("3.json"), std::string::npos);
  }
  {
    ScratchDataset s;
    s.write("annotations/1.json", "{not json");
    EXPECT_NE(schema_error(s.root()).file().find("1.json"), std::string::npos);
  }
  EXPECT_THROW(load_dataset("/nonexistent/dataset"), DatasetSchemaError);
}

TEST(Dataset, NaturalScreenshotOrder) {
  ScratchDataset s;
  fs::copy_file(s.app() / "screenshots" / "1.png", s.app() / "screenshots" / "10.png");
  fs::copy_file(s.app() / "annotations" / "1.json", s.app() / "annotations" / "10.json");
  const auto ds = load_dataset(s.root());
  std::vector<std::string> keys;
  for (const auto& shot : ds.apps[0].screenshots) keys.push_back(shot.key);
  EXPECT_EQ(keys, (std::vector<std::string>{"1", "2", "3", "4", "10"}));
  EXPECT_FALSE(ds.apps[0].screenshots.back().ocr);
}

TEST(Eval, MicroDatasetMatchesHandComputedMetrics) {
  const Pipeline pipeline(fixtures::test_config());
  const auto report = run_eval(fixtures::dir() / "micro", pipeline);
  const auto want = fixtures::read_json(fixtures::dir() / "micro" / "expected.json");
  for (const auto& d : fixtures::compare_report(report, want)) ADD_FAILURE() << d;
  const auto j = report_to_json(report);
  EXPECT_EQ(j.at("contexts").at("rows").size(), 12u);
  const auto table = render_table(report);
  EXPECT_NE(table.find("Coverage rate: 0.6667 over 9 screenshots"), std::string::npos);
  EXPECT_NE(table.find("Success rate: 0.6667 (4 of 6 retrieved segments)"), std::string::npos);
}

TEST(Eval, ResultIndependentOfWorkerCount) {
  auto one = fixtures::test_config();
  one.workers = 1;
  auto many = fixtures::test_config();
  many.workers = 8;
  const auto ds = load_dataset(fixtures::dir() / "micro");
  EXPECT_EQ(report_to_json(run_eval(ds, Pipeline(one))), report_to_json(run_eval(ds, Pipeline(many))));
}

TEST(Eval, MismatchedPredictionsRejected) {
  const auto ds = load_dataset(fixtures::dir() / "micro");
  EXPECT_THROW(aggregate_eval(ds, {}, Thresholds{}), Error);
}

TEST(Eval, BadOcrFixtureIsSchemaError) {
  ScratchDataset s;
  s.write("ocr/2.json", R"({"boxes":[{"x":1,"y":1,"w":0,"h":5,"text":"a"}]})");
  const Pipeline pipeline(fixtures::test_config());
  try {
    run_eval(s.root(), pipeline);
    ADD_FAILURE() << "expected DatasetSchemaError";
  } catch (const DatasetSchemaError& e) {
    EXPECT_NE(e.file().find("2.json"), std::string::npos);
  }
}
