#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "support/fixtures.hpp"
#include "tdt/app.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tdt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = tdt::app::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tdt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    tdt::app::write_text_file(path(name), text);
    return path(name);
  }

  fs::path dir_;
};

const std::string kBumps = fixtures::data_path("bumps.csv");

}  // namespace

TEST_F(Cli, TrainPureClassPrintsSingleLeaf) {
  auto data = write("pure.csv", "a,c\n1;2;3,yes\n3;2;1,yes\n0;0;0,yes\n");
  auto r = run({"train", "--data", data});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, ": yes (3.0)\n");
}

TEST_F(Cli, TrainPredictEvaluate) {
  auto model = path("bumps.model");
  auto r = run({"train", "--data", kBumps, "--alpha", "0.8", "--out", model});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("signal"), std::string::npos) << r.out;

  auto p = run({"predict", "--model", model, "--data", kBumps});
  ASSERT_EQ(p.code, 0) << p.err;
  auto data = tdt::load_dataset(kBumps);
  std::istringstream lines(p.out);
  std::size_t n = 0, right = 0;
  for (std::string line; std::getline(lines, line); ++n)
    right += line == data.class_names[static_cast<std::size_t>(data.instances[n].class_index())];
  EXPECT_EQ(n, data.size());

  auto report = path("report.kv");
  auto e = run({"evaluate", "--model", model, "--data", kBumps, "--report-out", report, "--name", "bumps"});
  ASSERT_EQ(e.code, 0) << e.err;
  char expect[64];
  std::snprintf(expect, sizeof expect, "Accuracy: %s%% (%zu/%zu)",
                tdt::format_percent(static_cast<double>(right) / static_cast<double>(n)).c_str(), right, n);
  EXPECT_EQ(e.out.rfind(expect, 0), 0u) << e.out;
  EXPECT_NE(e.out.find("Confusion matrix"), std::string::npos);
  EXPECT_NE(e.out.find("ROC Area"), std::string::npos);
  auto kv = tdt::read_file(report);
  EXPECT_EQ(kv.rfind("bumps,model,accuracy,", 0), 0u) << kv;
  EXPECT_NE(kv.find("bumps,model,roc_area[early],"), std::string::npos) << kv;
}

TEST_F(Cli, ShapeMismatchIsDataError) {
  auto model = path("m.model");
  ASSERT_EQ(run({"train", "--data", kBumps, "--out", model}).code, 0);
  auto other = write("one.csv", "a,c\n1;2;3;4;5;6;7;8;9;10;11;12,early\n");
  auto r = run({"predict", "--model", model, "--data", other});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("channels"), std::string::npos) << r.err;
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"train"}).code, 1);
  EXPECT_EQ(run({"train", "--data", kBumps, "--alpha", "1.5"}).code, 1);
  EXPECT_EQ(run({"train", "--data", kBumps, "--relations", "A,Q"}).code, 1);
  EXPECT_EQ(run({"compare", "--data", kBumps, "--methods", "knn"}).code, 1);
  EXPECT_EQ(run({"train", "--data", path("missing.csv")}).code, 2);
  EXPECT_EQ(run({"train", "--data", write("bad.csv", "a,c\n1;x,y\n")}).code, 2);
  EXPECT_EQ(run({"predict", "--model", write("bad.model", "tdt-model 9\n"), "--data", kBumps}).code, 2);
  EXPECT_EQ(run({"train", "--help"}).code, 0);
}

TEST_F(Cli, CompareRowsAndKeyValues) {
  auto kv = path("cmp.kv");
  auto r = run({"compare", "--data", kBumps, "--methods", "j48:1100,ed-i,dtw-d,tj48:0.7", "--seed", "3",
                "--kv-out", kv});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<std::string> rows;
  std::istringstream is(r.out);
  for (std::string line; std::getline(is, line);) rows.push_back(line);
  ASSERT_EQ(rows.size(), 8u) << r.out;
  EXPECT_EQ(rows[0], "Method       bumps");
  EXPECT_EQ(rows[1].rfind("J48 1,1,0,0 ", 0), 0u);
  EXPECT_EQ(rows[3].rfind("ED_I ", 0), 0u);
  EXPECT_EQ(rows[4].rfind("DTW_D ", 0), 0u);
  EXPECT_EQ(rows[6].rfind("T. J48 0.7 ", 0), 0u);
  auto text = tdt::read_file(kv);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_NE(text.find("bumps,DTW_D,accuracy,"), std::string::npos) << text;
}

TEST_F(Cli, BenchCoversEveryDataset) {
  auto out = path("bench.txt");
  auto r = run({"bench", "--data-dir", fixtures::data_path("bench"), "--methods", "ed-i,tj48:0.9",
                "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  auto head = r.out.substr(0, r.out.find('\n'));
  EXPECT_NE(head.find("Bumps"), std::string::npos) << head;
  EXPECT_NE(head.find("Pairs"), std::string::npos) << head;
  EXPECT_EQ(tdt::read_file(out), r.out);
  EXPECT_EQ(run({"bench", "--data-dir", path("empty")}).code, 2);
}

TEST_F(Cli, ThreadCountDoesNotChangeOutput) {
  std::vector<std::string> outputs;
  for (const char* threads : {"1", "2", "5"}) {
    auto model = path(std::string("t") + threads + ".model");
    auto t = run({"train", "--data", kBumps, "--alpha", "0.5:0.9:0.2", "--max-z", "1", "--threads", threads,
                  "--out", model});
    ASSERT_EQ(t.code, 0) << t.err;
    auto c = run({"compare", "--data", kBumps, "--methods", "tj48:0.6,tj48:0.9,j48:1111", "--threads",
                  threads});
    ASSERT_EQ(c.code, 0) << c.err;
    outputs.push_back(t.out + c.out + tdt::read_file(model));
  }
  EXPECT_EQ(outputs[0], outputs[1]);
  EXPECT_EQ(outputs[0], outputs[2]);
}
