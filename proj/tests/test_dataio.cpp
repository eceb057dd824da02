#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "tdt/dataio.hpp"

using namespace tdt;

namespace {

TemporalDataset sized(int m, int q, int len = 4) {
  oracle::Gen g(static_cast<std::uint64_t>(m * 31 + q));
  return g.dataset(m, 1, len, q, false);
}

std::multiset<std::vector<double>> contents(const TemporalDataset& ds) {
  std::multiset<std::vector<double>> out;
  for (const auto& inst : ds.instances) {
    auto ch = inst.channel(0);
    std::vector<double> v(ch.begin(), ch.end());
    v.push_back(inst.class_index());
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST(SemicolonTable, Basic) {
  auto ds = parse_semicolon_table("A1,C\n1;2;3,C1\n4;5;6,C2\n");
  EXPECT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.attribute_count(), 1);
  EXPECT_EQ(ds.series_length, 3);
  EXPECT_EQ(ds.class_count(), 2);
  EXPECT_EQ(ds.class_names, (std::vector<std::string>{"C1", "C2"}));
  EXPECT_EQ(ds.instances[1].channel(0)[2], 6.0);
}

TEST(SemicolonTable, ClassColumnByNameOrIndex) {
  const char* text = "cls,a,b\nyes,1;2,3;4\nno,5;6,7;8\n";
  auto by_name = parse_semicolon_table(text, "cls");
  auto by_index = parse_semicolon_table(text, "0");
  EXPECT_EQ(by_name.attribute_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(by_name.instances, by_index.instances);
  EXPECT_THROW(parse_semicolon_table(text, "label"), FormatError);
}

TEST(SemicolonTable, Errors) {
  try {
    parse_semicolon_table("A,B,C\n1;2;3,4;5;6,x\n1;2,4;5;6,y\n");
    FAIL();
  } catch (const FormatError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("'A'"), std::string::npos) << msg;
  }
  try {
    parse_semicolon_table("A,C\n1;x;3,y\n");
    FAIL();
  } catch (const FormatError& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("'x'"), std::string::npos) << msg;
  }
  EXPECT_THROW(parse_semicolon_table("A,C\n"), FormatError);
  EXPECT_THROW(parse_semicolon_table("A,C\n1;2,\n"), FormatError);
  EXPECT_THROW(parse_semicolon_table("A,C\n1;2,y,z\n"), FormatError);
}

TEST(SemicolonTable, RoundTrip) {
  oracle::Gen g(3);
  for (int k = 0; k < 20; ++k) {
    auto ds = g.dataset(g.uniform(1, 8), g.uniform(1, 3), g.uniform(2, 6), 3, false);
    for (auto& inst : ds.instances) inst = Instance(
        [&] {
          std::vector<std::vector<double>> ch;
          for (int a = 0; a < inst.channel_count(); ++a) {
            std::vector<double> v;
            for (double x : inst.channel(a)) v.push_back(x / 7.0 + 1e-17);
            ch.push_back(v);
          }
          return ch;
        }(),
        inst.class_index());
    auto back = parse_semicolon_table(serialize_semicolon_table(ds));
    // labels are renumbered by first appearance
    ASSERT_EQ(back.size(), ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
      for (int a = 0; a < ds.attribute_count(); ++a) {
        auto x = ds.instances[i].channel(a), y = back.instances[i].channel(a);
        ASSERT_TRUE(std::equal(x.begin(), x.end(), y.begin(), y.end()));
      }
      EXPECT_EQ(back.class_names[static_cast<std::size_t>(back.instances[i].class_index())],
                ds.class_names[static_cast<std::size_t>(ds.instances[i].class_index())]);
    }
    EXPECT_EQ(serialize_semicolon_table(back), serialize_semicolon_table(ds));
  }
}

TEST(UeaSequence, Handcrafted) {
  auto ds = parse_uea_sequence(
      "# comment\n@problemName tiny\n@timeStamps false\n@classLabel true b a\n@data\n"
      "1,2,3,4:5,6,7,8:a\n");
  EXPECT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds.attribute_count(), 2);
  EXPECT_EQ(ds.series_length, 4);
  EXPECT_EQ(ds.class_names, (std::vector<std::string>{"b", "a"}));
  EXPECT_EQ(ds.instances[0].class_index(), 1);
  EXPECT_EQ(ds.attribute_names, (std::vector<std::string>{"var0", "var1"}));
}

TEST(UeaSequence, Errors) {
  EXPECT_THROW(parse_uea_sequence("@classLabel true a\n@data\n1,2:3,4:a\n1,2:a\n"), FormatError);
  EXPECT_THROW(parse_uea_sequence("@classLabel true a\n@data\n1,2:3,4,5:a\n"), FormatError);
  EXPECT_THROW(parse_uea_sequence("@timeStamps true\n@data\n"), FormatError);
  EXPECT_THROW(parse_uea_sequence("@classLabel true a\n@data\n"), FormatError);
  EXPECT_THROW(parse_uea_sequence("@classLabel true a\n@data\n1,?:a\n"), FormatError);
}

TEST(UeaSequence, BenchFixtureLoads) {
  auto ds = load_dataset(fixtures::data_path("bench/Bumps_TRAIN.ts"));
  EXPECT_EQ(ds.size(), 24u);
  EXPECT_EQ(ds.attribute_count(), 2);
  EXPECT_EQ(ds.series_length, 10);
  EXPECT_EQ(ds.class_names, (std::vector<std::string>{"early", "late", "flat"}));
}

TEST(Trim, PrefixAndNoOp) {
  auto ds = sized(5, 2, 300);
  auto same = trim(ds, 300);
  EXPECT_EQ(same.instances, ds.instances);
  auto cut = trim(ds, 150);
  EXPECT_EQ(cut.series_length, 150);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto full = ds.instances[i].channel(0);
    auto pre = cut.instances[i].channel(0);
    ASSERT_EQ(pre.size(), 150u);
    EXPECT_TRUE(std::equal(pre.begin(), pre.end(), full.begin()));
  }
  auto short_ds = sized(5, 2, 30);
  EXPECT_EQ(trim(short_ds, 150).instances, short_ds.instances);
  EXPECT_THROW(trim(ds, 1), ArgumentError);
}

TEST(ResampleSplit, Sizes) {
  auto a = resample_split(sized(30, 3), 0.8, 1);
  EXPECT_EQ(a.train.size(), 24u);
  EXPECT_EQ(a.test.size(), 6u);
  auto b = resample_split(sized(120, 6), 0.8, 1);
  EXPECT_EQ(b.train.size(), 96u);
  EXPECT_EQ(b.test.size(), 24u);
  auto c = resample_split(sized(303, 4), 0.8, 1);
  EXPECT_EQ(c.train.size(), 243u);
  EXPECT_EQ(c.test.size(), 60u);
}

TEST(ResampleSplit, DeterministicPartition) {
  for (int m : {7, 30, 51}) {
    auto ds = sized(m, 3);
    auto a = resample_split(ds, 0.8, 42);
    auto b = resample_split(ds, 0.8, 42);
    EXPECT_EQ(a.train.instances, b.train.instances);
    EXPECT_EQ(a.test.instances, b.test.instances);
    auto both = contents(a.train);
    auto t = contents(a.test);
    both.insert(t.begin(), t.end());
    EXPECT_EQ(both, contents(ds));
  }
}

TEST(ResampleSplit, Stratified) {
  auto ds = sized(40, 2);
  for (std::size_t i = 0; i < ds.size(); ++i) ds.instances[i].set_class_index(i < 30 ? 0 : 1);
  auto s = resample_split(ds, 0.8, 9);
  int train_minor = 0;
  for (const auto& inst : s.train.instances) train_minor += inst.class_index();
  EXPECT_EQ(train_minor, 8);
  EXPECT_TRUE(s.warnings.empty());
}

TEST(ResampleSplit, TinyClassWarns) {
  auto ds = sized(10, 3);
  for (auto& inst : ds.instances) inst.set_class_index(0);
  ds.instances[3].set_class_index(2);
  ds.instances[4].set_class_index(1);
  ds.instances[5].set_class_index(1);
  auto s = resample_split(ds, 0.8, 0);
  EXPECT_EQ(s.train.size(), 8u);
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_NE(s.warnings[0].find("k2"), std::string::npos);
  EXPECT_THROW(resample_split(ds, 1.0, 0), ArgumentError);
}

TEST(Merge, UnifiesClassNames) {
  auto a = parse_semicolon_table("x,c\n1;2,p\n");
  auto b = parse_semicolon_table("x,c\n3;4,q\n5;6,p\n");
  auto m = merge_datasets(a, b);
  EXPECT_EQ(m.class_names, (std::vector<std::string>{"p", "q"}));
  EXPECT_EQ(m.instances[1].class_index(), 1);
  EXPECT_EQ(m.instances[2].class_index(), 0);
  auto c = parse_semicolon_table("x,c\n3;4;5,q\n");
  EXPECT_THROW(merge_datasets(a, c), DimensionError);
}

TEST(FormatReal, ShortestRoundTrip) {
  for (double v : {0.1, -2.756591, 1.0 / 3.0, 1e-300, 123456789.0, 0.0}) {
    double back = 0.0;
    ASSERT_TRUE(detail::parse_real(format_real(v), back));
    EXPECT_EQ(back, v);
  }
  EXPECT_EQ(format_real(0.6), "0.6");
  EXPECT_EQ(format_real(-2.756591), "-2.756591");
}
