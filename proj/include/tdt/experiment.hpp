#ifndef TDT_EXPERIMENT_HPP
#define TDT_EXPERIMENT_HPP

// Method comparison harness: resample a dataset, fit each method on the
// training side, score accuracy on the test side, and tabulate.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "tdt/baselines.hpp"
#include "tdt/core.hpp"
#include "tdt/dataio.hpp"
#include "tdt/evaluation.hpp"
#include "tdt/induction.hpp"
#include "tdt/static_tree.hpp"

namespace tdt {

struct MethodSpec {
  enum class Kind { TemporalTree, StaticFeatures, NearestNeighbour };
  Kind kind = Kind::TemporalTree;
  double alpha = 1.0;
  FeatureMask mask{true, false, false, false};
  Metric metric = Metric::EuclideanI;

  std::string group() const {
    switch (kind) {
      case Kind::StaticFeatures: return "feature";
      case Kind::NearestNeighbour: return "distance";
      case Kind::TemporalTree: return "symbolic";
    }
    return {};
  }

  std::string label() const {
    switch (kind) {
      case Kind::StaticFeatures: return "J48 " + mask.str();
      case Kind::NearestNeighbour:
        return metric == Metric::EuclideanI ? "ED_I" : metric == Metric::DtwI ? "DTW_I" : "DTW_D";
      case Kind::TemporalTree: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "T. J48 %.1f", alpha);
        return buf;
      }
    }
    return {};
  }
};

/// "tj48:0.6", "j48:1100", "ed-i", "dtw-i", "dtw-d".
inline MethodSpec parse_method(std::string_view s) {
  MethodSpec m;
  auto colon = s.find(':');
  auto head = s.substr(0, colon);
  auto arg = colon == std::string_view::npos ? std::string_view{} : s.substr(colon + 1);
  if (head == "tj48") {
    m.kind = MethodSpec::Kind::TemporalTree;
    if (!arg.empty() && !detail::parse_real(arg, m.alpha))
      throw FormatError("bad alpha in method '" + std::string(s) + "'");
    if (!(m.alpha > 0.0 && m.alpha <= 1.0))
      throw FormatError("alpha out of (0, 1] in method '" + std::string(s) + "'");
  } else if (head == "j48") {
    m.kind = MethodSpec::Kind::StaticFeatures;
    if (arg.empty()) throw FormatError("method 'j48' needs a feature mask, e.g. j48:1100");
    m.mask = FeatureMask::parse(arg);
  } else if (s == "ed-i" || s == "dtw-i" || s == "dtw-d") {
    m.kind = MethodSpec::Kind::NearestNeighbour;
    m.metric = s == "ed-i" ? Metric::EuclideanI : s == "dtw-i" ? Metric::DtwI : Metric::DtwD;
  } else {
    throw FormatError("unknown method '" + std::string(s) + "'");
  }
  return m;
}

/// The full comparison set: three feature masks, three distances, five alphas.
inline std::vector<MethodSpec> default_methods() {
  std::vector<MethodSpec> out;
  for (auto s : {"j48:1000", "j48:1100", "j48:1111", "ed-i", "dtw-i", "dtw-d", "tj48:0.5",
                 "tj48:0.6", "tj48:0.7", "tj48:0.8", "tj48:0.9"})
    out.push_back(parse_method(s));
  return out;
}

/// Temporal learner settings used for "tj48:alpha": fixed alpha, full HS,
/// no derivatives.
inline LearnerConfig temporal_config(double alpha, LearnerConfig base = {}) {
  base.alpha_grid = {alpha};
  base.max_derivative = 0;
  base.relations.assign(kAllRelations.begin(), kAllRelations.end());
  return base;
}

/// Predicted class per test instance.
inline std::vector<int> run_method(const MethodSpec& m, const TemporalDataset& train,
                                   const TemporalDataset& test, const LearnerConfig& base = {}) {
  std::vector<int> predicted;
  predicted.reserve(test.size());
  switch (m.kind) {
    case MethodSpec::Kind::TemporalTree: {
      auto cfg = temporal_config(m.alpha, base);
      auto tree = grow_tree(train, cfg);
      for (const auto& inst : test.instances)
        predicted.push_back(classify(tree, inst, cfg.witness_policy, cfg.equality_tolerance).class_index);
      break;
    }
    case MethodSpec::Kind::StaticFeatures: {
      auto tree = grow_static_tree(feature_table(train, m.mask), base);
      for (const auto& inst : test.instances)
        predicted.push_back(classify_static(tree, extract_features(inst, m.mask)));
      break;
    }
    case MethodSpec::Kind::NearestNeighbour:
      for (const auto& inst : test.instances) predicted.push_back(nn_classify(train, inst, m.metric));
      break;
  }
  return predicted;
}

inline double test_accuracy(const std::vector<int>& predicted, const TemporalDataset& test) {
  ConfusionMatrix cm(test.class_count());
  for (std::size_t i = 0; i < predicted.size(); ++i)
    cm.add(predicted[i], test.instances[i].class_index());
  return accuracy(cm);
}

struct CompareSettings {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  int trim_length = 150;
  std::vector<MethodSpec> methods = default_methods();
  LearnerConfig base;
};

/// Accuracy of every method on one resampled dataset, appended as a column.
inline void compare_into(ComparisonGrid& grid, const std::string& name, const TemporalDataset& data,
                         const CompareSettings& s, std::vector<std::string>* warnings = nullptr) {
  auto trimmed = trim(data, s.trim_length);
  auto split = resample_split(trimmed, s.train_fraction, s.seed);
  if (warnings)
    for (auto& w : split.warnings) warnings->push_back(name + ": " + w);
  if (split.test.empty()) throw ArgumentError(name + ": resampling left no test instances");

  const auto col = grid.datasets.size();
  grid.datasets.push_back(name);
  for (const auto& m : s.methods) {
    auto label = m.label();
    auto it = std::find_if(grid.rows.begin(), grid.rows.end(),
                           [&](const auto& r) { return r.method == label; });
    if (it == grid.rows.end()) {
      grid.rows.push_back({m.group(), label, {}});
      it = std::prev(grid.rows.end());
    }
    it->accuracy.resize(col + 1);
    it->accuracy[col] = test_accuracy(run_method(m, split.train, split.test, s.base), split.test);
  }
}

/// A dataset found under a benchmark directory: one semicolon table, or a
/// NAME_TRAIN.ts / NAME_TEST.ts pair that is merged before resampling.
struct DatasetEntry {
  std::string name;
  std::vector<std::filesystem::path> files;
};

inline std::vector<DatasetEntry> discover_datasets(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw FormatError("'" + dir.string() + "' is not a directory");
  std::map<std::string, std::vector<fs::path>> found;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    auto p = e.path();
    auto ext = detail::lower(p.extension().string());
    auto stem = p.stem().string();
    if (ext == ".ts") {
      for (auto suffix : {"_TRAIN", "_TEST"}) {
        std::string_view sv(suffix);
        if (stem.size() > sv.size() && stem.ends_with(sv)) {
          found[stem.substr(0, stem.size() - sv.size())].push_back(p);
          break;
        }
      }
    } else if (ext == ".csv") {
      found[stem].push_back(p);
    }
  }
  std::vector<DatasetEntry> out;
  for (auto& [name, files] : found) {
    // training split first so its class order leads the merge
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
      auto is_test = [](const fs::path& p) { return p.stem().string().ends_with("_TEST"); };
      return std::make_pair(is_test(a), a) < std::make_pair(is_test(b), b);
    });
    out.push_back({name, files});
  }
  return out;
}

inline TemporalDataset load_entry(const DatasetEntry& entry, std::string_view class_column = {}) {
  TemporalDataset merged;
  bool first = true;
  for (const auto& f : entry.files) {
    auto ds = load_dataset(f.string(), DataFormat::Auto, class_column);
    merged = first ? std::move(ds) : merge_datasets(std::move(merged), ds);
    first = false;
  }
  return merged;
}

}  // namespace tdt

#endif  // TDT_EXPERIMENT_HPP
