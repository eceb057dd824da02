#ifndef TDT_APP_HPP
#define TDT_APP_HPP

// Command-line front end: train | predict | evaluate | compare | bench.
//
// Exit codes: 0 success, 1 usage error, 2 data or format error, 3 internal
// invariant violation.

#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tdt/baselines.hpp"
#include "tdt/core.hpp"
#include "tdt/dataio.hpp"
#include "tdt/evaluation.hpp"
#include "tdt/experiment.hpp"
#include "tdt/induction.hpp"
#include "tdt/model.hpp"
#include "tdt/render.hpp"

namespace tdt::app {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kInternal = 3 };

/// Thrown for option values that parse but make no sense.
struct UsageError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Option value parsing
// ---------------------------------------------------------------------------

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  for (auto part : detail::split(s, ',')) {
    auto t = detail::trim_ws(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

/// Each entry is a value ("0.6") or an inclusive range "a:b:step".
inline std::vector<double> parse_alpha_values(const std::vector<std::string>& specs) {
  std::vector<double> out;
  auto real = [](std::string_view t) {
    double v = 0.0;
    if (!detail::parse_real(t, v)) throw UsageError("bad alpha value '" + std::string(t) + "'");
    return v;
  };
  for (const auto& spec : specs) {
    for (const auto& item : split_list(spec)) {
      auto parts = detail::split(item, ':');
      if (parts.size() == 1) {
        out.push_back(real(parts[0]));
      } else if (parts.size() == 3) {
        double lo = real(parts[0]), hi = real(parts[1]), step = real(parts[2]);
        if (!(step > 0.0) || hi < lo) throw UsageError("bad alpha range '" + item + "'");
        for (int k = 0;; ++k) {
          double v = std::round((lo + k * step) * 1e10) / 1e10;
          if (v > hi + 1e-9) break;
          out.push_back(v);
        }
      } else {
        throw UsageError("bad alpha specification '" + item + "'");
      }
    }
  }
  for (double a : out)
    if (!(a > 0.0 && a <= 1.0)) throw UsageError("alpha " + format_real(a) + " outside (0, 1]");
  return out;
}

/// "full-hs" or a comma list of relation names (A, L, ..., InvO, eq).
inline std::vector<Relation> parse_relations(std::string_view s) {
  if (s == "full-hs" || s == "all") return {kAllRelations.begin(), kAllRelations.end()};
  std::vector<Relation> out;
  try {
    for (const auto& name : split_list(s)) out.push_back(parse_relation(name));
  } catch (const FormatError& e) {
    throw UsageError(e.what());
  }
  if (out.empty()) throw UsageError("empty relation list");
  return out;
}

inline std::vector<Comparator> parse_comparators(std::string_view s) {
  std::vector<Comparator> out;
  try {
    for (const auto& name : split_list(s)) out.push_back(parse_comparator(name));
  } catch (const FormatError& e) {
    throw UsageError(e.what());
  }
  if (out.empty()) throw UsageError("empty comparator list");
  return out;
}

inline std::vector<MethodSpec> parse_methods(std::string_view s) {
  std::vector<MethodSpec> out;
  try {
    for (const auto& name : split_list(s)) out.push_back(parse_method(name));
  } catch (const FormatError& e) {
    throw UsageError(e.what());
  }
  if (out.empty()) throw UsageError("empty method list");
  return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write '" + path + "'");
  f << text;
  if (!f) throw FormatError("error writing '" + path + "'");
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

struct DataOptions {
  std::vector<std::string> paths;
  std::string format = "auto";
  std::string class_column;

  void add_to(CLI::App* cmd, bool multiple = false) {
    if (multiple)
      cmd->add_option("--data", paths, "Dataset file(s); several are merged")->required();
    else
      cmd->add_option("--data", paths, "Dataset file")->required()->expected(1);
    cmd->add_option("--format", format, "auto | semicolon | uea")
        ->check(CLI::IsMember({"auto", "semicolon", "uea"}));
    cmd->add_option("--class-column", class_column,
                    "Class column name or index (semicolon tables; default: last)");
  }

  TemporalDataset load() const {
    TemporalDataset merged;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      auto ds = load_dataset(paths[i], parse_data_format(format), class_column);
      merged = i == 0 ? std::move(ds) : merge_datasets(std::move(merged), ds);
    }
    return merged;
  }
};

struct TrainOptions {
  DataOptions data;
  std::vector<std::string> alpha{"1.0"};
  int max_z = 0;
  std::string relations = "full-hs";
  std::string comparators = "<=,>";
  int min_leaf = 2;
  double purity = 0.0;
  int threshold_cap = 100;
  std::string witness_policy = "leftmost_shortest";
  double eq_tolerance = 0.0;
  std::uint64_t seed = 0;
  int threads = 1;
  int trim_length = 0;
  std::string out;

  LearnerConfig config() const {
    LearnerConfig c;
    c.alpha_grid = parse_alpha_values(alpha);
    c.max_derivative = max_z;
    c.relations = parse_relations(relations);
    c.comparators = parse_comparators(comparators);
    c.min_leaf_size = min_leaf;
    c.purity_threshold = purity;
    c.max_threshold_candidates = threshold_cap;
    c.witness_policy = parse_witness_policy(witness_policy);
    c.equality_tolerance = eq_tolerance;
    c.seed = seed;
    c.threads = threads;
    try {
      c.validate();
    } catch (const FormatError& e) {
      throw UsageError(e.what());
    }
    return c.normalized();
  }
};

inline int cmd_train(const TrainOptions& o, std::ostream& out) {
  auto cfg = o.config();
  auto data = o.data.load();
  if (o.trim_length > 0) data = trim(std::move(data), o.trim_length);
  data.validate(false);
  Model m;
  m.tree = grow_tree(data, cfg);
  m.attribute_names = data.attribute_names;
  m.class_names = data.class_names;
  m.series_length = data.series_length;
  m.config = cfg;
  m.config.threads = 1;
  out << render_tree(m.tree, m.names(), m.render_options());
  if (!o.out.empty()) write_text_file(o.out, save_model(m));
  return kOk;
}

struct ModelDataOptions {
  std::string model;
  DataOptions data;
  std::string report_out;
  std::string dataset_name;
};

inline Model read_model(const std::string& path) {
  try {
    return load_model(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline int cmd_predict(const ModelDataOptions& o, std::ostream& out) {
  auto m = read_model(o.model);
  auto data = o.data.load();
  m.check_shape(data);
  for (const auto& inst : data.instances)
    out << m.class_names[static_cast<std::size_t>(m.predict(inst).class_index)] << "\n";
  return kOk;
}

inline int cmd_evaluate(const ModelDataOptions& o, std::ostream& out) {
  auto m = read_model(o.model);
  auto data = o.data.load();
  m.check_shape(data);
  data = remap_classes(std::move(data), m.class_names);

  const int q = static_cast<int>(m.class_names.size());
  ConfusionMatrix cm(q);
  std::vector<std::vector<double>> scores;
  std::vector<int> actual;
  for (const auto& inst : data.instances) {
    auto p = m.predict(inst);
    cm.add(p.class_index, inst.class_index());
    std::vector<double> s(static_cast<std::size_t>(q), 0.0);
    auto n = total(p.counts);
    for (int c = 0; c < q; ++c)
      s[static_cast<std::size_t>(c)] =
          n > 0 ? static_cast<double>(p.counts[static_cast<std::size_t>(c)]) / static_cast<double>(n)
                : 0.0;
    scores.push_back(std::move(s));
    actual.push_back(inst.class_index());
  }
  if (cm.total() == 0) throw FormatError("evaluation data is empty");
  auto report = class_report(cm, scores, actual);

  out << "Accuracy: " << format_percent(accuracy(cm)) << "% (" << cm.trace() << "/" << cm.total()
      << ")\n\n";
  out << "Confusion matrix\n" << render_confusion(cm, m.class_names) << "\n";
  out << "Per-class performance\n" << render_class_report(report, m.class_names);

  if (!o.report_out.empty()) {
    std::string name = o.dataset_name.empty() ? o.data.paths.front() : o.dataset_name;
    std::string kv = name + ",model,accuracy," + format_percent(accuracy(cm)) + "\n";
    kv += class_report_key_values(name, "model", report, m.class_names);
    write_text_file(o.report_out, kv);
  }
  return kOk;
}

struct CompareOptions {
  DataOptions data;
  std::string data_dir;
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  int trim_length = 150;
  std::string methods;
  int threads = 1;
  std::string name;
  std::string out;
  std::string kv_out;

  CompareSettings settings() const {
    CompareSettings s;
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
      throw UsageError("--train-fraction must lie in (0, 1)");
    if (trim_length < 2) throw UsageError("--trim must be at least 2");
    if (threads < 1) throw UsageError("--threads must be at least 1");
    s.train_fraction = train_fraction;
    s.seed = seed;
    s.trim_length = trim_length;
    if (!methods.empty()) s.methods = parse_methods(methods);
    s.base.threads = threads;
    return s;
  }
};

inline int emit_grid(const CompareOptions& o, const ComparisonGrid& grid,
                     const std::vector<std::string>& warnings, std::ostream& out,
                     std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  auto text = compare_report(grid);
  out << text;
  if (!o.out.empty()) write_text_file(o.out, text);
  if (!o.kv_out.empty()) write_text_file(o.kv_out, comparison_key_values(grid));
  return kOk;
}

inline std::string dataset_label(const std::string& path) {
  auto stem = std::filesystem::path(path).stem().string();
  for (std::string_view suffix : {"_TRAIN", "_TEST"})
    if (stem.size() > suffix.size() && stem.ends_with(suffix))
      return stem.substr(0, stem.size() - suffix.size());
  return stem;
}

inline int cmd_compare(const CompareOptions& o, std::ostream& out, std::ostream& err) {
  auto settings = o.settings();
  auto data = o.data.load();
  ComparisonGrid grid;
  std::vector<std::string> warnings;
  compare_into(grid, o.name.empty() ? dataset_label(o.data.paths.front()) : o.name, data, settings,
               &warnings);
  return emit_grid(o, grid, warnings, out, err);
}

inline int cmd_bench(const CompareOptions& o, std::ostream& out, std::ostream& err) {
  auto settings = o.settings();
  auto entries = discover_datasets(o.data_dir);
  if (entries.empty()) throw FormatError("no datasets found under '" + o.data_dir + "'");
  ComparisonGrid grid;
  std::vector<std::string> warnings;
  for (const auto& e : entries) {
    err << "bench: " << e.name << "\n";
    compare_into(grid, e.name, load_entry(e, o.data.class_column), settings, &warnings);
  }
  return emit_grid(o, grid, warnings, out, err);
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Temporal decision trees over multivariate time series"};
  app.require_subcommand(1);

  TrainOptions train;
  auto* t = app.add_subcommand("train", "Grow a temporal decision tree and print it");
  train.data.add_to(t);
  t->add_option("--alpha", train.alpha, "Alpha value(s) or ranges a:b:step (repeatable)");
  t->add_option("--max-z", train.max_z, "Highest derivative degree searched")->check(CLI::NonNegativeNumber);
  t->add_option("--relations", train.relations, "Comma list of relations, or full-hs");
  t->add_option("--comparators", train.comparators, "Comma list from <=, =, >");
  t->add_option("--min-leaf", train.min_leaf, "Minimum instances per branch");
  t->add_option("--purity", train.purity, "Entropy at or below which a node becomes a leaf");
  t->add_option("--threshold-cap", train.threshold_cap, "Maximum thresholds per attribute");
  t->add_option("--witness-policy", train.witness_policy, "leftmost_shortest | first_found");
  t->add_option("--eq-tolerance", train.eq_tolerance, "Absolute tolerance of '='");
  t->add_option("--seed", train.seed, "Recorded in the model");
  t->add_option("--threads", train.threads, "Split-search worker threads");
  t->add_option("--trim", train.trim_length, "Truncate series to this length (0: keep)");
  t->add_option("--out", train.out, "Model file to write");

  ModelDataOptions predict;
  auto* p = app.add_subcommand("predict", "Print one predicted class per instance");
  p->add_option("--model", predict.model, "Model file")->required();
  predict.data.add_to(p);

  ModelDataOptions evaluate;
  auto* e = app.add_subcommand("evaluate", "Accuracy, confusion matrix and per-class report");
  e->add_option("--model", evaluate.model, "Model file")->required();
  evaluate.data.add_to(e);
  e->add_option("--report-out", evaluate.report_out, "Write dataset,method,metric,value lines");
  e->add_option("--name", evaluate.dataset_name, "Dataset name used in the report file");

  CompareOptions compare;
  auto* c = app.add_subcommand("compare", "Compare methods on one resampled dataset");
  compare.data.add_to(c, true);
  auto add_compare = [](CLI::App* cmd, CompareOptions& opt) {
    cmd->add_option("--train-fraction", opt.train_fraction, "Training share of the resampling");
    cmd->add_option("--seed", opt.seed, "Resampling seed");
    cmd->add_option("--trim", opt.trim_length, "Truncate series to this length");
    cmd->add_option("--methods", opt.methods,
                    "Comma list: tj48:ALPHA, j48:MASK (e.g. 1100), ed-i, dtw-i, dtw-d");
    cmd->add_option("--threads", opt.threads, "Split-search worker threads");
    cmd->add_option("--out", opt.out, "Write the report table here as well");
    cmd->add_option("--kv-out", opt.kv_out, "Write dataset,method,metric,value lines");
  };
  add_compare(c, compare);
  c->add_option("--name", compare.name, "Column name (default: file stem)");

  CompareOptions bench;
  auto* b = app.add_subcommand("bench", "Compare methods on every dataset under a directory");
  b->add_option("--data-dir", bench.data_dir, "Directory of NAME_TRAIN/TEST.ts pairs or .csv tables")
      ->required();
  b->add_option("--class-column", bench.data.class_column, "Class column of semicolon tables");
  add_compare(b, bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*t) return cmd_train(train, out);
    if (*p) return cmd_predict(predict, out);
    if (*e) return cmd_evaluate(evaluate, out);
    if (*c) return cmd_compare(compare, out, err);
    if (*b) return cmd_bench(bench, out, err);
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\n";
    return kUsage;
  } catch (const InvariantError& ex) {
    err << "internal error: " << ex.what() << "\n";
    return kInternal;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return kDataError;
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace tdt::app

#endif  // TDT_APP_HPP
