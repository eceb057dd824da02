#ifndef TDT_EVALUATION_HPP
#define TDT_EVALUATION_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdt/core.hpp"

namespace tdt {

/// trace / total, in [0, 1].
inline double accuracy(const ConfusionMatrix& m) {
  if (m.total() <= 0) throw ArgumentError("accuracy of an empty confusion matrix");
  return static_cast<double>(m.trace()) / static_cast<double>(m.total());
}

inline std::string format_fixed(double v, int decimals = 2) {
  if (std::isnan(v)) return "?";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

/// Accuracy as a percentage with two decimals ("76.92").
inline std::string format_percent(double fraction) { return format_fixed(100.0 * fraction, 2); }

// ---------------------------------------------------------------------------
// Per-class metrics
// ---------------------------------------------------------------------------

struct ClassMetrics {
  double tp_rate = 0.0;
  double fp_rate = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  double mcc = 0.0;
  /// NaN when the class has no positives or no negatives in the data.
  double roc_area = std::numeric_limits<double>::quiet_NaN();
  double prc_area = std::numeric_limits<double>::quiet_NaN();
};

using ClassReport = std::vector<ClassMetrics>;

namespace detail {

inline double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

/// Mann-Whitney AUC with mid-ranks for tied scores.
inline double roc_area(std::span<const double> scores, std::span<const char> positive) {
  const auto n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });
  double rank_sum = 0.0;
  double pos = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k)
      if (positive[order[k]]) {
        rank_sum += mid;
        pos += 1.0;
      }
    i = j;
  }
  const double neg = static_cast<double>(n) - pos;
  if (pos == 0.0 || neg == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (rank_sum - pos * (pos + 1.0) / 2.0) / (pos * neg);
}

/// Step-interpolated area under the precision-recall curve: thresholds at
/// each distinct score, descending; each recall increment is weighted by the
/// precision reached there.
inline double prc_area(std::span<const double> scores, std::span<const char> positive) {
  const auto n = scores.size();
  double pos_total = 0.0;
  for (auto p : positive) pos_total += p ? 1.0 : 0.0;
  if (pos_total == 0.0) return std::numeric_limits<double>::quiet_NaN();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });
  double tp = 0.0, fp = 0.0, prev_recall = 0.0, area = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    for (std::size_t k = i; k < j; ++k) (positive[order[k]] ? tp : fp) += 1.0;
    const double recall = tp / pos_total;
    area += (recall - prev_recall) * (tp / (tp + fp));
    prev_recall = recall;
    i = j;
  }
  return area;
}

}  // namespace detail

/// One-vs-rest metrics per class. `scores[i][c]` is instance i's normalized
/// score for class c (leaf distribution); `actual[i]` its true class.
inline ClassReport class_report(const ConfusionMatrix& m, std::span<const std::vector<double>> scores,
                                std::span<const int> actual) {
  if (scores.size() != actual.size()) throw DimensionError("scores and labels differ in length");
  const int q = m.size();
  const double all = static_cast<double>(m.total());
  ClassReport report(static_cast<std::size_t>(q));
  std::vector<double> col(scores.size());
  std::vector<char> positive(scores.size());
  for (int c = 0; c < q; ++c) {
    double tp = static_cast<double>(m.at(c, c));
    double pred = 0.0, act = 0.0;
    for (int k = 0; k < q; ++k) {
      pred += static_cast<double>(m.at(c, k));
      act += static_cast<double>(m.at(k, c));
    }
    const double fp = pred - tp;
    const double fn = act - tp;
    const double tn = all - tp - fp - fn;

    auto& r = report[static_cast<std::size_t>(c)];
    r.tp_rate = detail::ratio(tp, tp + fn);
    r.recall = r.tp_rate;
    r.fp_rate = detail::ratio(fp, fp + tn);
    r.precision = detail::ratio(tp, tp + fp);
    r.f_measure = detail::ratio(2.0 * r.precision * r.recall, r.precision + r.recall);
    const double den = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
    r.mcc = den == 0.0 ? 0.0 : (tp * tn - fp * fn) / std::sqrt(den);

    for (std::size_t i = 0; i < scores.size(); ++i) {
      col[i] = scores[i][static_cast<std::size_t>(c)];
      positive[i] = actual[i] == c ? 1 : 0;
    }
    r.roc_area = detail::roc_area(col, positive);
    r.prc_area = detail::prc_area(col, positive);
  }
  return report;
}

inline std::string render_class_report(const ClassReport& report,
                                       const std::vector<std::string>& class_names) {
  std::string out = "TP Rate  FP Rate  Precision  Recall  F-Measure  MCC    ROC Area  PRC Area  Class\n";
  char buf[256];
  for (std::size_t c = 0; c < report.size(); ++c) {
    const auto& r = report[c];
    std::snprintf(buf, sizeof buf, "%-8s %-8s %-10s %-7s %-10s %-6s %-9s %-9s %s\n",
                  format_fixed(r.tp_rate).c_str(), format_fixed(r.fp_rate).c_str(),
                  format_fixed(r.precision).c_str(), format_fixed(r.recall).c_str(),
                  format_fixed(r.f_measure).c_str(), format_fixed(r.mcc).c_str(),
                  format_fixed(r.roc_area).c_str(), format_fixed(r.prc_area).c_str(),
                  class_names[c].c_str());
    out += buf;
  }
  return out;
}

/// Rows are predicted classes, columns true classes.
inline std::string render_confusion(const ConfusionMatrix& m,
                                    const std::vector<std::string>& class_names) {
  std::string out = "predicted \\ actual";
  for (int c = 0; c < m.size(); ++c) out += "\t" + std::to_string(c);
  out += "\n";
  for (int p = 0; p < m.size(); ++p) {
    out += std::to_string(p) + " = " + class_names[static_cast<std::size_t>(p)];
    for (int a = 0; a < m.size(); ++a) out += "\t" + std::to_string(m.at(p, a));
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Method comparison grid
// ---------------------------------------------------------------------------

/// Accuracy grid in the layout of a method-comparison table: one row per
/// method, one column per dataset. Values are fractions in [0, 1].
struct ComparisonGrid {
  struct Row {
    std::string group;
    std::string method;
    std::vector<std::optional<double>> accuracy;
  };
  std::vector<std::string> datasets;
  std::vector<Row> rows;
};

namespace detail {

/// Compare at display precision so ties on screen share markers.
inline long long centi_percent(double fraction) { return std::llround(fraction * 10000.0); }

}  // namespace detail

/// Cells carry '+' when best within the method's group and '*' when best
/// over all methods, ties sharing the marker.
inline std::string compare_report(const ComparisonGrid& grid) {
  const auto cols = grid.datasets.size();
  std::vector<std::vector<std::string>> cells(grid.rows.size(), std::vector<std::string>(cols));
  for (std::size_t c = 0; c < cols; ++c) {
    long long overall = -1;
    std::vector<std::pair<std::string, long long>> group_best;
    auto best_of = [&](const std::string& g) -> long long& {
      for (auto& [name, v] : group_best)
        if (name == g) return v;
      return group_best.emplace_back(g, -1).second;
    };
    for (const auto& row : grid.rows) {
      if (c >= row.accuracy.size() || !row.accuracy[c]) continue;
      auto v = detail::centi_percent(*row.accuracy[c]);
      overall = std::max(overall, v);
      auto& gb = best_of(row.group);
      gb = std::max(gb, v);
    }
    for (std::size_t r = 0; r < grid.rows.size(); ++r) {
      const auto& row = grid.rows[r];
      if (c >= row.accuracy.size() || !row.accuracy[c]) {
        cells[r][c] = "-";
        continue;
      }
      auto v = detail::centi_percent(*row.accuracy[c]);
      std::string s = format_percent(*row.accuracy[c]);
      if (v == best_of(row.group)) s += "+";
      if (v == overall) s += "*";
      cells[r][c] = s;
    }
  }

  std::size_t method_w = 6;
  for (const auto& row : grid.rows) method_w = std::max(method_w, row.method.size());
  std::vector<std::size_t> col_w(cols, 8);
  for (std::size_t c = 0; c < cols; ++c) col_w[c] = std::max(col_w[c], grid.datasets[c].size());

  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  auto rstrip = [](std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
  };
  std::string head = pad("Method", method_w);
  for (std::size_t c = 0; c < cols; ++c) head += "  " + pad(grid.datasets[c], col_w[c]);
  std::string out = rstrip(head) + "\n";
  std::string prev_group;
  for (std::size_t r = 0; r < grid.rows.size(); ++r) {
    if (r > 0 && grid.rows[r].group != prev_group) {
      out += std::string(method_w, '-');
      for (std::size_t c = 0; c < cols; ++c) out += "  " + std::string(col_w[c], '-');
      out += "\n";
    }
    prev_group = grid.rows[r].group;
    std::string line = pad(grid.rows[r].method, method_w);
    for (std::size_t c = 0; c < cols; ++c) line += "  " + pad(cells[r][c], col_w[c]);
    out += rstrip(line) + "\n";
  }
  out += "(+ best in group, * best overall)\n";
  return out;
}

/// Machine-readable form: one "dataset,method,metric,value" line per metric.
inline std::string comparison_key_values(const ComparisonGrid& grid) {
  std::string out;
  for (std::size_t c = 0; c < grid.datasets.size(); ++c)
    for (const auto& row : grid.rows)
      if (c < row.accuracy.size() && row.accuracy[c])
        out += grid.datasets[c] + "," + row.method + ",accuracy," +
               format_percent(*row.accuracy[c]) + "\n";
  return out;
}

inline std::string class_report_key_values(const std::string& dataset, const std::string& method,
                                           const ClassReport& report,
                                           const std::vector<std::string>& class_names) {
  std::string out;
  auto line = [&](const std::string& metric, double v) {
    out += dataset + "," + method + "," + metric + "," + format_fixed(v, 4) + "\n";
  };
  for (std::size_t c = 0; c < report.size(); ++c) {
    const auto& r = report[c];
    const auto& k = class_names[c];
    line("tp_rate[" + k + "]", r.tp_rate);
    line("fp_rate[" + k + "]", r.fp_rate);
    line("precision[" + k + "]", r.precision);
    line("recall[" + k + "]", r.recall);
    line("f_measure[" + k + "]", r.f_measure);
    line("mcc[" + k + "]", r.mcc);
    line("roc_area[" + k + "]", r.roc_area);
    line("prc_area[" + k + "]", r.prc_area);
  }
  return out;
}

}  // namespace tdt

#endif  // TDT_EVALUATION_HPP
