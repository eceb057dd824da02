#ifndef TDT_STATIC_TREE_HPP
#define TDT_STATIC_TREE_HPP

// Classic binary C4.5 on a numeric table. Works on rows directly; its
// decisions are modality-free (relation Eq, z = 0, alpha = 1) so the trees
// share the temporal tree type, renderer and model format.

#include <span>
#include <vector>

#include "tdt/core.hpp"
#include "tdt/induction.hpp"

namespace tdt {

struct StaticTable {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  int class_count = 0;

  int column_count() const { return rows.empty() ? 0 : static_cast<int>(rows.front().size()); }
};

namespace detail {

inline std::optional<SplitCandidate> best_static_split(const StaticTable& t,
                                                       std::span<const std::size_t> rows,
                                                       const LearnerConfig& cfg) {
  const auto uq = static_cast<std::size_t>(t.class_count);
  ClassCounts parent(uq, 0);
  for (auto r : rows) parent[static_cast<std::size_t>(t.labels[r])]++;
  const auto parent_total = static_cast<std::int64_t>(rows.size());

  std::optional<SplitCandidate> best;
  std::array<ClassCounts, 2> parts{ClassCounts(uq), ClassCounts(uq)};
  std::vector<double> column;
  for (int a = 0; a < t.column_count(); ++a) {
    column.clear();
    for (auto r : rows) column.push_back(t.rows[r][static_cast<std::size_t>(a)]);
    for (Comparator cmp : cfg.comparators) {
      for (double thr : thresholds_for(cmp, column, cfg.max_threshold_candidates)) {
        std::fill(parts[0].begin(), parts[0].end(), 0);
        for (std::size_t i = 0; i < rows.size(); ++i)
          if (compare(column[i], cmp, thr, cfg.equality_tolerance))
            parts[0][static_cast<std::size_t>(t.labels[rows[i]])]++;
        std::int64_t ns = 0;
        for (std::size_t c = 0; c < uq; ++c) {
          parts[1][c] = parent[c] - parts[0][c];
          ns += parts[0][c];
        }
        const auto nu = parent_total - ns;
        if (ns < cfg.min_leaf_size || nu < cfg.min_leaf_size) continue;
        SplitCandidate cand{TemporalDecision{Relation::Eq, a, 0, cmp, thr, 1.0},
                            info_split(parent_total, parts), static_cast<std::size_t>(ns),
                            static_cast<std::size_t>(nu)};
        if (!best || better_split(cand, *best)) best = cand;
      }
    }
  }
  if (best && info(parent) - best->split_info <= kMinGain) return std::nullopt;
  return best;
}

inline DecisionTree grow_static(const StaticTable& t, std::vector<std::size_t> rows,
                                const LearnerConfig& cfg) {
  ClassCounts counts(static_cast<std::size_t>(t.class_count), 0);
  for (auto r : rows) counts[static_cast<std::size_t>(t.labels[r])]++;
  if (info(counts) <= cfg.purity_threshold ||
      static_cast<std::int64_t>(rows.size()) < 2 * static_cast<std::int64_t>(cfg.min_leaf_size))
    return DecisionTree::leaf(std::move(counts));
  auto split = best_static_split(t, rows, cfg);
  if (!split) return DecisionTree::leaf(std::move(counts));
  const auto& d = split->decision;
  std::vector<std::size_t> sat, unsat;
  for (auto r : rows)
    (compare(t.rows[r][static_cast<std::size_t>(d.attribute)], d.comparator, d.threshold,
             cfg.equality_tolerance)
         ? sat
         : unsat)
        .push_back(r);
  rows.clear();
  auto left = grow_static(t, std::move(sat), cfg);
  auto right = grow_static(t, std::move(unsat), cfg);
  return DecisionTree::node(d, std::move(left), std::move(right));
}

}  // namespace detail

/// Only the comparator set, leaf size, purity and threshold cap of `config`
/// apply; relations, alphas and derivatives are fixed to the static case.
inline DecisionTree grow_static_tree(const StaticTable& table, const LearnerConfig& config) {
  if (table.rows.empty()) throw ArgumentError("cannot grow a tree on an empty table");
  if (table.labels.size() != table.rows.size())
    throw DimensionError("table has " + std::to_string(table.rows.size()) + " rows but " +
                         std::to_string(table.labels.size()) + " labels");
  for (const auto& row : table.rows)
    if (static_cast<int>(row.size()) != table.column_count())
      throw DimensionError("ragged static table");
  for (int l : table.labels)
    if (l < 0 || l >= table.class_count) throw ArgumentError("label out of range");
  config.validate();
  auto cfg = config.normalized();
  std::vector<std::size_t> rows(table.rows.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return detail::grow_static(table, std::move(rows), cfg);
}

inline int classify_static(const DecisionTree& tree, std::span<const double> row,
                           double eps = 0.0) {
  const DecisionTree* node = &tree;
  while (!node->is_leaf()) {
    const auto& n = node->as_node();
    if (n.decision.attribute >= static_cast<int>(row.size()))
      throw DimensionError("row has too few columns for the tree");
    node = compare(row[static_cast<std::size_t>(n.decision.attribute)], n.decision.comparator,
                   n.decision.threshold, eps)
               ? n.satisfied.get()
               : n.unsatisfied.get();
  }
  return node->as_leaf().class_index;
}

/// Each value becomes a two-point constant series, so an `eq` decision at the
/// root interval reads exactly that value.
inline TemporalDataset encode_static_table(const StaticTable& table) {
  TemporalDataset ds;
  ds.series_length = 2;
  ds.attribute_names = default_attribute_names(table.column_count());
  for (int c = 0; c < table.class_count; ++c) ds.class_names.push_back("c" + std::to_string(c));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    std::vector<std::vector<double>> channels;
    for (double v : table.rows[i]) channels.push_back({v, v});
    ds.instances.emplace_back(std::move(channels), table.labels[i]);
  }
  return ds;
}

/// The temporal learner restricted to the static fragment.
inline LearnerConfig static_fragment(LearnerConfig cfg) {
  cfg.relations = {Relation::Eq};
  cfg.alpha_grid = {1.0};
  cfg.max_derivative = 0;
  return cfg;
}

}  // namespace tdt

#endif  // TDT_STATIC_TREE_HPP
