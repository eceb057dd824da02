#ifndef TDT_INDUCTION_HPP
#define TDT_INDUCTION_HPP

// Entropy-driven greedy growth of temporal decision trees.
//
// A node's split is chosen by minimizing the size-weighted entropy of the
// (satisfying, non-satisfying) partition over the grid
//   attribute x relation x comparator x threshold x alpha x derivative.
// Ties are broken by that same order, so the search is deterministic no
// matter how the grid is distributed across threads.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <thread>
#include <tuple>
#include <vector>

#include "tdt/core.hpp"
#include "tdt/interval.hpp"

namespace tdt {

/// A split must improve entropy by more than this to be emitted.
inline constexpr double kMinGain = 1e-12;

// ---------------------------------------------------------------------------
// Entropy
// ---------------------------------------------------------------------------

/// Shannon entropy in bits of a class-count vector.
inline double info(std::span<const std::int64_t> counts) {
  std::int64_t n = 0;
  for (auto c : counts) n += c;
  if (n <= 0) throw ArgumentError("entropy of an empty class distribution is undefined");
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log2(p);
  }
  return h;
}

/// Size-weighted mean entropy of the partitions; empty partitions add 0.
inline double info_split(std::int64_t parent_total, std::span<const ClassCounts> partitions) {
  if (parent_total <= 0) throw ArgumentError("split of an empty set");
  double s = 0.0;
  for (const auto& part : partitions) {
    auto n = total(part);
    if (n == 0) continue;
    s += static_cast<double>(n) / static_cast<double>(parent_total) * info(part);
  }
  return s;
}

inline ClassCounts class_counts(std::span<const Instance> instances, int q) {
  ClassCounts counts(static_cast<std::size_t>(q), 0);
  for (const auto& inst : instances) counts[static_cast<std::size_t>(inst.class_index())]++;
  return counts;
}

// ---------------------------------------------------------------------------
// Threshold candidates
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<double> sorted_distinct(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Evenly spaced picks (centered in each of `cap` equal-width index bins).
inline std::vector<double> subsample(std::vector<double> v, int cap) {
  if (static_cast<int>(v.size()) <= cap) return v;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(cap));
  const double step = static_cast<double>(v.size()) / cap;
  for (int j = 0; j < cap; ++j)
    out.push_back(v[static_cast<std::size_t>((j + 0.5) * step)]);
  return out;
}

}  // namespace detail

/// Midpoints between consecutive distinct observed values, at most `cap`.
inline std::vector<double> candidate_thresholds(std::span<const double> values, int cap) {
  auto v = detail::sorted_distinct(values);
  std::vector<double> mids;
  if (v.size() < 2) return mids;
  mids.reserve(v.size() - 1);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) mids.push_back(v[i] + (v[i + 1] - v[i]) / 2.0);
  return detail::subsample(std::move(mids), cap);
}

/// Thresholds for the `=` comparator: the distinct observed values themselves
/// (a midpoint never equals an observation).
inline std::vector<double> equality_thresholds(std::span<const double> values, int cap) {
  auto v = detail::sorted_distinct(values);
  if (v.size() < 2) return {};
  return detail::subsample(std::move(v), cap);
}

inline std::vector<double> thresholds_for(Comparator c, std::span<const double> values, int cap) {
  return c == Comparator::Equal ? equality_thresholds(values, cap)
                                : candidate_thresholds(values, cap);
}

// ---------------------------------------------------------------------------
// Split search
// ---------------------------------------------------------------------------

struct SplitCandidate {
  TemporalDecision decision;
  double split_info = 0.0;
  std::size_t satisfied_count = 0;
  std::size_t unsatisfied_count = 0;
};

/// Canonical grid position; lower wins among equal split_info.
inline auto canonical_key(const TemporalDecision& d) {
  return std::make_tuple(d.attribute, static_cast<int>(d.relation), static_cast<int>(d.comparator),
                         d.threshold, d.alpha, d.derivative);
}

inline bool better_split(const SplitCandidate& a, const SplitCandidate& b) {
  if (a.split_info != b.split_info) return a.split_info < b.split_info;
  return canonical_key(a.decision) < canonical_key(b.decision);
}

namespace detail {

inline int infer_class_count(std::span<const Instance> instances) {
  int q = 0;
  for (const auto& inst : instances) q = std::max(q, inst.class_index() + 1);
  return q;
}

/// Best candidate for one (attribute, derivative) slice of the grid.
inline std::optional<SplitCandidate> best_split_slice(std::span<const Instance> instances,
                                                      const LearnerConfig& cfg, int q,
                                                      int attribute, int z) {
  const int len = instances.front().length();
  if (z >= len) return std::nullopt;

  const auto m = instances.size();
  std::vector<std::vector<double>> derivs;
  derivs.reserve(m);
  std::vector<double> pool;
  for (const auto& inst : instances) {
    derivs.push_back(derivative(inst.channel(attribute), z));
    pool.insert(pool.end(), derivs.back().begin(), derivs.back().end());
  }

  const auto nrel = cfg.relations.size();
  const auto nalpha = cfg.alpha_grid.size();
  const auto uq = static_cast<std::size_t>(q);
  // tally[(rel * nalpha + alpha) * q + class] = satisfying count
  std::vector<std::int64_t> sat(nrel * nalpha * uq);
  const ClassCounts parent = class_counts(instances, q);
  const auto parent_total = static_cast<std::int64_t>(m);

  std::optional<SplitCandidate> best;
  PointCounts counts;
  std::array<ClassCounts, 2> parts{ClassCounts(uq), ClassCounts(uq)};

  for (Comparator cmp : cfg.comparators) {
    for (double thr : thresholds_for(cmp, pool, cfg.max_threshold_candidates)) {
      std::fill(sat.begin(), sat.end(), 0);
      for (std::size_t i = 0; i < m; ++i) {
        counts.assign(derivs[i], cmp, thr, cfg.equality_tolerance);
        const auto& inst = instances[i];
        const auto cls = static_cast<std::size_t>(inst.class_index());
        for (std::size_t r = 0; r < nrel; ++r) {
          for (std::size_t k = 0; k < nalpha; ++k) {
            if (find_witness(counts, inst.reference, cfg.relations[r], len, cfg.alpha_grid[k])
                    .satisfied)
              sat[(r * nalpha + k) * uq + cls]++;
          }
        }
      }
      for (std::size_t r = 0; r < nrel; ++r) {
        for (std::size_t k = 0; k < nalpha; ++k) {
          std::int64_t ns = 0;
          for (std::size_t c = 0; c < uq; ++c) {
            parts[0][c] = sat[(r * nalpha + k) * uq + c];
            parts[1][c] = parent[c] - parts[0][c];
            ns += parts[0][c];
          }
          const auto nu = parent_total - ns;
          if (ns < cfg.min_leaf_size || nu < cfg.min_leaf_size) continue;
          SplitCandidate cand{
              TemporalDecision{cfg.relations[r], attribute, z, cmp, thr, cfg.alpha_grid[k]},
              info_split(parent_total, parts), static_cast<std::size_t>(ns),
              static_cast<std::size_t>(nu)};
          if (!best || better_split(cand, *best)) best = cand;
        }
      }
    }
  }
  return best;
}

}  // namespace detail

/// Minimum-entropy admissible split, or nullopt when none has positive gain.
/// Expects a normalized config (see LearnerConfig::normalized).
inline std::optional<SplitCandidate> best_split(std::span<const Instance> instances,
                                                const LearnerConfig& cfg, int q = 0) {
  if (instances.size() < 2) return std::nullopt;
  if (q <= 0) q = detail::infer_class_count(instances);
  const int n = instances.front().channel_count();

  std::vector<std::pair<int, int>> slices;
  for (int a = 0; a < n; ++a)
    for (int z = 0; z <= cfg.max_derivative; ++z) slices.emplace_back(a, z);

  std::vector<std::optional<SplitCandidate>> results(slices.size());
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), slices.size());
  if (workers <= 1) {
    for (std::size_t s = 0; s < slices.size(); ++s)
      results[s] = detail::best_split_slice(instances, cfg, q, slices[s].first, slices[s].second);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t s = next++; s < slices.size(); s = next++)
          results[s] =
              detail::best_split_slice(instances, cfg, q, slices[s].first, slices[s].second);
      });
    }
  }

  std::optional<SplitCandidate> best;
  for (auto& r : results)
    if (r && (!best || better_split(*r, *best))) best = r;
  if (!best) return std::nullopt;
  const double parent_info = info(class_counts(instances, q));
  if (parent_info - best->split_info <= kMinGain) return std::nullopt;
  return best;
}

// ---------------------------------------------------------------------------
// Tree growth and use
// ---------------------------------------------------------------------------

namespace detail {

inline DecisionTree grow(std::vector<Instance> instances, const LearnerConfig& cfg, int q) {
  ClassCounts counts = class_counts(instances, q);
  if (info(counts) <= cfg.purity_threshold ||
      static_cast<std::int64_t>(instances.size()) < 2 * static_cast<std::int64_t>(cfg.min_leaf_size))
    return DecisionTree::leaf(std::move(counts));
  auto split = best_split(instances, cfg, q);
  if (!split) return DecisionTree::leaf(std::move(counts));
  auto [sat, unsat] =
      split_dataset(instances, split->decision, cfg.witness_policy, cfg.equality_tolerance);
  if (sat.size() != split->satisfied_count || unsat.size() != split->unsatisfied_count)
    throw InvariantError("split search and split semantics disagree on partition sizes");
  instances.clear();
  instances.shrink_to_fit();
  auto left = grow(std::move(sat), cfg, q);
  auto right = grow(std::move(unsat), cfg, q);
  return DecisionTree::node(split->decision, std::move(left), std::move(right));
}

}  // namespace detail

/// Every instance starts on the root reference interval [0, 1].
inline DecisionTree grow_tree(const TemporalDataset& data, const LearnerConfig& config) {
  if (data.empty()) throw ArgumentError("cannot grow a tree on an empty dataset");
  data.validate(false);
  config.validate();
  auto cfg = config.normalized();
  std::vector<Instance> instances = data.instances;
  for (auto& inst : instances) inst.reference = kRootInterval;
  return detail::grow(std::move(instances), cfg, data.class_count());
}

struct Prediction {
  int class_index = 0;
  ClassCounts counts;
};

/// Routes a copy of `instance` from [0, 1]: satisfying moves it to the
/// witness and goes left, otherwise right.
inline Prediction classify(const DecisionTree& tree, const Instance& instance,
                           WitnessPolicy policy = WitnessPolicy::LeftmostShortest,
                           double eps = 0.0) {
  Instance probe = instance;
  probe.reference = kRootInterval;
  const DecisionTree* node = &tree;
  while (!node->is_leaf()) {
    const auto& n = node->as_node();
    if (n.decision.derivative >= probe.length())
      throw DimensionError("instance too short for a derivative of degree " +
                           std::to_string(n.decision.derivative));
    auto res = check_decision(probe, n.decision, policy, eps);
    if (res.satisfied) {
      if (res.witness) probe.reference = *res.witness;
      node = n.satisfied.get();
    } else {
      node = n.unsatisfied.get();
    }
  }
  return {node->as_leaf().class_index, node->as_leaf().counts};
}

namespace detail {

inline ConfusionMatrix theta(const DecisionTree& tree, std::span<const Instance> instances, int q,
                             WitnessPolicy policy, double eps) {
  if (tree.is_leaf()) {
    ConfusionMatrix m(q);
    for (const auto& inst : instances) m.add(tree.as_leaf().class_index, inst.class_index());
    return m;
  }
  const auto& n = tree.as_node();
  auto [sat, unsat] = split_dataset(instances, n.decision, policy, eps);
  return theta(*n.satisfied, sat, q, policy, eps) + theta(*n.unsatisfied, unsat, q, policy, eps);
}

}  // namespace detail

/// Confusion matrix built bottom-up: leaves contribute their block, internal
/// nodes sum their children's.
inline ConfusionMatrix confusion(const DecisionTree& tree, const TemporalDataset& data,
                                 WitnessPolicy policy = WitnessPolicy::LeftmostShortest,
                                 double eps = 0.0) {
  std::vector<Instance> instances = data.instances;
  for (auto& inst : instances) inst.reference = kRootInterval;
  return detail::theta(tree, instances, data.class_count(), policy, eps);
}

}  // namespace tdt

#endif  // TDT_INDUCTION_HPP
