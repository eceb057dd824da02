#ifndef TDT_INTERVAL_HPP
#define TDT_INTERVAL_HPP

// Allen-relation algebra and the satisfaction engine for temporal decisions.
//
// Intervals live on the extended domain {0, ..., N}. A channel value a_t sits
// at point t (1 <= t <= N); the z-th derivative is defined on 1..N-z. An
// interval is evaluated on its data-bearing points clipped to that range.

#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tdt/core.hpp"

namespace tdt {

/// True iff `j` stands in relation `r` to `i` (i R_r j).
constexpr bool allen_related(Interval i, Interval j, Relation r) {
  switch (r) {
    case Relation::A: return i.y == j.x;
    case Relation::L: return i.y < j.x;
    case Relation::B: return i.x == j.x && j.y < i.y;
    case Relation::E: return i.y == j.y && i.x < j.x;
    case Relation::D: return i.x < j.x && j.y < i.y;
    case Relation::O: return i.x < j.x && j.x < i.y && i.y < j.y;
    case Relation::InvA:
    case Relation::InvL:
    case Relation::InvB:
    case Relation::InvE:
    case Relation::InvD:
    case Relation::InvO: return allen_related(j, i, transpose(r));
    case Relation::Eq: return i == j;
  }
  return false;
}

/// Visits every interval j over {0..N} with allen_related(i, j, r), ascending
/// by (x, y). `visit` returns true to stop early; the function then returns
/// true as well.
template <class Visitor>
bool for_each_successor(Interval i, Relation r, int n, Visitor&& visit) {
  const int x = i.x;
  const int y = i.y;
  switch (r) {
    case Relation::A:
      for (int b = y + 1; b <= n; ++b)
        if (visit(Interval{y, b})) return true;
      return false;
    case Relation::L:
      for (int a = y + 1; a < n; ++a)
        for (int b = a + 1; b <= n; ++b)
          if (visit(Interval{a, b})) return true;
      return false;
    case Relation::B:
      for (int b = x + 1; b < y; ++b)
        if (visit(Interval{x, b})) return true;
      return false;
    case Relation::E:
      for (int a = x + 1; a < y; ++a)
        if (visit(Interval{a, y})) return true;
      return false;
    case Relation::D:
      for (int a = x + 1; a < y; ++a)
        for (int b = a + 1; b < y; ++b)
          if (visit(Interval{a, b})) return true;
      return false;
    case Relation::O:
      for (int a = x + 1; a < y; ++a)
        for (int b = y + 1; b <= n; ++b)
          if (visit(Interval{a, b})) return true;
      return false;
    case Relation::InvA:
      for (int a = 0; a < x; ++a)
        if (visit(Interval{a, x})) return true;
      return false;
    case Relation::InvL:
      for (int a = 0; a < x; ++a)
        for (int b = a + 1; b < x; ++b)
          if (visit(Interval{a, b})) return true;
      return false;
    case Relation::InvB:
      for (int b = y + 1; b <= n; ++b)
        if (visit(Interval{x, b})) return true;
      return false;
    case Relation::InvE:
      for (int a = 0; a < x; ++a)
        if (visit(Interval{a, y})) return true;
      return false;
    case Relation::InvD:
      for (int a = 0; a < x; ++a)
        for (int b = y + 1; b <= n; ++b)
          if (visit(Interval{a, b})) return true;
      return false;
    case Relation::InvO:
      for (int a = 0; a < x; ++a)
        for (int b = x + 1; b < y; ++b)
          if (visit(Interval{a, b})) return true;
      return false;
    case Relation::Eq:
      return visit(i);
  }
  return false;
}

inline std::vector<Interval> successors(Interval i, Relation r, int n) {
  std::vector<Interval> out;
  for_each_successor(i, r, n, [&](Interval j) {
    out.push_back(j);
    return false;
  });
  return out;
}

/// z-fold forward difference; z = 0 is the identity.
inline std::vector<double> derivative(std::span<const double> channel, int z) {
  if (z < 0 || z >= static_cast<int>(channel.size()))
    throw ArgumentError("derivative degree " + std::to_string(z) + " invalid for length " +
                        std::to_string(channel.size()));
  std::vector<double> v(channel.begin(), channel.end());
  for (int k = 0; k < z; ++k) {
    for (std::size_t t = 0; t + 1 < v.size(); ++t) v[t] = v[t + 1] - v[t];
    v.pop_back();
  }
  return v;
}

/// ceil(alpha * points), guarded against representation noise in alpha
/// (0.8 * 30 must give 24, not 25).
inline int required_points(double alpha, int points) {
  auto need = static_cast<int>(std::ceil(alpha * points - 1e-9));
  return std::clamp(need, 1, points);
}

/// Clipped data-bearing point range [lo, hi] of `iv` for a sequence whose
/// values occupy points 1..len; lo > hi when empty.
constexpr std::pair<int, int> data_points(Interval iv, int len) {
  return {std::max(iv.x, 1), std::min(iv.y, len)};
}

/// `values` is A^z, its entries sitting at points 1..values.size().
inline bool holds_on(std::span<const double> values, Interval iv, Comparator cmp,
                     double threshold, double alpha, double eps = 0.0) {
  auto [lo, hi] = data_points(iv, static_cast<int>(values.size()));
  if (lo > hi) return false;
  int count = 0;
  for (int t = lo; t <= hi; ++t)
    if (compare(values[static_cast<std::size_t>(t - 1)], cmp, threshold, eps)) ++count;
  return count >= required_points(alpha, hi - lo + 1);
}

/// Raw-channel form: differentiates `z` times first.
inline bool holds_on(std::span<const double> channel, Interval iv, Comparator cmp,
                     double threshold, double alpha, int z, double eps) {
  auto d = derivative(channel, z);
  return holds_on(d, iv, cmp, threshold, alpha, eps);
}

/// Prefix counts of the points of A^z satisfying `cmp threshold`; answers
/// alpha-relaxed interval queries in O(1).
class PointCounts {
 public:
  PointCounts() = default;
  PointCounts(std::span<const double> values, Comparator cmp, double threshold, double eps = 0.0) {
    assign(values, cmp, threshold, eps);
  }

  void assign(std::span<const double> values, Comparator cmp, double threshold, double eps = 0.0) {
    len_ = static_cast<int>(values.size());
    prefix_.assign(values.size() + 1, 0);
    for (std::size_t t = 0; t < values.size(); ++t)
      prefix_[t + 1] = prefix_[t] + (compare(values[t], cmp, threshold, eps) ? 1 : 0);
  }

  bool holds(Interval iv, double alpha) const {
    auto [lo, hi] = data_points(iv, len_);
    if (lo > hi) return false;
    int count = prefix_[static_cast<std::size_t>(hi)] - prefix_[static_cast<std::size_t>(lo - 1)];
    return count >= required_points(alpha, hi - lo + 1);
  }

 private:
  int len_ = 0;
  std::vector<int> prefix_;
};

struct WitnessResult {
  bool satisfied = false;
  std::optional<Interval> witness;
};

/// Satisfaction search from reference interval `ref` given prepared counts.
/// Both witness policies resolve to the first interval in (x, y) order.
inline WitnessResult find_witness(const PointCounts& counts, Interval ref, Relation r, int n,
                                  double alpha, WitnessPolicy /*policy*/ = WitnessPolicy::LeftmostShortest) {
  if (r == Relation::Eq) return {counts.holds(ref, alpha), std::nullopt};
  WitnessResult res;
  for_each_successor(ref, r, n, [&](Interval j) {
    if (!counts.holds(j, alpha)) return false;
    res.satisfied = true;
    res.witness = j;
    return true;
  });
  return res;
}

inline WitnessResult check_decision(const Instance& inst, const TemporalDecision& d,
                                    WitnessPolicy policy = WitnessPolicy::LeftmostShortest,
                                    double eps = 0.0) {
  if (d.attribute < 0 || d.attribute >= inst.channel_count())
    throw DimensionError("decision attribute " + std::to_string(d.attribute) +
                         " out of range for instance with " +
                         std::to_string(inst.channel_count()) + " channels");
  auto values = derivative(inst.channel(d.attribute), d.derivative);
  PointCounts counts(values, d.comparator, d.threshold, eps);
  return find_witness(counts, inst.reference, d.relation, inst.length(), d.alpha, policy);
}

/// Members of the first list satisfy `d` and stand on their witness interval;
/// members of the second keep their reference interval.
inline std::pair<std::vector<Instance>, std::vector<Instance>> split_dataset(
    std::span<const Instance> instances, const TemporalDecision& d,
    WitnessPolicy policy = WitnessPolicy::LeftmostShortest, double eps = 0.0) {
  std::pair<std::vector<Instance>, std::vector<Instance>> out;
  for (const auto& inst : instances) {
    auto res = check_decision(inst, d, policy, eps);
    if (res.satisfied) {
      auto& moved = out.first.emplace_back(inst);
      if (res.witness) moved.reference = *res.witness;
    } else {
      out.second.push_back(inst);
    }
  }
  return out;
}

}  // namespace tdt

#endif  // TDT_INTERVAL_HPP
