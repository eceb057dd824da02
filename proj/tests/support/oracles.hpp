#ifndef TDT_TESTS_ORACLES_HPP
#define TDT_TESTS_ORACLES_HPP

// Brute-force reference implementations and random generators shared by the
// unit tests and the acceptance checks. Nothing here calls into the library's
// interval, search or distance code; only the plain data types are shared.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "tdt/core.hpp"

namespace oracle {

using tdt::Comparator;
using tdt::Instance;
using tdt::Interval;
using tdt::Relation;
using tdt::TemporalDataset;
using tdt::TemporalDecision;

// Relation definitions written out endpoint by endpoint, inverses included.
inline bool related(Interval i, Interval j, Relation r) {
  const int x = i.x, y = i.y, a = j.x, b = j.y;
  switch (r) {
    case Relation::A: return y == a;
    case Relation::L: return y < a;
    case Relation::B: return x == a && b < y;
    case Relation::E: return y == b && x < a;
    case Relation::D: return x < a && b < y;
    case Relation::O: return x < a && a < y && y < b;
    case Relation::InvA: return b == x;
    case Relation::InvL: return b < x;
    case Relation::InvB: return a == x && y < b;
    case Relation::InvE: return b == y && a < x;
    case Relation::InvD: return a < x && y < b;
    case Relation::InvO: return a < x && x < b && b < y;
    case Relation::Eq: return x == a && y == b;
  }
  return false;
}

/// All [x, y] with 0 <= x < y <= n, in (x, y) order.
inline std::vector<Interval> all_intervals(int n) {
  std::vector<Interval> out;
  for (int x = 0; x <= n; ++x)
    for (int y = x + 1; y <= n; ++y) out.push_back({x, y});
  return out;
}

inline std::vector<double> derivative(std::vector<double> v, int z) {
  if (z == 0) return v;
  std::vector<double> d;
  for (std::size_t t = 1; t < v.size(); ++t) d.push_back(v[t] - v[t - 1]);
  return derivative(d, z - 1);
}

inline bool satisfies(double v, Comparator c, double thr) {
  if (c == Comparator::LessEq) return v <= thr;
  if (c == Comparator::Equal) return v == thr;
  return v > thr;
}

/// Point t (1-based) carries values[t-1]; other points of the interval carry
/// nothing. Needs count >= alpha * |points|.
inline bool holds(const std::vector<double>& values, Interval iv, Comparator c, double thr,
                  double alpha) {
  int points = 0, good = 0;
  for (int t = iv.x; t <= iv.y; ++t) {
    if (t < 1 || t > static_cast<int>(values.size())) continue;
    ++points;
    if (satisfies(values[static_cast<std::size_t>(t - 1)], c, thr)) ++good;
  }
  if (points == 0) return false;
  return good >= alpha * points - 1e-9;
}

inline std::vector<double> channel_of(const Instance& inst, int a) {
  auto s = inst.channel(a);
  return {s.begin(), s.end()};
}

struct Outcome {
  bool satisfied = false;
  std::optional<Interval> witness;
};

/// First interval (in (x, y) order over the whole domain) that is related to
/// the reference and makes the condition hold.
inline Outcome check(const Instance& inst, const TemporalDecision& d) {
  auto values = derivative(channel_of(inst, d.attribute), d.derivative);
  if (d.relation == Relation::Eq)
    return {holds(values, inst.reference, d.comparator, d.threshold, d.alpha), std::nullopt};
  for (auto j : all_intervals(inst.length()))
    if (related(inst.reference, j, d.relation) &&
        holds(values, j, d.comparator, d.threshold, d.alpha))
      return {true, j};
  return {};
}

inline std::pair<std::vector<Instance>, std::vector<Instance>> split(
    const std::vector<Instance>& xs, const TemporalDecision& d) {
  std::pair<std::vector<Instance>, std::vector<Instance>> out;
  for (const auto& inst : xs) {
    auto o = check(inst, d);
    if (o.satisfied) {
      Instance moved = inst;
      if (o.witness) moved.reference = *o.witness;
      out.first.push_back(moved);
    } else {
      out.second.push_back(inst);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Entropy and exhaustive split search
// ---------------------------------------------------------------------------

inline double entropy(const std::vector<std::int64_t>& counts) {
  double n = 0.0;
  for (auto c : counts) n += static_cast<double>(c);
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

inline std::vector<std::int64_t> tally(const std::vector<Instance>& xs, int q) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(q), 0);
  for (const auto& x : xs) c[static_cast<std::size_t>(x.class_index())]++;
  return c;
}

inline double weighted_entropy(const std::vector<Instance>& l, const std::vector<Instance>& r,
                               int q) {
  const double n = static_cast<double>(l.size() + r.size());
  double s = 0.0;
  if (!l.empty()) s += static_cast<double>(l.size()) / n * entropy(tally(l, q));
  if (!r.empty()) s += static_cast<double>(r.size()) / n * entropy(tally(r, q));
  return s;
}

/// Midpoints a + (b - a) / 2 of neighbouring distinct values; for `=` the
/// distinct values themselves. No cap: callers keep the pool small.
inline std::vector<double> thresholds(std::vector<double> pool, Comparator c) {
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (pool.size() < 2) return {};
  if (c == Comparator::Equal) return pool;
  std::vector<double> mids;
  for (std::size_t k = 0; k + 1 < pool.size(); ++k)
    mids.push_back(pool[k] + (pool[k + 1] - pool[k]) / 2.0);
  return mids;
}

struct Split {
  TemporalDecision decision;
  double info = 0.0;
  std::size_t left = 0, right = 0;
};

inline auto key(const TemporalDecision& d) {
  return std::make_tuple(d.attribute, static_cast<int>(d.relation), static_cast<int>(d.comparator),
                         d.threshold, d.alpha, d.derivative);
}

/// Exhaustive search over every grid point. Candidates violating the leaf
/// size are skipped; the result needs a gain above 1e-12.
inline std::optional<Split> best_split(const std::vector<Instance>& xs,
                                       const tdt::LearnerConfig& cfg, int q) {
  if (xs.size() < 2) return std::nullopt;
  const int n = xs.front().channel_count();
  const int len = xs.front().length();
  std::optional<Split> best;
  for (int a = 0; a < n; ++a) {
    for (int z = 0; z <= cfg.max_derivative && z < len; ++z) {
      std::vector<double> pool;
      for (const auto& x : xs)
        for (double v : derivative(channel_of(x, a), z)) pool.push_back(v);
      for (auto rel : cfg.relations)
        for (auto cmp : cfg.comparators)
          for (double thr : thresholds(pool, cmp))
            for (double alpha : cfg.alpha_grid) {
              TemporalDecision d{rel, a, z, cmp, thr, alpha};
              auto [l, r] = split(xs, d);
              if (static_cast<int>(l.size()) < cfg.min_leaf_size ||
                  static_cast<int>(r.size()) < cfg.min_leaf_size)
                continue;
              Split s{d, weighted_entropy(l, r, q), l.size(), r.size()};
              if (!best || s.info < best->info ||
                  (s.info == best->info && key(s.decision) < key(best->decision)))
                best = s;
            }
    }
  }
  if (best && entropy(tally(xs, q)) - best->info <= 1e-12) return std::nullopt;
  return best;
}

/// Faster exhaustive search for larger grids: the per-instance satisfaction
/// of every (relation, alpha) is read off a table of all intervals instead
/// of re-running `check` per candidate. Same semantics as best_split.
inline std::optional<Split> best_split_tabled(const std::vector<Instance>& xs,
                                              const tdt::LearnerConfig& cfg, int q) {
  if (xs.size() < 2) return std::nullopt;
  const int n = xs.front().channel_count();
  const int len = xs.front().length();
  const auto ivs = all_intervals(len);
  std::optional<Split> best;
  const double parent = entropy(tally(xs, q));
  for (int a = 0; a < n; ++a) {
    for (int z = 0; z <= cfg.max_derivative && z < len; ++z) {
      std::vector<std::vector<double>> ders;
      std::vector<double> pool;
      for (const auto& x : xs) {
        ders.push_back(derivative(channel_of(x, a), z));
        pool.insert(pool.end(), ders.back().begin(), ders.back().end());
      }
      for (auto cmp : cfg.comparators) {
        for (double thr : thresholds(pool, cmp)) {
          for (double alpha : cfg.alpha_grid) {
            // good[i][k]: does interval k hold for instance i
            std::vector<std::vector<char>> good(xs.size(), std::vector<char>(ivs.size()));
            for (std::size_t i = 0; i < xs.size(); ++i)
              for (std::size_t k = 0; k < ivs.size(); ++k)
                good[i][k] = holds(ders[i], ivs[k], cmp, thr, alpha);
            for (auto rel : cfg.relations) {
              std::vector<std::int64_t> lc(static_cast<std::size_t>(q), 0), rc = lc;
              std::size_t nl = 0;
              for (std::size_t i = 0; i < xs.size(); ++i) {
                bool sat = false;
                for (std::size_t k = 0; k < ivs.size() && !sat; ++k)
                  sat = good[i][k] && related(xs[i].reference, ivs[k], rel);
                auto c = static_cast<std::size_t>(xs[i].class_index());
                if (sat) {
                  lc[c]++;
                  ++nl;
                } else {
                  rc[c]++;
                }
              }
              const std::size_t nr = xs.size() - nl;
              if (static_cast<int>(nl) < cfg.min_leaf_size || static_cast<int>(nr) < cfg.min_leaf_size)
                continue;
              const double tot = static_cast<double>(xs.size());
              double info = 0.0;
              if (nl) info += static_cast<double>(nl) / tot * entropy(lc);
              if (nr) info += static_cast<double>(nr) / tot * entropy(rc);
              TemporalDecision d{rel, a, z, cmp, thr, alpha};
              if (!best || info < best->info ||
                  (info == best->info && key(d) < key(best->decision)))
                best = Split{d, info, nl, nr};
            }
          }
        }
      }
    }
  }
  if (best && parent - best->info <= 1e-12) return std::nullopt;
  return best;
}

// ---------------------------------------------------------------------------
// DTW by warping-path enumeration
// ---------------------------------------------------------------------------

/// Minimum over every monotone, continuous path from (0,0) to (n-1,m-1) of
/// the summed local cost.
inline double dtw_paths(std::size_t n, std::size_t m,
                        const std::function<double(std::size_t, std::size_t)>& cost) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j,
                                                                  double acc) {
    acc += cost(i, j);
    if (i == n - 1 && j == m - 1) {
      best = std::min(best, acc);
      return;
    }
    if (i + 1 < n) walk(i + 1, j, acc);
    if (j + 1 < m) walk(i, j + 1, acc);
    if (i + 1 < n && j + 1 < m) walk(i + 1, j + 1, acc);
  };
  walk(0, 0, 0.0);
  return best;
}

inline double dtw(const std::vector<double>& a, const std::vector<double>& b) {
  return dtw_paths(a.size(), b.size(), [&](std::size_t i, std::size_t j) {
    return (a[i] - b[j]) * (a[i] - b[j]);
  });
}

inline double dtw_d(const Instance& a, const Instance& b) {
  return dtw_paths(static_cast<std::size_t>(a.length()), static_cast<std::size_t>(b.length()),
                   [&](std::size_t i, std::size_t j) {
                     double s = 0.0;
                     for (int c = 0; c < a.channel_count(); ++c) {
                       double d = a.channel(c)[i] - b.channel(c)[j];
                       s += d * d;
                     }
                     return s;
                   });
}

// ---------------------------------------------------------------------------
// Random inputs
// ---------------------------------------------------------------------------

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  /// Values are small integers or one-decimal reals so ties and repeated
  /// values are common.
  double value(bool coarse) {
    return coarse ? static_cast<double>(uniform(-3, 3)) : std::round(real(-5.0, 5.0) * 10.0) / 10.0;
  }

  Interval interval(int n) {
    int x = uniform(0, n - 1);
    int y = uniform(x + 1, n);
    return {x, y};
  }

  TemporalDataset dataset(int m, int n, int len, int q, bool coarse) {
    TemporalDataset ds;
    ds.series_length = len;
    ds.attribute_names = tdt::default_attribute_names(n);
    for (int c = 0; c < q; ++c) ds.class_names.push_back("k" + std::to_string(c));
    for (int i = 0; i < m; ++i) {
      std::vector<std::vector<double>> ch(static_cast<std::size_t>(n));
      for (auto& s : ch)
        for (int t = 0; t < len; ++t) s.push_back(value(coarse));
      // every class appears when m >= q
      int cls = i < q ? i : uniform(0, q - 1);
      ds.instances.emplace_back(std::move(ch), cls);
    }
    return ds;
  }

  TemporalDecision decision(int n, int len, int max_z) {
    TemporalDecision d;
    d.relation = tdt::kAllRelations[static_cast<std::size_t>(uniform(0, 12))];
    d.attribute = uniform(0, n - 1);
    d.derivative = uniform(0, std::min(max_z, len - 1));
    d.comparator = tdt::kAllComparators[static_cast<std::size_t>(uniform(0, 2))];
    d.threshold = d.comparator == Comparator::Equal ? value(true) : value(coin()) + 0.05 * uniform(-1, 1);
    static constexpr double alphas[] = {0.3, 0.5, 0.6, 0.75, 0.8, 1.0};
    d.alpha = alphas[uniform(0, 5)];
    return d;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle

#endif  // TDT_TESTS_ORACLES_HPP
