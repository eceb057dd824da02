#ifndef TDT_BASELINES_HPP
#define TDT_BASELINES_HPP

// Comparison methods: per-channel summary features for static trees, and
// 1-NN under ED_I, DTW_I and DTW_D.

#include <bitset>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tdt/core.hpp"
#include "tdt/static_tree.hpp"

namespace tdt {

// ---------------------------------------------------------------------------
// Feature flattening
// ---------------------------------------------------------------------------

/// Bits in order (mean, std, skewness, kurtosis), written "1,1,0,0".
class FeatureMask {
 public:
  FeatureMask(bool mean, bool stddev, bool skew, bool kurt) {
    bits_[0] = mean;
    bits_[1] = stddev;
    bits_[2] = skew;
    bits_[3] = kurt;
    if (bits_.none()) throw ArgumentError("feature mask selects no statistic");
  }

  /// Accepts "1,1,0,0" or "1100".
  static FeatureMask parse(std::string_view s) {
    std::string digits;
    for (char c : s) {
      if (c == ',' || c == ' ') continue;
      if (c != '0' && c != '1') throw FormatError("bad feature mask '" + std::string(s) + "'");
      digits.push_back(c);
    }
    if (digits.size() != 4) throw FormatError("feature mask needs four bits: '" + std::string(s) + "'");
    return {digits[0] == '1', digits[1] == '1', digits[2] == '1', digits[3] == '1'};
  }

  bool test(int k) const { return bits_[static_cast<std::size_t>(k)]; }
  int count() const { return static_cast<int>(bits_.count()); }

  std::string str() const {
    std::string s;
    for (int k = 0; k < 4; ++k) {
      if (k) s += ',';
      s += test(k) ? '1' : '0';
    }
    return s;
  }

 private:
  std::bitset<4> bits_;
};

/// Population moments; a constant channel has skewness and kurtosis 0.
inline std::vector<double> extract_features(const Instance& inst, const FeatureMask& mask) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(inst.channel_count() * mask.count()));
  for (int a = 0; a < inst.channel_count(); ++a) {
    auto ch = inst.channel(a);
    const auto n = static_cast<double>(ch.size());
    double mean = 0.0;
    for (double v : ch) mean += v;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : ch) {
      double d = v - mean;
      m2 += d * d;
      m3 += d * d * d;
      m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const double sd = std::sqrt(m2);
    const bool flat = m2 == 0.0;
    if (mask.test(0)) out.push_back(mean);
    if (mask.test(1)) out.push_back(sd);
    if (mask.test(2)) out.push_back(flat ? 0.0 : m3 / (sd * sd * sd));
    if (mask.test(3)) out.push_back(flat ? 0.0 : m4 / (m2 * m2));
  }
  return out;
}

inline StaticTable feature_table(const TemporalDataset& data, const FeatureMask& mask) {
  StaticTable t;
  t.class_count = data.class_count();
  for (const auto& inst : data.instances) {
    t.rows.push_back(extract_features(inst, mask));
    t.labels.push_back(inst.class_index());
  }
  return t;
}

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

namespace detail {

inline void require_same_shape(const Instance& a, const Instance& b) {
  if (a.channel_count() != b.channel_count() || a.length() != b.length())
    throw DimensionError("instances differ in shape: " + std::to_string(a.channel_count()) + "x" +
                         std::to_string(a.length()) + " vs " + std::to_string(b.channel_count()) +
                         "x" + std::to_string(b.length()));
}

/// Unconstrained DTW over an n x m local-cost function, two-row table.
template <class Cost>
double dtw_accumulate(std::size_t n, std::size_t m, Cost&& cost) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(m + 1, inf), cur(m + 1, inf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = inf;
    for (std::size_t j = 1; j <= m; ++j)
      cur[j] = cost(i - 1, j - 1) + std::min({prev[j - 1], prev[j], cur[j - 1]});
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace detail

/// Sum over channels of the per-channel Euclidean distance.
inline double euclidean_i(const Instance& a, const Instance& b) {
  detail::require_same_shape(a, b);
  double sum = 0.0;
  for (int c = 0; c < a.channel_count(); ++c) {
    auto x = a.channel(c);
    auto y = b.channel(c);
    double s = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) s += (x[t] - y[t]) * (x[t] - y[t]);
    sum += std::sqrt(s);
  }
  return sum;
}

/// Squared-difference local cost, no window, no final root.
inline double dtw(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ArgumentError("dtw of an empty sequence");
  return detail::dtw_accumulate(a.size(), b.size(), [&](std::size_t i, std::size_t j) {
    double d = a[i] - b[j];
    return d * d;
  });
}

inline double dtw_i(const Instance& a, const Instance& b) {
  detail::require_same_shape(a, b);
  double sum = 0.0;
  for (int c = 0; c < a.channel_count(); ++c) sum += dtw(a.channel(c), b.channel(c));
  return sum;
}

/// One shared warping path; local cost is the squared Euclidean distance
/// between the n-dimensional points.
inline double dtw_d(const Instance& a, const Instance& b) {
  detail::require_same_shape(a, b);
  const int n = a.channel_count();
  return detail::dtw_accumulate(static_cast<std::size_t>(a.length()),
                                static_cast<std::size_t>(b.length()),
                                [&](std::size_t i, std::size_t j) {
                                  double s = 0.0;
                                  for (int c = 0; c < n; ++c) {
                                    double d = a.channel(c)[i] - b.channel(c)[j];
                                    s += d * d;
                                  }
                                  return s;
                                });
}

enum class Metric { EuclideanI, DtwI, DtwD };

inline double distance(Metric m, const Instance& a, const Instance& b) {
  switch (m) {
    case Metric::EuclideanI: return euclidean_i(a, b);
    case Metric::DtwI: return dtw_i(a, b);
    case Metric::DtwD: return dtw_d(a, b);
  }
  return 0.0;
}

/// Class of the nearest training instance; ties go to the lowest index.
inline int nn_classify(const TemporalDataset& train, const Instance& query, Metric metric) {
  if (train.empty()) throw ArgumentError("nearest neighbour with an empty training set");
  double best = std::numeric_limits<double>::infinity();
  int cls = train.instances.front().class_index();
  for (const auto& inst : train.instances) {
    double d = distance(metric, inst, query);
    if (d < best) {
      best = d;
      cls = inst.class_index();
    }
  }
  return cls;
}

}  // namespace tdt

#endif  // TDT_BASELINES_HPP
