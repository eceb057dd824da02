#ifndef TDT_CORE_HPP
#define TDT_CORE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tdt {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text (parsers, model files, CLI values).
struct FormatError : Error {
  using Error::Error;
};

/// Shapes that do not line up (channel counts, series lengths).
struct DimensionError : Error {
  using Error::Error;
};

/// An argument outside the operation's domain.
struct ArgumentError : Error {
  using Error::Error;
};

/// A broken internal invariant; indicates a bug rather than bad input.
struct InvariantError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Intervals and relations
// ---------------------------------------------------------------------------

/// Interval [x, y] over the extended point set {0, 1, ..., N}, x < y.
/// Point 0 carries no data; series values sit at points 1..N.
struct Interval {
  int x = 0;
  int y = 1;

  friend constexpr bool operator==(Interval, Interval) = default;
  friend constexpr auto operator<=>(Interval, Interval) = default;

  constexpr bool valid(int series_length) const {
    return 0 <= x && x < y && y <= series_length;
  }
};

inline constexpr Interval kRootInterval{0, 1};

/// The six HS relations, their transposes and the identity `eq`.
/// Enumerator order is the canonical tie-break order used by the learner.
enum class Relation : std::uint8_t {
  A, L, B, E, D, O,
  InvA, InvL, InvB, InvE, InvD, InvO,
  Eq,
};

inline constexpr std::size_t kRelationCount = 13;

inline constexpr std::array<Relation, kRelationCount> kAllRelations = {
    Relation::A,    Relation::L,    Relation::B,    Relation::E,    Relation::D,
    Relation::O,    Relation::InvA, Relation::InvL, Relation::InvB, Relation::InvE,
    Relation::InvD, Relation::InvO, Relation::Eq,
};

constexpr Relation transpose(Relation r) {
  switch (r) {
    case Relation::Eq: return Relation::Eq;
    default: {
      auto v = static_cast<int>(r);
      return static_cast<Relation>(v < 6 ? v + 6 : v - 6);
    }
  }
}

constexpr std::string_view relation_name(Relation r) {
  constexpr std::array<std::string_view, kRelationCount> names = {
      "A",    "L",    "B",    "E",    "D",    "O",   "InvA",
      "InvL", "InvB", "InvE", "InvD", "InvO", "=",
  };
  return names[static_cast<std::size_t>(r)];
}

/// Accepts the rendered names ("A", "InvB", "=") plus "eq".
inline Relation parse_relation(std::string_view s) {
  if (s == "eq") return Relation::Eq;
  for (auto r : kAllRelations)
    if (relation_name(r) == s) return r;
  throw FormatError("unknown interval relation '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Comparators and decisions
// ---------------------------------------------------------------------------

/// Canonical order: <=, =, >.
enum class Comparator : std::uint8_t { LessEq, Equal, Greater };

inline constexpr std::array<Comparator, 3> kAllComparators = {
    Comparator::LessEq, Comparator::Equal, Comparator::Greater};

constexpr std::string_view comparator_symbol(Comparator c) {
  switch (c) {
    case Comparator::LessEq: return "<=";
    case Comparator::Equal: return "=";
    case Comparator::Greater: return ">";
  }
  return "?";
}

/// Symbol of the pointwise complement, used on non-satisfying branches.
constexpr std::string_view negated_symbol(Comparator c) {
  switch (c) {
    case Comparator::LessEq: return ">";
    case Comparator::Equal: return "!=";
    case Comparator::Greater: return "<=";
  }
  return "?";
}

inline Comparator parse_comparator(std::string_view s) {
  if (s == "<=" || s == "le" || s == "leq") return Comparator::LessEq;
  if (s == "=" || s == "eq") return Comparator::Equal;
  if (s == ">" || s == "gt") return Comparator::Greater;
  throw FormatError("unknown comparator '" + std::string(s) + "'");
}

inline bool compare(double value, Comparator c, double threshold, double eps = 0.0) {
  switch (c) {
    case Comparator::LessEq: return value <= threshold;
    case Comparator::Equal: return eps == 0.0 ? value == threshold : std::abs(value - threshold) <= eps;
    case Comparator::Greater: return value > threshold;
  }
  return false;
}

/// <X>(A^z cmp_alpha a), or the modality-free form when relation == Eq.
struct TemporalDecision {
  Relation relation = Relation::Eq;
  int attribute = 0;
  int derivative = 0;
  Comparator comparator = Comparator::LessEq;
  double threshold = 0.0;
  double alpha = 1.0;

  friend bool operator==(const TemporalDecision&, const TemporalDecision&) = default;
};

// ---------------------------------------------------------------------------
// Data
// ---------------------------------------------------------------------------

/// One multivariate series: n channels of N values, row-major by channel.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<std::vector<double>> channels, int class_index)
      : class_index_(class_index) {
    if (channels.empty()) throw DimensionError("instance has no channels");
    n_ = static_cast<int>(channels.size());
    len_ = static_cast<int>(channels.front().size());
    values_.reserve(static_cast<std::size_t>(n_) * static_cast<std::size_t>(len_));
    for (const auto& ch : channels) {
      if (static_cast<int>(ch.size()) != len_)
        throw DimensionError("instance channels have different lengths");
      values_.insert(values_.end(), ch.begin(), ch.end());
    }
  }

  int channel_count() const { return n_; }
  int length() const { return len_; }
  int class_index() const { return class_index_; }
  void set_class_index(int c) { class_index_ = c; }

  std::span<const double> channel(int a) const {
    return {values_.data() + static_cast<std::size_t>(a) * static_cast<std::size_t>(len_),
            static_cast<std::size_t>(len_)};
  }

  /// Keep only the first `len` points of every channel.
  void truncate(int len) {
    if (len >= len_) return;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_) * static_cast<std::size_t>(len));
    for (int a = 0; a < n_; ++a) {
      auto ch = channel(a);
      out.insert(out.end(), ch.begin(), ch.begin() + len);
    }
    values_ = std::move(out);
    len_ = len;
  }

  Interval reference{kRootInterval};

  friend bool operator==(const Instance& l, const Instance& r) {
    return l.n_ == r.n_ && l.len_ == r.len_ && l.class_index_ == r.class_index_ &&
           l.values_ == r.values_ && l.reference == r.reference;
  }

 private:
  int n_ = 0;
  int len_ = 0;
  int class_index_ = 0;
  std::vector<double> values_;
};

struct TemporalDataset {
  std::vector<Instance> instances;
  std::vector<std::string> attribute_names;
  std::vector<std::string> class_names;
  int series_length = 0;

  std::size_t size() const { return instances.size(); }
  bool empty() const { return instances.empty(); }
  int attribute_count() const { return static_cast<int>(attribute_names.size()); }
  int class_count() const { return static_cast<int>(class_names.size()); }

  /// Throws DimensionError / FormatError on the first violation found.
  void validate(bool require_two_classes = true) const {
    if (attribute_names.empty()) throw DimensionError("dataset has no attributes");
    if (series_length < 2) throw DimensionError("series length must be at least 2");
    if (require_two_classes && class_names.size() < 2)
      throw FormatError("dataset needs at least two classes");
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const auto& inst = instances[i];
      if (inst.channel_count() != attribute_count())
        throw DimensionError("instance " + std::to_string(i) + " has " +
                             std::to_string(inst.channel_count()) + " channels, expected " +
                             std::to_string(attribute_count()));
      if (inst.length() != series_length)
        throw DimensionError("instance " + std::to_string(i) + " has length " +
                             std::to_string(inst.length()) + ", expected " +
                             std::to_string(series_length));
      if (inst.class_index() < 0 || inst.class_index() >= class_count())
        throw FormatError("instance " + std::to_string(i) + " has class index out of range");
    }
  }
};

inline std::vector<std::string> default_attribute_names(int n) {
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) names.push_back("var" + std::to_string(a));
  return names;
}

// ---------------------------------------------------------------------------
// Trees
// ---------------------------------------------------------------------------

using ClassCounts = std::vector<std::int64_t>;

/// Index of the largest count; ties go to the lowest index.
inline int majority_class(const ClassCounts& counts) {
  int best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c)
    if (counts[c] > counts[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
  return best;
}

inline std::int64_t total(const ClassCounts& counts) {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

class DecisionTree {
 public:
  struct Leaf {
    int class_index = 0;
    ClassCounts counts;
  };
  struct Node {
    TemporalDecision decision;
    std::unique_ptr<DecisionTree> satisfied;
    std::unique_ptr<DecisionTree> unsatisfied;
  };

  static DecisionTree leaf(ClassCounts counts) {
    DecisionTree t;
    int cls = majority_class(counts);
    t.content_ = Leaf{cls, std::move(counts)};
    return t;
  }

  static DecisionTree node(TemporalDecision d, DecisionTree sat, DecisionTree unsat) {
    DecisionTree t;
    t.content_ = Node{d, std::make_unique<DecisionTree>(std::move(sat)),
                      std::make_unique<DecisionTree>(std::move(unsat))};
    return t;
  }

  DecisionTree() : content_(Leaf{}) {}
  DecisionTree(DecisionTree&&) noexcept = default;
  DecisionTree& operator=(DecisionTree&&) noexcept = default;
  DecisionTree(const DecisionTree& o) : content_(Leaf{}) { *this = o; }
  DecisionTree& operator=(const DecisionTree& o) {
    if (this == &o) return *this;
    if (o.is_leaf()) {
      content_ = o.as_leaf();
    } else {
      const auto& n = o.as_node();
      content_ = Node{n.decision, std::make_unique<DecisionTree>(*n.satisfied),
                      std::make_unique<DecisionTree>(*n.unsatisfied)};
    }
    return *this;
  }

  bool is_leaf() const { return std::holds_alternative<Leaf>(content_); }
  const Leaf& as_leaf() const { return std::get<Leaf>(content_); }
  const Node& as_node() const { return std::get<Node>(content_); }

  std::size_t leaf_count() const {
    return is_leaf() ? 1 : as_node().satisfied->leaf_count() + as_node().unsatisfied->leaf_count();
  }
  std::size_t internal_count() const {
    return is_leaf() ? 0
                     : 1 + as_node().satisfied->internal_count() +
                           as_node().unsatisfied->internal_count();
  }
  std::size_t depth() const {
    return is_leaf() ? 0
                     : 1 + std::max(as_node().satisfied->depth(), as_node().unsatisfied->depth());
  }

  friend bool operator==(const DecisionTree& l, const DecisionTree& r) {
    if (l.is_leaf() != r.is_leaf()) return false;
    if (l.is_leaf())
      return l.as_leaf().class_index == r.as_leaf().class_index &&
             l.as_leaf().counts == r.as_leaf().counts;
    const auto& a = l.as_node();
    const auto& b = r.as_node();
    return a.decision == b.decision && *a.satisfied == *b.satisfied &&
           *a.unsatisfied == *b.unsatisfied;
  }

 private:
  std::variant<Leaf, Node> content_;
};

// ---------------------------------------------------------------------------
// Confusion matrix
// ---------------------------------------------------------------------------

/// q x q counts; row = predicted class, column = true class.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(int q = 0)
      : q_(q), counts_(static_cast<std::size_t>(q) * static_cast<std::size_t>(q), 0) {}

  int size() const { return q_; }
  std::int64_t at(int predicted, int actual) const { return counts_[index(predicted, actual)]; }
  void add(int predicted, int actual, std::int64_t n = 1) { counts_[index(predicted, actual)] += n; }

  std::int64_t total() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
  }
  std::int64_t trace() const {
    std::int64_t t = 0;
    for (int c = 0; c < q_; ++c) t += at(c, c);
    return t;
  }

  ConfusionMatrix& operator+=(const ConfusionMatrix& o) {
    if (o.q_ != q_) throw DimensionError("confusion matrices of different sizes");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += o.counts_[i];
    return *this;
  }
  friend ConfusionMatrix operator+(ConfusionMatrix l, const ConfusionMatrix& r) { return l += r; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::size_t index(int p, int a) const {
    if (p < 0 || p >= q_ || a < 0 || a >= q_) throw DimensionError("class index out of range");
    return static_cast<std::size_t>(p) * static_cast<std::size_t>(q_) + static_cast<std::size_t>(a);
  }
  int q_;
  std::vector<std::int64_t> counts_;
};

// ---------------------------------------------------------------------------
// Learner configuration
// ---------------------------------------------------------------------------

enum class WitnessPolicy : std::uint8_t { LeftmostShortest, FirstFound };

inline std::string_view witness_policy_name(WitnessPolicy p) {
  return p == WitnessPolicy::LeftmostShortest ? "leftmost_shortest" : "first_found";
}

inline WitnessPolicy parse_witness_policy(std::string_view s) {
  if (s == "leftmost_shortest" || s == "leftmost-shortest") return WitnessPolicy::LeftmostShortest;
  if (s == "first_found" || s == "first-found") return WitnessPolicy::FirstFound;
  throw FormatError("unknown witness policy '" + std::string(s) + "'");
}

struct LearnerConfig {
  std::vector<double> alpha_grid{1.0};
  int max_derivative = 0;
  std::vector<Relation> relations{kAllRelations.begin(), kAllRelations.end()};
  std::vector<Comparator> comparators{Comparator::LessEq, Comparator::Greater};
  int min_leaf_size = 2;
  double purity_threshold = 0.0;
  int max_threshold_candidates = 100;
  WitnessPolicy witness_policy = WitnessPolicy::LeftmostShortest;
  /// Absolute tolerance of the `=` comparator.
  double equality_tolerance = 0.0;
  std::uint64_t seed = 0;
  /// Worker threads for split search; results do not depend on it.
  int threads = 1;

  void validate() const {
    if (alpha_grid.empty()) throw FormatError("alpha grid is empty");
    for (double a : alpha_grid)
      if (!(a > 0.0 && a <= 1.0)) throw FormatError("alpha must lie in (0, 1]");
    if (relations.empty()) throw FormatError("relation set is empty");
    if (comparators.empty()) throw FormatError("comparator set is empty");
    if (max_derivative < 0) throw FormatError("max derivative must be non-negative");
    if (min_leaf_size < 1) throw FormatError("min leaf size must be at least 1");
    if (max_threshold_candidates < 1) throw FormatError("threshold cap must be at least 1");
    if (threads < 1) throw FormatError("thread count must be at least 1");
  }

  /// Grid axes in canonical order, duplicates removed.
  LearnerConfig normalized() const {
    LearnerConfig c = *this;
    auto uniq = [](auto& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    uniq(c.alpha_grid);
    uniq(c.relations);
    uniq(c.comparators);
    return c;
  }
};

}  // namespace tdt

#endif  // TDT_CORE_HPP
