#ifndef TDT_MODEL_HPP
#define TDT_MODEL_HPP

// Versioned plain-text model files.
//
//   tdt-model 1
//   series_length 30
//   attributes 2
//   var0
//   var1
//   classes 2
//   yes
//   no
//   alpha 0.6
//   ...                          (remaining config keys)
//   tree
//   node L 1 0 <= -2.756591 0.6  (relation attribute z comparator threshold alpha)
//   leaf 0 6 0                   (class, then per-class counts)
//   leaf 1 0 4
//   end
//
// Reals are written in shortest round-trip form, so load followed by save
// reproduces the file byte for byte.

#include <sstream>
#include <string>
#include <vector>

#include "tdt/core.hpp"
#include "tdt/dataio.hpp"
#include "tdt/induction.hpp"
#include "tdt/render.hpp"

namespace tdt {

inline constexpr int kModelFormatVersion = 1;

struct Model {
  DecisionTree tree;
  std::vector<std::string> attribute_names;
  std::vector<std::string> class_names;
  int series_length = 0;
  LearnerConfig config;

  TreeNames names() const { return {attribute_names, class_names}; }

  RenderOptions render_options() const {
    RenderOptions opt;
    if (config.alpha_grid.size() == 1) opt.default_alpha = config.alpha_grid.front();
    return opt;
  }

  /// Throws DimensionError when `data` does not have the training shape.
  void check_shape(const TemporalDataset& data) const {
    if (data.attribute_count() != static_cast<int>(attribute_names.size()))
      throw DimensionError("data has " + std::to_string(data.attribute_count()) +
                           " channels but the model was trained on " +
                           std::to_string(attribute_names.size()));
    if (data.series_length != series_length)
      throw DimensionError("data has series length " + std::to_string(data.series_length) +
                           " but the model was trained on length " + std::to_string(series_length));
  }

  Prediction predict(const Instance& inst) const {
    return classify(tree, inst, config.witness_policy, config.equality_tolerance);
  }
};

namespace detail {

inline std::string join_reals(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_real(v[i]);
  return s;
}

inline void write_tree(const DecisionTree& t, std::string& out) {
  if (t.is_leaf()) {
    out += "leaf " + std::to_string(t.as_leaf().class_index);
    for (auto c : t.as_leaf().counts) out += " " + std::to_string(c);
    out += "\n";
    return;
  }
  const auto& n = t.as_node();
  const auto& d = n.decision;
  out += "node " + std::string(relation_name(d.relation)) + " " + std::to_string(d.attribute) + " " +
         std::to_string(d.derivative) + " " + std::string(comparator_symbol(d.comparator)) + " " +
         format_real(d.threshold) + " " + format_real(d.alpha) + "\n";
  write_tree(*n.satisfied, out);
  write_tree(*n.unsatisfied, out);
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : lines_(lines_of(text)) {}

  std::string_view next(const char* what) {
    if (pos_ >= lines_.size()) throw FormatError(std::string("model file ends before ") + what);
    return lines_[pos_++];
  }
  std::size_t line_number() const { return pos_; }
  bool done() const {
    for (auto p = pos_; p < lines_.size(); ++p)
      if (!lines_[p].empty()) return false;
    return true;
  }

  /// "key value..." with the expected key.
  std::istringstream keyed(const char* key) {
    auto line = next(key);
    std::istringstream is{std::string(line)};
    std::string k;
    is >> k;
    if (k != key) fail(std::string("expected '") + key + "', found '" + k + "'");
    return is;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw FormatError("model file line " + std::to_string(pos_) + ": " + msg);
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
};

template <class T>
T read_value(std::istringstream& is, LineReader& r, const char* what) {
  T v{};
  if (!(is >> v)) r.fail(std::string("bad ") + what);
  return v;
}

inline double read_real(std::istringstream& is, LineReader& r, const char* what) {
  std::string tok;
  double v = 0.0;
  if (!(is >> tok) || !parse_real(tok, v)) r.fail(std::string("bad ") + what);
  return v;
}

inline DecisionTree read_tree(LineReader& r, int q, int n, int depth = 0) {
  if (depth > 100000) r.fail("tree too deep");
  auto line = r.next("tree end");
  std::istringstream is{std::string(line)};
  std::string kind;
  is >> kind;
  if (kind == "leaf") {
    int cls = read_value<int>(is, r, "leaf class");
    ClassCounts counts;
    for (int c = 0; c < q; ++c) counts.push_back(read_value<std::int64_t>(is, r, "leaf count"));
    if (cls < 0 || cls >= q) r.fail("leaf class out of range");
    auto leaf = DecisionTree::leaf(std::move(counts));
    if (leaf.as_leaf().class_index != cls && total(leaf.as_leaf().counts) > 0)
      r.fail("leaf class is not the majority of its counts");
    return leaf;
  }
  if (kind != "node") r.fail("expected 'node' or 'leaf', found '" + kind + "'");
  TemporalDecision d;
  std::string rel, cmp;
  is >> rel;
  d.relation = parse_relation(rel);
  d.attribute = read_value<int>(is, r, "attribute");
  d.derivative = read_value<int>(is, r, "derivative");
  is >> cmp;
  d.comparator = parse_comparator(cmp);
  d.threshold = read_real(is, r, "threshold");
  d.alpha = read_real(is, r, "alpha");
  if (d.attribute < 0 || d.attribute >= n) r.fail("attribute out of range");
  if (d.derivative < 0) r.fail("negative derivative");
  if (!(d.alpha > 0.0 && d.alpha <= 1.0)) r.fail("alpha out of (0, 1]");
  auto sat = read_tree(r, q, n, depth + 1);
  auto unsat = read_tree(r, q, n, depth + 1);
  return DecisionTree::node(d, std::move(sat), std::move(unsat));
}

}  // namespace detail

inline std::string save_model(const Model& m) {
  std::string out = "tdt-model " + std::to_string(kModelFormatVersion) + "\n";
  out += "series_length " + std::to_string(m.series_length) + "\n";
  out += "attributes " + std::to_string(m.attribute_names.size()) + "\n";
  for (const auto& a : m.attribute_names) out += a + "\n";
  out += "classes " + std::to_string(m.class_names.size()) + "\n";
  for (const auto& c : m.class_names) out += c + "\n";
  const auto& c = m.config;
  out += "alpha " + detail::join_reals(c.alpha_grid) + "\n";
  out += "max_derivative " + std::to_string(c.max_derivative) + "\n";
  out += "relations";
  for (auto r : c.relations) out += " " + std::string(relation_name(r));
  out += "\ncomparators";
  for (auto k : c.comparators) out += " " + std::string(comparator_symbol(k));
  out += "\nmin_leaf_size " + std::to_string(c.min_leaf_size) + "\n";
  out += "purity_threshold " + format_real(c.purity_threshold) + "\n";
  out += "max_threshold_candidates " + std::to_string(c.max_threshold_candidates) + "\n";
  out += "witness_policy " + std::string(witness_policy_name(c.witness_policy)) + "\n";
  out += "equality_tolerance " + format_real(c.equality_tolerance) + "\n";
  out += "seed " + std::to_string(c.seed) + "\n";
  out += "tree\n";
  detail::write_tree(m.tree, out);
  out += "end\n";
  return out;
}

inline Model load_model(std::string_view text) {
  detail::LineReader r(text);
  Model m;
  {
    auto is = r.keyed("tdt-model");
    int version = detail::read_value<int>(is, r, "version");
    if (version != kModelFormatVersion)
      r.fail("unsupported model format version " + std::to_string(version) + " (expected " +
             std::to_string(kModelFormatVersion) + ")");
  }
  {
    auto is = r.keyed("series_length");
    m.series_length = detail::read_value<int>(is, r, "series length");
    if (m.series_length < 2) r.fail("series length must be at least 2");
  }
  auto read_names = [&](const char* key) {
    auto is = r.keyed(key);
    int count = detail::read_value<int>(is, r, "count");
    if (count < 1 || count > 1000000) r.fail(std::string("bad ") + key + " count");
    std::vector<std::string> names;
    for (int k = 0; k < count; ++k) names.emplace_back(r.next(key));
    return names;
  };
  m.attribute_names = read_names("attributes");
  m.class_names = read_names("classes");

  auto& c = m.config;
  {
    auto is = r.keyed("alpha");
    c.alpha_grid.clear();
    std::string tok;
    while (is >> tok) {
      double v = 0.0;
      if (!detail::parse_real(tok, v)) r.fail("bad alpha");
      c.alpha_grid.push_back(v);
    }
  }
  {
    auto is = r.keyed("max_derivative");
    c.max_derivative = detail::read_value<int>(is, r, "max derivative");
  }
  {
    auto is = r.keyed("relations");
    c.relations.clear();
    std::string tok;
    while (is >> tok) c.relations.push_back(parse_relation(tok));
  }
  {
    auto is = r.keyed("comparators");
    c.comparators.clear();
    std::string tok;
    while (is >> tok) c.comparators.push_back(parse_comparator(tok));
  }
  {
    auto is = r.keyed("min_leaf_size");
    c.min_leaf_size = detail::read_value<int>(is, r, "min leaf size");
  }
  {
    auto is = r.keyed("purity_threshold");
    c.purity_threshold = detail::read_real(is, r, "purity threshold");
  }
  {
    auto is = r.keyed("max_threshold_candidates");
    c.max_threshold_candidates = detail::read_value<int>(is, r, "threshold cap");
  }
  {
    auto is = r.keyed("witness_policy");
    std::string tok;
    is >> tok;
    c.witness_policy = parse_witness_policy(tok);
  }
  {
    auto is = r.keyed("equality_tolerance");
    c.equality_tolerance = detail::read_real(is, r, "equality tolerance");
  }
  {
    auto is = r.keyed("seed");
    c.seed = detail::read_value<std::uint64_t>(is, r, "seed");
  }
  try {
    c.validate();
  } catch (const FormatError& e) {
    r.fail(e.what());
  }
  if (r.next("tree") != "tree") r.fail("expected 'tree'");
  m.tree = detail::read_tree(r, static_cast<int>(m.class_names.size()),
                             static_cast<int>(m.attribute_names.size()));
  if (r.next("end") != "end") r.fail("expected 'end'");
  if (!r.done()) r.fail("trailing content after 'end'");
  return m;
}

}  // namespace tdt

#endif  // TDT_MODEL_HPP
