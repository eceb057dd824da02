#ifndef TDT_RENDER_HPP
#define TDT_RENDER_HPP

// Human-readable views of a tree: the indented two-branch listing and the
// per-class path formulas.
//
//   <L> var5 <= -2.756591
//   |   <InvA> var5 <= 0.308951: Squash_BackhandBoast (3.0/1.0)
//   |   [InvA] var5 > 0.308951: Squash_ForehandBoast (7.0)
//   [L] var5 > -2.756591: Badminton_Clear (12.0)
//
// The satisfying branch is written <X>, the other [X] with the pointwise
// comparator flipped. The current-interval relation prints as "=".

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "tdt/core.hpp"

namespace tdt {

struct TreeNames {
  std::vector<std::string> attributes;
  std::vector<std::string> classes;
};

struct RenderOptions {
  /// Alpha left unannotated (the tree's fixed alpha).
  double default_alpha = 1.0;
};

/// At most six decimals, trailing zeros dropped: -2.27452, 8.703901, 3.
inline std::string format_threshold(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

namespace detail {

inline std::string name_or_index(const std::vector<std::string>& names, int i, const char* prefix) {
  if (i >= 0 && static_cast<std::size_t>(i) < names.size()) return names[static_cast<std::size_t>(i)];
  return prefix + std::to_string(i);
}

/// "var5 <= -2.756591", plus "^z" and "@alpha=" annotations when non-default.
inline std::string condition_text(const TemporalDecision& d, bool negated, const TreeNames& names,
                                  const RenderOptions& opt) {
  std::string s = name_or_index(names.attributes, d.attribute, "var");
  if (d.derivative != 0) s += "^" + std::to_string(d.derivative);
  s += " ";
  s += negated ? negated_symbol(d.comparator) : comparator_symbol(d.comparator);
  s += " " + format_threshold(d.threshold);
  if (d.alpha != opt.default_alpha) s += " @alpha=" + format_threshold(d.alpha);
  return s;
}

inline std::string modality(Relation r, bool negated) {
  std::string name(relation_name(r));
  return negated ? "[" + name + "]" : "<" + name + ">";
}

inline std::string count_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

inline std::string leaf_text(const DecisionTree::Leaf& leaf, const TreeNames& names) {
  auto n = total(leaf.counts);
  auto errors = n - (leaf.counts.empty() ? 0 : leaf.counts[static_cast<std::size_t>(leaf.class_index)]);
  std::string s = ": " + name_or_index(names.classes, leaf.class_index, "class") + " (" +
                  count_text(static_cast<double>(n));
  if (errors > 0) s += "/" + count_text(static_cast<double>(errors));
  return s + ")";
}

inline void render_branches(const DecisionTree& tree, const TreeNames& names,
                            const RenderOptions& opt, int depth, std::string& out) {
  const auto& node = tree.as_node();
  std::string indent;
  for (int k = 0; k < depth; ++k) indent += "|   ";
  for (bool negated : {false, true}) {
    const DecisionTree& child = negated ? *node.unsatisfied : *node.satisfied;
    out += indent + modality(node.decision.relation, negated) + " " +
           condition_text(node.decision, negated, names, opt);
    if (child.is_leaf()) {
      out += leaf_text(child.as_leaf(), names) + "\n";
    } else {
      out += "\n";
      render_branches(child, names, opt, depth + 1, out);
    }
  }
}

}  // namespace detail

inline std::string render_decision(const TemporalDecision& d, bool negated, const TreeNames& names,
                                   const RenderOptions& opt = {}) {
  return detail::modality(d.relation, negated) + " " +
         detail::condition_text(d, negated, names, opt);
}

inline std::string render_tree(const DecisionTree& tree, const TreeNames& names,
                               const RenderOptions& opt = {}) {
  std::string out;
  if (tree.is_leaf()) return detail::leaf_text(tree.as_leaf(), names) + "\n";
  detail::render_branches(tree, names, opt, 0, out);
  return out;
}

namespace detail {

inline std::string theory_edge(const TemporalDecision& d, bool negated, const TreeNames& names,
                               const RenderOptions& opt) {
  std::string cond = "(" + condition_text(d, negated, names, opt) + ")";
  if (d.relation == Relation::Eq) return cond;
  return modality(d.relation, negated) + cond;
}

inline void collect_paths(const DecisionTree& tree, int cls, const TreeNames& names,
                          const RenderOptions& opt, std::vector<std::string>& path,
                          std::vector<std::string>& out) {
  if (tree.is_leaf()) {
    if (tree.as_leaf().class_index != cls) return;
    if (path.empty()) {
      out.emplace_back("true");
      return;
    }
    std::string f;
    for (std::size_t k = 0; k < path.size(); ++k) f += (k ? " & " : "") + path[k];
    out.push_back(std::move(f));
    return;
  }
  const auto& node = tree.as_node();
  path.push_back(theory_edge(node.decision, false, names, opt));
  collect_paths(*node.satisfied, cls, names, opt, path, out);
  path.back() = theory_edge(node.decision, true, names, opt);
  collect_paths(*node.unsatisfied, cls, names, opt, path, out);
  path.pop_back();
}

}  // namespace detail

/// One conjunction per root-to-leaf path ending in `class_index`, left to
/// right. Satisfied edges read <X>(cond); the others [X](flipped cond).
inline std::vector<std::string> extract_class_theory(const DecisionTree& tree, int class_index,
                                                     const TreeNames& names,
                                                     const RenderOptions& opt = {}) {
  std::vector<std::string> path, out;
  detail::collect_paths(tree, class_index, names, opt, path, out);
  return out;
}

}  // namespace tdt

#endif  // TDT_RENDER_HPP
