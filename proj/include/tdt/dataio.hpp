#ifndef TDT_DATAIO_HPP
#define TDT_DATAIO_HPP

// Dataset ingestion and preprocessing.
//
// Two text formats are read:
//   * the semicolon table: a comma-separated table whose cells hold whole
//     series as semicolon-separated reals ("1.5;2;3.25"), one column being the
//     class label;
//   * the UEA/sktime `.ts` sequence format: `@` metadata lines, then one case
//     per line with channels separated by ':' and values by ',', the class
//     label last.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tdt/core.hpp"

namespace tdt {

namespace detail {

inline std::string_view trim_ws(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::vector<std::string_view> lines_of(std::string_view content) {
  auto lines = split(content, '\n');
  for (auto& l : lines) l = trim_ws(l);
  return lines;
}

inline bool parse_real(std::string_view tok, double& out) {
  tok = trim_ws(tok);
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  if (tok.empty()) return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size() && std::isfinite(out);
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

/// Maps labels to indices in first-appearance order.
class LabelIndex {
 public:
  explicit LabelIndex(std::vector<std::string> declared = {}) : names_(std::move(declared)) {
    for (std::size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = static_cast<int>(i);
  }
  int operator()(std::string_view label, bool allow_new = true) {
    auto it = index_.find(std::string(label));
    if (it != index_.end()) return it->second;
    if (!allow_new) return -1;
    names_.emplace_back(label);
    return index_[names_.back()] = static_cast<int>(names_.size() - 1);
  }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int, std::less<>> index_;
};

}  // namespace detail

/// Prints with enough digits to read back the same double.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  double back = 0.0;
  for (int prec = 1; prec <= 17; ++prec) {
    char tmp[32];
    std::snprintf(tmp, sizeof tmp, "%.*g", prec, v);
    if (detail::parse_real(tmp, back) && back == v) return tmp;
  }
  return buf;
}

// ---------------------------------------------------------------------------
// Semicolon table
// ---------------------------------------------------------------------------

/// `class_column` is a header name or a 0-based column index; empty selects
/// the last column.
inline TemporalDataset parse_semicolon_table(std::string_view content,
                                             std::string_view class_column = {}) {
  auto lines = detail::lines_of(content);
  std::size_t li = 0;
  while (li < lines.size() && lines[li].empty()) ++li;
  if (li == lines.size()) throw FormatError("semicolon table has no header row");

  auto header = detail::split(lines[li], ',');
  for (auto& h : header) h = detail::trim_ws(h);
  if (header.size() < 2) throw FormatError("header needs at least one attribute and a class column");

  std::size_t class_col = header.size() - 1;
  if (!class_column.empty()) {
    auto it = std::find(header.begin(), header.end(), class_column);
    if (it != header.end()) {
      class_col = static_cast<std::size_t>(it - header.begin());
    } else {
      std::size_t idx = 0;
      auto [p, ec] = std::from_chars(class_column.data(), class_column.data() + class_column.size(), idx);
      if (ec != std::errc{} || p != class_column.data() + class_column.size() || idx >= header.size())
        throw FormatError("class column '" + std::string(class_column) + "' not found in header");
      class_col = idx;
    }
  }

  TemporalDataset ds;
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != class_col) ds.attribute_names.emplace_back(header[c]);

  detail::LabelIndex labels;
  int length = -1;
  for (++li; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    const auto row = li + 1;
    auto cells = detail::split(lines[li], ',');
    if (cells.size() != header.size())
      throw FormatError("line " + std::to_string(row) + ": expected " +
                        std::to_string(header.size()) + " columns, found " +
                        std::to_string(cells.size()));
    std::vector<std::vector<double>> channels;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == class_col) continue;
      const std::string col_name(header[c]);
      auto toks = detail::split(detail::trim_ws(cells[c]), ';');
      if (toks.size() > 1 && detail::trim_ws(toks.back()).empty()) toks.pop_back();
      std::vector<double> series;
      series.reserve(toks.size());
      for (std::size_t k = 0; k < toks.size(); ++k) {
        double v = 0.0;
        if (!detail::parse_real(toks[k], v))
          throw FormatError("line " + std::to_string(row) + ", column '" + col_name + "', value " +
                            std::to_string(k + 1) + ": cannot parse '" +
                            std::string(detail::trim_ws(toks[k])) + "' as a real");
        series.push_back(v);
      }
      if (length < 0) length = static_cast<int>(series.size());
      if (static_cast<int>(series.size()) != length)
        throw FormatError("line " + std::to_string(row) + ", column '" + col_name + "': length " +
                          std::to_string(series.size()) + " differs from " + std::to_string(length));
      channels.push_back(std::move(series));
    }
    auto label = detail::trim_ws(cells[class_col]);
    if (label.empty()) throw FormatError("line " + std::to_string(row) + ": missing class label");
    ds.instances.emplace_back(std::move(channels), labels(label));
  }
  if (ds.instances.empty()) throw FormatError("semicolon table has no data rows");
  ds.class_names = labels.names();
  ds.series_length = length;
  if (length < 2) throw FormatError("series must have at least two points");
  return ds;
}

inline std::string serialize_semicolon_table(const TemporalDataset& ds,
                                             std::string_view class_column = "class") {
  std::string out;
  for (const auto& name : ds.attribute_names) out += name + ",";
  out += std::string(class_column) + "\n";
  for (const auto& inst : ds.instances) {
    for (int a = 0; a < inst.channel_count(); ++a) {
      auto ch = inst.channel(a);
      for (std::size_t t = 0; t < ch.size(); ++t) {
        if (t) out += ';';
        out += format_real(ch[t]);
      }
      out += ',';
    }
    out += ds.class_names[static_cast<std::size_t>(inst.class_index())] + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// UEA sequence (.ts) files
// ---------------------------------------------------------------------------

/// Class indices follow the @classLabel declaration when present, otherwise
/// first appearance.
inline TemporalDataset parse_uea_sequence(std::string_view content) {
  auto lines = detail::lines_of(content);
  detail::LabelIndex labels;
  bool in_data = false;
  bool labelled = true;
  TemporalDataset ds;
  int channels_expected = -1;
  int length = -1;

  for (std::size_t li = 0; li < lines.size(); ++li) {
    auto line = lines[li];
    const auto row = li + 1;
    if (line.empty() || line.front() == '#') continue;
    if (!in_data) {
      if (line.front() != '@')
        throw FormatError("line " + std::to_string(row) + ": expected a '@' header before @data");
      auto sp = line.find_first_of(" \t");
      auto key = detail::lower(line.substr(0, sp));
      auto rest = sp == std::string_view::npos ? std::string_view{} : detail::trim_ws(line.substr(sp));
      if (key == "@data") {
        in_data = true;
      } else if (key == "@timestamps" && detail::lower(rest) == "true") {
        throw FormatError("line " + std::to_string(row) + ": timestamped series are not supported");
      } else if (key == "@classlabel") {
        std::istringstream is{std::string(rest)};
        std::string flag, name;
        is >> flag;
        labelled = detail::lower(flag) == "true";
        std::vector<std::string> declared;
        while (is >> name) declared.push_back(name);
        labels = detail::LabelIndex(std::move(declared));
      } else if (key == "@targetlabel" && detail::lower(rest).starts_with("true")) {
        throw FormatError("line " + std::to_string(row) + ": regression targets are not supported");
      }
      continue;
    }

    if (!labelled) throw FormatError("sequence file declares no class labels");
    auto fields = detail::split(line, ':');
    if (fields.size() < 2)
      throw FormatError("line " + std::to_string(row) + ": case needs channels and a class label");
    auto label = detail::trim_ws(fields.back());
    fields.pop_back();
    if (channels_expected < 0) channels_expected = static_cast<int>(fields.size());
    if (static_cast<int>(fields.size()) != channels_expected)
      throw FormatError("line " + std::to_string(row) + ": " + std::to_string(fields.size()) +
                        " channels, expected " + std::to_string(channels_expected));
    std::vector<std::vector<double>> channels;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      auto toks = detail::split(detail::trim_ws(fields[c]), ',');
      std::vector<double> series;
      for (std::size_t k = 0; k < toks.size(); ++k) {
        double v = 0.0;
        if (!detail::parse_real(toks[k], v))
          throw FormatError("line " + std::to_string(row) + ", channel " + std::to_string(c) +
                            ", value " + std::to_string(k + 1) + ": cannot parse '" +
                            std::string(detail::trim_ws(toks[k])) + "'");
        series.push_back(v);
      }
      if (length < 0) length = static_cast<int>(series.size());
      if (static_cast<int>(series.size()) != length)
        throw FormatError("line " + std::to_string(row) + ", channel " + std::to_string(c) +
                          ": length " + std::to_string(series.size()) + " differs from " +
                          std::to_string(length));
      channels.push_back(std::move(series));
    }
    if (label.empty()) throw FormatError("line " + std::to_string(row) + ": missing class label");
    ds.instances.emplace_back(std::move(channels), labels(label));
  }
  if (ds.instances.empty()) throw FormatError("sequence file has no cases");
  if (length < 2) throw FormatError("series must have at least two points");
  ds.series_length = length;
  ds.attribute_names = default_attribute_names(channels_expected);
  ds.class_names = labels.names();
  return ds;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

enum class DataFormat { Auto, SemicolonTable, UeaSequence };

inline DataFormat parse_data_format(std::string_view s) {
  if (s == "auto") return DataFormat::Auto;
  if (s == "uea" || s == "uea_sequence" || s == "ts") return DataFormat::UeaSequence;
  if (s == "semicolon" || s == "semicolon_table" || s == "csv") return DataFormat::SemicolonTable;
  throw FormatError("unknown data format '" + std::string(s) + "'");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline TemporalDataset load_dataset(const std::string& path, DataFormat fmt = DataFormat::Auto,
                                    std::string_view class_column = {}) {
  if (fmt == DataFormat::Auto) {
    auto ext = path.substr(path.find_last_of('.') == std::string::npos ? path.size()
                                                                       : path.find_last_of('.'));
    fmt = detail::lower(ext) == ".ts" ? DataFormat::UeaSequence : DataFormat::SemicolonTable;
  }
  auto content = read_file(path);
  try {
    return fmt == DataFormat::UeaSequence ? parse_uea_sequence(content)
                                          : parse_semicolon_table(content, class_column);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Preprocessing
// ---------------------------------------------------------------------------

/// Appends `b` to `a`, unifying class names (a's order first).
inline TemporalDataset merge_datasets(TemporalDataset a, const TemporalDataset& b) {
  if (a.attribute_count() != b.attribute_count() || a.series_length != b.series_length)
    throw DimensionError("cannot merge datasets of shapes " + std::to_string(a.attribute_count()) +
                         "x" + std::to_string(a.series_length) + " and " +
                         std::to_string(b.attribute_count()) + "x" +
                         std::to_string(b.series_length));
  detail::LabelIndex labels(a.class_names);
  for (auto inst : b.instances) {
    inst.set_class_index(labels(b.class_names[static_cast<std::size_t>(inst.class_index())]));
    a.instances.push_back(std::move(inst));
  }
  a.class_names = labels.names();
  return a;
}

/// Re-indexes `data` onto `class_names`; unknown labels are a FormatError.
inline TemporalDataset remap_classes(TemporalDataset data,
                                     const std::vector<std::string>& class_names) {
  detail::LabelIndex labels(class_names);
  for (auto& inst : data.instances) {
    const auto& name = data.class_names[static_cast<std::size_t>(inst.class_index())];
    int idx = labels(name, false);
    if (idx < 0) throw FormatError("class '" + name + "' is unknown to the model");
    inst.set_class_index(idx);
  }
  data.class_names = class_names;
  return data;
}

/// Keeps the first min(N, max_len) points of every channel.
inline TemporalDataset trim(TemporalDataset data, int max_len) {
  if (max_len < 2) throw ArgumentError("trim length must be at least 2");
  if (data.series_length <= max_len) return data;
  for (auto& inst : data.instances) inst.truncate(max_len);
  data.series_length = max_len;
  return data;
}

struct TrainTestSplit {
  TemporalDataset train;
  TemporalDataset test;
  std::vector<std::string> warnings;
};

namespace detail {

inline void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

}  // namespace detail

/// Seeded, class-stratified resampling. The training side receives
/// ceil(fraction * m) instances; each stratum contributes its floor share
/// and the leftover slots go to the largest remainders. Classes with fewer
/// than two instances are pooled into one unstratified group.
inline TrainTestSplit resample_split(const TemporalDataset& data, double train_fraction,
                                     std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ArgumentError("train fraction must lie in (0, 1)");
  TrainTestSplit out;
  const auto m = data.size();
  const auto q = static_cast<std::size_t>(data.class_count());

  std::vector<std::vector<std::size_t>> by_class(q);
  for (std::size_t i = 0; i < m; ++i)
    by_class[static_cast<std::size_t>(data.instances[i].class_index())].push_back(i);

  std::vector<std::vector<std::size_t>> strata;
  std::vector<std::size_t> pooled;
  for (std::size_t c = 0; c < q; ++c) {
    if (by_class[c].empty()) continue;
    if (by_class[c].size() < 2) {
      out.warnings.push_back("class '" + data.class_names[c] +
                             "' has fewer than 2 instances; sampled without stratification");
      pooled.insert(pooled.end(), by_class[c].begin(), by_class[c].end());
    } else {
      strata.push_back(by_class[c]);
    }
  }
  if (!pooled.empty()) strata.push_back(pooled);

  const auto want = static_cast<std::size_t>(
      std::min<double>(static_cast<double>(m), std::ceil(train_fraction * static_cast<double>(m) - 1e-9)));
  std::vector<std::size_t> quota(strata.size());
  std::vector<double> remainder(strata.size());
  std::size_t assigned = 0;
  for (std::size_t s = 0; s < strata.size(); ++s) {
    double exact = train_fraction * static_cast<double>(strata[s].size());
    quota[s] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    remainder[s] = exact - static_cast<double>(quota[s]);
    assigned += quota[s];
  }
  std::vector<std::size_t> order(strata.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return remainder[l] > remainder[r]; });
  while (assigned < want) {
    bool progressed = false;
    for (auto s : order) {
      if (assigned == want) break;
      if (quota[s] < strata[s].size()) {
        ++quota[s];
        ++assigned;
        progressed = true;
      }
    }
    if (!progressed) break;
  }

  std::mt19937_64 rng(seed);
  std::vector<char> in_train(m, 0);
  for (std::size_t s = 0; s < strata.size(); ++s) {
    detail::shuffle(strata[s], rng);
    for (std::size_t k = 0; k < quota[s]; ++k) in_train[strata[s][k]] = 1;
  }

  for (auto* part : {&out.train, &out.test}) {
    part->attribute_names = data.attribute_names;
    part->class_names = data.class_names;
    part->series_length = data.series_length;
  }
  for (std::size_t i = 0; i < m; ++i)
    (in_train[i] ? out.train : out.test).instances.push_back(data.instances[i]);
  return out;
}

}  // namespace tdt

#endif  // TDT_DATAIO_HPP
