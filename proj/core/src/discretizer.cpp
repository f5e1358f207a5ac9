#include "lincls/discretizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "lincls/error.hpp"
#include "text_util.hpp"

namespace lincls {

namespace {

void check_column(std::span<const double> column) {
  if (column.empty()) throw std::invalid_argument("cannot discretize an empty column");
  if (std::any_of(column.begin(), column.end(), [](double v) { return is_missing(v); })) {
    throw std::invalid_argument("cannot discretize a column with missing values");
  }
}

std::vector<double> sorted_copy(std::span<const double> column) {
  std::vector<double> v(column.begin(), column.end());
  std::sort(v.begin(), v.end());
  return v;
}

void drop_non_increasing(std::vector<double>& t) {
  std::vector<double> out;
  for (double x : t) {
    if (out.empty() || x > out.back()) out.push_back(x);
  }
  t = std::move(out);
}

double entropy(std::span<const std::size_t> counts, std::size_t total) {
  if (total == 0) return 0;
  double h = 0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

std::size_t distinct_classes(std::span<const std::size_t> counts) {
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }));
}

// Instances sorted by value, grouped into runs of identical values.
struct SortedColumn {
  std::vector<double> values;       // distinct values, increasing
  std::vector<std::size_t> starts;  // group g covers [starts[g], starts[g+1])
  std::vector<ClassIndex> labels;   // labels in sorted instance order
  std::size_t num_classes = 0;
};

SortedColumn sort_column(std::span<const double> column, std::span<const ClassIndex> labels) {
  std::vector<std::size_t> order(column.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return column[a] < column[b]; });
  SortedColumn s;
  s.labels.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double v = column[order[i]];
    if (s.values.empty() || v != s.values.back()) {
      s.values.push_back(v);
      s.starts.push_back(i);
    }
    s.labels.push_back(labels[order[i]]);
    s.num_classes = std::max<std::size_t>(s.num_classes, labels[order[i]] + 1);
  }
  s.starts.push_back(order.size());
  return s;
}

struct Split {
  bool has_candidate = false;
  std::size_t group = 0;  // cut lies between group-1 and group
  double gain = 0;
  double threshold = 0;
};

// Best boundary cut over groups [g_begin, g_end) and its MDL test.
Split best_split(const SortedColumn& s, std::size_t g_begin, std::size_t g_end) {
  Split best;
  const std::size_t c = s.num_classes;
  const std::size_t lo = s.starts[g_begin];
  const std::size_t hi = s.starts[g_end];
  const std::size_t total = hi - lo;
  if (g_end - g_begin < 2) return best;

  std::vector<std::size_t> all(c, 0);
  for (std::size_t i = lo; i < hi; ++i) ++all[s.labels[i]];
  const double ent_all = entropy(all, total);

  // Per-group class histograms, used for the boundary-point test.
  auto group_counts = [&](std::size_t g) {
    std::vector<std::size_t> h(c, 0);
    for (std::size_t i = s.starts[g]; i < s.starts[g + 1]; ++i) ++h[s.labels[i]];
    return h;
  };
  auto pure_class = [&](const std::vector<std::size_t>& h) -> long {
    long only = -1;
    for (std::size_t k = 0; k < h.size(); ++k) {
      if (h[k] == 0) continue;
      if (only >= 0) return -1;
      only = static_cast<long>(k);
    }
    return only;
  };

  std::vector<std::size_t> left(c, 0);
  std::vector<std::size_t> right = all;
  auto prev = group_counts(g_begin);
  double best_weighted = 0;
  std::vector<std::size_t> best_left, best_right;
  for (std::size_t g = g_begin + 1; g < g_end; ++g) {
    for (std::size_t k = 0; k < c; ++k) {
      left[k] += prev[k];
      right[k] -= prev[k];
    }
    auto cur = group_counts(g);
    const long pa = pure_class(prev);
    const long pb = pure_class(cur);
    prev = cur;
    if (pa >= 0 && pa == pb) continue;  // not a class boundary

    const std::size_t n1 = s.starts[g] - lo;
    const std::size_t n2 = total - n1;
    const double weighted = (static_cast<double>(n1) * entropy(left, n1) +
                             static_cast<double>(n2) * entropy(right, n2)) /
                            static_cast<double>(total);
    if (!best.has_candidate || weighted < best_weighted) {
      best.has_candidate = true;
      best.group = g;
      best_weighted = weighted;
      best_left = left;
      best_right = right;
    }
  }
  if (!best.has_candidate) return best;

  const std::size_t n1 = s.starts[best.group] - lo;
  const std::size_t n2 = total - n1;
  const double e1 = entropy(best_left, n1);
  const double e2 = entropy(best_right, n2);
  const auto k = static_cast<double>(distinct_classes(all));
  const auto k1 = static_cast<double>(distinct_classes(best_left));
  const auto k2 = static_cast<double>(distinct_classes(best_right));
  best.gain = ent_all - best_weighted;
  const double delta = std::log2(std::pow(3.0, k) - 2.0) - (k * ent_all - k1 * e1 - k2 * e2);
  best.threshold =
      (std::log2(static_cast<double>(total) - 1.0) + delta) / static_cast<double>(total);
  return best;
}

double midpoint(const SortedColumn& s, std::size_t group) {
  return s.values[group - 1] + (s.values[group] - s.values[group - 1]) / 2.0;
}

void mdlp_recurse(const SortedColumn& s, std::size_t g_begin, std::size_t g_end,
                  std::vector<double>& cuts) {
  const Split split = best_split(s, g_begin, g_end);
  if (!split.has_candidate || !(split.gain > split.threshold)) return;
  mdlp_recurse(s, g_begin, split.group, cuts);
  cuts.push_back(midpoint(s, split.group));
  mdlp_recurse(s, split.group, g_end, cuts);
}

void check_mdlp_input(std::span<const double> column, std::span<const ClassIndex> labels) {
  if (column.size() != labels.size()) {
    throw std::invalid_argument("column and labels differ in length");
  }
  check_column(column);
}

std::string interval_label(const std::vector<double>& t, std::size_t j) {
  using detail::format_double;
  if (t.empty()) return "all";
  if (j == 0) return "(-inf," + format_double(t[0]) + ")";
  if (j == t.size()) return "[" + format_double(t.back()) + ",inf)";
  return "[" + format_double(t[j - 1]) + "," + format_double(t[j]) + ")";
}

}  // namespace

std::string_view to_string(DiscretizationMethod method) {
  switch (method) {
    case DiscretizationMethod::ewd: return "ewd";
    case DiscretizationMethod::efd: return "efd";
    case DiscretizationMethod::mdlp: return "mdlp";
  }
  return "?";
}

DiscretizationMethod parse_discretization_method(std::string_view name) {
  const auto n = detail::lower(name);
  if (n == "ewd") return DiscretizationMethod::ewd;
  if (n == "efd") return DiscretizationMethod::efd;
  if (n == "mdlp") return DiscretizationMethod::mdlp;
  throw std::invalid_argument("unknown discretization method '" + std::string(name) +
                              "' (expected ewd, efd or mdlp)");
}

std::size_t CutPoints::interval_of(double value) const {
  return static_cast<std::size_t>(
      std::upper_bound(thresholds.begin(), thresholds.end(), value) - thresholds.begin());
}

CutPoints fit_ewd(std::span<const double> column, std::size_t k) {
  if (k == 0) throw std::invalid_argument("bin count must be positive");
  check_column(column);
  auto [lo, hi] = std::minmax_element(column.begin(), column.end());
  const double width = (*hi - *lo) / static_cast<double>(k);
  CutPoints cp{0, {}, DiscretizationMethod::ewd};
  if (width > 0) {
    for (std::size_t j = 1; j < k; ++j) {
      const double t = *lo + static_cast<double>(j) * width;
      if (t > *lo && t < *hi) cp.thresholds.push_back(t);
    }
  }
  drop_non_increasing(cp.thresholds);
  return cp;
}

CutPoints fit_efd(std::span<const double> column, std::size_t k) {
  if (k == 0) throw std::invalid_argument("bin count must be positive");
  check_column(column);
  const auto v = sorted_copy(column);
  const std::size_t n = v.size();
  CutPoints cp{0, {}, DiscretizationMethod::efd};
  std::size_t prev = 0;
  for (std::size_t j = 1; j < k; ++j) {
    std::size_t p = std::max(j * n / k, prev + 1);
    while (p < n && v[p] == v[p - 1]) ++p;
    if (p >= n) break;
    cp.thresholds.push_back(v[p - 1] + (v[p] - v[p - 1]) / 2.0);
    prev = p;
  }
  drop_non_increasing(cp.thresholds);
  return cp;
}

CutPoints fit_mdlp(std::span<const double> column, std::span<const ClassIndex> labels) {
  check_mdlp_input(column, labels);
  const auto s = sort_column(column, labels);
  CutPoints cp{0, {}, DiscretizationMethod::mdlp};
  mdlp_recurse(s, 0, s.values.size(), cp.thresholds);
  return cp;
}

MdlpSplit mdlp_best_split(std::span<const double> column, std::span<const ClassIndex> labels) {
  check_mdlp_input(column, labels);
  const auto s = sort_column(column, labels);
  const Split split = best_split(s, 0, s.values.size());
  MdlpSplit out;
  out.has_candidate = split.has_candidate;
  if (split.has_candidate) {
    out.cut = midpoint(s, split.group);
    out.gain = split.gain;
    out.threshold = split.threshold;
    out.accepted = split.gain > split.threshold;
  }
  return out;
}

DiscretizationModel::DiscretizationModel(Schema schema, std::vector<CutPoints> cuts)
    : schema_(std::move(schema)), cuts_(std::move(cuts)) {
  std::size_t next = 0;
  for (std::size_t a = 0; a < schema_.size(); ++a) {
    if (schema_.attribute(a).is_qualitative()) continue;
    if (next >= cuts_.size() || cuts_[next].attribute != a) {
      throw std::invalid_argument("cut points must cover every quantitative attribute in order");
    }
    const auto& t = cuts_[next].thresholds;
    if (std::adjacent_find(t.begin(), t.end(), std::greater_equal<>()) != t.end()) {
      throw std::invalid_argument("thresholds must be strictly increasing");
    }
    ++next;
  }
  if (next != cuts_.size()) throw std::invalid_argument("cut points for unknown attributes");
}

DiscretizationModel DiscretizationModel::fit(const Dataset& train, DiscretizationMethod method,
                                             std::size_t k) {
  const auto& schema = train.schema();
  std::vector<CutPoints> cuts;
  for (std::size_t a = 0; a < schema.size(); ++a) {
    if (schema.attribute(a).is_qualitative()) continue;
    const auto col = train.column(a);
    CutPoints cp;
    switch (method) {
      case DiscretizationMethod::ewd: cp = fit_ewd(col, k); break;
      case DiscretizationMethod::efd: cp = fit_efd(col, k); break;
      case DiscretizationMethod::mdlp: cp = fit_mdlp(col, train.labels()); break;
    }
    cp.attribute = a;
    cuts.push_back(std::move(cp));
  }
  return DiscretizationModel(schema, std::move(cuts));
}

std::vector<std::size_t> DiscretizationModel::cardinalities() const {
  std::vector<std::size_t> out;
  for (const auto& c : cuts_) out.push_back(c.num_intervals());
  return out;
}

Dataset DiscretizationModel::apply(const Dataset& data) const {
  if (data.schema() != schema_) throw DataError("discretization applied to a different schema");
  std::vector<Attribute> attrs = schema_.attributes();
  std::vector<const CutPoints*> by_attr(schema_.size(), nullptr);
  for (const auto& c : cuts_) {
    by_attr[c.attribute] = &c;
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < c.num_intervals(); ++j) {
      labels.push_back(interval_label(c.thresholds, j));
    }
    attrs[c.attribute] = Attribute::qualitative(attrs[c.attribute].name, std::move(labels));
  }
  const std::size_t n = schema_.size();
  std::vector<double> cells(data.cells().begin(), data.cells().end());
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (std::size_t a = 0; a < n; ++a) {
      double& v = cells[r * n + a];
      if (by_attr[a] && !is_missing(v)) v = static_cast<double>(by_attr[a]->interval_of(v));
    }
  }
  Schema out(std::move(attrs), schema_.class_name(), schema_.class_labels(), schema_.relation());
  return Dataset(std::move(out), std::move(cells),
                 std::vector<ClassIndex>(data.labels().begin(), data.labels().end()));
}

std::string DiscretizationModel::to_json() const {
  nlohmann::json attrs = nlohmann::json::array();
  for (const auto& c : cuts_) {
    attrs.push_back({{"name", schema_.attribute(c.attribute).name},
                     {"method", std::string(lincls::to_string(c.method))},
                     {"thresholds", c.thresholds}});
  }
  return nlohmann::json{{"attributes", attrs}}.dump();
}

DiscretizationModel DiscretizationModel::from_json(std::string_view json, const Schema& schema) {
  try {
    const auto j = nlohmann::json::parse(json);
    std::vector<CutPoints> cuts;
    for (const auto& entry : j.at("attributes")) {
      const auto name = entry.at("name").get<std::string>();
      std::size_t a = 0;
      while (a < schema.size() && schema.attribute(a).name != name) ++a;
      if (a == schema.size()) throw DataError("unknown attribute '" + name + "' in cut points");
      cuts.push_back(CutPoints{a, entry.at("thresholds").get<std::vector<double>>(),
                               parse_discretization_method(entry.at("method").get<std::string>())});
    }
    return DiscretizationModel(schema, std::move(cuts));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed discretization JSON: ") + e.what());
  }
}

}  // namespace lincls
