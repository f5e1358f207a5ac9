#include "lincls/dataset.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "lincls/error.hpp"

namespace lincls {

namespace {

void require_distinct(const std::vector<std::string>& labels, const std::string& what) {
  std::unordered_set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw std::invalid_argument(what + ": duplicate value '" + label + "'");
    }
  }
}

}  // namespace

Attribute Attribute::quantitative(std::string name) {
  return Attribute{std::move(name), AttributeType::quantitative, {}};
}

Attribute Attribute::qualitative(std::string name, std::vector<std::string> values) {
  if (values.empty()) {
    throw std::invalid_argument("qualitative attribute '" + name + "' has no values");
  }
  require_distinct(values, "attribute '" + name + "'");
  return Attribute{std::move(name), AttributeType::qualitative, std::move(values)};
}

std::optional<std::size_t> Attribute::find_value(std::string_view label) const {
  auto it = std::find(values.begin(), values.end(), label);
  if (it == values.end()) return std::nullopt;
  return static_cast<std::size_t>(it - values.begin());
}

Schema::Schema(std::vector<Attribute> attributes, std::string class_name,
               std::vector<std::string> class_labels, std::string relation)
    : attributes_(std::move(attributes)),
      class_name_(std::move(class_name)),
      class_labels_(std::move(class_labels)),
      relation_(std::move(relation)) {
  if (class_labels_.size() < 2) {
    throw std::invalid_argument("schema needs at least two class labels");
  }
  require_distinct(class_labels_, "class attribute");
  for (const auto& a : attributes_) {
    if (a.is_qualitative()) {
      if (a.values.empty()) {
        throw std::invalid_argument("qualitative attribute '" + a.name + "' has no values");
      }
      require_distinct(a.values, "attribute '" + a.name + "'");
    } else if (!a.values.empty()) {
      throw std::invalid_argument("quantitative attribute '" + a.name + "' lists categories");
    }
  }
}

std::size_t Schema::num_qualitative() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      attributes_.begin(), attributes_.end(), [](const Attribute& a) { return a.is_qualitative(); }));
}

std::size_t Schema::num_quantitative() const noexcept { return size() - num_qualitative(); }

std::optional<ClassIndex> Schema::find_class(std::string_view label) const {
  auto it = std::find(class_labels_.begin(), class_labels_.end(), label);
  if (it == class_labels_.end()) return std::nullopt;
  return static_cast<ClassIndex>(it - class_labels_.begin());
}

Dataset::Dataset(Schema schema, std::vector<double> cells, std::vector<ClassIndex> labels)
    : schema_(std::move(schema)), cells_(std::move(cells)), labels_(std::move(labels)) {
  const std::size_t n = schema_.size();
  if (labels_.empty()) throw DataError("dataset has no instances");
  if (cells_.size() != labels_.size() * n) {
    throw DataError("cell count " + std::to_string(cells_.size()) + " does not match " +
                    std::to_string(labels_.size()) + " rows of " + std::to_string(n) +
                    " attributes");
  }
  for (std::size_t r = 0; r < labels_.size(); ++r) {
    if (labels_[r] >= schema_.num_classes()) {
      throw DataError("row " + std::to_string(r) + ": class index out of range");
    }
    for (std::size_t a = 0; a < n; ++a) {
      const double v = cells_[r * n + a];
      if (is_missing(v)) continue;
      const auto& attr = schema_.attribute(a);
      if (attr.is_qualitative()) {
        if (v < 0 || v != std::floor(v) || v >= static_cast<double>(attr.cardinality())) {
          throw DataError("row " + std::to_string(r) + ", attribute '" + attr.name +
                          "': category index out of range");
        }
      } else if (!std::isfinite(v)) {
        throw DataError("row " + std::to_string(r) + ", attribute '" + attr.name +
                        "': non-finite value");
      }
    }
  }
}

std::vector<double> Dataset::column(std::size_t attribute) const {
  std::vector<double> out(size());
  for (std::size_t r = 0; r < size(); ++r) out[r] = at(r, attribute);
  return out;
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(schema_.num_classes(), 0);
  for (auto y : labels_) ++counts[y];
  return counts;
}

bool Dataset::has_missing() const {
  return std::any_of(cells_.begin(), cells_.end(), [](double v) { return is_missing(v); });
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  const std::size_t n = schema_.size();
  std::vector<double> cells;
  cells.reserve(rows.size() * n);
  std::vector<ClassIndex> labels;
  labels.reserve(rows.size());
  for (auto r : rows) {
    if (r >= size()) throw std::out_of_range("subset row out of range");
    auto src = row(r);
    cells.insert(cells.end(), src.begin(), src.end());
    labels.push_back(labels_[r]);
  }
  return Dataset(schema_, std::move(cells), std::move(labels));
}

bool operator==(const Dataset& a, const Dataset& b) {
  if (a.schema_ != b.schema_ || a.labels_ != b.labels_) return false;
  return std::equal(a.cells_.begin(), a.cells_.end(), b.cells_.begin(), b.cells_.end(),
                    [](double x, double y) {
                      return (is_missing(x) && is_missing(y)) || x == y;
                    });
}

}  // namespace lincls
