#include "lincls/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "lincls/error.hpp"

namespace lincls {

ImputationModel ImputationModel::fit(const Dataset& train, MissingCategory policy) {
  const auto& schema = train.schema();
  const std::size_t n = schema.size();
  ImputationModel model;
  model.input_schema_ = schema;
  model.means_.assign(n, kMissing);
  model.reserved_category_.assign(n, false);

  std::vector<Attribute> attrs = schema.attributes();
  for (std::size_t a = 0; a < n; ++a) {
    const auto& attr = schema.attribute(a);
    if (attr.is_qualitative()) {
      bool any_missing = false;
      for (std::size_t r = 0; r < train.size() && !any_missing; ++r) {
        any_missing = is_missing(train.at(r, a));
      }
      if (policy == MissingCategory::always || any_missing) {
        model.reserved_category_[a] = true;
        attrs[a].values.emplace_back(kMissingCategory);
      }
    } else {
      double sum = 0;
      std::size_t count = 0;
      for (std::size_t r = 0; r < train.size(); ++r) {
        const double v = train.at(r, a);
        if (!is_missing(v)) {
          sum += v;
          ++count;
        }
      }
      if (count == 0) {
        throw DataError("attribute '" + attr.name + "' has no observed values; mean undefined");
      }
      model.means_[a] = sum / static_cast<double>(count);
    }
  }
  model.output_schema_ =
      Schema(std::move(attrs), schema.class_name(), schema.class_labels(), schema.relation());
  return model;
}

Dataset ImputationModel::apply(const Dataset& data) const {
  if (data.schema() != input_schema_) throw DataError("imputation applied to a different schema");
  const std::size_t n = input_schema_.size();
  std::vector<double> cells(data.cells().begin(), data.cells().end());
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (std::size_t a = 0; a < n; ++a) {
      double& v = cells[r * n + a];
      if (!is_missing(v)) continue;
      const auto& attr = input_schema_.attribute(a);
      if (!attr.is_qualitative()) {
        v = means_[a];
      } else if (reserved_category_[a]) {
        v = static_cast<double>(attr.cardinality());
      } else {
        throw DataError("attribute '" + attr.name +
                        "' has a missing value but no reserved category");
      }
    }
  }
  return Dataset(output_schema_, std::move(cells),
                 std::vector<ClassIndex>(data.labels().begin(), data.labels().end()));
}

Dataset impute_missing(const Dataset& data) {
  return ImputationModel::fit(data, MissingCategory::when_needed).apply(data);
}

NormalizationModel NormalizationModel::fit(const Dataset& train) {
  const auto& schema = train.schema();
  NormalizationModel model;
  model.schema_ = schema;
  model.ranges_.assign(schema.size(), Range{kMissing, kMissing});
  for (std::size_t a = 0; a < schema.size(); ++a) {
    if (schema.attribute(a).is_qualitative()) continue;
    auto col = train.column(a);
    if (std::any_of(col.begin(), col.end(), [](double v) { return is_missing(v); })) {
      throw DataError("normalization requires imputed data (attribute '" +
                      schema.attribute(a).name + "')");
    }
    auto [lo, hi] = std::minmax_element(col.begin(), col.end());
    model.ranges_[a] = Range{*lo, *hi};
  }
  return model;
}

Dataset NormalizationModel::apply(const Dataset& data) const {
  if (data.schema() != schema_) throw DataError("normalization applied to a different schema");
  const std::size_t n = schema_.size();
  std::vector<double> cells(data.cells().begin(), data.cells().end());
  for (std::size_t a = 0; a < n; ++a) {
    if (schema_.attribute(a).is_qualitative()) continue;
    const auto [lo, hi] = ranges_[a];
    const double width = hi - lo;
    for (std::size_t r = 0; r < data.size(); ++r) {
      double& v = cells[r * n + a];
      if (is_missing(v)) continue;
      v = width > 0 ? std::clamp((v - lo) / width, 0.0, 1.0) : 0.0;
    }
  }
  return Dataset(schema_, std::move(cells),
                 std::vector<ClassIndex>(data.labels().begin(), data.labels().end()));
}

std::tuple<Dataset, Dataset, NormalizationModel> fit_apply_normalization(const Dataset& train,
                                                                         const Dataset& test) {
  auto model = NormalizationModel::fit(train);
  auto train_out = model.apply(train);
  auto test_out = model.apply(test);
  return {std::move(train_out), std::move(test_out), std::move(model)};
}

Dataset binarize_majority(const Dataset& data) {
  const auto counts = data.class_counts();
  const auto majority =
      static_cast<ClassIndex>(std::max_element(counts.begin(), counts.end()) - counts.begin());
  const auto& schema = data.schema();
  const auto& major_label = schema.class_labels()[majority];
  std::string rest = "not_" + major_label;
  while (rest == major_label) rest += "_";
  Schema out(schema.attributes(), schema.class_name(), {major_label, rest}, schema.relation());
  std::vector<ClassIndex> labels(data.size());
  for (std::size_t r = 0; r < data.size(); ++r) labels[r] = data.label(r) == majority ? 0 : 1;
  return Dataset(std::move(out), std::vector<double>(data.cells().begin(), data.cells().end()),
                 std::move(labels));
}

Dataset one_hot_encode(const Dataset& data) {
  const auto& schema = data.schema();
  std::vector<Attribute> attrs;
  for (const auto& attr : schema.attributes()) {
    if (!attr.is_qualitative()) {
      attrs.push_back(attr);
      continue;
    }
    for (const auto& value : attr.values) {
      attrs.push_back(Attribute::quantitative(attr.name + "=" + value));
    }
  }
  const std::size_t width = attrs.size();
  std::vector<double> cells;
  cells.reserve(width * data.size());
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (std::size_t a = 0; a < schema.size(); ++a) {
      const auto& attr = schema.attribute(a);
      const double v = data.at(r, a);
      if (!attr.is_qualitative()) {
        cells.push_back(v);
        continue;
      }
      for (std::size_t j = 0; j < attr.cardinality(); ++j) {
        cells.push_back(is_missing(v) ? kMissing : (static_cast<std::size_t>(v) == j ? 1.0 : 0.0));
      }
    }
  }
  Schema out(std::move(attrs), schema.class_name(), schema.class_labels(), schema.relation());
  return Dataset(std::move(out), std::move(cells),
                 std::vector<ClassIndex>(data.labels().begin(), data.labels().end()));
}

}  // namespace lincls
