#include "lincls/layout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lincls/error.hpp"

namespace lincls {

ParameterLayout::ParameterLayout(Schema schema, std::size_t blocks)
    : schema_(std::move(schema)), blocks_(blocks) {
  if (blocks_ == 0) throw std::invalid_argument("layout needs at least one block");
  offsets_.reserve(schema_.size());
  std::size_t next = 1;  // slot 0 is the intercept
  for (const auto& attr : schema_.attributes()) {
    offsets_.push_back(next);
    next += attr.is_qualitative() ? attr.cardinality() : 1;
  }
  block_size_ = next;
}

std::size_t ParameterLayout::intercept_slot(std::size_t block) const {
  if (block >= blocks_) throw std::out_of_range("block out of range");
  return block * block_size_;
}

std::size_t ParameterLayout::quantitative_slot(std::size_t block, std::size_t attribute) const {
  if (schema_.attribute(attribute).is_qualitative()) {
    throw std::invalid_argument("attribute is qualitative");
  }
  return intercept_slot(block) + offsets_[attribute];
}

std::size_t ParameterLayout::qualitative_slot(std::size_t block, std::size_t attribute,
                                              std::size_t category) const {
  const auto& attr = schema_.attribute(attribute);
  if (!attr.is_qualitative()) throw std::invalid_argument("attribute is quantitative");
  if (category >= attr.cardinality()) throw std::out_of_range("category out of range");
  return intercept_slot(block) + offsets_[attribute] + category;
}

FeatureMatrix::FeatureMatrix(const ParameterLayout& layout, const Dataset& data) {
  if (data.schema() != layout.schema()) {
    throw DataError("dataset schema does not match the parameter layout");
  }
  const auto& schema = layout.schema();
  const std::size_t n = schema.size();
  row_start_.reserve(data.size() + 1);
  index_.reserve(data.size() * (n + 1));
  value_.reserve(data.size() * (n + 1));
  for (std::size_t r = 0; r < data.size(); ++r) {
    index_.push_back(0);
    value_.push_back(1.0);
    for (std::size_t a = 0; a < n; ++a) {
      const double v = data.at(r, a);
      if (is_missing(v)) {
        throw DataError("missing value in row " + std::to_string(r) + "; impute before training");
      }
      const auto offset = layout.attribute_offset(a);
      if (schema.attribute(a).is_qualitative()) {
        index_.push_back(static_cast<std::uint32_t>(offset + static_cast<std::size_t>(v)));
        value_.push_back(1.0);
      } else {
        index_.push_back(static_cast<std::uint32_t>(offset));
        value_.push_back(v);
      }
    }
    row_start_.push_back(index_.size());
  }
}

double FeatureMatrix::dot(std::size_t r, std::span<const double> params, std::size_t offset) const {
  double s = 0;
  for (std::size_t i = row_start_[r]; i < row_start_[r + 1]; ++i) {
    s += params[offset + index_[i]] * value_[i];
  }
  return s;
}

void FeatureMatrix::axpy(std::size_t r, double scale, std::span<double> params,
                         std::size_t offset) const {
  for (std::size_t i = row_start_[r]; i < row_start_[r + 1]; ++i) {
    params[offset + index_[i]] += scale * value_[i];
  }
}

double linear_score(const ParameterLayout& layout, std::span<const double> params,
                    std::span<const double> instance, std::size_t block) {
  const auto& schema = layout.schema();
  if (instance.size() != schema.size()) throw std::invalid_argument("instance arity mismatch");
  if (params.size() != layout.size()) throw std::invalid_argument("parameter size mismatch");
  const std::size_t base = layout.intercept_slot(block);
  double s = params[base];
  for (std::size_t a = 0; a < schema.size(); ++a) {
    const double v = instance[a];
    if (is_missing(v)) throw DataError("cannot score an instance with missing values");
    if (schema.attribute(a).is_qualitative()) {
      s += params[layout.qualitative_slot(block, a, static_cast<std::size_t>(v))];
    } else {
      s += params[base + layout.attribute_offset(a)] * v;
    }
  }
  return s;
}

void softmax_inplace(std::span<double> scores) {
  const double top = *std::max_element(scores.begin(), scores.end());
  double sum = 0;
  for (double& s : scores) {
    s = std::exp(s - top);
    sum += s;
  }
  for (double& s : scores) s /= sum;
}

std::vector<double> softmax_predict(const ParameterLayout& layout, std::span<const double> params,
                                    std::span<const double> instance) {
  std::vector<double> p(layout.blocks());
  for (std::size_t c = 0; c < p.size(); ++c) p[c] = linear_score(layout, params, instance, c);
  softmax_inplace(p);
  return p;
}

}  // namespace lincls
