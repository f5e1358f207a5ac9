#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lincls/dataset.hpp"

namespace lincls {

/// Maps (block, feature) pairs onto a flat parameter vector. A block holds
/// one intercept, one weight per quantitative attribute and one weight per
/// (qualitative attribute, category) pair, in attribute order. Softmax models
/// use one block per class, binary hinge models a single block.
class ParameterLayout {
 public:
  ParameterLayout() = default;
  ParameterLayout(Schema schema, std::size_t blocks);

  static ParameterLayout softmax(const Schema& schema) {
    return ParameterLayout(schema, schema.num_classes());
  }
  static ParameterLayout single_block(const Schema& schema) { return ParameterLayout(schema, 1); }

  const Schema& schema() const noexcept { return schema_; }
  std::size_t blocks() const noexcept { return blocks_; }
  /// 1 + K + sum_k |X_k|
  std::size_t block_size() const noexcept { return block_size_; }
  std::size_t size() const noexcept { return blocks_ * block_size_; }

  std::size_t intercept_slot(std::size_t block) const;
  std::size_t quantitative_slot(std::size_t block, std::size_t attribute) const;
  std::size_t qualitative_slot(std::size_t block, std::size_t attribute, std::size_t category) const;
  /// Offset of an attribute's first slot inside a block.
  std::size_t attribute_offset(std::size_t attribute) const { return offsets_.at(attribute); }

  bool is_intercept(std::size_t slot) const noexcept { return slot % block_size_ == 0; }

  bool operator==(const ParameterLayout&) const = default;

 private:
  Schema schema_;
  std::size_t blocks_ = 0;
  std::size_t block_size_ = 1;
  std::vector<std::size_t> offsets_;
};

/// Sparse feature rows phi(x) in block-local coordinates: the intercept
/// (offset 0, value 1), each quantitative value, and a 1 at the slot of each
/// qualitative attribute's observed category.
class FeatureMatrix {
 public:
  /// Throws DataError if the dataset has missing cells or a schema that
  /// differs from the layout's.
  FeatureMatrix(const ParameterLayout& layout, const Dataset& data);

  std::size_t rows() const noexcept { return row_start_.size() - 1; }
  std::span<const std::uint32_t> indices(std::size_t r) const {
    return {index_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
  }
  std::span<const double> values(std::size_t r) const {
    return {value_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
  }

  /// sum_f params[offset + f] * phi_f(row r)
  double dot(std::size_t r, std::span<const double> params, std::size_t offset) const;
  /// params[offset + f] += scale * phi_f(row r)
  void axpy(std::size_t r, double scale, std::span<double> params, std::size_t offset) const;

 private:
  std::vector<std::size_t> row_start_{0};
  std::vector<std::uint32_t> index_;
  std::vector<double> value_;
};

/// beta_{y,0} + sum_i beta_{y,i} x_i + sum_k beta_{y,k,x_k} for one raw row.
double linear_score(const ParameterLayout& layout, std::span<const double> params,
                    std::span<const double> instance, std::size_t block);

/// Class distribution of a softmax layout, computed with the max-shift.
std::vector<double> softmax_predict(const ParameterLayout& layout, std::span<const double> params,
                                    std::span<const double> instance);

/// In-place numerically stable softmax.
void softmax_inplace(std::span<double> scores);

}  // namespace lincls
