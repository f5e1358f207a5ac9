#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lincls {

using ClassIndex = std::uint32_t;

/// Cell value used for missing entries. Qualitative cells hold the category
/// index as a double, quantitative cells hold the value itself.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double cell) noexcept { return std::isnan(cell); }

enum class AttributeType { qualitative, quantitative };

struct Attribute {
  std::string name;
  AttributeType type = AttributeType::quantitative;
  /// Ordered category labels; empty for quantitative attributes.
  std::vector<std::string> values;

  static Attribute quantitative(std::string name);
  /// Throws std::invalid_argument when `values` is empty or has duplicates.
  static Attribute qualitative(std::string name, std::vector<std::string> values);

  bool is_qualitative() const noexcept { return type == AttributeType::qualitative; }
  std::size_t cardinality() const noexcept { return values.size(); }
  std::optional<std::size_t> find_value(std::string_view label) const;

  bool operator==(const Attribute&) const = default;
};

/// Attribute declarations plus the class attribute. The class attribute is
/// not part of `attributes()`.
class Schema {
 public:
  Schema() = default;
  Schema(std::vector<Attribute> attributes, std::string class_name,
         std::vector<std::string> class_labels, std::string relation = "data");

  const std::vector<Attribute>& attributes() const noexcept { return attributes_; }
  const Attribute& attribute(std::size_t i) const { return attributes_.at(i); }
  /// n = I + K
  std::size_t size() const noexcept { return attributes_.size(); }
  std::size_t num_qualitative() const noexcept;
  std::size_t num_quantitative() const noexcept;

  const std::string& class_name() const noexcept { return class_name_; }
  const std::vector<std::string>& class_labels() const noexcept { return class_labels_; }
  std::size_t num_classes() const noexcept { return class_labels_.size(); }
  std::optional<ClassIndex> find_class(std::string_view label) const;

  const std::string& relation() const noexcept { return relation_; }

  bool operator==(const Schema&) const = default;

 private:
  std::vector<Attribute> attributes_;
  std::string class_name_ = "class";
  std::vector<std::string> class_labels_;
  std::string relation_ = "data";
};

/// N labelled instances stored row-major. Immutable after construction.
class Dataset {
 public:
  /// Validates arity, category indices and labels; throws DataError.
  Dataset(Schema schema, std::vector<double> cells, std::vector<ClassIndex> labels);

  const Schema& schema() const noexcept { return schema_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t num_attributes() const noexcept { return schema_.size(); }

  double at(std::size_t row, std::size_t attribute) const {
    return cells_[row * schema_.size() + attribute];
  }
  std::span<const double> row(std::size_t r) const {
    return {cells_.data() + r * schema_.size(), schema_.size()};
  }
  ClassIndex label(std::size_t r) const { return labels_[r]; }
  std::span<const ClassIndex> labels() const noexcept { return labels_; }
  std::span<const double> cells() const noexcept { return cells_; }

  std::vector<double> column(std::size_t attribute) const;
  std::vector<std::size_t> class_counts() const;
  bool has_missing() const;

  /// Rows selected by index, in the given order.
  Dataset subset(std::span<const std::size_t> rows) const;

  /// Structural equality; missing cells compare equal to each other.
  friend bool operator==(const Dataset& a, const Dataset& b);

 private:
  Schema schema_;
  std::vector<double> cells_;
  std::vector<ClassIndex> labels_;
};

}  // namespace lincls
