#include "lincls/error.hpp"
#include "lincls/io.hpp"
#include "text_util.hpp"

namespace lincls {

Dataset parse_csv(std::string_view text, const Schema& schema) {
  const std::size_t n = schema.size();
  std::vector<double> cells;
  std::vector<ClassIndex> labels;
  bool header_seen = false;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    auto end = text.find('\n');
    auto line = text.substr(0, end);
    text.remove_prefix(end == std::string_view::npos ? text.size() : end + 1);
    if (detail::trim(line).empty()) continue;

    auto fields = detail::split_fields(line, ',');
    if (!fields) throw ParseError(number, "unterminated quote");
    if (fields->size() != n + 1) {
      throw ParseError(number, "expected " + std::to_string(n + 1) + " cells, found " +
                                   std::to_string(fields->size()));
    }
    if (!header_seen) {
      for (std::size_t a = 0; a < n; ++a) {
        if ((*fields)[a] != schema.attribute(a).name) {
          throw ParseError(number, "header column " + std::to_string(a + 1) + " is '" +
                                       (*fields)[a] + "', schema expects '" +
                                       schema.attribute(a).name + "'");
        }
      }
      if ((*fields)[n] != schema.class_name()) {
        throw ParseError(number, "last header column must be the class '" +
                                     schema.class_name() + "'");
      }
      header_seen = true;
      continue;
    }
    for (std::size_t a = 0; a < n; ++a) {
      const auto& cell = (*fields)[a];
      const auto& attr = schema.attribute(a);
      if (cell.empty() || cell == "?") {
        cells.push_back(kMissing);
      } else if (attr.is_qualitative()) {
        auto idx = attr.find_value(cell);
        if (!idx) {
          throw ParseError(number, "value '" + cell + "' not declared for attribute '" +
                                       attr.name + "'");
        }
        cells.push_back(static_cast<double>(*idx));
      } else {
        auto v = detail::parse_double(cell);
        if (!v) throw ParseError(number, "cannot parse '" + cell + "' as a number");
        cells.push_back(*v);
      }
    }
    auto y = schema.find_class((*fields)[n]);
    if (!y) throw ParseError(number, "class value '" + (*fields)[n] + "' not declared");
    labels.push_back(*y);
  }
  if (!header_seen) throw ParseError(1, "missing header row");
  if (labels.empty()) throw ParseError(number, "no data rows");
  return Dataset(schema, std::move(cells), std::move(labels));
}

}  // namespace lincls
