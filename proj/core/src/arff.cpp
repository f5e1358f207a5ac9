#include <fstream>
#include <sstream>

#include "lincls/error.hpp"
#include "lincls/io.hpp"
#include "text_util.hpp"

namespace lincls {

namespace {

using detail::lower;
using detail::trim;

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 1;
  while (!text.empty()) {
    auto end = text.find('\n');
    auto line = text.substr(0, end);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({number++, line});
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  return lines;
}

bool is_blank_or_comment(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '%';
}

bool starts_with_keyword(std::string_view line, std::string_view keyword) {
  if (line.size() < keyword.size()) return false;
  if (lower(line.substr(0, keyword.size())) != keyword) return false;
  return line.size() == keyword.size() ||
         std::isspace(static_cast<unsigned char>(line[keyword.size()]));
}

// Splits "name rest" where name may be quoted.
std::pair<std::string, std::string_view> take_name(std::string_view s, std::size_t line) {
  s = trim(s);
  if (s.empty()) throw ParseError(line, "missing name");
  if (s.front() == '\'' || s.front() == '"') {
    const char q = s.front();
    std::string name;
    std::size_t i = 1;
    for (; i < s.size() && s[i] != q; ++i) {
      if (s[i] == '\\' && i + 1 < s.size()) ++i;
      name.push_back(s[i]);
    }
    if (i >= s.size()) throw ParseError(line, "unterminated quoted name");
    return {name, trim(s.substr(i + 1))};
  }
  auto end = s.find_first_of(" \t");
  if (end == std::string_view::npos) return {std::string(s), {}};
  return {std::string(s.substr(0, end)), trim(s.substr(end))};
}

Attribute parse_attribute(std::string_view rest, std::size_t line) {
  auto [name, type] = take_name(rest, line);
  if (type.empty()) throw ParseError(line, "attribute '" + name + "' has no type");
  if (type.front() == '{') {
    if (type.back() != '}') throw ParseError(line, "unterminated nominal value list");
    auto fields = detail::split_fields(type.substr(1, type.size() - 2), ',');
    if (!fields) throw ParseError(line, "unterminated quote in nominal value list");
    if (fields->size() == 1 && fields->front().empty()) {
      throw ParseError(line, "nominal attribute '" + name + "' declares no values");
    }
    try {
      return Attribute::qualitative(std::move(name), std::move(*fields));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
  }
  const auto t = lower(type);
  if (t == "numeric" || t == "real" || t == "integer") return Attribute::quantitative(name);
  throw ParseError(line, "unsupported attribute type '" + std::string(type) + "'");
}

struct Header {
  std::string relation = "data";
  std::vector<Attribute> attributes;
  std::size_t data_index = 0;  // index into lines of the first row after @data
  bool has_data = false;
};

Header parse_header(const std::vector<Line>& lines) {
  Header h;
  bool seen_relation = false;
  std::size_t i = 0;
  for (; i < lines.size(); ++i) {
    const auto& [number, raw] = lines[i];
    if (is_blank_or_comment(raw)) continue;
    auto line = trim(raw);
    if (starts_with_keyword(line, "@relation")) {
      if (seen_relation) throw ParseError(number, "duplicate @relation");
      seen_relation = true;
      h.relation = take_name(line.substr(9), number).first;
    } else if (starts_with_keyword(line, "@attribute")) {
      if (!seen_relation) throw ParseError(number, "@attribute before @relation");
      h.attributes.push_back(parse_attribute(line.substr(10), number));
    } else if (starts_with_keyword(line, "@data")) {
      if (!seen_relation) throw ParseError(number, "@data before @relation");
      h.has_data = true;
      ++i;
      break;
    } else {
      throw ParseError(number, "unexpected header line '" + std::string(line) + "'");
    }
  }
  if (!seen_relation) throw ParseError(lines.empty() ? 1 : lines.back().number, "missing @relation");
  h.data_index = i;
  return h;
}

Schema schema_from_header(const Header& h, std::size_t line) {
  if (h.attributes.empty()) throw ParseError(line, "no attributes declared");
  const auto& cls = h.attributes.back();
  if (!cls.is_qualitative()) {
    throw ParseError(line, "class attribute '" + cls.name + "' must be nominal");
  }
  if (cls.cardinality() < 2) {
    throw ParseError(line, "class attribute '" + cls.name + "' needs at least two values");
  }
  std::vector<Attribute> attrs(h.attributes.begin(), h.attributes.end() - 1);
  return Schema(std::move(attrs), cls.name, cls.values, h.relation);
}

}  // namespace

Schema parse_arff_schema(std::string_view text) {
  auto lines = split_lines(text);
  auto header = parse_header(lines);
  return schema_from_header(header, lines.empty() ? 1 : lines[header.data_index - 1].number);
}

Dataset parse_arff(std::string_view text) {
  auto lines = split_lines(text);
  auto header = parse_header(lines);
  const std::size_t at_line = lines.empty() ? 1 : lines[header.data_index - 1].number;
  if (!header.has_data) throw ParseError(at_line, "missing @data section");
  Schema schema = schema_from_header(header, at_line);

  const std::size_t n = schema.size();
  std::vector<double> cells;
  std::vector<ClassIndex> labels;
  for (std::size_t i = header.data_index; i < lines.size(); ++i) {
    const auto& [number, raw] = lines[i];
    if (is_blank_or_comment(raw)) continue;
    auto line = trim(raw);
    if (line.front() == '{') throw ParseError(number, "sparse rows are not supported");
    auto fields = detail::split_fields(line, ',');
    if (!fields) throw ParseError(number, "unterminated quote");
    if (fields->size() != n + 1) {
      throw ParseError(number, "expected " + std::to_string(n + 1) + " values, found " +
                                   std::to_string(fields->size()));
    }
    for (std::size_t a = 0; a < n; ++a) {
      const auto& field = (*fields)[a];
      const auto& attr = schema.attribute(a);
      if (field == "?") {
        cells.push_back(kMissing);
      } else if (attr.is_qualitative()) {
        auto idx = attr.find_value(field);
        if (!idx) {
          throw ParseError(number, "value '" + field + "' not declared for attribute '" +
                                       attr.name + "'");
        }
        cells.push_back(static_cast<double>(*idx));
      } else {
        auto v = detail::parse_double(field);
        if (!v) {
          throw ParseError(number, "cannot parse '" + field + "' as a number for attribute '" +
                                       attr.name + "'");
        }
        cells.push_back(*v);
      }
    }
    const auto& cls = (*fields)[n];
    if (cls == "?") throw ParseError(number, "missing class value");
    auto y = schema.find_class(cls);
    if (!y) throw ParseError(number, "class value '" + cls + "' not declared");
    labels.push_back(*y);
  }
  if (labels.empty()) throw ParseError(at_line, "no data rows");
  return Dataset(std::move(schema), std::move(cells), std::move(labels));
}

std::string write_arff(const Dataset& data) {
  using detail::quote_token;
  const auto& schema = data.schema();
  std::ostringstream out;
  out << "@relation " << quote_token(schema.relation()) << "\n\n";
  auto write_nominal = [&](const std::string& name, const std::vector<std::string>& values) {
    out << "@attribute " << quote_token(name) << " {";
    for (std::size_t j = 0; j < values.size(); ++j) {
      out << (j ? "," : "") << quote_token(values[j]);
    }
    out << "}\n";
  };
  for (const auto& attr : schema.attributes()) {
    if (attr.is_qualitative()) {
      write_nominal(attr.name, attr.values);
    } else {
      out << "@attribute " << quote_token(attr.name) << " numeric\n";
    }
  }
  write_nominal(schema.class_name(), schema.class_labels());
  out << "\n@data\n";
  for (std::size_t r = 0; r < data.size(); ++r) {
    for (std::size_t a = 0; a < data.num_attributes(); ++a) {
      const double v = data.at(r, a);
      const auto& attr = schema.attribute(a);
      if (is_missing(v)) {
        out << '?';
      } else if (attr.is_qualitative()) {
        out << quote_token(attr.values[static_cast<std::size_t>(v)]);
      } else {
        out << detail::format_double(v);
      }
      out << ',';
    }
    out << quote_token(schema.class_labels()[data.label(r)]) << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lincls
