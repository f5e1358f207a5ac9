#pragma once

#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lincls::detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

/// Splits on `sep`, honouring single and double quotes. Quotes are removed
/// and fields trimmed. Returns nullopt on an unterminated quote.
inline std::optional<std::vector<std::string>> split_fields(std::string_view line, char sep) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted_field = false;
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quote != 0) {
      if (c == '\\' && i + 1 < line.size()) {
        current.push_back(line[++i]);
      } else if (c == quote) {
        quote = 0;
      } else {
        current.push_back(c);
      }
    } else if (c == '\'' || c == '"') {
      if (trim(current).empty()) current.clear();
      quote = c;
      quoted_field = true;
    } else if (c == sep) {
      fields.push_back(quoted_field ? current : std::string(trim(current)));
      current.clear();
      quoted_field = false;
    } else if (quoted_field && std::isspace(static_cast<unsigned char>(c))) {
      // whitespace after a closing quote
    } else {
      current.push_back(c);
    }
  }
  if (quote != 0) return std::nullopt;
  fields.push_back(quoted_field ? current : std::string(trim(current)));
  return fields;
}

/// Quotes a token for ARFF output when it contains separators or spaces.
inline std::string quote_token(std::string_view s) {
  bool needs = s.empty();
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '{' || c == '}' ||
        c == '\'' || c == '"' || c == '%' || c == '?' || c == '\\') {
      needs = true;
      break;
    }
  }
  if (!needs) return std::string(s);
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace lincls::detail
