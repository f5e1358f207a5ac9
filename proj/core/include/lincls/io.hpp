#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lincls/dataset.hpp"

namespace lincls {

/// Reads the ARFF subset used throughout: `@relation`, numeric
/// (numeric/real/integer) and nominal `{a,b,c}` attributes, `@data` rows with
/// `?` for missing cells. The last attribute is the class and must be
/// nominal. Sparse rows and string/date attributes are rejected.
/// Throws ParseError naming the offending line.
Dataset parse_arff(std::string_view text);

/// Writes a dataset in the format accepted by parse_arff. Numbers are printed
/// with enough digits to reparse to the same double.
std::string write_arff(const Dataset& data);

/// Reads comma-separated text whose header row lists the schema's attribute
/// names followed by its class name. Empty cells and `?` are missing.
Dataset parse_csv(std::string_view text, const Schema& schema);

/// Parses only the header of an ARFF document (no @data required).
Schema parse_arff_schema(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace lincls
