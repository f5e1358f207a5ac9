#include "lincls/error.hpp"

namespace lincls {

ParseError::ParseError(std::size_t line, const std::string& what)
    : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

}  // namespace lincls
