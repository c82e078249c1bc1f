#pragma once

#include "divlink/divide.h"
#include "divlink/error.h"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace divlink {

/// Parsed contents of a ".divide" file. Branches are not validated here.
struct DivideDocument {
  int version = 1;
  std::vector<Branch> branches;
  std::optional<std::string> name;
  std::optional<std::string> comment;

  friend bool operator==(const DivideDocument&, const DivideDocument&) = default;
};

/// SyntaxError or RangeError with the 1-based position of the offending token.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, std::size_t column, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                        message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Grammar:
///   file   := "divide" "v1" NL {branch}
///   branch := "branch" ("open"|"closed") ":" point {point} NL
///   point  := "(" num "," num ")"
///   num    := DECIMAL | INT "/" INT
/// `#` starts a comment. The comments "# name: ..." and "# comment: ..." carry metadata.
DivideDocument parse_document(std::string_view text);

/// Canonical text: header, metadata comments, one branch per line, coordinates
/// in lowest terms, LF line endings.
std::string serialize(const DivideDocument& doc);

DivideDocument to_document(const Divide& divide, std::optional<std::string> name = std::nullopt);

/// Reads and parses a ".divide" file. An unreadable file is a SyntaxError.
DivideDocument read_document_file(const std::string& path);

}  // namespace divlink
