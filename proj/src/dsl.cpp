#include "divlink/dsl.h"

#include <cctype>
#include <fstream>
#include <sstream>

namespace divlink {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

class LineScanner {
 public:
  LineScanner(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  void skip_space() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }
  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = pos_ < line_.size() ? "'" + std::string(1, line_[pos_]) + "'" : "end of line";
    throw ParseError(ErrorCode::SyntaxError, line_no_, pos_ + 1,
                     "expected " + expected + ", found " + found);
  }
  std::string_view word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < line_.size() && std::isalnum(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    return line_.substr(start, pos_ - start);
  }
  void keyword(std::string_view expected) {
    skip_space();
    const std::size_t start = pos_;
    if (word() != expected) {
      pos_ = start;
      fail("'" + std::string(expected) + "'");
    }
  }
  void symbol(char c) {
    skip_space();
    if (pos_ >= line_.size() || line_[pos_] != c) fail(std::string("'") + c + "'");
    ++pos_;
  }
  bool peek(char c) {
    skip_space();
    return pos_ < line_.size() && line_[pos_] == c;
  }
  std::size_t column() const { return pos_ + 1; }

  Rational number() {
    skip_space();
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) ++pos_;
      return pos_ - from;
    };
    if (pos_ < line_.size() && (line_[pos_] == '-' || line_[pos_] == '+')) ++pos_;
    const std::size_t int_digits = digits();
    if (pos_ < line_.size() && line_[pos_] == '/') {
      if (int_digits == 0) fail("a number");
      ++pos_;
      if (digits() == 0) fail("a denominator");
    } else if (pos_ < line_.size() && line_[pos_] == '.') {
      ++pos_;
      if (digits() == 0 && int_digits == 0) {
        pos_ = start;
        fail("a number");
      }
    } else if (int_digits == 0) {
      pos_ = start;
      fail("a number");
    }
    const std::string_view token = line_.substr(start, pos_ - start);
    try {
      return parse_rational(token);
    } catch (const std::invalid_argument& e) {
      throw ParseError(ErrorCode::SyntaxError, line_no_, start + 1,
                       "invalid number '" + std::string(token) + "': " + e.what());
    }
  }

  Point2 point() {
    symbol('(');
    const std::size_t cx = column();
    Rational x = number();
    symbol(',');
    const std::size_t cy = column();
    Rational y = number();
    symbol(')');
    check_range(x, cx);
    check_range(y, cy);
    return {x, y};
  }

 private:
  void check_range(const Rational& v, std::size_t col) const {
    if (v < -1 || v > 1)
      throw ParseError(ErrorCode::RangeError, line_no_, col,
                       "coordinate " + to_string(v) + " is outside [-1, 1]");
  }

  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

// Splits "# key: value" comments; returns false for ordinary comments.
bool metadata(std::string_view comment, std::string_view key, std::string& value) {
  comment = trim(comment);
  if (comment.substr(0, key.size()) != key) return false;
  comment.remove_prefix(key.size());
  if (comment.empty() || comment.front() != ':') return false;
  value = std::string(trim(comment.substr(1)));
  return true;
}

std::string one_line(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (c == '\n' || c == '\r') c = ' ';
  return std::string(trim(out));
}

}  // namespace

DivideDocument parse_document(std::string_view text) {
  DivideDocument doc;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::string_view body = line;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      std::string value;
      const std::string_view comment = line.substr(hash + 1);
      if (trim(line.substr(0, hash)).empty()) {
        if (metadata(comment, "name", value))
          doc.name = value;
        else if (metadata(comment, "comment", value))
          doc.comment = value;
      }
      body = line.substr(0, hash);
    }
    if (trim(body).empty()) {
      if (end == text.size()) break;
      continue;
    }

    LineScanner scan(body, line_no);
    if (!header_seen) {
      scan.keyword("divide");
      scan.keyword("v1");
      if (!scan.at_end()) scan.fail("end of line");
      header_seen = true;
    } else {
      scan.keyword("branch");
      Branch branch;
      scan.skip_space();
      const std::size_t kind_col = scan.column();
      const std::string_view kind = scan.word();
      if (kind == "open")
        branch.kind = BranchKind::Open;
      else if (kind == "closed")
        branch.kind = BranchKind::Closed;
      else
        throw ParseError(ErrorCode::SyntaxError, line_no, kind_col, "expected 'open' or 'closed'");
      scan.symbol(':');
      branch.vertices.push_back(scan.point());
      while (!scan.at_end()) branch.vertices.push_back(scan.point());
      doc.branches.push_back(std::move(branch));
    }
    if (end == text.size()) break;
  }
  if (!header_seen) throw ParseError(ErrorCode::SyntaxError, 1, 1, "expected 'divide v1' header");
  return doc;
}

std::string serialize(const DivideDocument& doc) {
  std::string out = "divide v" + std::to_string(doc.version) + "\n";
  if (doc.name) out += "# name: " + one_line(*doc.name) + "\n";
  if (doc.comment) out += "# comment: " + one_line(*doc.comment) + "\n";
  for (const Branch& b : doc.branches) {
    out += b.closed() ? "branch closed:" : "branch open:";
    for (const Point2& p : b.vertices) out += " " + to_string(p);
    out += "\n";
  }
  return out;
}

DivideDocument to_document(const Divide& divide, std::optional<std::string> name) {
  DivideDocument doc;
  doc.branches = divide.branches();
  doc.name = std::move(name);
  return doc;
}

DivideDocument read_document_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SyntaxError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

}  // namespace divlink
