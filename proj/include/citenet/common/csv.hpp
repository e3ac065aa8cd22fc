#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace citenet {

/// One parsed CSV field. `quoted` distinguishes `""` (present, empty) from an
/// empty unquoted cell, which the record formats use to encode "absent".
struct CsvCell {
  std::string text;
  bool quoted = false;
};

using CsvRow = std::vector<CsvCell>;

/// RFC-4180 writer. Fields containing a delimiter, quote, CR or LF are quoted
/// and embedded quotes doubled. Rows end with '\n'.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  CsvWriter& field(std::string_view text, bool force_quote = false);
  void end_row();
  void row(std::initializer_list<std::string_view> fields);

 private:
  std::ostream& out_;
  bool first_ = true;
};

/// RFC-4180 reader accepting LF or CRLF row terminators.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// Reads the next row; returns false at end of input. Throws FormatError on
  /// an unterminated quoted field.
  bool next(CsvRow& row);

  /// 1-based line on which the most recently returned row started.
  std::size_t row_line() const { return row_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t row_line_ = 0;
};

/// Throws FormatError unless `row` equals `expected` cell by cell.
void expect_header(const CsvRow& row, std::initializer_list<std::string_view> expected, std::string_view source);

std::ofstream open_output(const std::filesystem::path& path, bool binary = false);
std::ifstream open_input(const std::filesystem::path& path, bool binary = false);

}  // namespace citenet
