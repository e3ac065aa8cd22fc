#include "citenet/common/csv.hpp"

#include "citenet/common/error.hpp"

namespace citenet {

namespace {

bool needs_quotes(std::string_view text) {
  return text.find_first_of(",\"\r\n") != std::string_view::npos;
}

}  // namespace

CsvWriter& CsvWriter::field(std::string_view text, bool force_quote) {
  if (!first_) out_.put(',');
  first_ = false;
  if (force_quote || needs_quotes(text)) {
    out_.put('"');
    for (char c : text) {
      if (c == '"') out_.put('"');
      out_.put(c);
    }
    out_.put('"');
  } else {
    out_.write(text.data(), static_cast<std::streamsize>(text.size()));
  }
  return *this;
}

void CsvWriter::end_row() {
  out_.put('\n');
  first_ = true;
}

void CsvWriter::row(std::initializer_list<std::string_view> fields) {
  for (auto f : fields) field(f);
  end_row();
}

bool CsvReader::next(CsvRow& row) {
  row.clear();
  int c = in_.get();
  if (c == std::char_traits<char>::eof()) return false;
  row_line_ = line_;

  CsvCell cell;
  for (;;) {
    if (c == '"' && cell.text.empty() && !cell.quoted) {
      cell.quoted = true;
      for (;;) {
        c = in_.get();
        if (c == std::char_traits<char>::eof()) {
          throw FormatError("unterminated quoted CSV field starting on line " + std::to_string(row_line_));
        }
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            cell.text.push_back('"');
            continue;
          }
          break;
        }
        if (c == '\n') ++line_;
        cell.text.push_back(static_cast<char>(c));
      }
      c = in_.get();
      continue;
    }
    if (c == ',') {
      row.push_back(std::move(cell));
      cell = CsvCell{};
      c = in_.get();
      continue;
    }
    if (c == '\r' && in_.peek() == '\n') {
      c = in_.get();
    }
    if (c == '\n' || c == std::char_traits<char>::eof()) {
      if (c == '\n') ++line_;
      row.push_back(std::move(cell));
      return true;
    }
    cell.text.push_back(static_cast<char>(c));
    c = in_.get();
  }
}

void expect_header(const CsvRow& row, std::initializer_list<std::string_view> expected, std::string_view source) {
  bool ok = row.size() == expected.size();
  if (ok) {
    std::size_t i = 0;
    for (auto name : expected) {
      if (row[i++].text != name) {
        ok = false;
        break;
      }
    }
  }
  if (!ok) {
    std::string want;
    for (auto name : expected) {
      if (!want.empty()) want += ',';
      want += name;
    }
    throw FormatError(std::string(source) + ": expected CSV header '" + want + "'");
  }
}

std::ofstream open_output(const std::filesystem::path& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_input(const std::filesystem::path& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

}  // namespace citenet
