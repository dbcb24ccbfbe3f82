#include "citeval/csv.hpp"

#include <algorithm>

#include "citeval/error.hpp"

namespace citeval::csv {

std::string_view trim(std::string_view s) noexcept {
  constexpr std::string_view ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(std::string_view line, std::size_t row) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"' && trim(cur).empty()) {
      cur.clear();
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      fields.emplace_back(was_quoted ? cur : std::string(trim(cur)));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(ch);
    }
  }
  require_row(!quoted, row, "unterminated quoted field");
  fields.emplace_back(was_quoted ? cur : std::string(trim(cur)));
  return fields;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> Reader::header() {
  auto h = next();
  if (!h) throw ValidationError("empty file: missing header row");
  // Strip a UTF-8 byte-order mark from the first column.
  if (!h->empty() && (*h)[0].rfind("\xEF\xBB\xBF", 0) == 0) (*h)[0].erase(0, 3);
  return *h;
}

std::optional<std::vector<std::string>> Reader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++row_;
    if (trim(line).empty()) continue;
    return split_line(line, row_);
  }
  return std::nullopt;
}

std::optional<std::size_t> find_column(const std::vector<std::string>& columns,
                                       std::string_view name) {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) return std::nullopt;
  return static_cast<std::size_t>(it - columns.begin());
}

}  // namespace citeval::csv
