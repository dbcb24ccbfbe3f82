#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace citeval::csv {

std::string_view trim(std::string_view s) noexcept;

/// Splits one CSV record. Double-quoted fields may contain commas and
/// doubled quotes; embedded newlines are not supported.
std::vector<std::string> split_line(std::string_view line, std::size_t row);

/// Quotes a field only when it needs it.
std::string escape(std::string_view field);

/// Line-oriented reader that tracks 1-based physical line numbers
/// (the header is line 1) and skips blank lines.
class Reader {
public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Reads the header and returns its trimmed column names.
  std::vector<std::string> header();

  /// Next record, or nullopt at end of stream.
  std::optional<std::vector<std::string>> next();

  std::size_t row() const noexcept { return row_; }

private:
  std::istream& in_;
  std::size_t row_ = 0;
};

/// Index of `name` in `columns`, or nullopt.
std::optional<std::size_t> find_column(const std::vector<std::string>& columns,
                                       std::string_view name);

}  // namespace citeval::csv
