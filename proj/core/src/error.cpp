#include "citeval/error.hpp"

namespace citeval {

void require_row(bool ok, std::size_t row, const std::string& reason) {
  if (!ok) {
    throw ValidationError("row " + std::to_string(row) + ": " + reason);
  }
}

}  // namespace citeval
