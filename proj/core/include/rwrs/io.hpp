#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace rwrs {

// Shortest round-trip decimal form; locale-independent and bit-stable.
std::string format_double(double x);

using Cell = std::variant<std::int64_t, double, bool, std::string>;

std::string cell_to_string(const Cell& cell);

// Column-typed result table writable as RFC-4180-style CSV (header + rows)
// or as JSON lines (one object per row).
class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<Cell> cells);
  std::size_t rows() const noexcept { return rows_.size(); }
  const std::vector<std::string>& columns() const noexcept { return columns_; }

  void write_csv(std::ostream& os) const;
  void write_jsonl(std::ostream& os) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace rwrs
