#include "rwrs/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace rwrs {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string cell_to_string(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        if constexpr (std::is_same_v<T, double>) return format_double(v);
        if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        if constexpr (std::is_same_v<T, std::string>) return v;
      },
      cell);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("Table requires columns");
}

void Table::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns_.size())
    throw std::invalid_argument("Table row width differs from header");
  rows_.push_back(std::move(cells));
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    os << (i ? "," : "") << csv_escape(columns_[i]);
  os << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << csv_escape(cell_to_string(row[i]));
    os << "\n";
  }
}

void Table::write_jsonl(std::ostream& os) const {
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (std::holds_alternative<double>(c)) {
        const double x = std::get<double>(c);
        if (std::isfinite(x)) obj[columns_[i]] = x;
        else obj[columns_[i]] = format_double(x);  // JSON has no inf/nan
      } else if (std::holds_alternative<std::int64_t>(c)) {
        obj[columns_[i]] = std::get<std::int64_t>(c);
      } else if (std::holds_alternative<bool>(c)) {
        obj[columns_[i]] = std::get<bool>(c);
      } else {
        obj[columns_[i]] = std::get<std::string>(c);
      }
    }
    os << obj.dump() << "\n";
  }
}

}  // namespace rwrs
