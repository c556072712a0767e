#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace bfdr::cli {

/// An empty cell is written as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, std::string, std::int64_t, double, bool>;

enum class Format { csv, json };

class Table {
 public:
  Table(std::string command, std::vector<std::string> columns);

  void add(std::vector<Cell> row);
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t size() const { return rows_.size(); }

  void write(std::ostream& os, Format format) const;

 private:
  std::string command_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Ten significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double x);

inline Cell opt_cell(const std::optional<int>& v) {
  return v ? Cell{static_cast<std::int64_t>(*v)} : Cell{};
}

}  // namespace bfdr::cli
