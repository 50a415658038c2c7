#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace hatano {

/// Shortest text that reads back to the same double ("%.17g"; inf/nan as
/// "inf", "-inf", "nan").
std::string format_double(double x);
double parse_double(std::string_view s);  // throws SchemaError

/// Minimal CSV writer: comma separated, no quoting (fields never contain
/// commas), '\n' line endings, fixed column count.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  template <class... Fields>
  void row(const Fields&... fields) {
    std::vector<std::string> cells;
    cells.reserve(sizeof...(Fields));
    (cells.push_back(cell(fields)), ...);
    push(cells);
  }

  void push(const std::vector<std::string>& cells);
  const std::string& str() const { return text_; }
  std::size_t rows() const { return rows_; }

 private:
  template <class T>
  static std::string cell(const T& x) {
    if constexpr (std::is_same_v<T, bool>) {
      return x ? "1" : "0";
    } else if constexpr (std::is_floating_point_v<T>) {
      return format_double(static_cast<double>(x));
    } else if constexpr (std::is_integral_v<T>) {
      return std::to_string(x);
    } else if constexpr (std::is_convertible_v<T, std::string_view>) {
      return std::string(std::string_view(x));
    } else {
      if (!x) return std::string();
      return cell(*x);
    }
  }

  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string text_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column; throws SchemaError if absent.
  std::size_t column(std::string_view name) const;
};

/// Parses text written by CsvWriter. Throws SchemaError on ragged rows.
CsvTable parse_csv(const std::string& text);

}  // namespace hatano
