#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hurstlab {

/// A flat result table: named columns, homogeneous-width rows.
/// std::monostate marks a missing cell (empty CSV field, JSON null).
struct Table {
    using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);

    [[nodiscard]] std::size_t n_rows() const noexcept { return rows.size(); }
    [[nodiscard]] std::size_t n_cols() const noexcept { return columns.size(); }
};

enum class TableFormat { csv, json };

/// Serialize deterministically: fixed column order, reals rendered with 17
/// significant digits (round-trippable), RFC-4180 quoting for CSV.
///
/// A non-empty `comment` is written as a leading `# ...` line in CSV; for
/// JSON it switches the document from a plain array of flat records to
/// {"config": comment, "rows": [...]}.
void write_table(const Table& table, TableFormat format, std::ostream& sink,
                 std::string_view comment = {});

[[nodiscard]] std::string to_string(const Table& table, TableFormat format,
                                    std::string_view comment = {});

/// Read back a numeric CSV table: `#` comment lines are skipped, the first
/// remaining line is the header, empty fields become missing cells.
[[nodiscard]] Table read_numeric_csv(std::istream& source);
[[nodiscard]] Table read_numeric_csv(std::string_view text);

/// %.17g rendering used for all reals in tables.
[[nodiscard]] std::string format_double(double value);

}  // namespace hurstlab
