#include "hurstlab/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "hurstlab/error.hpp"

namespace hurstlab {

namespace {

bool needs_csv_quoting(std::string_view s) {
    return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

void write_csv_field(std::ostream& out, std::string_view s) {
    if (!needs_csv_quoting(s)) {
        out << s;
        return;
    }
    out << '"';
    for (const char c : s) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

void write_json_string(std::ostream& out, std::string_view s) {
    out << '"';
    for (const char c : s) {
        switch (c) {
            case '"': out << "\\\""; break;
            case '\\': out << "\\\\"; break;
            case '\n': out << "\\n"; break;
            case '\r': out << "\\r"; break;
            case '\t': out << "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out << buf;
                } else {
                    out << c;
                }
        }
    }
    out << '"';
}

void write_cell_csv(std::ostream& out, const Table::Cell& cell) {
    if (std::holds_alternative<std::monostate>(cell)) return;  // missing -> empty field
    if (const auto* d = std::get_if<double>(&cell)) {
        out << format_double(*d);
    } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        out << *i;
    } else {
        write_csv_field(out, std::get<std::string>(cell));
    }
}

void write_cell_json(std::ostream& out, const Table::Cell& cell) {
    if (std::holds_alternative<std::monostate>(cell)) {
        out << "null";
    } else if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isfinite(*d)) {
            out << format_double(*d);
        } else {
            out << "null";  // JSON has no NaN/inf
        }
    } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        out << *i;
    } else {
        write_json_string(out, std::get<std::string>(cell));
    }
}

void write_csv(const Table& table, std::ostream& out, std::string_view comment) {
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out << ',';
        write_csv_field(out, table.columns[c]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << ',';
            write_cell_csv(out, row[c]);
        }
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out, std::string_view comment) {
    const char* indent = comment.empty() ? "" : "  ";
    if (!comment.empty()) {
        out << "{\n  \"config\": ";
        write_json_string(out, comment);
        out << ",\n  \"rows\": ";
    }
    out << "[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out << (r == 0 ? "\n" : ",\n") << indent << "  {";
        for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
            if (c > 0) out << ", ";
            write_json_string(out, table.columns[c]);
            out << ": ";
            write_cell_json(out, table.rows[r][c]);
        }
        out << "}";
    }
    if (!table.rows.empty()) out << '\n' << indent;
    out << "]";
    if (!comment.empty()) out << "\n}";
    out << '\n';
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw Error(errc::invalid_argument,
                    "row width " + std::to_string(row.size()) + " does not match " +
                        std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
}

std::string format_double(double value) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(len));
}

void write_table(const Table& table, TableFormat format, std::ostream& sink,
                 std::string_view comment) {
    if (format == TableFormat::csv) {
        write_csv(table, sink, comment);
    } else {
        write_json(table, sink, comment);
    }
    if (!sink) {
        throw Error(errc::io, "write to output sink failed");
    }
}

std::string to_string(const Table& table, TableFormat format, std::string_view comment) {
    std::ostringstream out;
    write_table(table, format, out, comment);
    return out.str();
}

Table read_numeric_csv(std::istream& source) {
    Table table;
    std::string line;
    bool have_header = false;
    long line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find(',', start);
            fields.push_back(line.substr(start, pos == std::string::npos ? pos : pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }

        if (!have_header) {
            table.columns = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.columns.size()) {
            throw Error(errc::parse,
                        "expected " + std::to_string(table.columns.size()) + " fields, got " +
                            std::to_string(fields.size()),
                        line_no);
        }
        std::vector<Table::Cell> row;
        row.reserve(fields.size());
        for (const std::string& field : fields) {
            if (field.empty()) {
                row.emplace_back(std::monostate{});
                continue;
            }
            double value = 0.0;
            const auto [ptr, ec] =
                std::from_chars(field.data(), field.data() + field.size(), value);
            if (ec != std::errc{} || ptr != field.data() + field.size()) {
                throw Error(errc::parse, "cannot parse number '" + field + "'", line_no);
            }
            row.emplace_back(value);
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) {
        throw Error(errc::parse, "no table header found");
    }
    return table;
}

Table read_numeric_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_numeric_csv(in);
}

}  // namespace hurstlab
