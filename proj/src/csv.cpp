#include "hurstlab/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>

#include "hurstlab/error.hpp"

namespace hurstlab {

namespace {

// Splits on `delim` without any quoting: tick/daily files are plain numeric.
std::vector<std::string_view> split_fields(std::string_view line, char delim) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view field, long line_no, const char* what) {
    field = trim(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw Error(errc::parse,
                    "cannot parse " + std::string(what) + " '" + std::string(field) + "'",
                    line_no);
    }
    if (!std::isfinite(value)) {
        throw Error(errc::parse, std::string(what) + " is not finite", line_no);
    }
    return value;
}

std::int64_t parse_timestamp(std::string_view field, long line_no) {
    field = trim(field);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw Error(errc::parse, "cannot parse timestamp '" + std::string(field) + "'", line_no);
    }
    if (value < 0) {
        throw Error(errc::validation, "negative timestamp", line_no);
    }
    return value;
}

bool all_digits(std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

// ISO-8601 calendar date (YYYY-MM-DD) -> epoch seconds at midnight UTC.
std::int64_t parse_iso_date(std::string_view field, long line_no) {
    field = trim(field);
    if (field.size() != 10 || field[4] != '-' || field[7] != '-' ||
        !all_digits(field.substr(0, 4)) || !all_digits(field.substr(5, 2)) ||
        !all_digits(field.substr(8, 2))) {
        throw Error(errc::parse, "cannot parse date '" + std::string(field) + "'", line_no);
    }
    const int year = (field[0] - '0') * 1000 + (field[1] - '0') * 100 + (field[2] - '0') * 10 +
                     (field[3] - '0');
    const int month = (field[5] - '0') * 10 + (field[6] - '0');
    const int day = (field[8] - '0') * 10 + (field[9] - '0');

    static constexpr int days_in_month[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    const int dim = days_in_month[month >= 1 && month <= 12 ? month - 1 : 0] +
                    (month == 2 && leap ? 1 : 0);
    if (month < 1 || month > 12 || day < 1 || day > dim) {
        throw Error(errc::parse, "invalid calendar date '" + std::string(field) + "'", line_no);
    }
    return detail::days_from_civil(year, month, day) * 86400;
}

// Yields successive lines with trailing '\r' stripped.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        if (!std::getline(in_, line)) return false;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++line_no_;
        return true;
    }

    [[nodiscard]] long line_no() const noexcept { return line_no_; }

private:
    std::istream& in_;
    long line_no_ = 0;
};

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

TickSeries parse_tick_csv(std::istream& source, const CsvConfig& config) {
    TickSeries out;
    LineReader reader(source);
    std::string line;
    for (int i = 0; i < config.skip_rows; ++i) {
        if (!reader.next(line)) break;
    }
    while (reader.next(line)) {
        if (line.empty()) continue;
        const auto fields = split_fields(line, config.delimiter);
        if (fields.size() != 3) {
            throw Error(errc::parse,
                        "expected 3 fields (unixtime,price,volume), got " +
                            std::to_string(fields.size()),
                        reader.line_no());
        }
        TickRecord rec;
        rec.timestamp = parse_timestamp(fields[0], reader.line_no());
        rec.price = parse_real(fields[1], reader.line_no(), "price");
        rec.volume = parse_real(fields[2], reader.line_no(), "volume");
        if (rec.price <= 0.0) {
            throw Error(errc::validation, "non-positive price", reader.line_no());
        }
        if (rec.volume < 0.0) {
            throw Error(errc::validation, "negative volume", reader.line_no());
        }
        out.records.push_back(rec);
    }
    if (out.records.empty()) {
        throw Error(errc::parse, "no tick rows found: empty or wrong file");
    }
    std::stable_sort(out.records.begin(), out.records.end(),
                     [](const TickRecord& a, const TickRecord& b) {
                         return a.timestamp < b.timestamp;
                     });
    return out;
}

TickSeries parse_tick_csv(std::string_view text, const CsvConfig& config) {
    std::istringstream in{std::string(text)};
    return parse_tick_csv(in, config);
}

PriceSeries parse_daily_csv(std::istream& source, const CsvConfig& config) {
    PriceSeries out;
    out.interval = 0;
    LineReader reader(source);
    std::string line;
    for (int i = 0; i < config.skip_rows; ++i) {
        if (!reader.next(line)) break;
    }

    if (!reader.next(line)) {
        throw Error(errc::parse, "no daily rows found: empty or wrong file");
    }
    {
        const auto header = split_fields(line, config.delimiter);
        if (header.size() != 2 || lowercase(trim(header[0])) != "date" ||
            lowercase(trim(header[1])) != "close") {
            throw Error(errc::parse, "expected 'date,close' header", reader.line_no());
        }
    }

    while (reader.next(line)) {
        if (line.empty()) continue;
        const auto fields = split_fields(line, config.delimiter);
        if (fields.size() != 2) {
            throw Error(errc::parse,
                        "expected 2 fields (date,close), got " + std::to_string(fields.size()),
                        reader.line_no());
        }
        const std::int64_t ts = parse_iso_date(fields[0], reader.line_no());
        const double close = parse_real(fields[1], reader.line_no(), "close");
        if (close <= 0.0) {
            throw Error(errc::validation, "non-positive price", reader.line_no());
        }
        if (!out.labels.empty() && ts <= out.labels.back()) {
            throw Error(errc::validation,
                        ts == out.labels.back() ? "duplicate date" : "decreasing date",
                        reader.line_no());
        }
        out.labels.push_back(ts);
        out.prices.push_back(close);
    }
    if (out.prices.empty()) {
        throw Error(errc::parse, "no daily rows found: empty or wrong file");
    }
    out.grid_start = out.labels.front();
    return out;
}

PriceSeries parse_daily_csv(std::string_view text, const CsvConfig& config) {
    std::istringstream in{std::string(text)};
    return parse_daily_csv(in, config);
}

namespace detail {

std::int64_t days_from_civil(int year, int month, int day) {
    year -= month <= 2;
    const std::int64_t era = (year >= 0 ? year : year - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(year - era * 400);
    const unsigned doy =
        static_cast<unsigned>((153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

}  // namespace detail

}  // namespace hurstlab
