#pragma once

#include <iosfwd>
#include <string_view>

#include "hurstlab/series.hpp"
#include "hurstlab/tick.hpp"

namespace hurstlab {

struct CsvConfig {
    char delimiter = ',';
    int skip_rows = 0;  ///< leading lines to discard before data
};

/// Parse headerless `unixtime,price,volume` rows into a TickSeries.
///
/// Records are stable-sorted by timestamp, so out-of-order files are accepted
/// and ties keep arrival order. Row count is preserved exactly: every line is
/// either a record or a reported error. NaN/inf tokens, non-positive prices
/// and negative volumes are rejected with the offending line number.
TickSeries parse_tick_csv(std::istream& source, const CsvConfig& config = {});
TickSeries parse_tick_csv(std::string_view text, const CsvConfig& config = {});

/// Parse `date,close` rows (ISO-8601 dates, header line required) into a
/// daily PriceSeries. Dates must be strictly increasing; calendar gaps are
/// preserved as-is, never interpolated. The result uses interval = 0 with
/// per-point timestamps (midnight UTC of each date).
PriceSeries parse_daily_csv(std::istream& source, const CsvConfig& config = {});
PriceSeries parse_daily_csv(std::string_view text, const CsvConfig& config = {});

namespace detail {
/// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(int year, int month, int day);
}  // namespace detail

}  // namespace hurstlab
