#pragma once

#include <cstdint>
#include <vector>

namespace hurstlab {

/// One trade: epoch timestamp (seconds), price in quote currency, traded quantity.
struct TickRecord {
    std::int64_t timestamp = 0;
    double price = 0.0;
    double volume = 0.0;
};

/// Trades ordered by non-decreasing timestamp; equal timestamps keep arrival order.
struct TickSeries {
    std::vector<TickRecord> records;

    [[nodiscard]] std::size_t size() const noexcept { return records.size(); }
    [[nodiscard]] bool empty() const noexcept { return records.empty(); }
};

}  // namespace hurstlab
