#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hurstlab/tick.hpp"

namespace hurstlab {

/// Prices on a fixed time grid.
///
/// `interval == 0` marks an "as-provided" grid (e.g. trading-day data with
/// weekend gaps); spacing is then defined by `labels`. Regular grids produced
/// by resampling leave `labels` empty and derive timestamps from
/// `grid_start + i * interval`.
struct PriceSeries {
    std::int64_t grid_start = 0;
    std::int64_t interval = 0;  ///< seconds between points; 0 = as-provided grid
    std::vector<double> prices;
    std::vector<std::int64_t> labels;  ///< per-point timestamps; empty for regular grids

    [[nodiscard]] std::size_t size() const noexcept { return prices.size(); }

    [[nodiscard]] std::int64_t timestamp_at(std::size_t i) const {
        return labels.empty() ? grid_start + static_cast<std::int64_t>(i) * interval
                              : labels[i];
    }
};

/// Log returns r_t = scale * (ln P_{t+1} - ln P_t) on the source grid.
/// `labels[i]` is the timestamp of the later price point, when known.
struct ReturnSeries {
    std::vector<double> values;
    double scale = 100.0;
    std::int64_t interval = 0;
    std::vector<std::int64_t> labels;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

enum class GapPolicy {
    carry_forward,  ///< repeat the previous grid price over empty intervals
    fail,           ///< error out when a sampling interval contains no trade
};

/// How to turn irregular ticks into a regular price grid.
struct SamplingSpec {
    /// Auto anchor: first tick timestamp rounded up to a whole hour.
    static constexpr std::int64_t kAutoAnchor = -1;

    int interval_hours = 5;  ///< must lie in [1, 168]
    std::int64_t anchor = kAutoAnchor;
    GapPolicy gap_policy = GapPolicy::carry_forward;
};

/// Sample the last trade price at or before each grid point.
///
/// The grid runs from the anchor to the last tick in steps of
/// `interval_hours`; grid points past the last tick are not extrapolated.
PriceSeries resample_last(const TickSeries& ticks, const SamplingSpec& spec);

/// r_t = scale * (ln P_{t+1} - ln P_t); length = len(prices) - 1.
ReturnSeries log_returns(const PriceSeries& prices, double scale = 100.0);

/// Contiguous read-only views of `length` values starting at offsets
/// 0, step, 2*step, ...  Count = floor((n - length) / step) + 1.
[[nodiscard]] std::vector<std::span<const double>> window(std::span<const double> values,
                                                          std::size_t length,
                                                          std::size_t step);

/// Number of windows the above produces for a series of n values.
[[nodiscard]] std::size_t window_count(std::size_t n, std::size_t length, std::size_t step);

}  // namespace hurstlab
