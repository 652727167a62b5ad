#include "hurstlab/series.hpp"

#include <cmath>
#include <string>

#include "hurstlab/error.hpp"

namespace hurstlab {

PriceSeries resample_last(const TickSeries& ticks, const SamplingSpec& spec) {
    if (ticks.empty()) {
        throw Error(errc::invalid_argument, "cannot resample an empty tick series");
    }
    if (spec.interval_hours < 1 || spec.interval_hours > 168) {
        throw Error(errc::invalid_argument,
                    "interval_hours must lie in [1, 168], got " +
                        std::to_string(spec.interval_hours));
    }
    const std::int64_t first = ticks.records.front().timestamp;
    const std::int64_t last = ticks.records.back().timestamp;
    std::int64_t anchor = spec.anchor;
    if (anchor == SamplingSpec::kAutoAnchor) {
        anchor = (first + 3599) / 3600 * 3600;  // round up to a whole hour
    }
    if (anchor < first) {
        throw Error(errc::validation, "anchor " + std::to_string(anchor) +
                                          " precedes first tick at " + std::to_string(first));
    }
    if (anchor > last) {
        throw Error(errc::validation, "anchor " + std::to_string(anchor) +
                                          " is past the last tick at " + std::to_string(last));
    }

    const std::int64_t step = 3600LL * spec.interval_hours;
    PriceSeries out;
    out.grid_start = anchor;
    out.interval = step;

    std::size_t next = 0;  // first tick not yet consumed
    for (std::int64_t g = anchor; g <= last; g += step) {
        bool traded = false;
        while (next < ticks.size() && ticks.records[next].timestamp <= g) {
            ++next;
            traded = true;
        }
        if (!traded && spec.gap_policy == GapPolicy::fail) {
            throw Error(errc::validation,
                        "no trades in the sampling interval ending at " + std::to_string(g));
        }
        // next > 0 always holds: the anchor is at or after the first tick.
        out.prices.push_back(ticks.records[next - 1].price);
    }
    return out;
}

ReturnSeries log_returns(const PriceSeries& prices, double scale) {
    if (prices.size() < 2) {
        throw Error(errc::invalid_argument, "need at least 2 prices to compute returns, got " +
                                                std::to_string(prices.size()));
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw Error(errc::invalid_argument, "return scale must be a positive real");
    }
    ReturnSeries out;
    out.scale = scale;
    out.interval = prices.interval;
    out.values.reserve(prices.size() - 1);
    if (!prices.labels.empty() || prices.interval > 0) {
        out.labels.reserve(prices.size() - 1);
    }
    double prev_log = 0.0;
    for (std::size_t i = 0; i < prices.size(); ++i) {
        const double p = prices.prices[i];
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw Error(errc::validation,
                        "price at index " + std::to_string(i) + " is not a positive real");
        }
        const double lp = std::log(p);
        if (i > 0) {
            out.values.push_back(scale * (lp - prev_log));
            if (!prices.labels.empty() || prices.interval > 0) {
                out.labels.push_back(prices.timestamp_at(i));
            }
        }
        prev_log = lp;
    }
    return out;
}

std::size_t window_count(std::size_t n, std::size_t length, std::size_t step) {
    if (length == 0 || step == 0) {
        throw Error(errc::invalid_argument, "window length and step must be positive");
    }
    if (length > n) {
        throw Error(errc::invalid_argument, "window length " + std::to_string(length) +
                                                " exceeds series length " + std::to_string(n));
    }
    return (n - length) / step + 1;
}

std::vector<std::span<const double>> window(std::span<const double> values, std::size_t length,
                                            std::size_t step) {
    const std::size_t count = window_count(values.size(), length, step);
    std::vector<std::span<const double>> views;
    views.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        views.push_back(values.subspan(k * step, length));
    }
    return views;
}

}  // namespace hurstlab
