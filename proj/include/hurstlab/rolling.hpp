#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hurstlab/dfa.hpp"

namespace hurstlab {

/// Hurst exponent trajectory over sliding windows.
/// estimates[k] is empty when window k was degenerate (e.g. constant).
struct HurstSeries {
    std::vector<std::size_t> offsets;
    std::vector<std::optional<HurstEstimate>> estimates;
    std::size_t window = 500;
    std::size_t step = 1;

    [[nodiscard]] std::size_t size() const noexcept { return offsets.size(); }
};

/// DFA over every sliding window of `returns`.
///
/// Scales are resolved once against the window length, so all windows share
/// the same regression points. Windows are independent and are computed in
/// parallel when threads != 1 (0 = hardware concurrency); results are
/// assembled in offset order and are identical to a serial run.
[[nodiscard]] HurstSeries rolling_hurst(std::span<const double> returns,
                                        std::size_t window = 500,
                                        std::size_t step = 1,
                                        const DfaConfig& config = {},
                                        unsigned threads = 0);

enum class Alignment {
    window_end,    ///< H at window k pairs with covariate[offset_k + window - 1]
    window_start,  ///< H at window k pairs with covariate[offset_k]
};

/// H values paired with a covariate on the returns' observation grid.
/// Missing estimates appear as NaN in `hurst`.
struct AlignedSeries {
    std::vector<double> hurst;
    std::vector<double> covariate;
};

[[nodiscard]] AlignedSeries align_hurst_with(const HurstSeries& series,
                                             std::span<const double> covariate,
                                             Alignment alignment = Alignment::window_end);

}  // namespace hurstlab
