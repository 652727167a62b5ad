#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hurstlab {

/// Detrended fluctuation analysis settings.
///
/// An empty scale list means "derive from the series length" via
/// default_scales(). Scales must be strictly increasing, each at least
/// poly_order + 2, with max(scales) <= floor(length / 2). Blocks that do not
/// fill a scale (the tail remainder) are excluded from the fit and the sum.
struct DfaConfig {
    std::vector<int> scales;
    int poly_order = 1;  ///< degree of the per-block detrending polynomial
};

/// One DFA fit: H is the OLS slope of ln F(m) on ln m.
struct HurstEstimate {
    double h = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<int, double>> fluctuations;  ///< (m, F(m)) per scale

    [[nodiscard]] std::size_t n_points() const noexcept { return fluctuations.size(); }
};

/// Integrated profile: x[i] = sum of mean-subtracted y up to i.
[[nodiscard]] std::vector<double> profile(std::span<const double> y);

/// Root-mean-square deviation of the profile from per-block polynomial trends
/// at block size m. The profile is split into floor(len/m) blocks from the
/// start; the normalizer is the number of included points.
[[nodiscard]] double fluctuation(std::span<const double> x, int block_size, int poly_order = 1);

/// OLS fit of ln F on ln m. Requires >= 3 points, all F > 0.
[[nodiscard]] HurstEstimate fit_power_law(const std::vector<std::pair<int, double>>& fluctuations);

/// Full DFA: profile, per-scale fluctuations, log-log regression.
[[nodiscard]] HurstEstimate hurst_dfa(std::span<const double> y, const DfaConfig& config = {});

/// Powers of two from 4 up to min(128, floor(window_len / 2)).
/// Errors when fewer than 3 scales fit (window_len < 32).
[[nodiscard]] std::vector<int> default_scales(std::size_t window_len);

}  // namespace hurstlab
