#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hurstlab {

/// Moment summary of a return series.
///
/// Central moments use the 1/n normalization; std_dev is the conventional
/// sample estimator (n-1 denominator). Kurtosis is reported raw (Gaussian = 3),
/// not excess.
struct DescriptiveStats {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
    double std_dev = 0.0;
    double skewness = 0.0;   ///< g1 = m3 / m2^(3/2)
    double kurtosis = 0.0;   ///< g2 = m4 / m2^2 (raw)
    double jarque_bera = 0.0;
    double jb_p_value = 0.0;
};

/// Compute the full moment summary. Requires n >= 4 and nonzero variance.
DescriptiveStats describe(std::span<const double> values);

/// JB = (n/6) * (S^2 + (K-3)^2 / 4) with raw kurtosis K.
[[nodiscard]] double jarque_bera(std::size_t n, double skewness, double kurtosis);

/// Regularized upper incomplete gamma Q(a, x), relative error <= 1e-10.
[[nodiscard]] double regularized_gamma_q(double a, double x);

/// Upper-tail probability of a chi-squared(dof) variate exceeding `statistic`.
[[nodiscard]] double chi_squared_p_value(double statistic, int dof);

/// 1-based average ranks; ties receive the mean of their rank span.
[[nodiscard]] std::vector<double> average_ranks(std::span<const double> values);

/// Spearman's rho: Pearson correlation of average ranks.
/// Requires len(x) == len(y) >= 3 and both sequences non-constant.
[[nodiscard]] double spearman_rho(std::span<const double> x, std::span<const double> y);

struct RhoPoint {
    std::size_t offset = 0;
    std::optional<double> rho;  ///< empty when the window was degenerate
};

/// spearman_rho over each sliding window; degenerate windows (constant x or y)
/// yield a missing marker instead of failing the scan.
[[nodiscard]] std::vector<RhoPoint> rolling_spearman(std::span<const double> x,
                                                     std::span<const double> y,
                                                     std::size_t window,
                                                     std::size_t step = 1);

}  // namespace hurstlab
