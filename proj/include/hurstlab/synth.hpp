#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hurstlab {

// All generators are pure functions of their spec. Randomness comes from a
// std::mt19937_64 seeded directly with `seed`; Gaussian variates are produced
// by the inverse-CDF transform applied to u = ((bits >> 11) + 0.5) * 2^-53,
// one engine draw per variate, in generation order. Distinct streams are
// obtained by distinct seeds; no other splitting rule exists.

enum class GeneratorKind { white_noise, fgn, ar1 };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::white_noise;
    std::size_t n = 0;
    double h = 0.5;    ///< fgn only, in (0, 1)
    double phi = 0.0;  ///< ar1 only, in (-1, 1)
    double sigma = 1.0;
    std::uint64_t seed = 0;
};

/// i.i.d. Gaussian(0, sigma^2).
[[nodiscard]] std::vector<double> white_noise(std::size_t n, double sigma, std::uint64_t seed);

/// Fractional Gaussian noise with autocovariance
/// gamma(k) = (sigma^2 / 2) (|k+1|^2H - 2|k|^2H + |k-1|^2H).
///
/// Sampled exactly by circulant embedding (Davies-Harte); if the embedding
/// spectrum has a negative eigenvalue beyond tolerance, falls back to the
/// sequential Durbin-Levinson construction.
[[nodiscard]] std::vector<double> fgn(std::size_t n, double h, double sigma, std::uint64_t seed);

/// y[t] = phi * y[t-1] + eps_t, eps ~ N(0, sigma^2), y[0] stationary.
[[nodiscard]] std::vector<double> ar1(std::size_t n, double phi, double sigma, std::uint64_t seed);

/// Dispatch on spec.kind.
[[nodiscard]] std::vector<double> generate(const GeneratorSpec& spec);

/// Concatenation of independently generated segments, in order.
[[nodiscard]] std::vector<double> regime_concat(std::span<const GeneratorSpec> specs);

/// Target autocovariance of fgn() at a given lag.
[[nodiscard]] double fgn_autocovariance(double h, double sigma, std::size_t lag);

/// Standard normal quantile (Wichura's AS 241, double precision).
[[nodiscard]] double normal_quantile(double p);

namespace detail {
/// Exact-covariance route. Errors when the embedding is not nonnegative
/// definite within tolerance.
std::vector<double> fgn_circulant(std::size_t n, double h, double sigma, std::uint64_t seed);
/// O(n^2) sequential conditional route; total for all h in (0, 1).
std::vector<double> fgn_durbin_levinson(std::size_t n, double h, double sigma,
                                        std::uint64_t seed);
}  // namespace detail

}  // namespace hurstlab
