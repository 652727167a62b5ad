#include "hurstlab/dfa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "compensated_sum.hpp"
#include "hurstlab/error.hpp"

namespace hurstlab {

namespace {

// Least-squares polynomial detrending of one block.
//
// The basis is the centered block index s = i - (m-1)/2, i = 0..m-1. Centering
// is an affine reparametrization of the fit against index 1..m, so the fitted
// values and residuals are identical while the normal system stays far better
// conditioned. Returns the residual sum of squares.
double block_residual_ss_linear(std::span<const double> block) {
    const std::size_t m = block.size();
    const double center = 0.5 * static_cast<double>(m - 1);

    double mean = 0.0;
    for (const double v : block) mean += v;
    mean /= static_cast<double>(m);

    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double s = static_cast<double>(i) - center;
        sxx += s * s;
        sxy += s * (block[i] - mean);
    }
    const double slope = sxy / sxx;

    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double s = static_cast<double>(i) - center;
        const double r = block[i] - (mean + slope * s);
        ss += r * r;
    }
    return ss;
}

// Householder QR solve of the (m x q) polynomial design, q = order + 1.
// Residuals are recomputed explicitly from the coefficients so near-exact
// fits come out at true rounding level rather than via norm subtraction.
double block_residual_ss_poly(std::span<const double> block, int order) {
    const std::size_t m = block.size();
    const std::size_t q = static_cast<std::size_t>(order) + 1;
    const double center = 0.5 * static_cast<double>(m - 1);

    std::vector<double> a(m * q);  // column-major design matrix
    for (std::size_t i = 0; i < m; ++i) {
        const double s = static_cast<double>(i) - center;
        double p = 1.0;
        for (std::size_t j = 0; j < q; ++j) {
            a[j * m + i] = p;
            p *= s;
        }
    }
    std::vector<double> b(block.begin(), block.end());

    for (std::size_t k = 0; k < q; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < m; ++i) norm += a[k * m + i] * a[k * m + i];
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        if (a[k * m + k] > 0.0) norm = -norm;

        // Householder vector stored in place of column k
        a[k * m + k] -= norm;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < m; ++i) vnorm2 += a[k * m + i] * a[k * m + i];
        if (vnorm2 == 0.0) {
            a[k * m + k] = norm;
            continue;
        }
        for (std::size_t j = k + 1; j < q; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i) dot += a[k * m + i] * a[j * m + i];
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < m; ++i) a[j * m + i] -= f * a[k * m + i];
        }
        double dot = 0.0;
        for (std::size_t i = k; i < m; ++i) dot += a[k * m + i] * b[i];
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < m; ++i) b[i] -= f * a[k * m + i];
        a[k * m + k] = norm;  // diagonal of R
    }

    // back substitution: R beta = b[0..q)
    std::vector<double> beta(q, 0.0);
    for (std::size_t jj = q; jj-- > 0;) {
        double v = b[jj];
        for (std::size_t kk = jj + 1; kk < q; ++kk) v -= a[kk * m + jj] * beta[kk];
        beta[jj] = v / a[jj * m + jj];
    }

    double ss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double s = static_cast<double>(i) - center;
        double fit = beta[q - 1];  // Horner
        for (std::size_t j = q - 1; j-- > 0;) fit = fit * s + beta[j];
        const double r = block[i] - fit;
        ss += r * r;
    }
    return ss;
}

std::vector<int> resolve_scales(const DfaConfig& config, std::size_t length) {
    std::vector<int> scales =
        config.scales.empty() ? default_scales(length) : config.scales;
    if (scales.size() < 3) {
        throw Error(errc::invalid_argument,
                    "need at least 3 scales for the log-log regression, got " +
                        std::to_string(scales.size()));
    }
    int prev = 0;
    for (const int m : scales) {
        if (m < config.poly_order + 2) {
            throw Error(errc::invalid_argument,
                        "scale " + std::to_string(m) + " is below poly_order + 2");
        }
        if (m <= prev) {
            throw Error(errc::invalid_argument, "scales must be strictly increasing");
        }
        prev = m;
    }
    if (static_cast<std::size_t>(scales.back()) * 2 > length) {
        throw Error(errc::invalid_argument,
                    "max scale " + std::to_string(scales.back()) +
                        " exceeds half the series length " + std::to_string(length));
    }
    return scales;
}

}  // namespace

std::vector<double> profile(std::span<const double> y) {
    if (y.size() < 2) {
        throw Error(errc::invalid_argument,
                    "profile requires at least 2 observations, got " + std::to_string(y.size()));
    }
    const double mean = detail::compensated_sum(y) / static_cast<double>(y.size());
    std::vector<double> x;
    x.reserve(y.size());
    double run = 0.0;
    for (const double v : y) {
        run += v - mean;
        x.push_back(run);
    }
    return x;
}

double fluctuation(std::span<const double> x, int block_size, int poly_order) {
    if (poly_order < 1) {
        throw Error(errc::invalid_argument, "poly_order must be >= 1");
    }
    if (block_size < poly_order + 2) {
        throw Error(errc::invalid_argument,
                    "block size " + std::to_string(block_size) + " is below poly_order + 2");
    }
    if (static_cast<std::size_t>(block_size) > x.size()) {
        throw Error(errc::invalid_argument, "block size " + std::to_string(block_size) +
                                                " exceeds series length " +
                                                std::to_string(x.size()));
    }
    const std::size_t m = static_cast<std::size_t>(block_size);
    const std::size_t n_blocks = x.size() / m;  // tail remainder excluded

    detail::CompensatedSum total;
    for (std::size_t b = 0; b < n_blocks; ++b) {
        const auto block = x.subspan(b * m, m);
        total.add(poly_order == 1 ? block_residual_ss_linear(block)
                                  : block_residual_ss_poly(block, poly_order));
    }
    return std::sqrt(total.value() / static_cast<double>(n_blocks * m));
}

HurstEstimate fit_power_law(const std::vector<std::pair<int, double>>& fluctuations) {
    if (fluctuations.size() < 3) {
        throw Error(errc::invalid_argument,
                    "need at least 3 (m, F) points, got " + std::to_string(fluctuations.size()));
    }
    std::vector<double> lm, lf;
    lm.reserve(fluctuations.size());
    lf.reserve(fluctuations.size());
    for (const auto& [m, f] : fluctuations) {
        if (m < 1) {
            throw Error(errc::invalid_argument, "scales must be positive");
        }
        if (!(f > 0.0) || !std::isfinite(f)) {
            throw Error(errc::degenerate,
                        "fluctuation at scale " + std::to_string(m) + " is not positive");
        }
        lm.push_back(std::log(static_cast<double>(m)));
        lf.push_back(std::log(f));
    }

    const double n = static_cast<double>(lm.size());
    const double mx = detail::compensated_sum(lm) / n;
    const double my = detail::compensated_sum(lf) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lm.size(); ++i) {
        const double dx = lm[i] - mx;
        const double dy = lf[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    HurstEstimate est;
    est.h = sxy / sxx;
    est.intercept = my - est.h * mx;
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < lm.size(); ++i) {
            const double r = lf[i] - (est.intercept + est.h * lm[i]);
            ss_res += r * r;
        }
        est.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    } else {
        est.r_squared = 1.0;  // constant F fitted exactly by slope 0
    }
    est.fluctuations = fluctuations;
    return est;
}

HurstEstimate hurst_dfa(std::span<const double> y, const DfaConfig& config) {
    const std::vector<int> scales = resolve_scales(config, y.size());

    const bool constant =
        std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); });
    if (constant) {
        throw Error(errc::degenerate, "series has zero variance");
    }

    const std::vector<double> x = profile(y);
    std::vector<std::pair<int, double>> fluctuations;
    fluctuations.reserve(scales.size());
    for (const int m : scales) {
        const double f = fluctuation(x, m, config.poly_order);
        if (!(f > 0.0)) {
            throw Error(errc::degenerate,
                        "zero fluctuation at scale " + std::to_string(m));
        }
        fluctuations.emplace_back(m, f);
    }
    return fit_power_law(fluctuations);
}

std::vector<int> default_scales(std::size_t window_len) {
    const std::size_t cap = std::min<std::size_t>(128, window_len / 2);
    std::vector<int> scales;
    for (std::size_t m = 4; m <= cap; m *= 2) {
        scales.push_back(static_cast<int>(m));
    }
    if (scales.size() < 3) {
        throw Error(errc::invalid_argument,
                    "window length " + std::to_string(window_len) +
                        " admits fewer than 3 scales");
    }
    return scales;
}

}  // namespace hurstlab
