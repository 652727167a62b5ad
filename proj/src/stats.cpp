#include "hurstlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hurstlab/error.hpp"
#include "hurstlab/series.hpp"

namespace hurstlab {

namespace {

// Neumaier-compensated sum; keeps moment accumulation order-independent
// of compiler reassociation at double precision.
double compensated_sum(std::span<const double> values) {
    double sum = 0.0;
    double comp = 0.0;
    for (const double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

double median_of(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_cont_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0 || !std::isfinite(a) || !std::isfinite(x)) {
        throw Error(errc::invalid_argument, "regularized_gamma_q requires a > 0 and x >= 0");
    }
    if (x == 0.0) return 1.0;
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cont_fraction(a, x);
}

double chi_squared_p_value(double statistic, int dof) {
    if (dof < 1) {
        throw Error(errc::invalid_argument, "chi-squared dof must be >= 1");
    }
    if (statistic < 0.0) {
        throw Error(errc::invalid_argument, "chi-squared statistic must be non-negative");
    }
    return regularized_gamma_q(0.5 * dof, 0.5 * statistic);
}

double jarque_bera(std::size_t n, double skewness, double kurtosis) {
    const double excess = kurtosis - 3.0;
    return static_cast<double>(n) / 6.0 * (skewness * skewness + excess * excess / 4.0);
}

DescriptiveStats describe(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 4) {
        throw Error(errc::invalid_argument,
                    "describe requires n >= 4, got " + std::to_string(n));
    }
    for (const double v : values) {
        if (!std::isfinite(v)) {
            throw Error(errc::validation, "describe input contains a non-finite value");
        }
    }

    DescriptiveStats s;
    s.n = n;
    s.mean = compensated_sum(values) / static_cast<double>(n);
    s.median = median_of(values);
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    s.min = *mn;
    s.max = *mx;

    double sum2 = 0.0, sum3 = 0.0, sum4 = 0.0;
    for (const double v : values) {
        const double d = v - s.mean;
        const double d2 = d * d;
        sum2 += d2;
        sum3 += d2 * d;
        sum4 += d2 * d2;
    }
    if (sum2 == 0.0) {
        throw Error(errc::degenerate, "zero variance: skewness and kurtosis are undefined");
    }
    const double m2 = sum2 / static_cast<double>(n);
    const double m3 = sum3 / static_cast<double>(n);
    const double m4 = sum4 / static_cast<double>(n);

    s.std_dev = std::sqrt(sum2 / static_cast<double>(n - 1));
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);
    s.jarque_bera = jarque_bera(n, s.skewness, s.kurtosis);
    s.jb_p_value = chi_squared_p_value(s.jarque_bera, 2);
    return s;
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        // 1-based ranks i+1 .. j averaged over the tie run
        const double avg = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) {
            ranks[order[k]] = avg;
        }
        i = j;
    }
    return ranks;
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error(errc::invalid_argument, "length mismatch: " + std::to_string(x.size()) +
                                                " vs " + std::to_string(y.size()));
    }
    if (x.size() < 3) {
        throw Error(errc::invalid_argument,
                    "spearman_rho requires n >= 3, got " + std::to_string(x.size()));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw Error(errc::validation, "non-finite value at index " + std::to_string(i));
        }
    }
    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);

    const double n = static_cast<double>(x.size());
    const double mean_rank = (n + 1.0) / 2.0;  // both rank vectors share this mean
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = rx[i] - mean_rank;
        const double dy = ry[i] - mean_rank;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw Error(errc::degenerate, "constant sequence: rank variance is zero");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<RhoPoint> rolling_spearman(std::span<const double> x, std::span<const double> y,
                                       std::size_t window, std::size_t step) {
    if (x.size() != y.size()) {
        throw Error(errc::invalid_argument, "length mismatch: " + std::to_string(x.size()) +
                                                " vs " + std::to_string(y.size()));
    }
    const auto views_x = hurstlab::window(x, window, step);
    const auto views_y = hurstlab::window(y, window, step);
    std::vector<RhoPoint> out;
    out.reserve(views_x.size());
    for (std::size_t k = 0; k < views_x.size(); ++k) {
        RhoPoint point;
        point.offset = k * step;
        try {
            point.rho = spearman_rho(views_x[k], views_y[k]);
        } catch (const Error& e) {
            if (e.code() != errc::degenerate) throw;
        }
        out.push_back(std::move(point));
    }
    return out;
}

}  // namespace hurstlab
