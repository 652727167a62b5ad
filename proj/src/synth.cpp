#include "hurstlab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "hurstlab/error.hpp"

namespace hurstlab {

namespace {

// Seeded engine + inverse-CDF Gaussian draws. mt19937_64 output is fully
// specified by the standard, so streams are machine-independent; the
// distribution shaping below avoids std::normal_distribution, whose
// algorithm is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // strictly inside (0, 1): (bits >> 11) spans [0, 2^53), offset by 1/2
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() { return normal_quantile(uniform01()); }

private:
    std::mt19937_64 engine_;
};

double poly(const double* coef, int n, double x) {
    double r = coef[n - 1];
    for (int i = n - 2; i >= 0; --i) r = r * x + coef[i];
    return r;
}

constexpr double kPi = 3.141592653589793238462643383279502884;

// In-place radix-2 decimation-in-time FFT, size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<std::complex<double>> twiddle(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double ang = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        twiddle[k] = {std::cos(ang), std::sin(ang)};
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * twiddle[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

void check_fgn_args(std::size_t n, double h, double sigma) {
    if (n < 2) {
        throw Error(errc::invalid_argument, "fgn requires n >= 2, got " + std::to_string(n));
    }
    if (!(h > 0.0) || !(h < 1.0)) {
        throw Error(errc::invalid_argument, "fgn requires 0 < h < 1");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw Error(errc::invalid_argument, "sigma must be a non-negative real");
    }
}

}  // namespace

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw Error(errc::invalid_argument, "normal_quantile requires 0 < p < 1");
    }
    // Wichura (1988), algorithm AS 241, routine PPND16.
    static constexpr double a[8] = {
        3.3871328727963666080e0,  1.3314166789178437745e2, 1.9715909503065514427e3,
        1.3731693765509461125e4,  4.5921953931549871457e4, 6.7265770927008700853e4,
        3.3430575583588128105e4,  2.5090809287301226727e3};
    static constexpr double b[8] = {
        1.0,                      4.2313330701600911252e1, 6.8718700749205790830e2,
        5.3941960214247511077e3,  2.1213794301586595867e4, 3.9307895800092710610e4,
        2.8729085735721942674e4,  5.2264952788528545610e3};
    static constexpr double c[8] = {
        1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
        3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
        2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr double d[8] = {
        1.0,                      2.05319162663775882187e0, 1.67638483018380384940e0,
        6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
        5.47593808499534494600e-4, 1.05075007164441684324e-9};
    static constexpr double e[8] = {
        6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
        2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
        2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double f[8] = {
        1.0,                      5.99832206555887937690e-1, 1.36929880922735805310e-1,
        1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
        1.42151175831644588870e-7, 2.04426310338993978564e-15};

    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly(a, 8, r) / poly(b, 8, r);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        z = poly(c, 8, r) / poly(d, 8, r);
    } else {
        r -= 5.0;
        z = poly(e, 8, r) / poly(f, 8, r);
    }
    return q < 0.0 ? -z : z;
}

double fgn_autocovariance(double h, double sigma, std::size_t lag) {
    const double k = static_cast<double>(lag);
    const double two_h = 2.0 * h;
    return 0.5 * sigma * sigma *
           (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) +
            (lag == 0 ? std::pow(1.0, two_h) : std::pow(k - 1.0, two_h)));
}

std::vector<double> white_noise(std::size_t n, double sigma, std::uint64_t seed) {
    if (n < 1) {
        throw Error(errc::invalid_argument, "white_noise requires n >= 1");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw Error(errc::invalid_argument, "sigma must be a non-negative real");
    }
    Rng rng(seed);
    std::vector<double> out(n);
    for (double& v : out) v = sigma * rng.normal();
    return out;
}

namespace detail {

std::vector<double> fgn_circulant(std::size_t n, double h, double sigma, std::uint64_t seed) {
    check_fgn_args(n, h, sigma);
    if (sigma == 0.0) return std::vector<double>(n, 0.0);

    // Circulant of size m = 2 * half with half a power of two >= n - 1: the
    // first row mirrors gamma, so the top-left n x n corner of the circulant
    // covariance equals the fGn covariance exactly.
    std::size_t half = 1;
    while (half < n - 1) half <<= 1;
    const std::size_t m = 2 * half;

    std::vector<std::complex<double>> eig(m);
    for (std::size_t j = 0; j <= half; ++j) {
        eig[j] = fgn_autocovariance(h, sigma, j);
    }
    for (std::size_t j = half + 1; j < m; ++j) {
        eig[j] = eig[m - j];
    }
    fft_inplace(eig);

    double lam_max = 0.0;
    for (const auto& l : eig) lam_max = std::max(lam_max, l.real());
    const double tol = 1e-10 * std::max(lam_max, 1.0);
    std::vector<double> lambda(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double l = eig[k].real();
        if (l < -tol) {
            throw Error(errc::degenerate,
                        "circulant embedding has a negative eigenvalue: " + std::to_string(l));
        }
        lambda[k] = std::max(l, 0.0);
    }

    // Davies-Harte synthesis. Draw order: k = 0, k = m/2, then the
    // (real, imag) pair for each k = 1 .. m/2 - 1.
    Rng rng(seed);
    std::vector<std::complex<double>> w(m);
    const double inv_m = 1.0 / static_cast<double>(m);
    w[0] = std::sqrt(lambda[0] * inv_m) * rng.normal();
    w[half] = std::sqrt(lambda[half] * inv_m) * rng.normal();
    for (std::size_t k = 1; k < half; ++k) {
        const double scale = std::sqrt(0.5 * lambda[k] * inv_m);
        const double re = rng.normal();
        const double im = rng.normal();
        w[k] = {scale * re, scale * im};
        w[m - k] = std::conj(w[k]);
    }
    fft_inplace(w);

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = w[i].real();
    return out;
}

std::vector<double> fgn_durbin_levinson(std::size_t n, double h, double sigma,
                                        std::uint64_t seed) {
    check_fgn_args(n, h, sigma);
    if (sigma == 0.0) return std::vector<double>(n, 0.0);

    std::vector<double> gamma(n);
    for (std::size_t k = 0; k < n; ++k) gamma[k] = fgn_autocovariance(h, sigma, k);

    Rng rng(seed);
    std::vector<double> x(n);
    std::vector<double> phi(n, 0.0);       // phi[j] = phi_{t,j}, 1-based in j
    std::vector<double> phi_prev(n, 0.0);
    double v = gamma[0];
    x[0] = std::sqrt(v) * rng.normal();
    for (std::size_t t = 1; t < n; ++t) {
        double num = gamma[t];
        for (std::size_t j = 1; j < t; ++j) num -= phi_prev[j] * gamma[t - j];
        const double k = num / v;
        phi[t] = k;
        for (std::size_t j = 1; j < t; ++j) phi[j] = phi_prev[j] - k * phi_prev[t - j];
        v *= 1.0 - k * k;
        v = std::max(v, 0.0);

        double mean = 0.0;
        for (std::size_t j = 1; j <= t; ++j) mean += phi[j] * x[t - j];
        x[t] = mean + std::sqrt(v) * rng.normal();
        std::copy(phi.begin(), phi.begin() + static_cast<std::ptrdiff_t>(t) + 1,
                  phi_prev.begin());
    }
    return x;
}

}  // namespace detail

std::vector<double> fgn(std::size_t n, double h, double sigma, std::uint64_t seed) {
    try {
        return detail::fgn_circulant(n, h, sigma, seed);
    } catch (const Error& e) {
        if (e.code() != errc::degenerate) throw;
        return detail::fgn_durbin_levinson(n, h, sigma, seed);
    }
}

std::vector<double> ar1(std::size_t n, double phi, double sigma, std::uint64_t seed) {
    if (n < 1) {
        throw Error(errc::invalid_argument, "ar1 requires n >= 1");
    }
    if (!(std::abs(phi) < 1.0)) {
        throw Error(errc::invalid_argument, "ar1 requires |phi| < 1");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw Error(errc::invalid_argument, "sigma must be a non-negative real");
    }
    Rng rng(seed);
    std::vector<double> out(n);
    out[0] = sigma / std::sqrt(1.0 - phi * phi) * rng.normal();  // stationary start
    for (std::size_t t = 1; t < n; ++t) {
        out[t] = phi * out[t - 1] + sigma * rng.normal();
    }
    return out;
}

std::vector<double> generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorKind::white_noise:
            return white_noise(spec.n, spec.sigma, spec.seed);
        case GeneratorKind::fgn:
            return fgn(spec.n, spec.h, spec.sigma, spec.seed);
        case GeneratorKind::ar1:
            return ar1(spec.n, spec.phi, spec.sigma, spec.seed);
    }
    throw Error(errc::invalid_argument, "unknown generator kind");
}

std::vector<double> regime_concat(std::span<const GeneratorSpec> specs) {
    if (specs.empty()) {
        throw Error(errc::invalid_argument, "regime_concat requires at least one segment");
    }
    std::vector<double> out;
    for (const GeneratorSpec& spec : specs) {
        const std::vector<double> segment = generate(spec);
        out.insert(out.end(), segment.begin(), segment.end());
    }
    return out;
}

}  // namespace hurstlab
