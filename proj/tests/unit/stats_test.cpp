#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "../support/oracles.hpp"
#include "hurstlab/error.hpp"
#include "hurstlab/stats.hpp"
#include "hurstlab/synth.hpp"

using namespace hurstlab;

TEST_CASE("jarque_bera reproduces the published daily-return statistics") {
    // GBP and EUR columns: n = 1404 with the tabulated skewness/kurtosis
    CHECK(std::abs(jarque_bera(1404, 2.2166, 36.1865) - 65578.46) <= 0.5);
    CHECK(std::abs(jarque_bera(1404, -0.0418, 4.8014) - 190.25) <= 0.05);
    CHECK(jarque_bera(123, 0.0, 3.0) == 0.0);  // Gaussian moments
}

TEST_CASE("describe computes the documented moment conventions") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    const DescriptiveStats s = describe(x);
    CHECK(s.n == 4);
    CHECK(s.mean == 2.5);
    CHECK(s.median == 2.5);
    CHECK(s.min == 1.0);
    CHECK(s.max == 4.0);
    CHECK(s.std_dev == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-15));
    CHECK(std::abs(s.skewness) <= 1e-15);
    // m4 = (2 * 1.5^4 + 2 * 0.5^4) / 4, m2 = 1.25
    CHECK(s.kurtosis == doctest::Approx((2 * 5.0625 + 2 * 0.0625) / 4.0 / (1.25 * 1.25))
                            .epsilon(1e-15));
    CHECK(s.jarque_bera == doctest::Approx(jarque_bera(4, s.skewness, s.kurtosis)));
    CHECK(s.jb_p_value == doctest::Approx(std::exp(-s.jarque_bera / 2.0)).epsilon(1e-12));
}

TEST_CASE("describe odd-length median") {
    const std::vector<double> x = {5.0, 1.0, 3.0, 2.0, 4.0};
    CHECK(describe(x).median == 3.0);
}

TEST_CASE("describe rejects short or constant input") {
    CHECK_THROWS_AS((void)describe(std::vector<double>{1.0, 2.0, 3.0}), Error);
    try {
        (void)describe(std::vector<double>{2.0, 2.0, 2.0, 2.0});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == errc::degenerate);
    }
    CHECK_THROWS_AS(
        (void)describe(std::vector<double>{1.0, 2.0, std::nan(""), 4.0}), Error);
}

TEST_CASE("describe is affine-equivariant where it should be") {
    const std::vector<double> r = white_noise(2000, 1.0, 99);
    const DescriptiveStats base = describe(r);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = (trial % 2 == 0 ? 1.0 : -1.0) * (0.5 +
                         static_cast<double>(rng() % 1000) / 100.0);
        const double b = static_cast<double>(rng() % 2001) - 1000.0;
        std::vector<double> t(r.size());
        std::transform(r.begin(), r.end(), t.begin(),
                       [&](double v) { return a * v + b; });
        const DescriptiveStats s = describe(t);
        CHECK(std::abs(s.skewness) ==
              doctest::Approx(std::abs(base.skewness)).epsilon(1e-9));
        CHECK((a < 0 ? -s.skewness : s.skewness) ==
              doctest::Approx(base.skewness).epsilon(1e-9));
        CHECK(s.kurtosis == doctest::Approx(base.kurtosis).epsilon(1e-9));
        CHECK(s.jarque_bera == doctest::Approx(base.jarque_bera).epsilon(1e-9));
    }
}

TEST_CASE("describe on a large standard-normal sample has Gaussian moments") {
    const std::vector<double> r = white_noise(100000, 1.0, 2024);
    const DescriptiveStats s = describe(r);
    CHECK(std::abs(s.skewness) < 0.03);
    CHECK(std::abs(s.kurtosis - 3.0) < 0.06);
    CHECK(std::abs(s.mean) < 0.01);
    CHECK(std::abs(s.std_dev - 1.0) < 0.01);
}

TEST_CASE("JB p-values are uniform under the null (KS sanity check)") {
    // p = F(JB) should look uniform across independent Gaussian samples
    const int seeds = 200;
    std::vector<double> p_values;
    p_values.reserve(seeds);
    for (int seed = 0; seed < seeds; ++seed) {
        const std::vector<double> r = white_noise(2000, 1.0, 10000 + seed);
        p_values.push_back(describe(r).jb_p_value);
    }
    std::sort(p_values.begin(), p_values.end());
    double ks = 0.0;
    for (int i = 0; i < seeds; ++i) {
        const double ecdf_hi = static_cast<double>(i + 1) / seeds;
        const double ecdf_lo = static_cast<double>(i) / seeds;
        ks = std::max({ks, std::abs(ecdf_hi - p_values[i]), std::abs(p_values[i] - ecdf_lo)});
    }
    // 1% critical value is 1.63 / sqrt(200) ~= 0.115; seeds are fixed
    CHECK(ks < 0.115);
}

TEST_CASE("regularized_gamma_q agrees with the closed form at a = 1") {
    for (const double z : {1e-6, 0.01, 0.5, 1.0, 3.0, 10.0, 40.0, 200.0}) {
        const double expected = std::exp(-z);
        CHECK(regularized_gamma_q(1.0, z) ==
              doctest::Approx(expected).epsilon(1e-10));
    }
    CHECK(regularized_gamma_q(0.5, 0.0) == 1.0);
    CHECK(regularized_gamma_q(2.7, 1e-12) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS((void)regularized_gamma_q(0.0, 1.0), Error);
    CHECK_THROWS_AS((void)regularized_gamma_q(1.0, -1.0), Error);

    // monotone decreasing in x
    double prev = 1.0;
    for (double z = 0.1; z < 20.0; z += 0.7) {
        const double q = regularized_gamma_q(3.0, z);
        CHECK(q < prev);
        prev = q;
    }
}

TEST_CASE("chi_squared_p_value at 2 dof is exp(-x/2)") {
    for (const double x : {0.1, 1.0, 5.99, 190.25, 1000.0}) {
        CHECK(chi_squared_p_value(x, 2) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-10));
    }
    CHECK_THROWS_AS((void)chi_squared_p_value(-1.0, 2), Error);
    CHECK_THROWS_AS((void)chi_squared_p_value(1.0, 0), Error);
}

TEST_CASE("spearman_rho on monotone pairs") {
    const std::vector<double> x = {1.0, 2.0, 3.0};
    const std::vector<double> up = {10.0, 20.0, 30.0};
    const std::vector<double> down = {30.0, 20.0, 10.0};
    CHECK(spearman_rho(x, up) == 1.0);
    CHECK(spearman_rho(x, down) == -1.0);
}

TEST_CASE("spearman_rho averages tied ranks") {
    const std::vector<double> x = {1.0, 2.0, 2.0, 3.0};
    const std::vector<double> y = {1.0, 3.0, 2.0, 4.0};
    // ranks of x: 1, 2.5, 2.5, 4 -> rho = 3 / sqrt(10)
    CHECK(spearman_rho(x, y) == doctest::Approx(0.9486832980505139).epsilon(1e-14));

    const std::vector<double> rx = average_ranks(x);
    CHECK(rx[0] == 1.0);
    CHECK(rx[1] == 2.5);
    CHECK(rx[2] == 2.5);
    CHECK(rx[3] == 4.0);
}

TEST_CASE("spearman_rho matches brute-force rank enumeration with ties") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + rng() % 18;
        std::vector<double> x(n), y(n);
        bool x_const = true, y_const = true;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = static_cast<double>(rng() % 6);  // small range forces ties
            y[i] = static_cast<double>(rng() % 6);
            if (x[i] != x[0]) x_const = false;
            if (y[i] != y[0]) y_const = false;
        }
        if (x_const || y_const) continue;
        CHECK(spearman_rho(x, y) == doctest::Approx(oracle::spearman(x, y)).epsilon(1e-12));
    }
}

TEST_CASE("spearman_rho is invariant under strictly increasing transforms") {
    std::mt19937_64 rng(41);
    std::vector<double> x(50), y(50);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = static_cast<double>(rng() % 1000) / 100.0;
        y[i] = static_cast<double>(rng() % 1000) / 100.0;
    }
    const double base = spearman_rho(x, y);
    std::vector<double> ex(x.size()), cy(y.size());
    std::transform(x.begin(), x.end(), ex.begin(), [](double v) { return std::exp(v); });
    std::transform(y.begin(), y.end(), cy.begin(),
                   [](double v) { return v * v * v + 2.0 * v; });
    // identical ranks, identical rho, bit for bit
    CHECK(spearman_rho(ex, y) == base);
    CHECK(spearman_rho(x, cy) == base);
    CHECK(spearman_rho(ex, cy) == base);
}

TEST_CASE("spearman_rho of a series with itself is 1") {
    const std::vector<double> x = {3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0};
    CHECK(spearman_rho(x, x) == 1.0);
}

TEST_CASE("spearman_rho rejects bad input") {
    const std::vector<double> x = {1.0, 2.0, 3.0};
    const std::vector<double> y = {1.0, 2.0};
    CHECK_THROWS_AS((void)spearman_rho(x, y), Error);
    CHECK_THROWS_AS((void)spearman_rho(y, y), Error);
    const std::vector<double> flat = {1.0, 1.0, 1.0};
    try {
        (void)spearman_rho(x, flat);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == errc::degenerate);
    }
    const std::vector<double> with_nan = {1.0, std::nan(""), 3.0};
    CHECK_THROWS_AS((void)spearman_rho(x, with_nan), Error);
}

TEST_CASE("rolling_spearman follows the window count law and flags gaps") {
    std::vector<double> x(520), y(520);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = static_cast<double>(i);
        y[i] = 2.0 * static_cast<double>(i) + 1.0;
    }
    const auto points = rolling_spearman(x, y, 500, 1);
    REQUIRE(points.size() == 21);
    for (const auto& point : points) {
        REQUIRE(point.rho.has_value());
        CHECK(*point.rho == 1.0);
    }
    CHECK(points[0].offset == 0);
    CHECK(points.back().offset == 20);

    // a flat stretch in x longer than the window yields missing markers
    std::fill(x.begin() + 100, x.begin() + 140, 7.0);
    const auto with_gap = rolling_spearman(x, y, 30, 1);
    bool saw_missing = false;
    for (const auto& point : with_gap) {
        if (!point.rho) {
            saw_missing = true;
            CHECK(point.offset >= 100);
            CHECK(point.offset + 30 <= 140);
        }
    }
    CHECK(saw_missing);

    CHECK_THROWS_AS((void)rolling_spearman(x, y, 521, 1), Error);
}

TEST_CASE("rolling_spearman stays near zero for independent noise") {
    const std::vector<double> x = white_noise(1000, 1.0, 555);
    const std::vector<double> y = white_noise(1000, 1.0, 556);
    const auto points = rolling_spearman(x, y, 500, 1);
    REQUIRE(points.size() == 501);
    std::size_t within = 0;
    for (const auto& point : points) {
        REQUIRE(point.rho.has_value());
        if (std::abs(*point.rho) < 0.2) ++within;  // null sd ~ 1/sqrt(499) ~ 0.045
    }
    CHECK(static_cast<double>(within) / static_cast<double>(points.size()) >= 0.95);
}
