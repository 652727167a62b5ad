// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. The command line binary under test comes in as argv[1]
// (used by the pipeline-identity criterion).
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "../support/oracles.hpp"
#include "hurstlab/csv.hpp"
#include "hurstlab/dfa.hpp"
#include "hurstlab/rolling.hpp"
#include "hurstlab/series.hpp"
#include "hurstlab/stats.hpp"
#include "hurstlab/synth.hpp"
#include "hurstlab/table.hpp"

namespace {

using namespace hurstlab;

std::string g_cli;
std::filesystem::path g_dir;

class Checker {
public:
    void expect(bool ok, const std::string& detail) {
        if (!ok) failures_.push_back(detail);
    }

    [[nodiscard]] const std::vector<std::string>& failures() const { return failures_; }

private:
    std::vector<std::string> failures_;
};

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

/* 1. JB identity against the published daily-return table */
void criterion_jb_identity(Checker& check) {
    const double gbp = jarque_bera(1404, 2.2166, 36.1865);
    check.expect(std::abs(gbp - 65578.46) <= 0.5,
                 "JB(1404, 2.2166, 36.1865) = " + fmt(gbp) + ", want 65578.46 +- 0.5");
    const double eur = jarque_bera(1404, -0.0418, 4.8014);
    check.expect(std::abs(eur - 190.25) <= 0.05,
                 "JB(1404, -0.0418, 4.8014) = " + fmt(eur) + ", want 190.25 +- 0.05");
}

/* 2. Default scale rule */
void criterion_default_scales(Checker& check) {
    const std::vector<int> expected = {4, 8, 16, 32, 64, 128};
    check.expect(default_scales(500) == expected, "default_scales(500) != {4,8,16,32,64,128}");
}

/* 3. DFA calibration on synthetic fGn and white noise */
void criterion_dfa_calibration(Checker& check) {
    const int seeds = 50;
    const std::size_t n = 10000;
    for (const double h : {0.3, 0.5, 0.7, 0.8}) {
        double mean = 0.0;
        for (int seed = 1; seed <= seeds; ++seed) {
            mean += hurst_dfa(fgn(n, h, 1.0, static_cast<std::uint64_t>(seed))).h;
        }
        mean /= seeds;
        check.expect(std::abs(mean - h) <= 0.05,
                     "fGn h=" + fmt(h) + ": mean estimate " + fmt(mean) + ", want +- 0.05");
    }
    double mean = 0.0;
    for (int seed = 1; seed <= seeds; ++seed) {
        mean += hurst_dfa(white_noise(n, 1.0, static_cast<std::uint64_t>(seed))).h;
    }
    mean /= seeds;
    check.expect(std::abs(mean - 0.5) <= 0.05,
                 "white noise: mean estimate " + fmt(mean) + ", want 0.50 +- 0.05");
}

/* 4. Oracle equivalence of the fluctuation kernel */
void criterion_oracle_equivalence(Checker& check) {
    std::mt19937_64 rng(424242);
    int instances = 0;
    while (instances < 200) {
        const std::size_t len = 8 + rng() % 57;  // M <= 64
        const int order = 1 + static_cast<int>(rng() % 3);
        const int min_m = order + 2;
        if (static_cast<std::size_t>(min_m) > len) continue;
        const int m = min_m + static_cast<int>(rng() % (len - static_cast<std::size_t>(min_m) + 1));
        std::vector<double> x(len);
        for (double& v : x) v = (static_cast<double>(rng() % 200001) - 100000.0) / 500.0;
        const double got = fluctuation(x, m, order);
        const double expected = oracle::fluctuation(x, m, order);
        const double rel = std::abs(got - expected) / std::max(1e-300, std::abs(expected));
        check.expect(rel <= 1e-10, "instance " + std::to_string(instances) + ": M=" +
                                       std::to_string(len) + " m=" + std::to_string(m) +
                                       " order=" + std::to_string(order) + " rel=" + fmt(rel));
        ++instances;
    }
}

/* 5. Exact-null detrending and exact regression recovery */
void criterion_exact_null(Checker& check) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        const double a = (static_cast<double>(rng() % 2000) - 1000.0) / 50.0;
        const double b = static_cast<double>(rng() % 10000) - 5000.0;
        std::vector<double> x(512);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = a * static_cast<double>(i + 1) + b;
        }
        for (const int m : {4, 16, 64, 128}) {
            const double f = fluctuation(x, m, 1);
            check.expect(f <= 1e-10, "linear profile: F(" + std::to_string(m) + ") = " + fmt(f));
        }
    }
    for (const double h : {0.3, 0.75}) {
        std::vector<std::pair<int, double>> points;
        for (const int m : {4, 8, 16, 32, 64, 128}) {
            points.emplace_back(m, std::pow(static_cast<double>(m), h));
        }
        const HurstEstimate est = fit_power_law(points);
        check.expect(std::abs(est.h - h) <= 1e-12,
                     "slope " + fmt(est.h) + " for exact F = m^" + fmt(h));
        check.expect(std::abs(est.r_squared - 1.0) <= 1e-12,
                     "r_squared " + fmt(est.r_squared) + " for exact F = m^" + fmt(h));
    }
}

/* 6. Affine invariance of the Hurst estimate */
void criterion_affine_invariance(Checker& check) {
    const std::vector<double> y = fgn(2000, 0.7, 1.0, 31415);
    const double base = hurst_dfa(y).h;
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 6; ++trial) {
        double a = (static_cast<double>(rng() % 4001) - 2000.0) / 100.0;
        if (std::abs(a) < 1e-3) a = -3.7;
        const double b = (static_cast<double>(rng() % 4001) - 2000.0) / 7.0;
        std::vector<double> t(y.size());
        std::transform(y.begin(), y.end(), t.begin(), [&](double v) { return a * v + b; });
        const double h = hurst_dfa(t).h;
        check.expect(std::abs(h - base) <= 1e-12,
                     "a=" + fmt(a) + " b=" + fmt(b) + ": |dh| = " + fmt(std::abs(h - base)));
    }
}

/* 7. Regime detection on concatenated fGn */
void criterion_regime_detection(Checker& check) {
    const int seeds = 10;
    double mean_first = 0.0;
    double mean_last = 0.0;
    for (int seed = 0; seed < seeds; ++seed) {
        std::vector<GeneratorSpec> specs(2);
        specs[0].kind = GeneratorKind::fgn;
        specs[0].n = 1500;
        specs[0].h = 0.8;
        specs[0].seed = static_cast<std::uint64_t>(1000 + 2 * seed);
        specs[1] = specs[0];
        specs[1].h = 0.5;
        specs[1].seed = static_cast<std::uint64_t>(1001 + 2 * seed);
        const std::vector<double> y = regime_concat(specs);
        const HurstSeries series = rolling_hurst(y, 500, 1);
        for (std::size_t k = 0; k < 500; ++k) {
            mean_first += series.estimates[k]->h;
            mean_last += series.estimates[series.size() - 1 - k]->h;
        }
    }
    mean_first /= 500.0 * seeds;
    mean_last /= 500.0 * seeds;
    check.expect(mean_first - mean_last >= 0.15,
                 "mean H first 500 windows = " + fmt(mean_first) + ", last 500 = " +
                     fmt(mean_last) + ", gap " + fmt(mean_first - mean_last) + " < 0.15");
}

/* 8. Rolling window counts, determinism, parallel == serial */
void criterion_rolling_determinism(Checker& check) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t window = 64 + rng() % 128;
        const std::size_t n = window + rng() % 400;
        const std::size_t step = 1 + rng() % 9;
        const std::vector<double> y = white_noise(n, 1.0, 80000 + trial);
        const HurstSeries series = rolling_hurst(y, window, step);
        const std::size_t expected = (n - window) / step + 1;
        check.expect(series.size() == expected,
                     "count law: n=" + std::to_string(n) + " window=" + std::to_string(window) +
                         " step=" + std::to_string(step) + " got " +
                         std::to_string(series.size()));
    }

    const std::vector<double> y = fgn(1500, 0.65, 1.0, 888);
    const HurstSeries serial = rolling_hurst(y, 500, 1, {}, 1);
    const HurstSeries serial_again = rolling_hurst(y, 500, 1, {}, 1);
    const HurstSeries parallel = rolling_hurst(y, 500, 1, {}, 4);
    bool identical = serial.size() == parallel.size() && serial.size() == serial_again.size();
    for (std::size_t k = 0; identical && k < serial.size(); ++k) {
        identical = serial.offsets[k] == parallel.offsets[k] &&
                    serial.estimates[k].has_value() && parallel.estimates[k].has_value() &&
                    serial.estimates[k]->h == parallel.estimates[k]->h &&
                    serial.estimates[k]->intercept == parallel.estimates[k]->intercept &&
                    serial.estimates[k]->r_squared == parallel.estimates[k]->r_squared &&
                    serial.estimates[k]->h == serial_again.estimates[k]->h;
    }
    check.expect(identical, "parallel, serial and repeated runs are not bit-identical");
}

/* 9. Spearman correctness: signs, ties, monotone invariance */
void criterion_spearman(Checker& check) {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    const std::vector<double> up = {2.0, 4.0, 6.0, 8.0};
    std::vector<double> down(up.rbegin(), up.rend());
    check.expect(spearman_rho(x, up) == 1.0, "monotone increasing pair: rho != 1");
    check.expect(spearman_rho(x, down) == -1.0, "monotone decreasing pair: rho != -1");

    std::mt19937_64 rng(909);
    int instances = 0;
    while (instances < 100) {
        const std::size_t n = 3 + rng() % 18;
        std::vector<double> a(n), b(n);
        bool a_const = true, b_const = true;
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = static_cast<double>(rng() % 5);
            b[i] = static_cast<double>(rng() % 5);
            a_const &= a[i] == a[0];
            b_const &= b[i] == b[0];
        }
        if (a_const || b_const) continue;
        const double got = spearman_rho(a, b);
        const double expected = oracle::spearman(a, b);
        check.expect(std::abs(got - expected) <= 1e-12,
                     "tie instance " + std::to_string(instances) + ": got " + fmt(got) +
                         " want " + fmt(expected));
        ++instances;
    }

    std::vector<double> u(64), v(64);
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = static_cast<double>(rng() % 1000) / 10.0;
        v[i] = static_cast<double>(rng() % 1000) / 10.0;
    }
    const double base = spearman_rho(u, v);
    std::vector<double> eu(u.size()), cv(v.size());
    std::transform(u.begin(), u.end(), eu.begin(), [](double w) { return std::exp(w / 20.0); });
    std::transform(v.begin(), v.end(), cv.begin(), [](double w) { return w * w * w + w; });
    check.expect(spearman_rho(eu, v) == base && spearman_rho(u, cv) == base,
                 "rho changed under a strictly increasing transform");
}

/* 10. Pipeline identity: CLI stats == manual composition */
void criterion_pipeline_identity(Checker& check) {
    // synthetic tick fixture: irregular random-walk trades over ~35 days
    std::mt19937_64 rng(101);
    std::ostringstream text;
    TickSeries ticks;
    std::int64_t ts = 1400000000;
    double price = 250.0;
    for (int i = 0; i < 6000; ++i) {
        ts += 120 + static_cast<std::int64_t>(rng() % 900);
        price *= std::exp((static_cast<double>(rng() % 2001) - 1000.0) / 40000.0);
        const double volume = static_cast<double>(rng() % 1000) / 50.0;
        ticks.records.push_back({ts, price, volume});
        text << ts << ',' << format_double(price) << ',' << format_double(volume) << '\n';
    }
    const auto fixture = g_dir / "acceptance_ticks.csv";
    {
        std::ofstream out(fixture, std::ios::binary);
        out << text.str();
    }

    const auto out_path = g_dir / "acceptance_stats.csv";
    const std::string command = g_cli + " stats --input " + fixture.string() +
                                " --kind ticks --interval-hours 5 --output " +
                                out_path.string() + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    const int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    check.expect(exit_code == 0, "CLI stats exited with " + std::to_string(exit_code));
    if (exit_code != 0) return;

    std::ifstream in(out_path, std::ios::binary);
    const Table table = read_numeric_csv(in);
    check.expect(table.n_rows() == 1, "expected a single stats row");
    if (table.n_rows() != 1) return;

    SamplingSpec spec;  // defaults: 5h, auto anchor, carry-forward
    const PriceSeries prices = resample_last(ticks, spec);
    const ReturnSeries returns = log_returns(prices, 100.0);
    const DescriptiveStats expected = describe(returns.values);
    const double fields[10] = {static_cast<double>(expected.n),
                               expected.mean,
                               expected.median,
                               expected.min,
                               expected.max,
                               expected.std_dev,
                               expected.skewness,
                               expected.kurtosis,
                               expected.jarque_bera,
                               expected.jb_p_value};
    const char* names[10] = {"n",        "mean",     "median",      "min",       "max",
                             "std_dev",  "skewness", "kurtosis",    "jarque_bera",
                             "jb_p_value"};
    for (std::size_t c = 0; c < 10; ++c) {
        const double got = std::get<double>(table.rows[0][c]);
        check.expect(got == fields[c], std::string(names[c]) + ": CLI " + fmt(got) +
                                           " != library " + fmt(fields[c]));
    }
}

struct Criterion {
    int id;
    const char* title;
    std::function<void(Checker&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance_tests <path-to-hurstlab-binary>\n";
        return 2;
    }
    g_cli = argv[1];
    g_dir = std::filesystem::temp_directory_path() / "hurstlab_acceptance";
    std::filesystem::create_directories(g_dir);

    const std::vector<Criterion> criteria = {
        {1, "JB identity vs published table values", criterion_jb_identity},
        {2, "default scale rule m = {4,8,16,32,64,128}", criterion_default_scales},
        {3, "DFA calibration on fGn and white noise (50 seeds)", criterion_dfa_calibration},
        {4, "fluctuation kernel matches brute-force normal equations", criterion_oracle_equivalence},
        {5, "exact-null detrending and exact power-law recovery", criterion_exact_null},
        {6, "affine invariance of the Hurst estimate", criterion_affine_invariance},
        {7, "regime switch detection over 10 seeds", criterion_regime_detection},
        {8, "rolling counts, determinism, parallel == serial", criterion_rolling_determinism},
        {9, "Spearman signs, tie handling, monotone invariance", criterion_spearman},
        {10, "CLI stats equals manual pipeline composition", criterion_pipeline_identity},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Checker checker;
        criterion.run(checker);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool ok = checker.failures().empty();
        failed += ok ? 0 : 1;
        std::printf("%s  %2d. %s  (%.2fs)\n", ok ? "PASS" : "FAIL", criterion.id,
                    criterion.title, elapsed);
        for (const std::string& detail : checker.failures()) {
            std::printf("      - %s\n", detail.c_str());
        }
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
