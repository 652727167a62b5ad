#include "hurstlab/rolling.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "hurstlab/error.hpp"
#include "hurstlab/series.hpp"

namespace hurstlab {

HurstSeries rolling_hurst(std::span<const double> returns, std::size_t window, std::size_t step,
                          const DfaConfig& config, unsigned threads) {
    // Resolve scales against the window once so every window regresses over
    // the same points; this also front-loads the configuration errors.
    DfaConfig resolved = config;
    if (resolved.scales.empty()) {
        resolved.scales = default_scales(window);
    }
    const std::size_t count = window_count(returns.size(), window, step);
    if (static_cast<std::size_t>(resolved.scales.back()) * 2 > window) {
        throw Error(errc::invalid_argument,
                    "window " + std::to_string(window) + " is below twice the max scale " +
                        std::to_string(resolved.scales.back()));
    }

    HurstSeries series;
    series.window = window;
    series.step = step;
    series.offsets.resize(count);
    series.estimates.resize(count);

    const auto compute = [&](std::size_t k) {
        const std::size_t offset = k * step;
        series.offsets[k] = offset;
        try {
            series.estimates[k] = hurst_dfa(returns.subspan(offset, window), resolved);
        } catch (const Error& e) {
            if (e.code() != errc::degenerate) throw;
            // degenerate window -> missing marker, the scan continues
        }
    };

    unsigned n_threads = threads == 0 ? std::thread::hardware_concurrency() : threads;
    if (n_threads == 0) n_threads = 1;
    n_threads = static_cast<unsigned>(
        std::min<std::size_t>(n_threads, count));

    if (n_threads <= 1) {
        for (std::size_t k = 0; k < count; ++k) compute(k);
        return series;
    }

    // Each window writes only its own slot, so the assembled result is
    // independent of scheduling and identical to the serial run.
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        workers.emplace_back([&] {
            for (std::size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1)) {
                try {
                    compute(k);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& worker : workers) worker.join();
    if (failure) std::rethrow_exception(failure);
    return series;
}

AlignedSeries align_hurst_with(const HurstSeries& series, std::span<const double> covariate,
                               Alignment alignment) {
    AlignedSeries out;
    if (series.offsets.empty()) return out;

    const std::size_t shift = alignment == Alignment::window_end ? series.window - 1 : 0;
    const std::size_t required = series.offsets.back() + shift + 1;
    if (covariate.size() < required) {
        throw Error(errc::validation,
                    "covariate length " + std::to_string(covariate.size()) +
                        " is below the required index range " + std::to_string(required));
    }

    out.hurst.reserve(series.size());
    out.covariate.reserve(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) {
        out.hurst.push_back(series.estimates[k] ? series.estimates[k]->h
                                                : std::numeric_limits<double>::quiet_NaN());
        out.covariate.push_back(covariate[series.offsets[k] + shift]);
    }
    return out;
}

}  // namespace hurstlab
