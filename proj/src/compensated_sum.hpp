#pragma once

#include <cmath>
#include <span>

namespace hurstlab::detail {

/// Neumaier-compensated accumulator; fixed-order reductions stay stable
/// regardless of how callers batch their inputs.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }

    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
    CompensatedSum acc;
    for (const double v : values) acc.add(v);
    return acc.value();
}

}  // namespace hurstlab::detail
