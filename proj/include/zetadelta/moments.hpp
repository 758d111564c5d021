#pragma once

// One-pass accumulation of count, mean and centered power sums m2..m4
// (Chan/Golub/LeVeque-style incremental updates, Pebay merge) with derived
// population variance, skewness and full kurtosis (normal -> 3). Summaries
// merge, so fork-join reductions give the same answer as a single pass.

#include <cmath>
#include <cstdint>
#include <optional>

#include "zetadelta/errors.hpp"

namespace zetadelta {

struct MomentSummary {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;  // sum (x - mean)^2
    double m3 = 0.0;  // sum (x - mean)^3
    double m4 = 0.0;  // sum (x - mean)^4

    void add(double x) {
        if (!std::isfinite(x)) throw InputError("accumulate: sample is not finite");
        double n1 = static_cast<double>(count);
        ++count;
        double n = static_cast<double>(count);
        double delta = x - mean;
        double delta_n = delta / n;
        double delta_n2 = delta_n * delta_n;
        double term1 = delta * delta_n * n1;
        mean += delta_n;
        m4 += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2 - 4.0 * delta_n * m3;
        m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2;
        m2 += term1;
    }
};

inline MomentSummary accumulate(MomentSummary summary, double x) {
    summary.add(x);
    return summary;
}

inline MomentSummary merge(const MomentSummary& a, const MomentSummary& b) {
    if (a.count == 0) return b;  // identity, bit for bit
    if (b.count == 0) return a;
    double na = static_cast<double>(a.count);
    double nb = static_cast<double>(b.count);
    double n = na + nb;
    double delta = b.mean - a.mean;
    double delta2 = delta * delta;

    MomentSummary r;
    r.count = a.count + b.count;
    r.mean = a.mean + delta * (nb / n);
    r.m2 = a.m2 + b.m2 + delta2 * na * nb / n;
    r.m3 = a.m3 + b.m3 + delta * delta2 * na * nb * (na - nb) / (n * n) +
           3.0 * delta * (na * b.m2 - nb * a.m2) / n;
    r.m4 = a.m4 + b.m4 + delta2 * delta2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
           6.0 * delta2 * (na * na * b.m2 + nb * nb * a.m2) / (n * n) +
           4.0 * delta * (na * b.m3 - nb * a.m3) / n;
    return r;
}

// Derived statistics; population (1/N) normalization throughout. Statistics
// that need more data than the summary holds come back unset rather than NaN,
// so profile scans can skip degenerate lags.
struct MomentReport {
    std::uint64_t count = 0;
    double mean = 0.0;
    std::optional<double> variance;          // needs count >= 2
    std::optional<double> skewness;          // needs count >= 3 and m2 > 0
    std::optional<double> kurtosis;          // full kurtosis, normal -> 3
    std::optional<double> excess_kurtosis() const {
        if (!kurtosis) return std::nullopt;
        return *kurtosis - 3.0;
    }
};

inline MomentReport report(const MomentSummary& s) {
    MomentReport r;
    r.count = s.count;
    r.mean = s.mean;
    if (s.count >= 2) {
        double n = static_cast<double>(s.count);
        double var = s.m2 / n;
        r.variance = var;
        if (s.count >= 3 && s.m2 > 0.0) {
            r.skewness = (s.m3 / n) / (var * std::sqrt(var));
            r.kurtosis = (s.m4 / n) / (var * var);
        }
    }
    return r;
}

}  // namespace zetadelta
