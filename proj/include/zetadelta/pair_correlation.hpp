#pragma once

// Pair correlation of unfolded zero differences against the Montgomery / GUE
// prediction R2(x) = 1 - (sin(pi x) / (pi x))^2.

#include <cmath>
#include <numbers>
#include <vector>

#include "zetadelta/delta_ensemble.hpp"
#include "zetadelta/histogram.hpp"
#include "zetadelta/zero_table.hpp"

namespace zetadelta {

inline double r2_theory(double x) {
    if (x == 0.0) return 0.0;
    double s = std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
    return 1.0 - s * s;
}

struct PairCorrelationResult {
    Histogram histogram;                     // scaled differences on [0, cutoff]
    std::vector<double> normalized_density;  // per-bin estimate of R2 at bin centers
    std::vector<double> theory;              // R2 prediction at bin centers
    double rms_deviation = 0.0;              // over bin centers in [0.2, cutoff]
};

// Histogram of scaled differences, normalized per zero and per unit scaled
// distance so the density tends to R2. The rms excludes centers below 0.2
// where bin discretization distorts the origin.
inline PairCorrelationResult estimate(const ZeroWindow& window, double cutoff,
                                      std::size_t bin_count, std::size_t n_max) {
    if (!(cutoff > 0.0)) throw InputError("pair correlation: cutoff must be > 0");
    if (bin_count < 10) throw InputError("pair correlation: need at least 10 bins");
    PairCorrelationResult result;
    result.histogram = Histogram(BinningSpec{0.0, cutoff, bin_count});
    for_each_scaled_delta(window, n_max, cutoff, [&](double s) { result.histogram.add(s); });

    double width = result.histogram.binning().width();
    double norm = static_cast<double>(window.count) * width;
    double sq_sum = 0.0;
    std::size_t rms_bins = 0;
    for (std::size_t b = 0; b < bin_count; ++b) {
        double center = result.histogram.bin_center(b);
        double density = static_cast<double>(result.histogram.counts()[b]) / norm;
        double theory = r2_theory(center);
        result.normalized_density.push_back(density);
        result.theory.push_back(theory);
        if (center >= 0.2) {
            sq_sum += (density - theory) * (density - theory);
            ++rms_bins;
        }
    }
    if (rms_bins > 0) result.rms_deviation = std::sqrt(sq_sum / static_cast<double>(rms_bins));
    return result;
}

}  // namespace zetadelta
