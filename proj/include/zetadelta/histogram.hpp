#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "zetadelta/errors.hpp"

namespace zetadelta {

struct BinningSpec {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t bin_count = 1;

    double width() const { return (hi - lo) / static_cast<double>(bin_count); }
    bool valid() const { return bin_count > 0 && lo < hi && std::isfinite(lo) && std::isfinite(hi); }
};

// Fixed uniform bins over [lo, hi); everything outside lands in underflow /
// overflow so total mass always equals the number of accumulated values.
class Histogram {
  public:
    Histogram() : binning_{}, counts_(1, 0) {}
    explicit Histogram(BinningSpec binning) : binning_(binning) {
        if (!binning.valid()) throw InputError("histogram binning: need lo < hi and bin_count > 0");
        counts_.assign(binning.bin_count, 0);
    }

    void add(double x) {
        if (x < binning_.lo) {
            ++underflow_;
        } else if (x >= binning_.hi) {
            ++overflow_;
        } else {
            auto bin = static_cast<std::size_t>((x - binning_.lo) / binning_.width());
            if (bin >= counts_.size()) bin = counts_.size() - 1;  // hi-edge rounding
            ++counts_[bin];
        }
    }

    const BinningSpec& binning() const { return binning_; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    std::uint64_t underflow() const { return underflow_; }
    std::uint64_t overflow() const { return overflow_; }

    double bin_lo(std::size_t i) const { return binning_.lo + static_cast<double>(i) * binning_.width(); }
    double bin_hi(std::size_t i) const { return binning_.lo + static_cast<double>(i + 1) * binning_.width(); }
    double bin_center(std::size_t i) const { return binning_.lo + (static_cast<double>(i) + 0.5) * binning_.width(); }

    std::uint64_t in_range_mass() const {
        return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
    }
    std::uint64_t total_mass() const { return in_range_mass() + underflow_ + overflow_; }

    Histogram& operator+=(const Histogram& other) {
        if (other.binning_.lo != binning_.lo || other.binning_.hi != binning_.hi ||
            other.binning_.bin_count != binning_.bin_count)
            throw InputError("histogram sum: binning mismatch");
        for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
        underflow_ += other.underflow_;
        overflow_ += other.overflow_;
        return *this;
    }

  private:
    BinningSpec binning_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t underflow_ = 0;
    std::uint64_t overflow_ = 0;
};

// Quantile of the binned distribution at probability p (mass-weighted, linear
// interpolation inside the covering bin; under/overflow mass clamps to the
// range edges).
inline double histogram_quantile(const Histogram& h, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("histogram_quantile: p outside [0,1]");
    std::uint64_t mass = h.total_mass();
    if (mass == 0) throw InputError("histogram_quantile: empty histogram");
    double target = p * static_cast<double>(mass);
    double cum = static_cast<double>(h.underflow());
    if (target <= cum) return h.binning().lo;
    for (std::size_t i = 0; i < h.counts().size(); ++i) {
        double c = static_cast<double>(h.counts()[i]);
        if (target <= cum + c && c > 0)
            return h.bin_lo(i) + (target - cum) / c * h.binning().width();
        cum += c;
    }
    return h.binning().hi;
}

}  // namespace zetadelta
