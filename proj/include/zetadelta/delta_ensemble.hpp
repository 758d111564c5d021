#pragma once

// Per-lag difference distributions over a zero window: for each lag n the
// stream of differences between zeros n apart, accumulated into a moment
// summary and a histogram. Differences are taken on offsets only -- the table
// base cancels exactly, which is what keeps high-height tables usable.

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <string>
#include <thread>
#include <vector>

#include "zetadelta/histogram.hpp"
#include "zetadelta/moments.hpp"
#include "zetadelta/zero_table.hpp"

namespace zetadelta {

// Random-access range of delta(n) = offset[i+n] - offset[i] over a window.
class DeltaRange {
  public:
    DeltaRange(ZeroWindow window, std::size_t lag) : window_(window), lag_(lag) {
        if (lag == 0 || lag >= window.count)
            throw LagError("lag " + std::to_string(lag) + " not in [1, " +
                           std::to_string(window.count) + ")");
    }

    std::size_t size() const { return window_.count - lag_; }
    std::size_t lag() const { return lag_; }
    double operator[](std::size_t i) const { return window_.offset(i + lag_) - window_.offset(i); }

    class iterator {
      public:
        using iterator_category = std::random_access_iterator_tag;
        using value_type = double;
        using difference_type = std::ptrdiff_t;
        using pointer = const double*;
        using reference = double;

        iterator() = default;
        iterator(const DeltaRange* r, std::size_t i) : range_(r), i_(i) {}
        double operator*() const { return (*range_)[i_]; }
        iterator& operator++() { ++i_; return *this; }
        iterator operator++(int) { iterator t = *this; ++i_; return t; }
        iterator& operator--() { --i_; return *this; }
        iterator& operator+=(difference_type d) { i_ += static_cast<std::size_t>(d); return *this; }
        iterator operator+(difference_type d) const { return iterator(range_, i_ + static_cast<std::size_t>(d)); }
        difference_type operator-(const iterator& o) const {
            return static_cast<difference_type>(i_) - static_cast<difference_type>(o.i_);
        }
        double operator[](difference_type d) const { return (*range_)[i_ + static_cast<std::size_t>(d)]; }
        bool operator==(const iterator& o) const { return i_ == o.i_; }
        bool operator!=(const iterator& o) const { return i_ != o.i_; }
        bool operator<(const iterator& o) const { return i_ < o.i_; }

      private:
        const DeltaRange* range_ = nullptr;
        std::size_t i_ = 0;
    };

    iterator begin() const { return iterator(this, 0); }
    iterator end() const { return iterator(this, size()); }

  private:
    ZeroWindow window_;
    std::size_t lag_;
};

inline DeltaRange delta_stream(const ZeroWindow& window, std::size_t n) {
    return DeltaRange(window, n);
}

struct LagRecord {
    MomentSummary moments;
    Histogram histogram;
};

struct DeltaEnsemble {
    std::size_t start_index = 0;
    std::size_t count = 0;
    std::string source;
    std::size_t n_max = 0;
    BinningSpec binning;
    std::vector<LagRecord> records;  // records[k] holds lag n = k+1

    const LagRecord& lag(std::size_t n) const {
        if (n < 1 || n > records.size()) throw BoundsError("ensemble lag out of range");
        return records[n - 1];
    }
};

// One summary + histogram per lag n = 1..n_max. Lags are independent, so the
// whole build parallelizes over n; each lag accumulates sequentially in index
// order, which keeps the result identical for any worker count.
inline DeltaEnsemble build_ensemble(const ZeroWindow& window, std::size_t n_max,
                                    const BinningSpec& binning, unsigned workers = 0) {
    if (n_max == 0 || n_max >= window.count)
        throw LagError("n_max " + std::to_string(n_max) + " not in [1, " +
                       std::to_string(window.count) + ")");
    DeltaEnsemble e;
    e.start_index = window.start_index;
    e.count = window.count;
    e.source = window.table->source;
    e.n_max = n_max;
    e.binning = binning;
    e.records.resize(n_max);
    for (auto& rec : e.records) rec.histogram = Histogram(binning);

    auto run_lag = [&](std::size_t k) {
        DeltaRange deltas(window, k + 1);
        LagRecord& rec = e.records[k];
        for (double d : deltas) {
            rec.moments.add(d);
            rec.histogram.add(d);
        }
    };

    if (workers == 0) workers = std::thread::hardware_concurrency();
    if (workers <= 1 || n_max == 1) {
        for (std::size_t k = 0; k < n_max; ++k) run_lag(k);
        return e;
    }
    std::vector<std::thread> pool;
    std::size_t n_threads = std::min<std::size_t>(workers, n_max);
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t k = t; k < n_max; k += n_threads) run_lag(k);
        });
    }
    for (auto& th : pool) th.join();
    return e;
}

// Bin-wise sum of the per-lag histograms for n in [n_from, n_to].
inline Histogram superpose(const DeltaEnsemble& e, std::size_t n_from, std::size_t n_to) {
    if (n_from < 1 || n_from > n_to || n_to > e.n_max)
        throw BoundsError("superpose range [" + std::to_string(n_from) + ", " +
                          std::to_string(n_to) + "] not within 1..n_max");
    Histogram sum(e.binning);
    for (std::size_t n = n_from; n <= n_to; ++n) sum += e.lag(n).histogram;
    return sum;
}

// Visits every unfolded difference (gamma(i+n) - gamma(i)) * density(gamma(i))
// that does not exceed the cutoff, for n = 1..n_max. At fixed i the scaled
// difference grows with n, so the lag loop stops at the first value past the
// cutoff.
template <class Emit>
inline void for_each_scaled_delta(const ZeroWindow& window, std::size_t n_max, double cutoff,
                                  Emit&& emit) {
    if (!(cutoff > 0.0)) throw InputError("scaled deltas: cutoff must be > 0");
    if (n_max == 0 || n_max >= window.count)
        throw LagError("n_max " + std::to_string(n_max) + " not in [1, " +
                       std::to_string(window.count) + ")");
    double base = window.table->base_approx();
    for (std::size_t i = 0; i < window.count - 1; ++i) {
        double density = mean_density(base + window.offset(i));
        std::size_t n_stop = std::min(n_max, window.count - 1 - i);
        for (std::size_t n = 1; n <= n_stop; ++n) {
            double scaled = (window.offset(i + n) - window.offset(i)) * density;
            if (scaled > cutoff) break;
            emit(scaled);
        }
    }
}

inline std::vector<double> scaled_delta_stream(const ZeroWindow& window, std::size_t n_max,
                                               double cutoff) {
    std::vector<double> out;
    for_each_scaled_delta(window, n_max, cutoff, [&](double s) { out.push_back(s); });
    return out;
}

}  // namespace zetadelta
