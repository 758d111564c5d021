#pragma once

// Locating the smallest zeros from per-lag moment profiles. Around each zero
// the lag-n difference distributions widen (variance peaks), flatten (kurtosis
// dips) and flip their skew from towards-the-zero-from-below to
// towards-the-zero-from-above, so peaks in the variance profile mark zero
// locations and the other two signals corroborate them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zetadelta/delta_ensemble.hpp"
#include "zetadelta/errors.hpp"
#include "zetadelta/moments.hpp"

namespace zetadelta {

struct MomentProfile {
    std::vector<int> n;  // lags, 1-based
    std::vector<double> mean;
    std::vector<std::optional<double>> variance;
    std::vector<std::optional<double>> skewness;
    std::vector<std::optional<double>> kurtosis;

    std::size_t size() const { return n.size(); }
};

inline MomentProfile profiles(const DeltaEnsemble& ensemble) {
    MomentProfile p;
    for (std::size_t k = 1; k <= ensemble.n_max; ++k) {
        MomentReport r = report(ensemble.lag(k).moments);
        p.n.push_back(static_cast<int>(k));
        p.mean.push_back(r.mean);
        p.variance.push_back(r.variance);
        p.skewness.push_back(r.skewness);
        p.kurtosis.push_back(r.kurtosis);
    }
    return p;
}

enum EvidenceFlags : unsigned {
    kVarianceMax = 1u << 0,
    kKurtosisMin = 1u << 1,
    kSkewFlip = 1u << 2,
};

struct ZeroCandidate {
    int lag = 0;
    double location = 0.0;  // mean of the lag's delta distribution
    unsigned evidence = 0;  // EvidenceFlags
    int score = 0;          // number of evidence bits set
};

inline std::vector<std::string> evidence_names(unsigned evidence) {
    std::vector<std::string> names;
    if (evidence & kVarianceMax) names.push_back("variance_max");
    if (evidence & kKurtosisMin) names.push_back("kurtosis_min");
    if (evidence & kSkewFlip) names.push_back("skew_flip");
    return names;
}

namespace detail {

// moving average over +/- halfwidth, shrinking at the edges; unset entries
// stay unset
inline std::vector<std::optional<double>> smooth(const std::vector<std::optional<double>>& v,
                                                 int halfwidth) {
    if (halfwidth <= 0) return v;
    std::vector<std::optional<double>> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i]) continue;
        double sum = 0.0;
        int cnt = 0;
        for (int j = -halfwidth; j <= halfwidth; ++j) {
            auto k = static_cast<std::ptrdiff_t>(i) + j;
            if (k < 0 || k >= static_cast<std::ptrdiff_t>(v.size())) continue;
            if (!v[static_cast<std::size_t>(k)]) continue;
            sum += *v[static_cast<std::size_t>(k)];
            ++cnt;
        }
        out[i] = sum / cnt;
    }
    return out;
}

// strict local extremum over +/- 2 entries, all of which must exist
inline bool strict_extremum(const std::vector<std::optional<double>>& v, std::size_t i,
                            bool maximum) {
    if (i < 2 || i + 2 >= v.size() || !v[i]) return false;
    for (int j : {-2, -1, 1, 2}) {
        auto k = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + j);
        if (!v[k]) return false;
        if (maximum ? !(*v[i] > *v[k]) : !(*v[i] < *v[k])) return false;
    }
    return true;
}

}  // namespace detail

// Candidates at strict local maxima of the (optionally smoothed) variance
// profile; kurtosis minima and +/- skewness sign changes within one lag add
// corroborating evidence. Candidates один lag apart collapse to the higher
// variance peak.
inline std::vector<ZeroCandidate> detect_candidates(const MomentProfile& profile,
                                                    int smoothing_halfwidth = 0) {
    auto var = detail::smooth(profile.variance, smoothing_halfwidth);
    auto kurt = detail::smooth(profile.kurtosis, smoothing_halfwidth);
    const auto& skew = profile.skewness;

    std::vector<ZeroCandidate> found;
    for (std::size_t i = 0; i < var.size(); ++i) {
        if (!detail::strict_extremum(var, i, /*maximum=*/true)) continue;
        ZeroCandidate c;
        c.lag = profile.n[i];
        c.location = profile.mean[i];
        c.evidence = kVarianceMax;
        for (std::ptrdiff_t j = -1; j <= 1; ++j) {
            auto k = static_cast<std::ptrdiff_t>(i) + j;
            if (k < 0 || k >= static_cast<std::ptrdiff_t>(var.size())) continue;
            if (detail::strict_extremum(kurt, static_cast<std::size_t>(k), /*maximum=*/false))
                c.evidence |= kKurtosisMin;
        }
        for (std::ptrdiff_t j = -1; j <= 1; ++j) {
            auto k = static_cast<std::ptrdiff_t>(i) + j;
            if (k < 0 || k + 1 >= static_cast<std::ptrdiff_t>(skew.size())) continue;
            auto a = skew[static_cast<std::size_t>(k)];
            auto b = skew[static_cast<std::size_t>(k + 1)];
            if (a && b && *a > 0.0 && *b < 0.0) c.evidence |= kSkewFlip;
        }
        c.score = (c.evidence & kVarianceMax ? 1 : 0) + (c.evidence & kKurtosisMin ? 1 : 0) +
                  (c.evidence & kSkewFlip ? 1 : 0);
        found.push_back(c);
    }

    // collapse peaks closer than 2 lags, keeping the higher variance
    std::vector<ZeroCandidate> merged;
    for (const auto& c : found) {
        if (!merged.empty() && c.lag - merged.back().lag < 2) {
            double v_prev = *var[static_cast<std::size_t>(merged.back().lag - profile.n[0])];
            double v_cur = *var[static_cast<std::size_t>(c.lag - profile.n[0])];
            if (v_cur > v_prev) merged.back() = c;
            continue;
        }
        merged.push_back(c);
    }
    std::sort(merged.begin(), merged.end(),
              [](const ZeroCandidate& a, const ZeroCandidate& b) { return a.location < b.location; });
    return merged;
}

// --- skewness orientation against reference zeros ----------------------------

struct SkewSignReport {
    struct Entry {
        int lag = 0;
        double mean = 0.0;
        double skewness = 0.0;
        double nearest_zero = 0.0;
        int expected_sign = 0;  // +1 below the nearest zero, -1 above it
        bool excluded = false;  // midpoint tie, unset skewness, or past coverage
        bool consistent = false;
    };
    std::vector<Entry> entries;
    double consistency_fraction = 0.0;  // over non-excluded entries
};

// Classifies, per lag, whether the distribution is skewed towards its nearest
// reference zero: positive skew expected below the zero, negative above.
// Means beyond the last reference zero (or exactly at a midpoint) are
// excluded from the fraction.
inline SkewSignReport skew_sign_structure(const MomentProfile& profile,
                                          const std::vector<double>& reference_zeros) {
    if (reference_zeros.empty()) throw InputError("skew_sign_structure: no reference zeros");
    SkewSignReport rep;
    std::size_t consistent = 0, counted = 0;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        SkewSignReport::Entry e;
        e.lag = profile.n[i];
        e.mean = profile.mean[i];
        auto it = std::lower_bound(reference_zeros.begin(), reference_zeros.end(), e.mean);
        double above = it == reference_zeros.end() ? std::numeric_limits<double>::infinity() : *it;
        double below = it == reference_zeros.begin() ? -std::numeric_limits<double>::infinity()
                                                     : *(it - 1);
        if (!profile.skewness[i] || e.mean > reference_zeros.back()) {
            e.excluded = true;
        } else if (above - e.mean == e.mean - below) {
            e.excluded = true;  // exact midpoint: no nearest zero
        } else {
            e.skewness = *profile.skewness[i];
            bool zero_is_above = above - e.mean < e.mean - below;
            e.nearest_zero = zero_is_above ? above : below;
            e.expected_sign = zero_is_above ? +1 : -1;
            e.consistent = e.skewness != 0.0 &&
                           (e.skewness > 0.0 ? e.expected_sign > 0 : e.expected_sign < 0);
            ++counted;
            consistent += e.consistent;
        }
        rep.entries.push_back(e);
    }
    if (counted > 0)
        rep.consistency_fraction = static_cast<double>(consistent) / static_cast<double>(counted);
    return rep;
}

inline double consistency_fraction(const SkewSignReport& rep, int lag_from, int lag_to) {
    std::size_t consistent = 0, counted = 0;
    for (const auto& e : rep.entries) {
        if (e.lag < lag_from || e.lag > lag_to || e.excluded) continue;
        ++counted;
        consistent += e.consistent;
    }
    return counted == 0 ? 0.0 : static_cast<double>(consistent) / static_cast<double>(counted);
}

// --- matching candidates to reference zeros ----------------------------------

struct MatchReport {
    struct Pair {
        ZeroCandidate candidate;
        double reference = 0.0;
        double error = 0.0;
    };
    std::vector<Pair> matched;
    std::vector<ZeroCandidate> unmatched_candidates;
    std::vector<double> unmatched_references;
};

// Greedy nearest matching in candidate order; each reference is used at most
// once, ties go to the lower reference.
inline MatchReport match(const std::vector<ZeroCandidate>& candidates,
                         const std::vector<double>& reference_zeros, double tolerance) {
    if (!(tolerance > 0.0)) throw InputError("match: tolerance must be > 0");
    MatchReport rep;
    std::vector<bool> used(reference_zeros.size(), false);
    for (const auto& c : candidates) {
        std::size_t best = reference_zeros.size();
        double best_err = tolerance;
        for (std::size_t r = 0; r < reference_zeros.size(); ++r) {
            if (used[r]) continue;
            double err = std::fabs(c.location - reference_zeros[r]);
            if (err < best_err || (err == best_err && best == reference_zeros.size())) {
                best = r;
                best_err = err;
            }
        }
        if (best < reference_zeros.size() && best_err <= tolerance) {
            used[best] = true;
            rep.matched.push_back({c, reference_zeros[best], best_err});
        } else {
            rep.unmatched_candidates.push_back(c);
        }
    }
    for (std::size_t r = 0; r < reference_zeros.size(); ++r)
        if (!used[r]) rep.unmatched_references.push_back(reference_zeros[r]);
    return rep;
}

// --- variance profile stretch -------------------------------------------------

// Least-squares ratio r minimizing sum (lb_k - r * la_k)^2 over variance-peak
// lags paired in order; needs >= 3 peaks on each side.
inline double variance_stretch(const MomentProfile& a, const MomentProfile& b) {
    auto peaks = [](const MomentProfile& p) {
        std::vector<double> lags;
        for (const auto& c : detect_candidates(p, 0)) lags.push_back(static_cast<double>(c.lag));
        return lags;
    };
    std::vector<double> pa = peaks(a), pb = peaks(b);
    if (pa.size() < 3 || pb.size() < 3)
        throw InsufficientDataError("variance_stretch: need at least 3 variance peaks per profile");
    std::size_t k = std::min(pa.size(), pb.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        num += pa[i] * pb[i];
        den += pa[i] * pa[i];
    }
    return num / den;
}

}  // namespace zetadelta
