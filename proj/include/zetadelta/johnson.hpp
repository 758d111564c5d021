#pragma once

// Johnson system of distributions: a standard normal z is mapped through
//   z = gamma + delta * ln f(u),   u = (x - xi) / lambda
// with f(u) = u (SL, lognormal, x > xi), f(u) = u + sqrt(1 + u^2) (SU,
// unbounded) or f(u) = u / (1 - u) (SB, bounded to xi < x < xi + lambda).
// The explicit NORMAL tag covers the limiting point between SU and SB.
//
// Parameter estimation uses the Slifker-Shapiro four-quantile method: sample
// quantiles at the probability levels Phi(-3s), Phi(-s), Phi(s), Phi(3s)
// select the family through the spread ratio m*n/p^2 and invert to the four
// parameters in closed form.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "zetadelta/errors.hpp"
#include "zetadelta/histogram.hpp"
#include "zetadelta/moments.hpp"

namespace zetadelta {

enum class JohnsonFamily { SL, SU, SB, Normal };

inline const char* family_name(JohnsonFamily f) {
    switch (f) {
        case JohnsonFamily::SL: return "SL";
        case JohnsonFamily::SU: return "SU";
        case JohnsonFamily::SB: return "SB";
        case JohnsonFamily::Normal: return "NORMAL";
    }
    return "?";
}

struct JohnsonParams {
    JohnsonFamily family = JohnsonFamily::Normal;
    double gamma = 0.0;   // shape
    double delta = 1.0;   // shape, > 0
    double xi = 0.0;      // location
    double lambda = 1.0;  // scale, > 0

    bool valid() const {
        return delta > 0.0 && lambda > 0.0 && std::isfinite(gamma) && std::isfinite(delta) &&
               std::isfinite(xi) && std::isfinite(lambda);
    }
};

// --- standard normal helpers -------------------------------------------------

inline double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Acklam's rational approximation, polished with one Newton step.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile needs p in (0,1)");
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    double z;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        z = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        z = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log1p(-p));
        z = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double e = normal_cdf(z) - p;
    z -= e / normal_pdf(z);
    return z;
}

// --- density / distribution --------------------------------------------------

namespace detail {

// z(x) when x is inside the support; support handled by the callers.
inline double johnson_z(const JohnsonParams& p, double u) {
    switch (p.family) {
        case JohnsonFamily::SL: return p.gamma + p.delta * std::log(u);
        case JohnsonFamily::SU: return p.gamma + p.delta * std::asinh(u);
        case JohnsonFamily::SB: return p.gamma + p.delta * std::log(u / (1.0 - u));
        case JohnsonFamily::Normal: return p.gamma + p.delta * u;
    }
    return 0.0;
}

inline bool in_support(const JohnsonParams& p, double u) {
    switch (p.family) {
        case JohnsonFamily::SL: return u > 0.0;
        case JohnsonFamily::SB: return u > 0.0 && u < 1.0;
        default: return true;
    }
}

}  // namespace detail

inline double pdf(const JohnsonParams& p, double x) {
    if (!p.valid()) throw InputError("johnson pdf: invalid parameters");
    double u = (x - p.xi) / p.lambda;
    if (!detail::in_support(p, u)) return 0.0;
    constexpr double ln_sqrt_2pi = 0.9189385332046727;
    double log_norm = std::log(p.delta / p.lambda) - ln_sqrt_2pi;
    switch (p.family) {
        case JohnsonFamily::SL: {
            double z = p.gamma + p.delta * std::log(u);
            return std::exp(log_norm - std::log(u) - 0.5 * z * z);
        }
        case JohnsonFamily::SU: {
            double z = p.gamma + p.delta * std::asinh(u);
            return std::exp(log_norm - 0.5 * std::log1p(u * u) - 0.5 * z * z);
        }
        case JohnsonFamily::SB: {
            double z = p.gamma + p.delta * (std::log(u) - std::log1p(-u));
            return std::exp(log_norm - std::log(u) - std::log1p(-u) - 0.5 * z * z);
        }
        case JohnsonFamily::Normal: {
            double z = p.gamma + p.delta * u;
            return std::exp(log_norm - 0.5 * z * z);
        }
    }
    return 0.0;
}

inline double cdf(const JohnsonParams& p, double x) {
    if (!p.valid()) throw InputError("johnson cdf: invalid parameters");
    double u = (x - p.xi) / p.lambda;
    switch (p.family) {
        case JohnsonFamily::SL:
            if (u <= 0.0) return 0.0;
            break;
        case JohnsonFamily::SB:
            if (u <= 0.0) return 0.0;
            if (u >= 1.0) return 1.0;
            break;
        default: break;
    }
    return normal_cdf(detail::johnson_z(p, u));
}

// Inverse transform through a seeded generator; samples always land strictly
// inside the support.
inline std::vector<double> sample(const JohnsonParams& p, std::size_t count, std::uint64_t seed) {
    if (!p.valid()) throw InputError("johnson sample: invalid parameters");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double w = (normal(rng) - p.gamma) / p.delta;
        double g;
        switch (p.family) {
            case JohnsonFamily::SL: g = std::exp(w); break;
            case JohnsonFamily::SU: g = std::sinh(w); break;
            case JohnsonFamily::SB: g = 1.0 / (1.0 + std::exp(-w)); break;
            default: g = w; break;
        }
        out.push_back(p.xi + p.lambda * g);
    }
    return out;
}

// --- family selection in the (beta1, beta2) plane ----------------------------

// Kurtosis on the lognormal border for squared skewness beta1, via
// omega = e^{1/delta^2}: beta1 = (omega-1)(omega+2)^2,
// beta2 = omega^4 + 2 omega^3 + 3 omega^2 - 3. SU lies above, SB below.
inline double sl_boundary_kurtosis(double beta1) {
    if (beta1 < 0.0) throw DomainError("sl_boundary_kurtosis needs beta1 >= 0");
    if (beta1 == 0.0) return 3.0;
    auto b1_of = [](double w) { return (w - 1.0) * (w + 2.0) * (w + 2.0); };
    double lo = 1.0, hi = 2.0;
    while (b1_of(hi) < beta1) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        (b1_of(mid) < beta1 ? lo : hi) = mid;
    }
    double w = 0.5 * (lo + hi);
    return ((w + 2.0) * w + 3.0) * w * w - 3.0;
}

inline JohnsonFamily select_family(double skewness, double kurtosis, double tol = 1e-3) {
    double beta1 = skewness * skewness;
    if (!(kurtosis > 1.0 + beta1))
        throw DomainError("infeasible moment pair: kurtosis must exceed 1 + skewness^2");
    if (beta1 <= tol && std::fabs(kurtosis - 3.0) <= tol) return JohnsonFamily::Normal;
    double border = sl_boundary_kurtosis(beta1);
    if (std::fabs(kurtosis - border) <= tol) return JohnsonFamily::SL;
    return kurtosis > border ? JohnsonFamily::SU : JohnsonFamily::SB;
}

// --- Slifker-Shapiro quantile fit --------------------------------------------

// Sample values at the probability levels Phi(-3s), Phi(-s), Phi(s), Phi(3s),
// strictly increasing. s = 0.524 is the classic spacing.
struct QuantileSet {
    double s = 0.524;
    std::array<double, 4> x{};
};

inline std::array<double, 4> quantile_probs(double s) {
    return {normal_cdf(-3.0 * s), normal_cdf(-s), normal_cdf(s), normal_cdf(3.0 * s)};
}

inline JohnsonParams fit(const MomentReport& summary, const QuantileSet& q) {
    if (!(q.s > 0.0)) throw InputError("quantile fit: s must be > 0");
    if (!(q.x[0] < q.x[1] && q.x[1] < q.x[2] && q.x[2] < q.x[3]))
        throw InputError("quantile fit: quantiles must be strictly increasing");
    if (summary.count >= 2 && summary.variance && *summary.variance <= 0.0)
        throw DegenerateSampleError("quantile fit: sample has zero spread");

    double m = q.x[3] - q.x[2];
    double n = q.x[1] - q.x[0];
    double p = q.x[2] - q.x[1];
    double mid = 0.5 * (q.x[2] + q.x[1]);
    double mp = m / p, np = n / p;
    double ratio = mp * np;  // m n / p^2
    constexpr double ratio_tol = 1e-4;

    JohnsonParams out;
    if (std::fabs(ratio - 1.0) <= ratio_tol) {
        if (std::fabs(mp - np) <= ratio_tol) {
            // equal spreads: the normal limit
            out.family = JohnsonFamily::Normal;
            out.delta = 2.0 * q.s / p;
            out.gamma = 0.0;
            out.xi = mid;
            out.lambda = 1.0;
            return out;
        }
        if (mp > 1.0) {
            out.family = JohnsonFamily::SL;
            out.delta = 2.0 * q.s / std::log(mp);
            out.gamma = out.delta * std::log((mp - 1.0) / (p * std::sqrt(mp)));
            out.xi = mid - 0.5 * p * (mp + 1.0) / (mp - 1.0);
            out.lambda = 1.0;
            if (!out.valid()) throw InputError("quantile fit: SL parameters not finite");
            return out;
        }
        // left-skewed data on the lognormal line: SL cannot orient that way,
        // resolve by the sign of ratio - 1 below
    }

    if (ratio > 1.0) {
        out.family = JohnsonFamily::SU;
        double sum = mp + np;
        double root = std::sqrt(ratio - 1.0);
        out.delta = 2.0 * q.s / std::acosh(0.5 * sum);
        out.gamma = out.delta * std::asinh((np - mp) / (2.0 * root));
        out.lambda = 2.0 * p * root / ((sum - 2.0) * std::sqrt(sum + 2.0));
        out.xi = mid + p * (np - mp) / (2.0 * (sum - 2.0));
    } else {
        out.family = JohnsonFamily::SB;
        double pm = p / m, pn = p / n;
        double t1 = (1.0 + pm) * (1.0 + pn);
        double denom = pm * pn - 1.0;  // p^2 / (m n) - 1 > 0 here
        out.delta = q.s / std::acosh(0.5 * std::sqrt(t1));
        out.gamma = out.delta * std::asinh((pn - pm) * std::sqrt(t1 - 4.0) / (2.0 * denom));
        out.lambda = p * std::sqrt((t1 - 2.0) * (t1 - 2.0) - 4.0) / denom;
        out.xi = mid - 0.5 * out.lambda + p * (pn - pm) / (2.0 * denom);
    }
    if (!out.valid()) throw InputError("quantile fit: parameters not finite");
    return out;
}

// --- goodness of fit ----------------------------------------------------------

struct GoFReport {
    double chi_square = 0.0;
    int dof = 0;
    double ks_statistic = 0.0;  // sup distance between binned and fitted CDFs
    std::uint64_t n_effective = 0;
};

// Chi-square over bins pooled to expected count >= 5 (under/overflow folded
// into the edge bins), dof = pooled bins - 1 - 4; KS statistic evaluated at
// the bin edges.
inline GoFReport goodness_of_fit(const JohnsonParams& params, const Histogram& hist) {
    std::uint64_t mass = hist.total_mass();
    if (mass < 100) throw InputError("goodness_of_fit: need at least 100 samples");
    double dmass = static_cast<double>(mass);
    std::size_t nb = hist.counts().size();

    std::vector<double> observed(nb), expected(nb);
    double f_prev = cdf(params, hist.bin_lo(0));
    for (std::size_t i = 0; i < nb; ++i) {
        double f_hi = cdf(params, hist.bin_hi(i));
        observed[i] = static_cast<double>(hist.counts()[i]);
        expected[i] = dmass * (f_hi - f_prev);
        f_prev = f_hi;
    }
    observed.front() += static_cast<double>(hist.underflow());
    expected.front() += dmass * cdf(params, hist.bin_lo(0));
    observed.back() += static_cast<double>(hist.overflow());
    expected.back() += dmass * (1.0 - cdf(params, hist.bin_hi(nb - 1)));

    // pool left to right until each cell expects >= 5; a leftover tail is
    // folded into the last closed cell
    std::vector<std::pair<double, double>> cells;
    double obs_acc = 0.0, exp_acc = 0.0;
    for (std::size_t i = 0; i < nb; ++i) {
        obs_acc += observed[i];
        exp_acc += expected[i];
        if (exp_acc >= 5.0) {
            cells.emplace_back(obs_acc, exp_acc);
            obs_acc = exp_acc = 0.0;
        }
    }
    if ((obs_acc > 0.0 || exp_acc > 0.0) && !cells.empty()) {
        cells.back().first += obs_acc;
        cells.back().second += exp_acc;
    }
    double chi2 = 0.0;
    for (auto [obs, exp] : cells) chi2 += (obs - exp) * (obs - exp) / exp;

    GoFReport rep;
    rep.chi_square = chi2;
    rep.dof = static_cast<int>(cells.size()) - 1 - 4;
    rep.n_effective = mass;

    double cum = static_cast<double>(hist.underflow());
    double ks = std::fabs(cum / dmass - cdf(params, hist.bin_lo(0)));
    for (std::size_t i = 0; i < nb; ++i) {
        cum += static_cast<double>(hist.counts()[i]);
        ks = std::max(ks, std::fabs(cum / dmass - cdf(params, hist.bin_hi(i))));
    }
    rep.ks_statistic = ks;
    return rep;
}

}  // namespace zetadelta
