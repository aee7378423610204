#ifndef SDNBGP_LOGMATH_HPP
#define SDNBGP_LOGMATH_HPP

#include <cmath>
#include <limits>
#include <span>

namespace sdnbgp {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(n choose k) via lgamma; -inf outside the support.
// Raw binomials overflow around N ~ 1030, and the AS-graph runs use
// N ~ 5.5e4, so all combinatorial terms stay in log space.
inline double lchoose(long n, long k) {
    if (k < 0 || k > n || n < 0) return kNegInf;
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

// log(sum(exp(t))) with max-subtraction
inline double log_sum_exp(std::span<const double> terms) {
    double mx = kNegInf;
    for (double t : terms)
        if (t > mx) mx = t;
    if (mx == kNegInf) return kNegInf;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - mx);
    return mx + std::log(s);
}

} // namespace sdnbgp

#endif
