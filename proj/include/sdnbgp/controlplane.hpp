#ifndef SDNBGP_CONTROLPLANE_HPP
#define SDNBGP_CONTROLPLANE_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "sdnbgp/errors.hpp"

namespace sdnbgp {

// Absorbing-chain model of update dissemination: state i = number of
// transitions taken, x = the step at which the cluster first hears the
// update. Closed forms below give E[T_c], E[T_l] and the MGF of T_c.

enum class DegreeModel { FullMesh, PoissonGraph };

struct ChainScenario {
    int n = 1;
    int k = 1;
    double lambda = 1.0;
    DegreeModel model = DegreeModel::FullMesh;
    double p = 1.0; // edge probability, PoissonGraph only

    void validate() const {
        if (n < 1) throw DomainError("need n >= 1");
        if (k < 1 || k > n) throw DomainError("cluster size must be in [1, n]");
        if (!(lambda > 0.0)) throw DomainError("rate must be > 0");
        if (model == DegreeModel::PoissonGraph && !(p > 0.0 && p <= 1.0))
            throw DomainError("edge probability must be in (0, 1]");
    }
};

// A k=0 request maps to k=1: a single-member cluster hears nothing early
// and forwards to no other member, so it behaves exactly like no
// centralization.
inline ChainScenario baseline_no_sdn(ChainScenario s) {
    s.k = 1;
    s.validate();
    return s;
}

// Nodes holding the update after i transitions, given the cluster arrived
// at step x: the cluster adds its other k-1 members in one shot.
inline long n_updated(long i, long x, long k) {
    if (i < 0 || x < 0 || k < 1) throw DomainError("n_updated: arguments out of range");
    return i <= x ? i : i + k - 1;
}

inline double degree_fullmesh(long i, long x, long n, long k) {
    if (i < 1 || i > n - k || x < 0 || x > n - k)
        throw DomainError("degree_fullmesh: step out of range");
    return static_cast<double>(n - n_updated(i, x, k));
}

// Expected count of nodes without the update that are adjacent to the
// updated set in G(n,p).
inline double degree_poisson_expected(long i, long x, long n, long k, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("edge probability must be in (0, 1]");
    if (i < 1 || i > n - k || x < 0 || x > n - k)
        throw DomainError("degree_poisson_expected: step out of range");
    const long upd = n_updated(i, x, k);
    const double d =
        static_cast<double>(n - upd) * (1.0 - std::pow(1.0 - p, static_cast<double>(upd)));
    if (!(d > 0.0))
        throw DegenerateDegree("expected bgp-degree is 0 at a step that requires progress");
    return d;
}

// Transition-rate structure. Both built-in models depend on (i,x) only
// through n(i|x), which admits prefix-sum evaluation; a custom (i,x)
// callable falls back to the quadratic loop.
struct DegreeFunction {
    std::function<double(long n_updated)> of_n; // set when separable
    std::function<double(long i, long x)> of_ix;
    bool separable = false;
};

inline DegreeFunction make_degree(const ChainScenario& s) {
    s.validate();
    DegreeFunction f;
    f.separable = true;
    const long n = s.n, k = s.k;
    if (s.model == DegreeModel::FullMesh) {
        f.of_n = [n](long upd) { return static_cast<double>(n - upd); };
    } else {
        const double p = s.p;
        f.of_n = [n, p](long upd) {
            return static_cast<double>(n - upd) *
                   (1.0 - std::pow(1.0 - p, static_cast<double>(upd)));
        };
    }
    f.of_ix = [f2 = f.of_n, k](long i, long x) { return f2(n_updated(i, x, k)); };
    return f;
}

// P{cluster first hears the update at step x}: the k members are met one
// draw at a time out of the shrinking pool.
inline double p_sdn(long x, long n, long k) {
    if (k < 1 || k > n) throw DomainError("cluster size must be in [1, n]");
    if (x < 0 || x > n - k) throw DomainError("x must lie in [0, n-k]");
    double surv = 1.0;
    for (long j = 0; j < x; ++j) surv *= 1.0 - static_cast<double>(k) / static_cast<double>(n - j);
    return surv * static_cast<double>(k) / static_cast<double>(n - x);
}

inline std::vector<double> p_sdn_all(long n, long k) {
    if (k < 1 || k > n) throw DomainError("cluster size must be in [1, n]");
    std::vector<double> out(static_cast<std::size_t>(n - k) + 1);
    double surv = 1.0;
    for (long x = 0; x <= n - k; ++x) {
        const double hit = static_cast<double>(k) / static_cast<double>(n - x);
        out[static_cast<std::size_t>(x)] = surv * hit;
        surv *= 1.0 - hit;
    }
    return out;
}

// Where the outer x-sum was cut once the tail of P_sdn drops below 1e-12.
struct ChainEvalStats {
    long truncated_at_x = -1; // -1: full sum
    double tail_mass = 0.0;
};

constexpr double kPsdnTailCutoff = 1e-12;

namespace detail {

// Per-scenario inner sums S(x) = sum_{i=1..M} 1/D(i|x) via prefix arrays
// over the two n(i|x) branches.
struct HarmonicPrefix {
    std::vector<double> pre;  // pre[j]  = sum_{i<=j} 1/D(n=i)
    std::vector<double> post; // post[j] = sum_{i<=j} 1/D(n=i+k-1)

    HarmonicPrefix(const ChainScenario& s, const DegreeFunction& deg) {
        const long m = s.n - s.k;
        pre.assign(static_cast<std::size_t>(m) + 1, 0.0);
        post.assign(static_cast<std::size_t>(m) + 1, 0.0);
        for (long i = 1; i <= m; ++i) {
            const double d_pre = deg.of_n(i);
            const double d_post = deg.of_n(i + s.k - 1);
            if (!(d_pre > 0.0) || !(d_post > 0.0))
                throw DegenerateDegree("bgp-degree is 0 inside the chain domain");
            pre[static_cast<std::size_t>(i)] = pre[static_cast<std::size_t>(i - 1)] + 1.0 / d_pre;
            post[static_cast<std::size_t>(i)] =
                post[static_cast<std::size_t>(i - 1)] + 1.0 / d_post;
        }
    }

    double sum(long m_upper, long x) const {
        const long split = std::min(m_upper, x);
        return pre[static_cast<std::size_t>(split)] + post[static_cast<std::size_t>(m_upper)] -
               post[static_cast<std::size_t>(split)];
    }
};

inline long partial_limit(long ell, long x, long k) {
    if (ell <= x + 1) return ell - 1;
    if (ell <= x + k) return x;
    return ell - k;
}

template <typename InnerSum>
double weighted_over_x(const ChainScenario& s, InnerSum&& inner, ChainEvalStats* stats) {
    const long m = s.n - s.k;
    double total = 0.0;
    double mass_seen = 0.0;
    double surv = 1.0;
    for (long x = 0; x <= m; ++x) {
        const double hit = static_cast<double>(s.k) / static_cast<double>(s.n - x);
        const double px = surv * hit;
        surv *= 1.0 - hit;
        total += px * inner(x);
        mass_seen += px;
        if (surv < kPsdnTailCutoff && x < m) {
            if (stats) {
                stats->truncated_at_x = x;
                stats->tail_mass = 1.0 - mass_seen;
            }
            break;
        }
    }
    return total;
}

} // namespace detail

// Expected absorption time of the chain. O(n) for the built-in degree
// models, O((n-k)^2) for a custom (i,x) degree.
inline double expected_tc(const ChainScenario& s, const DegreeFunction& deg,
                          ChainEvalStats* stats = nullptr) {
    s.validate();
    const long m = s.n - s.k;
    if (m == 0) return 0.0;
    if (deg.separable) {
        detail::HarmonicPrefix hp(s, deg);
        return detail::weighted_over_x(
                   s, [&](long x) { return hp.sum(m, x); }, stats) /
               s.lambda;
    }
    return detail::weighted_over_x(
               s,
               [&](long x) {
                   double acc = 0.0;
                   for (long i = 1; i <= m; ++i) {
                       const double d = deg.of_ix(i, x);
                       if (!(d > 0.0))
                           throw DegenerateDegree("bgp-degree is 0 inside the chain domain");
                       acc += 1.0 / d;
                   }
                   return acc;
               },
               stats) /
           s.lambda;
}

inline double expected_tc(const ChainScenario& s, ChainEvalStats* stats = nullptr) {
    return expected_tc(s, make_degree(s), stats);
}

// Partial convergence: expected time until ell nodes hold the route.
inline double expected_t_partial(long ell, const ChainScenario& s, const DegreeFunction& deg,
                                 ChainEvalStats* stats = nullptr) {
    s.validate();
    if (ell < 1 || ell > s.n) throw DomainError("ell must lie in [1, n]");
    const long m = s.n - s.k;
    if (m == 0 || ell == 1) return 0.0;
    if (deg.separable) {
        detail::HarmonicPrefix hp(s, deg);
        return detail::weighted_over_x(
                   s, [&](long x) { return hp.sum(detail::partial_limit(ell, x, s.k), x); },
                   stats) /
               s.lambda;
    }
    return detail::weighted_over_x(
               s,
               [&](long x) {
                   const long mu = detail::partial_limit(ell, x, s.k);
                   double acc = 0.0;
                   for (long i = 1; i <= mu; ++i) {
                       const double d = deg.of_ix(i, x);
                       if (!(d > 0.0))
                           throw DegenerateDegree("bgp-degree is 0 inside the chain domain");
                       acc += 1.0 / d;
                   }
                   return acc;
               },
               stats) /
           s.lambda;
}

inline double expected_t_partial(long ell, const ChainScenario& s,
                                 ChainEvalStats* stats = nullptr) {
    return expected_t_partial(ell, s, make_degree(s), stats);
}

// Moment generating function of T_c. Requires theta below
// lambda * min D(i|x); outside that region a factor turns non-positive and
// a DomainError is raised.
inline double mgf_tc(double theta, const ChainScenario& s, const DegreeFunction& deg,
                     ChainEvalStats* stats = nullptr) {
    s.validate();
    const long m = s.n - s.k;
    if (m == 0) return 1.0; // empty product: T_c = 0
    auto log_factor = [&](double d) {
        const double f = 1.0 - theta / (s.lambda * d);
        if (!(f > 0.0)) throw DomainError("theta outside the MGF convergence region");
        return std::log(f);
    };
    if (deg.separable) {
        std::vector<double> lpre(static_cast<std::size_t>(m) + 1, 0.0);
        std::vector<double> lpost(static_cast<std::size_t>(m) + 1, 0.0);
        for (long i = 1; i <= m; ++i) {
            const double d_pre = deg.of_n(i);
            const double d_post = deg.of_n(i + s.k - 1);
            if (!(d_pre > 0.0) || !(d_post > 0.0))
                throw DegenerateDegree("bgp-degree is 0 inside the chain domain");
            lpre[static_cast<std::size_t>(i)] =
                lpre[static_cast<std::size_t>(i - 1)] + log_factor(d_pre);
            lpost[static_cast<std::size_t>(i)] =
                lpost[static_cast<std::size_t>(i - 1)] + log_factor(d_post);
        }
        return detail::weighted_over_x(
            s,
            [&](long x) {
                const long split = std::min(m, x);
                const double lg = lpre[static_cast<std::size_t>(split)] +
                                  lpost[static_cast<std::size_t>(m)] -
                                  lpost[static_cast<std::size_t>(split)];
                return std::exp(-lg);
            },
            stats);
    }
    return detail::weighted_over_x(
        s,
        [&](long x) {
            double lg = 0.0;
            for (long i = 1; i <= m; ++i) {
                const double d = deg.of_ix(i, x);
                if (!(d > 0.0))
                    throw DegenerateDegree("bgp-degree is 0 inside the chain domain");
                lg += log_factor(d);
            }
            return std::exp(-lg);
        },
        stats);
}

inline double mgf_tc(double theta, const ChainScenario& s, ChainEvalStats* stats = nullptr) {
    return mgf_tc(theta, s, make_degree(s), stats);
}

// First moment from the MGF by central difference; cross-checks the
// analytic route (expected_tc).
inline double mgf_first_moment(const ChainScenario& s, const DegreeFunction& deg,
                               double h = 1e-6) {
    return (mgf_tc(h, s, deg) - mgf_tc(-h, s, deg)) / (2.0 * h);
}

inline double mgf_first_moment(const ChainScenario& s, double h = 1e-6) {
    return mgf_first_moment(s, make_degree(s), h);
}

} // namespace sdnbgp

#endif
