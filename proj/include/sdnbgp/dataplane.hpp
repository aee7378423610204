#ifndef SDNBGP_DATAPLANE_HPP
#define SDNBGP_DATAPLANE_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "sdnbgp/errors.hpp"
#include "sdnbgp/logmath.hpp"

namespace sdnbgp {

// Bounds on E[T_SD | d, k'] in units of the mean per-hop time. A path of d
// hops has d+1 nodes, k' of which sit in the SDN cluster.

inline void check_dk(int d, int k_prime) {
    if (d < 1) throw DomainError("path length must be >= 1");
    if (k_prime < 0 || k_prime > d + 1)
        throw DomainError("k' must lie in [0, d+1]");
}

inline double lb(int d, int k_prime) {
    check_dk(d, k_prime);
    if (k_prime >= d) return 0.0;
    return static_cast<double>(d) / static_cast<double>(k_prime + 1);
}

inline double ub(int d, int k_prime) {
    check_dk(d, k_prime);
    if (k_prime >= 2) return static_cast<double>(d - k_prime + 1);
    return static_cast<double>(d);
}

// Distribution of k' over the d+1 nodes of a path: plain hypergeometric for
// a topology-independent cluster, Fisher's noncentral variant with odds
// ratio omega when cluster membership is biased toward central nodes.
class KPrimeDistribution {
public:
    static KPrimeDistribution hypergeometric(long n_population, long k_cluster) {
        return KPrimeDistribution(n_population, k_cluster, 1.0, false);
    }
    static KPrimeDistribution fisher_noncentral(long n_population, long k_cluster, double omega) {
        if (!(omega > 0.0)) throw DomainError("omega must be > 0");
        return KPrimeDistribution(n_population, k_cluster, omega, true);
    }

    long population() const { return n_; }
    long cluster_size() const { return k_; }
    double omega() const { return omega_; }
    bool noncentral() const { return noncentral_; }

    // pmf over i in [0, d+1]; log-space throughout, so N ~ 5e4 is fine
    std::vector<double> pmf(int d) const {
        if (d < 1) throw DomainError("path length must be >= 1");
        if (n_ < d + 1) throw DomainError("population smaller than path");
        const long draws = d + 1;
        const long lo = std::max(0L, draws - (n_ - k_));
        const long hi = std::min(k_, draws);
        std::vector<double> logw(static_cast<std::size_t>(draws) + 1, kNegInf);
        const double log_omega = std::log(omega_);
        for (long i = lo; i <= hi; ++i)
            logw[static_cast<std::size_t>(i)] =
                lchoose(k_, i) + lchoose(n_ - k_, draws - i) + static_cast<double>(i) * log_omega;
        const double log_z = log_sum_exp(logw);
        std::vector<double> out(static_cast<std::size_t>(draws) + 1, 0.0);
        for (long i = lo; i <= hi; ++i)
            out[static_cast<std::size_t>(i)] = std::exp(logw[static_cast<std::size_t>(i)] - log_z);
        return out;
    }

    double pmf(int d, int i) const {
        const auto p = pmf(d);
        if (i < 0 || i >= static_cast<int>(p.size())) throw DomainError("i out of [0, d+1]");
        return p[static_cast<std::size_t>(i)];
    }

private:
    KPrimeDistribution(long n, long k, double omega, bool noncentral)
        : n_(n), k_(k), omega_(omega), noncentral_(noncentral) {
        if (n < 1) throw DomainError("population must be >= 1");
        if (k < 0 || k > n) throw DomainError("cluster size must be in [0, N]");
    }

    long n_;
    long k_;
    double omega_;
    bool noncentral_;
};

// Placement bounds averaged over the k' distribution, in time units.
struct TsdBounds {
    double lower = 0.0;
    double upper = 0.0;
};

inline TsdBounds tsd_bounds_given_d(int d, const KPrimeDistribution& dist, double mu_bgp) {
    if (!(mu_bgp > 0.0)) throw DomainError("mu_bgp must be > 0");
    const auto p = dist.pmf(d);
    TsdBounds b;
    for (int i = 0; i <= d + 1; ++i) {
        b.lower += lb(d, i) * p[static_cast<std::size_t>(i)];
        b.upper += ub(d, i) * p[static_cast<std::size_t>(i)];
    }
    b.lower *= mu_bgp;
    b.upper *= mu_bgp;
    return b;
}

// pmf over path lengths d >= 1 with finite support; normalized on build.
class PathLengthDistribution {
public:
    PathLengthDistribution() = default;

    static PathLengthDistribution from_counts(const std::map<int, double>& counts) {
        PathLengthDistribution out;
        double total = 0.0;
        for (const auto& [d, c] : counts) {
            if (d < 1) throw DomainError("path length 0 has no defined T_SD");
            if (!(c >= 0.0)) throw DomainError("negative weight");
            total += c;
        }
        if (!(total > 0.0)) throw EmptySample();
        for (const auto& [d, c] : counts)
            if (c > 0.0) out.pmf_[d] = c / total;
        return out;
    }

    const std::map<int, double>& pmf() const { return pmf_; }
    int max_d() const { return pmf_.empty() ? 0 : pmf_.rbegin()->first; }

    double mean() const {
        double m = 0.0;
        for (const auto& [d, p] : pmf_) m += d * p;
        return m;
    }

    void write_csv(std::ostream& out) const {
        out << "d,probability\n";
        char buf[64];
        for (const auto& [d, p] : pmf_) {
            std::snprintf(buf, sizeof buf, "%d,%.17g\n", d, p);
            out << buf;
        }
    }

    static PathLengthDistribution read_csv(std::istream& in) {
        std::map<int, double> counts;
        std::string line;
        bool header = false;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            if (!header) {
                if (line != "d,probability")
                    throw ParseError("expected header 'd,probability'");
                header = true;
                continue;
            }
            std::istringstream ls(line);
            std::string a, b;
            if (!std::getline(ls, a, ',') || !std::getline(ls, b))
                throw ParseError("line " + std::to_string(lineno) + ": expected 'd,probability'");
            try {
                counts[std::stoi(a)] += std::stod(b);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": bad number");
            }
        }
        if (!header) throw ParseError("missing 'd,probability' header");
        return from_counts(counts);
    }

private:
    std::map<int, double> pmf_;
};

// E[T_SD] bounds mixed over the path-length distribution.
inline TsdBounds tsd_bounds(const PathLengthDistribution& path_dist,
                            const KPrimeDistribution& dist, double mu_bgp) {
    TsdBounds total;
    for (const auto& [d, p] : path_dist.pmf()) {
        const TsdBounds b = tsd_bounds_given_d(d, dist, mu_bgp);
        total.lower += b.lower * p;
        total.upper += b.upper * p;
    }
    return total;
}

// Per-node betweenness values; the omega odds ratio compares the mean inside
// a cluster to the mean outside.
struct CentralityProfile {
    std::vector<double> values;

    int n() const { return static_cast<int>(values.size()); }
};

inline double omega_ratio(const CentralityProfile& profile, const std::vector<int>& cluster) {
    const int n = profile.n();
    if (cluster.empty() || static_cast<int>(cluster.size()) >= n)
        throw DomainError("cluster must be a nonempty proper subset");
    std::unordered_set<int> in(cluster.begin(), cluster.end());
    if (static_cast<int>(in.size()) != static_cast<int>(cluster.size()))
        throw DomainError("cluster contains duplicates");
    for (int c : cluster)
        if (c < 0 || c >= n) throw DomainError("cluster node out of range");
    double sum_in = 0.0, sum_out = 0.0;
    for (int v = 0; v < n; ++v)
        (in.count(v) ? sum_in : sum_out) += profile.values[static_cast<std::size_t>(v)];
    const double w_sdn = sum_in / static_cast<double>(in.size());
    const double w_bgp = sum_out / static_cast<double>(n - static_cast<int>(in.size()));
    if (!(w_bgp > 0.0)) throw DegenerateProfile("mean betweenness outside the cluster is 0");
    return w_sdn / w_bgp;
}

} // namespace sdnbgp

#endif
