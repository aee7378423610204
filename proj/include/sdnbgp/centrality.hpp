#ifndef SDNBGP_CENTRALITY_HPP
#define SDNBGP_CENTRALITY_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "sdnbgp/dataplane.hpp"
#include "sdnbgp/graph.hpp"
#include "sdnbgp/random.hpp"
#include "sdnbgp/routing.hpp"

namespace sdnbgp {

// Exact shortest-path betweenness (Brandes). Counts ordered (s,t) pairs,
// no endpoint credit. Disconnected pairs contribute nothing, so components
// are handled implicitly.
inline CentralityProfile betweenness_exact(const AsGraph& g) {
    const int n = g.n();
    CentralityProfile profile;
    profile.values.assign(static_cast<std::size_t>(n), 0.0);
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<double> sigma(static_cast<std::size_t>(n));
    std::vector<double> delta(static_cast<std::size_t>(n));
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> preds(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        order.clear();
        dist[static_cast<std::size_t>(s)] = 0;
        sigma[static_cast<std::size_t>(s)] = 1.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const int u = order[head];
            for (const auto& nb : g.neighbors(u)) {
                const std::size_t w = static_cast<std::size_t>(nb.id);
                if (dist[w] < 0) {
                    dist[w] = dist[static_cast<std::size_t>(u)] + 1;
                    order.push_back(nb.id);
                }
                if (dist[w] == dist[static_cast<std::size_t>(u)] + 1) {
                    sigma[w] += sigma[static_cast<std::size_t>(u)];
                    preds[w].push_back(u);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const std::size_t w = static_cast<std::size_t>(*it);
            for (int v : preds[w])
                delta[static_cast<std::size_t>(v)] +=
                    sigma[static_cast<std::size_t>(v)] / sigma[w] * (1.0 + delta[w]);
            if (*it != s) profile.values[w] += delta[w]; // ordered (s,t) pairs
        }
    }
    return profile;
}

// Sampled-path betweenness: how often a node appears as an intermediate hop
// over a set of paths, normalized by the sample size. The backend for
// Internet-scale graphs where exact Brandes is too slow.
inline CentralityProfile betweenness_from_paths(int n, const std::vector<PolicyPath>& paths) {
    CentralityProfile profile;
    profile.values.assign(static_cast<std::size_t>(n), 0.0);
    long used = 0;
    for (const auto& p : paths) {
        if (p.nodes.size() < 2) continue; // unreachable or trivial
        ++used;
        for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i)
            profile.values[static_cast<std::size_t>(p.nodes[i])] += 1.0;
    }
    if (used == 0) throw EmptySample();
    for (auto& v : profile.values) v /= static_cast<double>(used);
    return profile;
}

inline PathLengthDistribution path_length_distribution(const std::vector<PolicyPath>& paths) {
    std::map<int, double> counts;
    for (const auto& p : paths)
        if (p.nodes.size() >= 2) counts[p.d] += 1.0;
    if (counts.empty()) throw EmptySample();
    return PathLengthDistribution::from_counts(counts);
}

enum class ClusterStrategy { Random, TopBetweenness };

struct ClusterSelection {
    ClusterStrategy strategy = ClusterStrategy::Random;
    int k = 0;
};

// Random: uniform k-subset. TopBetweenness: the k largest profile values,
// ties broken toward the smaller node id. Returned sorted.
inline std::vector<int> select_cluster(const ClusterSelection& sel, int n,
                                       const CentralityProfile* profile, std::uint64_t seed) {
    if (sel.k < 0 || sel.k > n) throw DomainError("cluster size must be in [0, N]");
    std::vector<int> out;
    if (sel.k == 0) return out;
    if (sel.strategy == ClusterStrategy::Random) {
        Rng rng(seed);
        out = rng.sample_without_replacement(n, sel.k);
        std::sort(out.begin(), out.end());
        return out;
    }
    if (profile == nullptr || profile->n() != n) throw MissingProfile();
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const double va = profile->values[static_cast<std::size_t>(a)];
        const double vb = profile->values[static_cast<std::size_t>(b)];
        if (va != vb) return va > vb;
        return a < b;
    });
    out.assign(idx.begin(), idx.begin() + sel.k);
    std::sort(out.begin(), out.end());
    return out;
}

// Uniform random ordered (source, destination) pairs routed with the policy
// machinery; the sampling behind Internet-scale P{d} and betweenness.
// Sources are deduplicated so each policy tree is built once.
inline std::vector<PolicyPath> sample_policy_paths(const AsGraph& g, long n_samples,
                                                   std::uint64_t seed) {
    if (n_samples <= 0) throw DomainError("need a positive sample count");
    Rng rng(seed);
    std::map<int, std::vector<int>> dests_by_source;
    for (long i = 0; i < n_samples; ++i) {
        const int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n())));
        int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n())));
        if (d == s) d = (d + 1) % g.n();
        dests_by_source[s].push_back(d);
    }
    std::vector<PolicyPath> out;
    out.reserve(static_cast<std::size_t>(n_samples));
    for (const auto& [s, dests] : dests_by_source) {
        PolicyRoutes routes(g, s);
        for (int dst : dests) out.push_back(routes.path(dst));
    }
    return out;
}

// Same sampling on an unlabeled graph: BFS-tree paths.
inline std::vector<PolicyPath> sample_shortest_paths(const AsGraph& g, long n_samples,
                                                     std::uint64_t seed) {
    if (n_samples <= 0) throw DomainError("need a positive sample count");
    Rng rng(seed);
    std::map<int, std::vector<int>> dests_by_source;
    for (long i = 0; i < n_samples; ++i) {
        const int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n())));
        int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n())));
        if (d == s) d = (d + 1) % g.n();
        dests_by_source[s].push_back(d);
    }
    std::vector<PolicyPath> out;
    out.reserve(static_cast<std::size_t>(n_samples));
    for (const auto& [s, dests] : dests_by_source) {
        const ShortestPaths sp = shortest_paths(g, s);
        for (int dst : dests) {
            PolicyPath p;
            p.source = s;
            p.destination = dst;
            p.nodes = sp.path(dst);
            p.d = p.nodes.empty() ? 0 : static_cast<int>(p.nodes.size()) - 1;
            out.push_back(std::move(p));
        }
    }
    return out;
}

} // namespace sdnbgp

#endif
