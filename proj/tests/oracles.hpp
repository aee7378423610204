// Test-only oracles, independent of the library's algorithms:
//  - exhaustive valley-free route enumeration (policy routing ground truth)
//  - pair-counting betweenness (Brandes ground truth)
// Both are brutally slow on purpose; they exist to check the fast paths.

#ifndef SDNBGP_TESTS_ORACLES_HPP
#define SDNBGP_TESTS_ORACLES_HPP

#include <algorithm>
#include <limits>
#include <vector>

#include "sdnbgp/graph.hpp"
#include "sdnbgp/random.hpp"
#include "sdnbgp/routing.hpp"

namespace sdnbgp::testonly {

constexpr int kOracleInf = std::numeric_limits<int>::max() / 4;

inline Rel rel_between(const AsGraph& g, int from, int to) {
    for (const auto& nb : g.neighbors(from))
        if (nb.id == to) return nb.rel;
    return Rel::None;
}

inline int pref_between(const AsGraph& g, int from, int to) {
    for (const auto& nb : g.neighbors(from))
        if (nb.id == to) return nb.pref;
    return 0;
}

// Classwise-minimal valley-free path lengths found by exhaustive DFS over
// simple paths from the origin. Class of a path at its endpoint = C.1 class
// of the last hop (customer-learned / peer-learned / provider-learned).
struct VfEnumeration {
    // len[c][v]: minimal hops of a valley-free path origin->v ending in class c
    std::vector<int> len[3];
    long paths_seen = 0;
    bool exploded = false; // hit the safety cap

    explicit VfEnumeration(int n) {
        for (auto& l : len) l.assign(static_cast<std::size_t>(n), kOracleInf);
    }
};

inline void vf_dfs(const AsGraph& g, int origin, int v, int stage, int depth,
                   std::vector<bool>& on_path, VfEnumeration& out, long cap) {
    if (out.exploded) return;
    if (++out.paths_seen > cap) {
        out.exploded = true;
        return;
    }
    for (const auto& nb : g.neighbors(v)) {
        if (on_path[static_cast<std::size_t>(nb.id)]) continue;
        // stage: 0 = climbing, 1 = peer taken, 2 = descending
        int next_stage;
        int cls;
        if (nb.rel == Rel::Provider) { // up-hop
            if (stage != 0) continue;
            next_stage = 0;
            cls = kCustomerRoute;
        } else if (nb.rel == Rel::Peer) {
            if (stage != 0) continue;
            next_stage = 1;
            cls = kPeerRoute;
        } else {
            next_stage = 2;
            cls = kProviderRoute;
        }
        auto& slot = out.len[cls][static_cast<std::size_t>(nb.id)];
        slot = std::min(slot, depth + 1);
        on_path[static_cast<std::size_t>(nb.id)] = true;
        vf_dfs(g, origin, nb.id, next_stage, depth + 1, on_path, out, cap);
        on_path[static_cast<std::size_t>(nb.id)] = false;
    }
}

inline VfEnumeration enumerate_valley_free(const AsGraph& g, int origin, long cap = 2000000) {
    VfEnumeration out(g.n());
    std::vector<bool> on_path(static_cast<std::size_t>(g.n()), false);
    on_path[static_cast<std::size_t>(origin)] = true;
    vf_dfs(g, origin, origin, 0, 0, on_path, out, cap);
    return out;
}

// Best route per C.1 class order, then C.2 length; reconstructed hop by hop
// with the same per-node tie-breaking (highest local pref, lowest id) the
// implementation documents, but driven by the enumerated lengths.
struct OracleRoute {
    bool reachable = false;
    int route_class = -1;
    int length = kOracleInf;
    std::vector<int> nodes; // origin..destination
};

inline OracleRoute oracle_best_route(const AsGraph& g, const VfEnumeration& e, int origin,
                                     int dest) {
    OracleRoute r;
    if (dest == origin) {
        r.reachable = true;
        r.route_class = kCustomerRoute;
        r.length = 0;
        r.nodes = {origin};
        return r;
    }
    for (int c = 0; c < 3; ++c)
        if (e.len[c][static_cast<std::size_t>(dest)] < kOracleInf) {
            r.route_class = c;
            r.length = e.len[c][static_cast<std::size_t>(dest)];
            break;
        }
    if (r.route_class < 0) return r;
    r.reachable = true;

    auto cust_len = [&](int u) {
        return u == origin ? 0 : e.len[kCustomerRoute][static_cast<std::size_t>(u)];
    };
    auto vf_len = [&](int u) {
        if (u == origin) return 0;
        return std::min({e.len[0][static_cast<std::size_t>(u)],
                         e.len[1][static_cast<std::size_t>(u)],
                         e.len[2][static_cast<std::size_t>(u)]});
    };
    std::vector<int> rev;
    int v = dest;
    int cls = r.route_class;
    int remaining = r.length;
    while (v != origin) {
        rev.push_back(v);
        int best = -1, best_pref = std::numeric_limits<int>::min();
        for (const auto& nb : g.neighbors(v)) {
            bool ok = false;
            if (cls == kCustomerRoute)
                ok = nb.rel == Rel::Customer && cust_len(nb.id) == remaining - 1;
            else if (cls == kPeerRoute)
                ok = nb.rel == Rel::Peer && cust_len(nb.id) == remaining - 1;
            else
                ok = nb.rel == Rel::Provider && vf_len(nb.id) == remaining - 1;
            if (!ok) continue;
            if (best < 0 || nb.pref > best_pref) {
                best = nb.id;
                best_pref = nb.pref;
            }
        }
        if (best < 0) { // inconsistent enumeration; let the caller fail loudly
            r.nodes.clear();
            return r;
        }
        // continuation class mirrors C.4: customer/peer hops consume the
        // neighbor's customer route, provider hops its classwise minimum
        if (cls == kProviderRoute && best != origin) {
            const int vf = vf_len(best);
            for (int c = 0; c < 3; ++c)
                if (e.len[c][static_cast<std::size_t>(best)] == vf) {
                    cls = c;
                    break;
                }
        } else {
            cls = kCustomerRoute;
        }
        --remaining;
        v = best;
    }
    rev.push_back(origin);
    r.nodes.assign(rev.rbegin(), rev.rend());
    return r;
}

// Random relationship-labeled graph for oracle comparisons.
inline AsGraph random_labeled_graph(int n, double edge_prob, double peer_prob,
                                    std::uint64_t seed) {
    AsGraph g(n);
    Rng rng(seed);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (rng.uniform01() >= edge_prob) continue;
            if (rng.uniform01() < peer_prob)
                g.add_p2p_edge(u, v);
            else if (rng.uniform01() < 0.5)
                g.add_c2p_edge(u, v);
            else
                g.add_c2p_edge(v, u);
        }
    g.finalize();
    if (g.edge_count() > 0) g.assign_local_prefs(substream_seed(seed, 0x10ca1));
    return g;
}

// Betweenness by explicit pair counting: sigma products over all (s,t).
inline std::vector<double> betweenness_bruteforce(const AsGraph& g) {
    const int n = g.n();
    std::vector<std::vector<int>> dist(static_cast<std::size_t>(n));
    std::vector<std::vector<double>> sigma(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        auto& ds = dist[static_cast<std::size_t>(s)];
        auto& ss = sigma[static_cast<std::size_t>(s)];
        ds.assign(static_cast<std::size_t>(n), -1);
        ss.assign(static_cast<std::size_t>(n), 0.0);
        ds[static_cast<std::size_t>(s)] = 0;
        ss[static_cast<std::size_t>(s)] = 1.0;
        std::vector<int> q{s};
        for (std::size_t head = 0; head < q.size(); ++head) {
            const int u = q[head];
            for (const auto& nb : g.neighbors(u)) {
                if (ds[static_cast<std::size_t>(nb.id)] < 0) {
                    ds[static_cast<std::size_t>(nb.id)] = ds[static_cast<std::size_t>(u)] + 1;
                    q.push_back(nb.id);
                }
                if (ds[static_cast<std::size_t>(nb.id)] == ds[static_cast<std::size_t>(u)] + 1)
                    ss[static_cast<std::size_t>(nb.id)] += ss[static_cast<std::size_t>(u)];
            }
        }
    }
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            if (t == s || dist[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] < 0)
                continue;
            const double st =
                sigma[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
            for (int v = 0; v < n; ++v) {
                if (v == s || v == t) continue;
                const int dsv = dist[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
                const int dvt = dist[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)];
                if (dsv < 0 || dvt < 0) continue;
                if (dsv + dvt !=
                    dist[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)])
                    continue;
                out[static_cast<std::size_t>(v)] +=
                    sigma[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)] *
                    sigma[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)] / st;
            }
        }
    return out;
}

} // namespace sdnbgp::testonly

#endif
