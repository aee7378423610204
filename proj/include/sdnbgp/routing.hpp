#ifndef SDNBGP_ROUTING_HPP
#define SDNBGP_ROUTING_HPP

#include <limits>
#include <queue>
#include <vector>

#include "sdnbgp/errors.hpp"
#include "sdnbgp/graph.hpp"

namespace sdnbgp {

constexpr int kUnreachable = -1;

// BFS hop distances from a source plus the lowest-id shortest-path tree
// parent. The shortest-path DAG is implicit: edge u->v iff
// dist[v] == dist[u] + 1.
struct ShortestPaths {
    int source = 0;
    std::vector<int> dist;        // -1 when unreachable
    std::vector<int> tree_parent; // -1 for source/unreachable

    bool reachable(int v) const { return dist[static_cast<std::size_t>(v)] >= 0; }

    // node sequence source..dest along the tree
    std::vector<int> path(int dest) const {
        std::vector<int> out;
        if (!reachable(dest)) return out;
        for (int x = dest; x != kUnreachable; x = tree_parent[static_cast<std::size_t>(x)])
            out.push_back(x);
        std::reverse(out.begin(), out.end());
        return out;
    }
};

inline ShortestPaths shortest_paths(const AsGraph& g, int source) {
    if (source < 0 || source >= g.n()) throw DomainError("source out of range");
    ShortestPaths sp;
    sp.source = source;
    sp.dist.assign(static_cast<std::size_t>(g.n()), kUnreachable);
    sp.tree_parent.assign(static_cast<std::size_t>(g.n()), kUnreachable);
    std::vector<int> queue;
    queue.reserve(static_cast<std::size_t>(g.n()));
    sp.dist[static_cast<std::size_t>(source)] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (const auto& nb : g.neighbors(u))
            if (sp.dist[static_cast<std::size_t>(nb.id)] < 0) {
                sp.dist[static_cast<std::size_t>(nb.id)] = sp.dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(nb.id);
            }
    }
    // adjacency is id-sorted, so the first neighbor one level up is the
    // lowest-id parent
    for (int v = 0; v < g.n(); ++v) {
        if (v == source || sp.dist[static_cast<std::size_t>(v)] < 0) continue;
        for (const auto& nb : g.neighbors(v))
            if (sp.dist[static_cast<std::size_t>(nb.id)] ==
                sp.dist[static_cast<std::size_t>(v)] - 1) {
                sp.tree_parent[static_cast<std::size_t>(v)] = nb.id;
                break;
            }
    }
    return sp;
}

struct PolicyPath {
    int source = 0;
    int destination = 0;
    std::vector<int> nodes; // source..destination
    int d = 0;              // hops
};

// Route class at the learning node, in C.1 preference order.
enum RouteClass : int { kCustomerRoute = 0, kPeerRoute = 1, kProviderRoute = 2 };

// Class a receiver assigns to a route heard from a sender, given the
// sender's view of the receiver.
inline RouteClass class_at_receiver(Rel rel_at_sender) {
    switch (rel_at_sender) {
        case Rel::Provider: return kCustomerRoute; // receiver learns from its customer
        case Rel::Peer: return kPeerRoute;
        default: return kProviderRoute;
    }
}

// Gao-Rexford best routes toward an announcing origin.
//
// Classwise minimal valley-free lengths, via the three-phase construction:
// customer routes climb provider links (BFS), peer routes take one lateral
// hop off a customer route, provider routes descend customer links from each
// node's classwise-minimal route (unit-weight Dijkstra). Selection per node:
// C.1 class, then C.2 hop count, then C.3 local preference, then lowest
// neighbor id.
class PolicyRoutes {
public:
    static constexpr int kInf = std::numeric_limits<int>::max() / 4;

    PolicyRoutes(const AsGraph& g, int origin) : g_(&g), origin_(origin) {
        if (!g.labeled()) throw UnlabeledGraph();
        if (origin < 0 || origin >= g.n()) throw DomainError("origin out of range");
        const std::size_t n = static_cast<std::size_t>(g.n());
        for (auto& l : len_) l.assign(n, kInf);
        compute();
    }

    int origin() const { return origin_; }
    int class_len(RouteClass c, int v) const { return len_[c][static_cast<std::size_t>(v)]; }

    bool reachable(int v) const { return v == origin_ || best_class(v) >= 0; }

    // -1 when unreachable; otherwise the C.1-preferred available class
    int best_class(int v) const {
        const std::size_t i = static_cast<std::size_t>(v);
        for (int c = 0; c < 3; ++c)
            if (len_[c][i] < kInf) return c;
        return -1;
    }

    // hop count of the selected route; 0 for the origin itself
    int distance(int v) const {
        if (v == origin_) return 0;
        const int c = best_class(v);
        return c < 0 ? kUnreachable : len_[c][static_cast<std::size_t>(v)];
    }

    PolicyPath path(int dest) const {
        PolicyPath p;
        p.source = origin_;
        p.destination = dest;
        if (dest == origin_) {
            p.nodes = {origin_};
            return p;
        }
        int c = best_class(dest);
        if (c < 0) return p; // unreachable: empty node list
        std::vector<int> rev;
        int v = dest;
        while (v != origin_) {
            rev.push_back(v);
            const int u = pick_parent(v, static_cast<RouteClass>(c));
            c = continuation_class(u, static_cast<RouteClass>(c));
            v = u;
        }
        rev.push_back(origin_);
        p.nodes.assign(rev.rbegin(), rev.rend());
        p.d = static_cast<int>(p.nodes.size()) - 1;
        return p;
    }

    // best-route next hop toward the origin (simulator PolicyTree mode)
    int parent(int v) const {
        if (v == origin_) return kUnreachable;
        const int c = best_class(v);
        return c < 0 ? kUnreachable : pick_parent(v, static_cast<RouteClass>(c));
    }

private:
    int vf_len(int v) const {
        if (v == origin_) return 0;
        const std::size_t i = static_cast<std::size_t>(v);
        return std::min({len_[0][i], len_[1][i], len_[2][i]});
    }

    // class the path continues in after stepping from v to its parent u
    int continuation_class(int u, RouteClass c_at_v) const {
        if (u == origin_) return kCustomerRoute;
        const std::size_t i = static_cast<std::size_t>(u);
        if (c_at_v == kProviderRoute) {
            // provider hop consumes u's classwise-minimal route
            const int vf = vf_len(u);
            for (int c = 0; c < 3; ++c)
                if (len_[c][i] == vf) return c;
        }
        // customer and peer hops both consume u's customer route
        return kCustomerRoute;
    }

    // candidate neighbors for class c at v: the ones whose route the class
    // recurrence consumes, at the minimal length; ties by highest local
    // pref, then lowest id
    int pick_parent(int v, RouteClass c) const {
        const int target = len_[c][static_cast<std::size_t>(v)] - 1;
        int best = kUnreachable;
        int best_pref = std::numeric_limits<int>::min();
        for (const auto& nb : g_->neighbors(v)) {
            bool ok = false;
            if (c == kCustomerRoute)
                ok = nb.rel == Rel::Customer && cust_or_origin(nb.id) == target;
            else if (c == kPeerRoute)
                ok = nb.rel == Rel::Peer && cust_or_origin(nb.id) == target;
            else
                ok = nb.rel == Rel::Provider && vf_len(nb.id) == target;
            if (!ok) continue;
            if (best == kUnreachable || nb.pref > best_pref) {
                best = nb.id;
                best_pref = nb.pref;
            }
        }
        return best;
    }

    int cust_or_origin(int u) const {
        return u == origin_ ? 0 : len_[0][static_cast<std::size_t>(u)];
    }

    void compute() {
        const int n = g_->n();
        // phase 1: customer routes climb provider links, plain BFS
        std::vector<int> queue;
        queue.reserve(static_cast<std::size_t>(n));
        auto cust = [this](int v) -> int& { return len_[0][static_cast<std::size_t>(v)]; };
        for (const auto& nb : g_->neighbors(origin_))
            if (nb.rel == Rel::Provider && cust(nb.id) == kInf) {
                cust(nb.id) = 1;
                queue.push_back(nb.id);
            }
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int u = queue[head];
            for (const auto& nb : g_->neighbors(u))
                if (nb.rel == Rel::Provider && cust(nb.id) == kInf) {
                    cust(nb.id) = cust(u) + 1;
                    queue.push_back(nb.id);
                }
        }
        // phase 2: one peer hop off a customer route (or the origin)
        for (int v = 0; v < n; ++v) {
            if (v == origin_) continue;
            int best = kInf;
            for (const auto& nb : g_->neighbors(v))
                if (nb.rel == Rel::Peer) {
                    const int cl = cust_or_origin(nb.id);
                    if (cl < kInf && cl + 1 < best) best = cl + 1;
                }
            len_[1][static_cast<std::size_t>(v)] = best;
        }
        // phase 3: provider routes descend customer links from classwise
        // minima; unit weights, bucket queue
        std::vector<std::vector<int>> bucket(static_cast<std::size_t>(n) + 2);
        std::vector<int> settled_at(static_cast<std::size_t>(n), kInf);
        auto push = [&](int v, int d) {
            if (d <= n) bucket[static_cast<std::size_t>(d)].push_back(v);
        };
        push(origin_, 0);
        for (int v = 0; v < n; ++v) {
            if (v == origin_) continue;
            const int d0 = std::min(len_[0][static_cast<std::size_t>(v)],
                                    len_[1][static_cast<std::size_t>(v)]);
            if (d0 < kInf) push(v, d0);
        }
        for (int d = 0; d <= n; ++d) {
            for (std::size_t qi = 0; qi < bucket[static_cast<std::size_t>(d)].size(); ++qi) {
                const int u = bucket[static_cast<std::size_t>(d)][qi];
                if (settled_at[static_cast<std::size_t>(u)] <= d) continue;
                if (vf_len(u) != d) continue; // stale entry
                settled_at[static_cast<std::size_t>(u)] = d;
                for (const auto& nb : g_->neighbors(u))
                    if (nb.rel == Rel::Customer && nb.id != origin_ &&
                        d + 1 < len_[2][static_cast<std::size_t>(nb.id)]) {
                        len_[2][static_cast<std::size_t>(nb.id)] = d + 1;
                        if (vf_len(nb.id) == d + 1) push(nb.id, d + 1);
                    }
            }
        }
    }

    const AsGraph* g_;
    int origin_;
    std::vector<int> len_[3];
};

// Per-destination best policy paths from one origin.
inline std::vector<PolicyPath> compute_policy_paths(const AsGraph& g, int origin) {
    PolicyRoutes routes(g, origin);
    std::vector<PolicyPath> out;
    out.reserve(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) {
        if (v == origin) continue;
        out.push_back(routes.path(v));
    }
    return out;
}

// Valley-free shape check: up* peer? down*, stepping source -> destination.
inline bool is_valley_free(const AsGraph& g, const std::vector<int>& nodes) {
    if (!g.labeled()) throw UnlabeledGraph();
    int stage = 0; // 0 climbing, 1 peer crossed, 2 descending
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        Rel rel = Rel::None;
        for (const auto& nb : g.neighbors(nodes[i]))
            if (nb.id == nodes[i + 1]) {
                rel = nb.rel;
                break;
            }
        if (rel == Rel::None) return false; // not adjacent
        if (rel == Rel::Provider) {         // up
            if (stage != 0) return false;
        } else if (rel == Rel::Peer) {
            if (stage != 0) return false;
            stage = 1;
        } else {
            stage = 2; // down
        }
    }
    return true;
}

} // namespace sdnbgp

#endif
