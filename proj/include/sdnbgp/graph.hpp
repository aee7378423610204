#ifndef SDNBGP_GRAPH_HPP
#define SDNBGP_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sdnbgp/errors.hpp"
#include "sdnbgp/random.hpp"

namespace sdnbgp {

// Relationship of a neighbor as seen from the owning node:
//   Customer  - the neighbor is my customer (I am its provider)
//   Provider  - the neighbor is my provider
//   Peer      - settlement-free peer
enum class Rel : std::uint8_t { None = 0, Customer, Provider, Peer };

struct Neighbor {
    int id;
    Rel rel = Rel::None;
    int pref = 0; // local preference rank, 1..degree, higher preferred
};

// One AS per node, dense integer ids, undirected edges. Edge labels are
// all-or-nothing: a graph is either fully relationship-labeled (policy
// routing available) or fully unlabeled.
class AsGraph {
public:
    AsGraph() = default;
    explicit AsGraph(int n) { resize(n); }

    void resize(int n) {
        adj_.resize(static_cast<std::size_t>(n));
        asn_.resize(static_cast<std::size_t>(n), -1);
    }

    int n() const { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const { return edge_keys_.size(); }
    bool labeled() const { return labeled_; }
    bool has_local_prefs() const { return has_prefs_; }

    const std::vector<Neighbor>& neighbors(int u) const {
        return adj_[static_cast<std::size_t>(u)];
    }
    int degree(int u) const { return static_cast<int>(adj_[static_cast<std::size_t>(u)].size()); }

    long asn(int u) const { return asn_[static_cast<std::size_t>(u)]; }
    void set_asn(int u, long asn) { asn_[static_cast<std::size_t>(u)] = asn; }

    void add_edge(int u, int v) { add(u, v, Rel::None, Rel::None); }
    // provider/customer edge: c2p when walked from the customer side
    void add_c2p_edge(int provider, int customer) {
        add(provider, customer, Rel::Customer, Rel::Provider);
    }
    void add_p2p_edge(int u, int v) { add(u, v, Rel::Peer, Rel::Peer); }

    bool has_edge(int u, int v) const { return edge_keys_.count(key(u, v)) != 0; }

    // Call once after construction: sorts adjacency by neighbor id so that
    // scans (BFS parents, tie-breaks) are deterministic.
    void finalize() {
        for (auto& nb : adj_)
            std::sort(nb.begin(), nb.end(),
                      [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
        finalized_ = true;
    }
    bool finalized() const { return finalized_; }

    // Random distinct local preferences per node: a uniform permutation of
    // 1..degree over its neighbors. Deterministic per seed.
    void assign_local_prefs(std::uint64_t seed) {
        if (!labeled_) throw UnlabeledGraph();
        if (!finalized_) finalize();
        for (int u = 0; u < n(); ++u) {
            auto& nb = adj_[static_cast<std::size_t>(u)];
            std::vector<int> ranks(nb.size());
            for (std::size_t i = 0; i < ranks.size(); ++i) ranks[i] = static_cast<int>(i) + 1;
            Rng rng(substream_seed(seed, static_cast<std::uint64_t>(u)));
            rng.shuffle(ranks);
            for (std::size_t i = 0; i < nb.size(); ++i) nb[i].pref = ranks[i];
        }
        has_prefs_ = true;
    }

    // FNV-1a over the canonical edge list; identifies a topology in cache
    // file names and run manifests.
    std::uint64_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto mixv = [&h](std::uint64_t v) {
            for (int i = 0; i < 8; ++i) {
                h ^= (v >> (8 * i)) & 0xff;
                h *= 0x100000001b3ULL;
            }
        };
        mixv(static_cast<std::uint64_t>(n()));
        std::vector<std::uint64_t> edges;
        edges.reserve(edge_count());
        for (int u = 0; u < n(); ++u)
            for (const auto& nb : neighbors(u))
                if (u < nb.id)
                    edges.push_back((static_cast<std::uint64_t>(u) << 34) |
                                    (static_cast<std::uint64_t>(nb.id) << 2) |
                                    static_cast<std::uint64_t>(canonical_rel(nb)));
        std::sort(edges.begin(), edges.end());
        for (auto e : edges) mixv(e);
        return h;
    }

    // Edge list CSV "u,v,label"; c2p rows are written customer-first.
    void write_edge_csv(std::ostream& out) const {
        out << "u,v,label\n";
        for (int u = 0; u < n(); ++u)
            for (const auto& nb : neighbors(u)) {
                if (!labeled_) {
                    if (u < nb.id) out << u << ',' << nb.id << ",none\n";
                } else if (nb.rel == Rel::Provider) {
                    out << u << ',' << nb.id << ",c2p\n";
                } else if (nb.rel == Rel::Peer && u < nb.id) {
                    out << u << ',' << nb.id << ",p2p\n";
                }
            }
    }

private:
    static std::uint64_t key(int u, int v) {
        const std::uint64_t a = static_cast<std::uint64_t>(std::min(u, v));
        const std::uint64_t b = static_cast<std::uint64_t>(std::max(u, v));
        return (a << 32) | b;
    }

    int canonical_rel(const Neighbor& nb) const {
        if (!labeled_) return 0;
        if (nb.rel == Rel::Peer) return 1;
        // orient by the customer side to make the code symmetric
        return nb.rel == Rel::Provider ? 2 : 3;
    }

    void add(int u, int v, Rel rel_at_u, Rel rel_at_v) {
        if (u == v) throw DomainError("self-loop rejected");
        if (u < 0 || v < 0 || u >= n() || v >= n()) throw DomainError("node id out of range");
        const bool lab = rel_at_u != Rel::None;
        if (edge_count() == 0)
            labeled_ = lab;
        else if (lab != labeled_)
            throw DomainError("mixed labeled and unlabeled edges");
        if (!edge_keys_.insert(key(u, v)).second) throw DomainError("duplicate edge");
        adj_[static_cast<std::size_t>(u)].push_back({v, rel_at_u, 0});
        adj_[static_cast<std::size_t>(v)].push_back({u, rel_at_v, 0});
        finalized_ = false;
    }

    std::vector<std::vector<Neighbor>> adj_;
    std::vector<long> asn_;
    std::unordered_set<std::uint64_t> edge_keys_;
    bool labeled_ = false;
    bool has_prefs_ = false;
    bool finalized_ = false;
};

// ---- generators ----------------------------------------------------------

inline AsGraph gen_full_mesh(int n) {
    if (n < 1) throw DomainError("need n >= 1");
    AsGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    g.finalize();
    return g;
}

// G(n,p): each pair kept independently with probability p. Geometric
// skipping keeps this linear in the edge count.
inline AsGraph gen_poisson(int n, double p, std::uint64_t seed) {
    if (n < 1) throw DomainError("need n >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must be in [0,1]");
    AsGraph g(n);
    if (p == 1.0) return gen_full_mesh(n);
    if (p > 0.0) {
        Rng rng(seed);
        const double log_q = std::log1p(-p);
        const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
        // linear index over the strict upper triangle, row-major
        std::uint64_t idx = 0;
        auto pair_of = [n](std::uint64_t t) {
            std::uint64_t u = 0, row = static_cast<std::uint64_t>(n) - 1;
            while (t >= row) {
                t -= row;
                ++u;
                --row;
            }
            return std::pair<int, int>(static_cast<int>(u), static_cast<int>(u + 1 + t));
        };
        for (;;) {
            const double r = rng.uniform01_open();
            idx += static_cast<std::uint64_t>(std::floor(std::log(r) / log_q));
            if (idx >= total) break;
            auto [u, v] = pair_of(idx);
            g.add_edge(u, v);
            ++idx;
        }
    }
    g.finalize();
    return g;
}

// Preferential attachment: m isolated seed nodes, each later node attaches
// to m distinct existing nodes chosen proportionally to degree. Gives
// m*(n-m) edges, average degree ~2m.
inline AsGraph gen_barabasi_albert(int n, int m, std::uint64_t seed) {
    if (m < 1 || m >= n) throw DomainError("need 1 <= m < n");
    AsGraph g(n);
    Rng rng(seed);
    std::vector<int> repeats; // node id appears once per incident edge
    std::vector<int> targets;
    for (int i = 0; i < m; ++i) targets.push_back(i);
    for (int v = m; v < n; ++v) {
        for (int t : targets) {
            g.add_edge(v, t);
            repeats.push_back(v);
            repeats.push_back(t);
        }
        if (v + 1 == n) break;
        std::unordered_set<int> chosen;
        while (static_cast<int>(chosen.size()) < m)
            chosen.insert(repeats[static_cast<std::size_t>(rng.below(repeats.size()))]);
        targets.assign(chosen.begin(), chosen.end());
        std::sort(targets.begin(), targets.end());
    }
    g.finalize();
    return g;
}

// Newman-Watts small world: ring lattice with k_nn nearest neighbors, then
// each lattice edge adds a random shortcut with probability p_add (edges are
// added, not rewired, so p_add = 0 leaves the plain lattice).
inline AsGraph gen_small_world(int n, int k_nn, double p_add, std::uint64_t seed) {
    if (k_nn < 2 || k_nn % 2 != 0 || k_nn >= n) throw DomainError("k_nn must be even, 2 <= k_nn < n");
    if (!(p_add >= 0.0 && p_add <= 1.0)) throw DomainError("p_add must be in [0,1]");
    AsGraph g(n);
    Rng rng(seed);
    for (int u = 0; u < n; ++u)
        for (int j = 1; j <= k_nn / 2; ++j) {
            const int v = (u + j) % n;
            g.add_edge(u, v);
        }
    if (p_add > 0.0) {
        const long lattice_edges = static_cast<long>(n) * (k_nn / 2);
        for (long e = 0; e < lattice_edges; ++e) {
            if (rng.uniform01() >= p_add) continue;
            const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            if (u == v || g.has_edge(u, v)) continue;
            g.add_edge(u, v);
        }
    }
    g.finalize();
    return g;
}

// ---- CAIDA AS-relationship ingestion --------------------------------------

// Serial-1 format: '#' comments; data lines "as1|as2|rel" with rel = -1
// (as1 is the provider of as2) or 0 (peers). Duplicate identical lines are
// dropped; the same pair with a different label is a conflict.
inline AsGraph load_caida_asrel(std::istream& in) {
    struct RawEdge {
        long a, b;
        int rel;
    };
    std::vector<RawEdge> edges;
    std::unordered_map<long, int> id_of;
    std::vector<long> asns;
    auto intern = [&](long asn) {
        auto it = id_of.find(asn);
        if (it != id_of.end()) return it->second;
        const int id = static_cast<int>(asns.size());
        id_of.emplace(asn, id);
        asns.push_back(asn);
        return id;
    };
    std::string line;
    int lineno = 0;
    std::unordered_map<std::uint64_t, int> seen; // pair key -> canonical rel code
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string fa, fb, fr;
        if (!std::getline(ls, fa, '|') || !std::getline(ls, fb, '|') || !std::getline(ls, fr, '|'))
            throw ParseError("line " + std::to_string(lineno) + ": expected as1|as2|rel");
        long a, b;
        int rel;
        try {
            a = std::stol(fa);
            b = std::stol(fb);
            rel = std::stoi(fr);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad number");
        }
        if (rel != 0 && rel != -1)
            throw ParseError("line " + std::to_string(lineno) + ": unknown relationship code " +
                             std::to_string(rel));
        if (a == b) throw ParseError("line " + std::to_string(lineno) + ": self-loop");
        const int ia = intern(a), ib = intern(b);
        const std::uint64_t k =
            (static_cast<std::uint64_t>(std::min(ia, ib)) << 32) | static_cast<std::uint64_t>(std::max(ia, ib));
        // canonical label: 1 = p2p, 2 = lower-id provides higher-id, 3 = reverse
        int code;
        if (rel == 0)
            code = 1;
        else
            code = (ia < ib) ? 2 : 3;
        auto [it, inserted] = seen.emplace(k, code);
        if (!inserted) {
            if (it->second != code)
                throw ConflictError("line " + std::to_string(lineno) + ": pair " + fa + "|" + fb +
                                    " already has a different label");
            continue; // exact duplicate
        }
        edges.push_back({a, b, rel});
    }
    AsGraph g(static_cast<int>(asns.size()));
    for (int i = 0; i < g.n(); ++i) g.set_asn(i, asns[static_cast<std::size_t>(i)]);
    for (const auto& e : edges) {
        const int ia = id_of[e.a], ib = id_of[e.b];
        if (e.rel == 0)
            g.add_p2p_edge(ia, ib);
        else
            g.add_c2p_edge(ia, ib); // a provider of b
    }
    g.finalize();
    return g;
}

inline AsGraph load_caida_asrel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return load_caida_asrel(in);
}

// Reduced-graph transform: optionally drop stub ASes (no customer edges in
// the input graph), then repeatedly drop nodes with degree < min_degree.
// Node ids are recompacted; original AS numbers are preserved.
inline AsGraph prune(const AsGraph& g, int min_degree, bool drop_stubs) {
    if (drop_stubs && !g.labeled()) throw UnlabeledGraph();
    const int n = g.n();
    std::vector<bool> dead(static_cast<std::size_t>(n), false);
    if (drop_stubs) {
        for (int u = 0; u < n; ++u) {
            bool has_customer = false;
            for (const auto& nb : g.neighbors(u))
                if (nb.rel == Rel::Customer) {
                    has_customer = true;
                    break;
                }
            if (!has_customer) dead[static_cast<std::size_t>(u)] = true;
        }
    }
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
        if (dead[static_cast<std::size_t>(u)]) continue;
        int d = 0;
        for (const auto& nb : g.neighbors(u))
            if (!dead[static_cast<std::size_t>(nb.id)]) ++d;
        deg[static_cast<std::size_t>(u)] = d;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = 0; u < n; ++u) {
            if (dead[static_cast<std::size_t>(u)] || deg[static_cast<std::size_t>(u)] >= min_degree)
                continue;
            dead[static_cast<std::size_t>(u)] = true;
            changed = true;
            for (const auto& nb : g.neighbors(u))
                if (!dead[static_cast<std::size_t>(nb.id)]) --deg[static_cast<std::size_t>(nb.id)];
        }
    }
    std::vector<int> remap(static_cast<std::size_t>(n), -1);
    int m = 0;
    for (int u = 0; u < n; ++u)
        if (!dead[static_cast<std::size_t>(u)]) remap[static_cast<std::size_t>(u)] = m++;
    AsGraph out(m);
    for (int u = 0; u < n; ++u)
        if (remap[static_cast<std::size_t>(u)] >= 0)
            out.set_asn(remap[static_cast<std::size_t>(u)], g.asn(u));
    for (int u = 0; u < n; ++u) {
        const int ru = remap[static_cast<std::size_t>(u)];
        if (ru < 0) continue;
        for (const auto& nb : g.neighbors(u)) {
            const int rv = remap[static_cast<std::size_t>(nb.id)];
            if (rv < 0 || nb.id < u) continue;
            if (!g.labeled())
                out.add_edge(ru, rv);
            else if (nb.rel == Rel::Peer)
                out.add_p2p_edge(ru, rv);
            else if (nb.rel == Rel::Customer)
                out.add_c2p_edge(ru, rv); // u provides nb
            else
                out.add_c2p_edge(rv, ru);
        }
    }
    out.finalize();
    return out;
}

} // namespace sdnbgp

#endif
