#ifndef SDNBGP_SIMULATOR_HPP
#define SDNBGP_SIMULATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "sdnbgp/centrality.hpp"
#include "sdnbgp/errors.hpp"
#include "sdnbgp/graph.hpp"
#include "sdnbgp/random.hpp"
#include "sdnbgp/routing.hpp"
#include "sdnbgp/time_model.hpp"

namespace sdnbgp {

constexpr double kInfTime = std::numeric_limits<double>::infinity();
constexpr int kRandomSource = -1;

enum class RoutingMode { Auto, ShortestPathDag, PolicyTree, Flood };

// How the cluster is chosen for each trial. Random selection is re-drawn
// per trial (from the trial's substream); a fixed set and top-betweenness
// stay constant across trials.
struct ClusterPolicy {
    enum class Kind { Fixed, Strategy } kind = Kind::Fixed;
    std::vector<int> fixed;
    ClusterSelection selection;
    const CentralityProfile* profile = nullptr;

    static ClusterPolicy none() { return {}; }
    static ClusterPolicy fixed_set(std::vector<int> nodes) {
        ClusterPolicy c;
        c.fixed = std::move(nodes);
        return c;
    }
    static ClusterPolicy strategy(ClusterSelection sel, const CentralityProfile* prof = nullptr) {
        ClusterPolicy c;
        c.kind = Kind::Strategy;
        c.selection = sel;
        c.profile = prof;
        return c;
    }
};

struct Scenario {
    const AsGraph* graph = nullptr;
    RoutingMode mode = RoutingMode::Auto;
    ClusterPolicy cluster;
    TimeModel bgp = TimeModel::exponential(1.0);
    SdnLatencyModel sdn;
    int source = kRandomSource;
    int trials = 1;
    std::uint64_t seed = 0;
    bool per_node_draws = false; // one T_bgp draw per sender, reused for all neighbors
    std::vector<double> ell_fractions = {0.1, 0.5, 1.0};

    RoutingMode resolved_mode() const {
        if (mode != RoutingMode::Auto) return mode;
        return graph->labeled() ? RoutingMode::PolicyTree : RoutingMode::ShortestPathDag;
    }

    void validate() const {
        if (graph == nullptr || graph->n() < 1) throw DomainError("scenario needs a graph");
        if (trials < 1) throw DomainError("need trials >= 1");
        if (source != kRandomSource && (source < 0 || source >= graph->n()))
            throw DomainError("source out of range");
        for (int c : cluster.fixed)
            if (c < 0 || c >= graph->n()) throw DomainError("cluster node out of range");
        if (resolved_mode() == RoutingMode::PolicyTree && !graph->labeled())
            throw UnlabeledGraph();
        for (double f : ell_fractions)
            if (!(f > 0.0 && f <= 1.0)) throw DomainError("ell fractions must be in (0, 1]");
    }
};

// One trial's outcome: global reception times plus the per-destination
// path-local establishment times used for T_SD.
struct PropagationTrace {
    int source = 0;
    std::vector<int> cluster;
    std::vector<double> reception;   // kInfTime = unreached
    double cluster_arrival = kInfTime;
    std::vector<double> tsd;         // kInfTime = no SD-path
    std::vector<int> path_d;         // -1 = no SD-path
    std::vector<int> path_k_prime;
    int unreached = 0;

    std::vector<double> sorted_reception() const {
        std::vector<double> t;
        t.reserve(reception.size());
        for (double x : reception)
            if (x < kInfTime) t.push_back(x);
        std::sort(t.begin(), t.end());
        return t;
    }

    double t_c() const {
        double mx = 0.0;
        for (double x : reception)
            if (x < kInfTime && x > mx) mx = x;
        return mx;
    }
};

namespace detail {

enum DrawPurpose : std::uint64_t {
    kDrawSource = 1,
    kDrawCluster = 2,
    kDrawSdn = 3,
    kDrawEdge = 4,
};

// Counter-based per-transmission delay: a fresh stream keyed by
// (seed, trial, sender[, receiver]), so a delay does not depend on event
// order. This is what couples runs with different clusters (common random
// numbers) and keeps parallel trials reproducible.
class DelayTable {
public:
    DelayTable(const TimeModel& model, std::uint64_t seed, long trial, int n, bool per_node)
        : model_(&model), seed_(seed), trial_(static_cast<std::uint64_t>(trial)),
          n_(static_cast<std::uint64_t>(n)), per_node_(per_node) {}

    double operator()(int from, int to) const {
        const std::uint64_t key =
            per_node_ ? static_cast<std::uint64_t>(from)
                      : static_cast<std::uint64_t>(from) * n_ + static_cast<std::uint64_t>(to);
        Rng rng(substream_seed(seed_, kDrawEdge, trial_, key));
        return model_->sample(rng);
    }

private:
    const TimeModel* model_;
    std::uint64_t seed_;
    std::uint64_t trial_;
    std::uint64_t n_;
    bool per_node_;
};

struct EventQueue {
    // (time, node-or-state) min-heap; ties broken by id for determinism
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> q;

    void push(double t, int id) { q.push({t, id}); }
    bool empty() const { return q.empty(); }
    Item pop() {
        Item it = q.top();
        q.pop();
        return it;
    }
};

} // namespace detail

// Earliest-arrival propagation of one announcement. The source holds the
// update at t=0; an updated node schedules delivery to each eligible
// neighbor after its own per-transmission delay; the first cluster member
// to receive triggers the controller, which hands every member the final
// route T_sdn later. Already-updated nodes ignore re-deliveries.
inline PropagationTrace run_trial(const Scenario& sc, long trial_index) {
    sc.validate();
    const AsGraph& g = *sc.graph;
    const int n = g.n();
    const RoutingMode mode = sc.resolved_mode();

    PropagationTrace trace;
    // source; a random draw skips isolated nodes (nothing to announce over)
    if (sc.source == kRandomSource) {
        Rng rng(substream_seed(sc.seed, detail::kDrawSource, static_cast<std::uint64_t>(trial_index)));
        int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        for (int tries = 0; g.degree(s) == 0; ++tries) {
            if (tries >= n) throw DisconnectedSource("graph has no connected nodes");
            s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        }
        trace.source = s;
    } else {
        trace.source = sc.source;
    }
    // cluster
    if (sc.cluster.kind == ClusterPolicy::Kind::Fixed) {
        trace.cluster = sc.cluster.fixed;
    } else if (sc.cluster.selection.strategy == ClusterStrategy::Random) {
        trace.cluster =
            select_cluster(sc.cluster.selection, n, nullptr,
                           substream_seed(sc.seed, detail::kDrawCluster,
                                          static_cast<std::uint64_t>(trial_index)));
    } else {
        trace.cluster = select_cluster(sc.cluster.selection, n, sc.cluster.profile, sc.seed);
    }
    std::vector<bool> in_cluster(static_cast<std::size_t>(n), false);
    for (int c : trace.cluster) in_cluster[static_cast<std::size_t>(c)] = true;

    double t_sdn = 0.0;
    {
        Rng rng(substream_seed(sc.seed, detail::kDrawSdn, static_cast<std::uint64_t>(trial_index)));
        t_sdn = sc.sdn.sample(rng);
    }
    const detail::DelayTable delay(sc.bgp, sc.seed, trial_index, n, sc.per_node_draws);

    const int src = trace.source;
    trace.reception.assign(static_cast<std::size_t>(n), kInfTime);

    std::optional<ShortestPaths> sp;
    std::optional<PolicyRoutes> routes;
    if (mode == RoutingMode::PolicyTree)
        routes.emplace(g, src);
    else
        sp.emplace(shortest_paths(g, src));

    bool cluster_fired = false;
    trace.cluster_arrival = kInfTime;

    if (mode != RoutingMode::PolicyTree) {
        // plain node-level first passage
        detail::EventQueue pq;
        std::vector<bool> done(static_cast<std::size_t>(n), false);
        auto relax = [&](int v, double t) {
            if (t < trace.reception[static_cast<std::size_t>(v)]) {
                trace.reception[static_cast<std::size_t>(v)] = t;
                pq.push(t, v);
            }
        };
        relax(src, 0.0);
        while (!pq.empty()) {
            auto [tu, u] = pq.pop();
            if (done[static_cast<std::size_t>(u)]) continue;
            done[static_cast<std::size_t>(u)] = true;
            if (in_cluster[static_cast<std::size_t>(u)] && !cluster_fired) {
                cluster_fired = true;
                trace.cluster_arrival = tu;
                for (int c : trace.cluster) relax(c, tu + t_sdn);
            }
            for (const auto& nb : g.neighbors(u)) {
                if (mode == RoutingMode::ShortestPathDag &&
                    sp->dist[static_cast<std::size_t>(nb.id)] !=
                        sp->dist[static_cast<std::size_t>(u)] + 1)
                    continue;
                relax(nb.id, tu + delay(u, nb.id));
            }
        }
    } else {
        // (node, class) first passage over the C.4 export automaton:
        // customer-learned routes export everywhere, peer/provider-learned
        // only to customers. A node's reception is its earliest state.
        std::vector<double> state_time(static_cast<std::size_t>(n) * 3, kInfTime);
        std::vector<bool> state_done(static_cast<std::size_t>(n) * 3, false);
        detail::EventQueue pq;
        auto state_of = [](int v, int cls) { return v * 3 + cls; };
        auto relax_state = [&](int v, int cls, double t) {
            const std::size_t s = static_cast<std::size_t>(state_of(v, cls));
            if (t < state_time[s]) {
                state_time[s] = t;
                pq.push(t, static_cast<int>(s));
            }
        };
        auto fire_cluster = [&](double at) {
            cluster_fired = true;
            trace.cluster_arrival = at;
            const double ti = at + t_sdn;
            for (int c : trace.cluster) {
                if (ti < trace.reception[static_cast<std::size_t>(c)])
                    trace.reception[static_cast<std::size_t>(c)] = ti;
                const int bc = (c == src) ? kCustomerRoute : routes->best_class(c);
                if (bc >= 0) relax_state(c, bc, ti);
            }
        };
        trace.reception[static_cast<std::size_t>(src)] = 0.0;
        if (in_cluster[static_cast<std::size_t>(src)]) fire_cluster(0.0);
        for (const auto& nb : g.neighbors(src))
            relax_state(nb.id, class_at_receiver(nb.rel), delay(src, nb.id));
        while (!pq.empty()) {
            auto [tu, sid] = pq.pop();
            if (state_done[static_cast<std::size_t>(sid)]) continue;
            state_done[static_cast<std::size_t>(sid)] = true;
            const int u = sid / 3;
            const int cls = sid % 3;
            if (tu < trace.reception[static_cast<std::size_t>(u)])
                trace.reception[static_cast<std::size_t>(u)] = tu;
            if (in_cluster[static_cast<std::size_t>(u)] && !cluster_fired) fire_cluster(tu);
            for (const auto& nb : g.neighbors(u)) {
                if (cls == kCustomerRoute)
                    relax_state(nb.id, class_at_receiver(nb.rel), tu + delay(u, nb.id));
                else if (nb.rel == Rel::Customer)
                    relax_state(nb.id, kProviderRoute, tu + delay(u, nb.id));
            }
        }
    }

    for (double t : trace.reception)
        if (!(t < kInfTime)) ++trace.unreached;
    if (n > 1 && trace.unreached >= n - 1)
        throw DisconnectedSource("source " + std::to_string(src) + " reaches no other node");

    // Per-destination establishment along the fixed SD-path, replaying the
    // same transmission delays hop by hop; cluster members restart their
    // section at the injection time. max over the path = T_SD.
    trace.tsd.assign(static_cast<std::size_t>(n), kInfTime);
    trace.path_d.assign(static_cast<std::size_t>(n), -1);
    trace.path_k_prime.assign(static_cast<std::size_t>(n), 0);
    const double inject =
        cluster_fired ? trace.cluster_arrival + t_sdn : kInfTime;
    std::vector<int> path;
    for (int dst = 0; dst < n; ++dst) {
        if (dst == src) continue;
        path.clear();
        if (mode == RoutingMode::PolicyTree) {
            PolicyPath pp = routes->path(dst);
            path = std::move(pp.nodes);
        } else {
            path = sp->path(dst);
        }
        if (path.size() < 2) continue; // unreachable
        const int d = static_cast<int>(path.size()) - 1;
        int kp = 0;
        double arr = 0.0, worst = 0.0;
        if (in_cluster[static_cast<std::size_t>(path[0])]) ++kp;
        for (std::size_t i = 1; i < path.size(); ++i) {
            const int a = path[i - 1], b = path[i];
            arr += delay(a, b);
            if (in_cluster[static_cast<std::size_t>(b)]) {
                ++kp;
                arr = std::min(arr, inject);
            }
            worst = std::max(worst, arr);
        }
        trace.tsd[static_cast<std::size_t>(dst)] = worst;
        trace.path_d[static_cast<std::size_t>(dst)] = d;
        trace.path_k_prime[static_cast<std::size_t>(dst)] = kp;
    }
    return trace;
}

// ---- aggregation -----------------------------------------------------------

struct BucketStat {
    long count = 0;
    double mean = 0.0;
    double se = 0.0;
};

struct SeriesStat {
    long count = 0;
    double mean = 0.0;
    double se = 0.0;
};

struct SummaryStats {
    std::uint64_t seed = 0;
    std::uint64_t graph_hash = 0;
    int n = 0;
    int trials = 0;
    int cluster_k = 0;
    // keyed by (d, k'); SEs are cluster-robust over trials because samples
    // within a trial share path edges and the cluster arrival time
    std::map<std::pair<int, int>, BucketStat> buckets;
    std::map<int, BucketStat> by_d; // marginal over k'
    std::vector<std::pair<double, SeriesStat>> t_ell; // (fraction, stat)
    SeriesStat t_c;
    long unreached_total = 0;

    double mean_tsd_for_d(int d) const {
        auto it = by_d.find(d);
        return it == by_d.end() ? std::numeric_limits<double>::quiet_NaN() : it->second.mean;
    }
};

namespace detail {

// mean = sum(s_t)/sum(c_t) over per-trial partials; linearized
// ratio-estimator SE treats trials as the independent unit
struct RobustAccum {
    long count = 0;
    double sum = 0.0;
    double t_ss = 0.0; // sum over trials of s_t^2
    double t_cc = 0.0; // sum over trials of c_t^2
    double t_sc = 0.0; // sum over trials of s_t*c_t

    void add_trial(long c, double s) {
        count += c;
        sum += s;
        t_ss += s * s;
        t_cc += static_cast<double>(c) * static_cast<double>(c);
        t_sc += s * static_cast<double>(c);
    }

    BucketStat finish(long trials) const {
        BucketStat b;
        b.count = count;
        if (count == 0) return b;
        b.mean = sum / static_cast<double>(count);
        if (trials > 1) {
            const double resid = t_ss - 2.0 * b.mean * t_sc + b.mean * b.mean * t_cc;
            const double var = std::max(resid, 0.0) * static_cast<double>(trials) /
                               static_cast<double>(trials - 1) /
                               (static_cast<double>(count) * static_cast<double>(count));
            b.se = std::sqrt(var);
        }
        return b;
    }
};

struct MeanAccum {
    long count = 0;
    double sum = 0.0;
    double sum2 = 0.0;

    void add(double x) {
        ++count;
        sum += x;
        sum2 += x * x;
    }

    SeriesStat finish() const {
        SeriesStat s;
        s.count = count;
        if (count == 0) return s;
        s.mean = sum / static_cast<double>(count);
        if (count > 1) {
            const double var =
                std::max(sum2 / static_cast<double>(count) - s.mean * s.mean, 0.0) *
                static_cast<double>(count) / static_cast<double>(count - 1);
            s.se = std::sqrt(var / static_cast<double>(count));
        }
        return s;
    }
};

} // namespace detail

inline SummaryStats run_monte_carlo(const Scenario& sc) {
    sc.validate();
    const int n = sc.graph->n();
    SummaryStats out;
    out.seed = sc.seed;
    out.graph_hash = sc.graph->hash();
    out.n = n;
    out.trials = sc.trials;
    out.cluster_k = sc.cluster.kind == ClusterPolicy::Kind::Fixed
                        ? static_cast<int>(sc.cluster.fixed.size())
                        : sc.cluster.selection.k;

    std::map<std::pair<int, int>, detail::RobustAccum> buckets;
    std::map<int, detail::RobustAccum> by_d;
    std::vector<detail::MeanAccum> ell_acc(sc.ell_fractions.size());
    detail::MeanAccum tc_acc;

    std::map<std::pair<int, int>, std::pair<long, double>> trial_bucket;
    std::map<int, std::pair<long, double>> trial_by_d;
    for (long t = 0; t < sc.trials; ++t) {
        const PropagationTrace trace = run_trial(sc, t);
        trial_bucket.clear();
        trial_by_d.clear();
        for (int v = 0; v < n; ++v) {
            if (trace.path_d[static_cast<std::size_t>(v)] < 0) continue;
            const auto key = std::make_pair(trace.path_d[static_cast<std::size_t>(v)],
                                            trace.path_k_prime[static_cast<std::size_t>(v)]);
            auto& tb = trial_bucket[key];
            ++tb.first;
            tb.second += trace.tsd[static_cast<std::size_t>(v)];
            auto& td = trial_by_d[key.first];
            ++td.first;
            td.second += trace.tsd[static_cast<std::size_t>(v)];
        }
        for (const auto& [key, cs] : trial_bucket) buckets[key].add_trial(cs.first, cs.second);
        for (const auto& [d, cs] : trial_by_d) by_d[d].add_trial(cs.first, cs.second);

        // unreached nodes are excluded from the denominator: ell counts
        // against the nodes this trial can reach
        const std::vector<double> sorted = trace.sorted_reception();
        const long reached = static_cast<long>(sorted.size());
        for (std::size_t i = 0; i < sc.ell_fractions.size(); ++i) {
            const long ell = std::clamp<long>(
                std::lround(sc.ell_fractions[i] * static_cast<double>(reached)), 1, reached);
            ell_acc[i].add(sorted[static_cast<std::size_t>(ell - 1)]);
        }
        tc_acc.add(trace.t_c());
        out.unreached_total += trace.unreached;
    }
    // trials with no sample in a bucket count as zero-contribution trials
    for (const auto& [key, acc] : buckets) out.buckets[key] = acc.finish(sc.trials);
    for (const auto& [d, acc] : by_d) out.by_d[d] = acc.finish(sc.trials);
    for (std::size_t i = 0; i < sc.ell_fractions.size(); ++i)
        out.t_ell.emplace_back(sc.ell_fractions[i], ell_acc[i].finish());
    out.t_c = tc_acc.finish();
    return out;
}

struct RatioStat {
    double ratio = std::numeric_limits<double>::quiet_NaN();
    double se = 0.0;
};

inline RatioStat ratio_of(const SeriesStat& num, const SeriesStat& den) {
    RatioStat r;
    if (num.count == 0 || den.count == 0 || den.mean == 0.0) return r;
    r.ratio = num.mean / den.mean;
    const double rel2 = (num.mean != 0.0 ? (num.se / num.mean) * (num.se / num.mean) : 0.0) +
                        (den.se / den.mean) * (den.se / den.mean);
    r.se = std::fabs(r.ratio) * std::sqrt(rel2);
    return r;
}

struct SweepEntry {
    int k = 0;
    SummaryStats stats;
    std::vector<std::pair<double, RatioStat>> ell_ratios;
    RatioStat tc_ratio;
    std::map<int, RatioStat> by_d_ratios;
};

struct SweepResult {
    SummaryStats baseline;
    std::vector<SweepEntry> entries;
};

// Runs the k = 0 baseline once, then each k with the cluster re-selected
// per the scenario's policy. The same master seed drives every run, so
// sources and transmission delays are shared and the ratios are coupled.
inline SweepResult normalized_sweep(const Scenario& base, const std::vector<int>& k_values) {
    if (k_values.empty()) throw DomainError("k sweep must be nonempty");
    Scenario s0 = base;
    s0.cluster = ClusterPolicy::none();
    SweepResult out;
    out.baseline = run_monte_carlo(s0);
    for (int k : k_values) {
        Scenario sk = base;
        if (k == 0) {
            sk.cluster = ClusterPolicy::none();
        } else if (base.cluster.kind == ClusterPolicy::Kind::Fixed) {
            throw DomainError("sweep needs a cluster strategy, not a fixed set");
        } else {
            sk.cluster = base.cluster;
            sk.cluster.selection.k = k;
        }
        SweepEntry e;
        e.k = k;
        e.stats = run_monte_carlo(sk);
        for (std::size_t i = 0; i < e.stats.t_ell.size(); ++i) {
            SeriesStat num = e.stats.t_ell[i].second;
            SeriesStat den = out.baseline.t_ell[i].second;
            e.ell_ratios.emplace_back(e.stats.t_ell[i].first, ratio_of(num, den));
        }
        e.tc_ratio = ratio_of(e.stats.t_c, out.baseline.t_c);
        for (const auto& [d, st] : e.stats.by_d) {
            auto bit = out.baseline.by_d.find(d);
            if (bit == out.baseline.by_d.end()) continue;
            SeriesStat num{st.count, st.mean, st.se};
            SeriesStat den{bit->second.count, bit->second.mean, bit->second.se};
            e.by_d_ratios[d] = ratio_of(num, den);
        }
        out.entries.push_back(std::move(e));
    }
    return out;
}

// ---- serialization ---------------------------------------------------------

inline void write_bucket_csv(const SummaryStats& s, std::ostream& out) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "# seed=%llu graph=%016llx n=%d trials=%d k=%d\n",
                  static_cast<unsigned long long>(s.seed),
                  static_cast<unsigned long long>(s.graph_hash), s.n, s.trials, s.cluster_k);
    out << buf << "bucket_d,bucket_kprime,count,mean,se\n";
    for (const auto& [key, b] : s.buckets) {
        std::snprintf(buf, sizeof buf, "%d,%d,%ld,%.17g,%.17g\n", key.first, key.second, b.count,
                      b.mean, b.se);
        out << buf;
    }
}

inline void write_sweep_csv(const SweepResult& r, std::ostream& out) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "# seed=%llu graph=%016llx baseline_trials=%d\n",
                  static_cast<unsigned long long>(r.baseline.seed),
                  static_cast<unsigned long long>(r.baseline.graph_hash), r.baseline.trials);
    out << buf << "k,ell,mean,se,ratio\n";
    for (const auto& e : r.entries) {
        for (std::size_t i = 0; i < e.stats.t_ell.size(); ++i) {
            const auto& [frac, st] = e.stats.t_ell[i];
            const long ell = std::clamp<long>(
                std::lround(frac * static_cast<double>(e.stats.n)), 1, e.stats.n);
            std::snprintf(buf, sizeof buf, "%d,%ld,%.17g,%.17g,%.17g\n", e.k, ell, st.mean, st.se,
                          e.ell_ratios[i].second.ratio);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, "%d,all,%.17g,%.17g,%.17g\n", e.k, e.stats.t_c.mean,
                      e.stats.t_c.se, e.tc_ratio.ratio);
        out << buf;
    }
}

} // namespace sdnbgp

#endif
