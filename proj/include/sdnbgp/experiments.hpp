#ifndef SDNBGP_EXPERIMENTS_HPP
#define SDNBGP_EXPERIMENTS_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdnbgp/centrality.hpp"
#include "sdnbgp/controlplane.hpp"
#include "sdnbgp/dataplane.hpp"
#include "sdnbgp/graph.hpp"
#include "sdnbgp/simulator.hpp"
#include "sdnbgp/time_model.hpp"

namespace sdnbgp {

namespace fs = std::filesystem;

// ---- config ----------------------------------------------------------------

// One experiment per file. INI-style sections, '#' comments, and
// "section.key=value" command-line overrides that win over file keys.
class ExperimentConfig {
public:
    static ExperimentConfig from_file(const std::string& path,
                                      const std::vector<std::string>& overrides = {}) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return from_text(ss.str(), overrides);
    }

    static ExperimentConfig from_text(const std::string& text,
                                      const std::vector<std::string>& overrides = {}) {
        ExperimentConfig c;
        c.parse(text);
        for (const auto& ov : overrides) {
            const auto eq = ov.find('=');
            if (eq == std::string::npos) throw ConfigError("override must be key=value: " + ov);
            c.kv_[trim(ov.substr(0, eq))] = trim(ov.substr(eq + 1));
        }
        c.canonicalize();
        return c;
    }

    const std::string& name() const { return name_; }
    std::uint64_t seed() const { return seed_; }
    int trials() const { return trials_; }
    long path_samples() const { return path_samples_; }
    const std::string& output_dir() const { return output_dir_; }
    void set_output_dir(std::string d) { output_dir_ = std::move(d); }

    std::string topology_kind() const { return get("topology.kind", "poisson"); }
    std::string caida_path() const { return get("topology.path", ""); }
    bool prune_requested() const { return get_bool("topology.prune", false); }

    std::string cluster_strategy() const { return get("cluster.strategy", "random"); }
    const std::vector<int>& k_values() const { return k_values_; }
    bool reselect_per_trial() const { return get_bool("cluster.reselect_per_trial", true); }

    const std::vector<double>& ell_fractions() const { return ell_fractions_; }
    bool per_node_draws() const { return get_bool("run.per_node_draws", false); }
    bool dump_traces() const { return get_bool("run.dump_traces", false); }

    RoutingMode routing_mode() const {
        const std::string m = get("run.mode", "auto");
        if (m == "auto") return RoutingMode::Auto;
        if (m == "shortest_path_dag") return RoutingMode::ShortestPathDag;
        if (m == "policy_tree") return RoutingMode::PolicyTree;
        if (m == "flood") return RoutingMode::Flood;
        throw ConfigError("unknown run.mode " + m);
    }

    int source() const {
        const std::string s = get("run.source", "random");
        if (s == "random") return kRandomSource;
        return parse_int(s, "run.source");
    }

    TimeModel bgp_model() const {
        const std::string kind = get("time.bgp", "exponential");
        if (kind == "exponential") return TimeModel::exponential(get_num("time.rate", 1.0));
        if (kind == "uniform")
            return TimeModel::uniform(get_num("time.lo", 0.0), get_num("time.hi", 2.0));
        if (kind == "deterministic") return TimeModel::deterministic(get_num("time.value", 1.0));
        if (kind == "empirical") {
            const std::string f = get("time.samples", "");
            if (f.empty()) throw ConfigError("time.samples file required for empirical model");
            std::ifstream in(f);
            if (!in) throw ConfigError("cannot open " + f);
            std::vector<double> xs;
            double x;
            while (in >> x) xs.push_back(x);
            return TimeModel::empirical(std::move(xs));
        }
        throw ConfigError("unknown time.bgp " + kind);
    }

    SdnLatencyModel sdn_model() const {
        SdnLatencyModel m;
        const std::string kind = get("time.sdn", "deterministic");
        if (kind == "deterministic")
            m.model = TimeModel::deterministic(get_num("time.sdn_value", 0.0));
        else if (kind == "exponential")
            m.model = TimeModel::exponential(get_num("time.sdn_rate", 1.0));
        else
            throw ConfigError("unknown time.sdn " + kind);
        return m;
    }

    // deterministic FNV-1a digest of the canonical key=value listing
    std::uint64_t digest() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const auto& [k, v] : kv_) {
            for (char ch : k) {
                h ^= static_cast<unsigned char>(ch);
                h *= 0x100000001b3ULL;
            }
            h ^= '=';
            h *= 0x100000001b3ULL;
            for (char ch : v) {
                h ^= static_cast<unsigned char>(ch);
                h *= 0x100000001b3ULL;
            }
            h ^= '\n';
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    AsGraph build_graph() const {
        const std::string kind = topology_kind();
        AsGraph g;
        if (kind == "full_mesh") {
            g = gen_full_mesh(get_int("topology.n", 1000));
        } else if (kind == "poisson") {
            g = gen_poisson(get_int("topology.n", 1000), get_num("topology.p", 0.005),
                            substream_seed(seed_, 0xa11, 0));
        } else if (kind == "barabasi_albert") {
            g = gen_barabasi_albert(get_int("topology.n", 1000), get_int("topology.m", 5),
                                    substream_seed(seed_, 0xa11, 1));
        } else if (kind == "small_world") {
            g = gen_small_world(get_int("topology.n", 1000), get_int("topology.k_nn", 10),
                                get_num("topology.p_add", 0.3), substream_seed(seed_, 0xa11, 2));
        } else if (kind == "caida") {
            const std::string path = caida_path();
            if (path.empty()) throw ConfigError("topology.path required for kind=caida");
            if (!fs::exists(path)) throw ConfigError("topology.path does not exist: " + path);
            g = load_caida_asrel(path);
            if (prune_requested())
                g = prune(g, get_int("topology.min_degree", 3),
                          get_bool("topology.drop_stubs", true));
            g.assign_local_prefs(substream_seed(seed_, 0xa11, 3));
            return g;
        } else {
            throw ConfigError("unknown topology.kind " + kind);
        }
        return g;
    }

    // chain scenario for the analytic convergence sweep; sparse generators
    // map onto the Poisson-graph degree model at their average degree
    ChainScenario chain_scenario(const AsGraph& g, int k) const {
        ChainScenario s;
        s.n = g.n();
        s.k = std::max(k, 1);
        s.lambda = 1.0 / bgp_model().mean();
        if (topology_kind() == "full_mesh") {
            s.model = DegreeModel::FullMesh;
        } else {
            s.model = DegreeModel::PoissonGraph;
            const double avg_degree =
                2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.n());
            s.p = avg_degree / static_cast<double>(g.n() - 1);
        }
        s.validate();
        return s;
    }

    std::string get(const std::string& key, const std::string& fallback) const {
        auto it = kv_.find(key);
        return it == kv_.end() ? fallback : it->second;
    }

private:
    static std::string trim(std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        if (a == std::string::npos) return "";
        return s.substr(a, b - a + 1);
    }

    static int parse_int(const std::string& v, const std::string& key) {
        try {
            std::size_t pos = 0;
            const int x = std::stoi(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ConfigError("bad integer for " + key + ": " + v);
        }
    }

    void parse(const std::string& text) {
        std::istringstream in(text);
        std::string line, section;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[' && line.back() == ']') {
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ConfigError("expected key = value: " + line);
            const std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            kv_[section.empty() ? key : section + "." + key] = val;
        }
    }

    void canonicalize() {
        name_ = get("name", "experiment");
        try {
            seed_ = static_cast<std::uint64_t>(std::stoull(get("seed", "1")));
        } catch (const std::exception&) {
            throw ConfigError("bad seed: " + get("seed", ""));
        }
        trials_ = get_int("trials", 100);
        if (trials_ < 1) throw ConfigError("trials must be >= 1");
        path_samples_ = get_int("path_samples", 100000);
        output_dir_ = get("output_dir", "");
        if (output_dir_.empty()) {
            const char* env = std::getenv("SDNBGP_OUTPUT_DIR");
            output_dir_ = env ? env : "results";
        }
        k_values_.clear();
        for (const std::string& tok : split(get("cluster.k", "0"), ','))
            k_values_.push_back(parse_int(trim(tok), "cluster.k"));
        const int n = get_int("topology.n", 1 << 30);
        for (int k : k_values_) {
            if (k < 0) throw ConfigError("cluster.k must be >= 0");
            if (topology_kind() != "caida" && k > n)
                throw ConfigError("cluster.k exceeds topology.n");
        }
        ell_fractions_.clear();
        for (const std::string& tok : split(get("run.ell", "0.1,0.5,1.0"), ',')) {
            try {
                ell_fractions_.push_back(std::stod(trim(tok)));
            } catch (const std::exception&) {
                throw ConfigError("bad run.ell entry: " + tok);
            }
        }
        for (double f : ell_fractions_)
            if (!(f > 0.0 && f <= 1.0)) throw ConfigError("run.ell fractions must be in (0, 1]");
        const std::string strat = cluster_strategy();
        if (strat != "random" && strat != "top_betweenness")
            throw ConfigError("unknown cluster.strategy " + strat);
        if (topology_kind() == "caida" && !caida_path().empty() && !fs::exists(caida_path()))
            throw ConfigError("topology.path does not exist: " + caida_path());
        if (get("time.bgp", "exponential") == "empirical") {
            const std::string f = get("time.samples", "");
            if (!f.empty() && !fs::exists(f)) throw ConfigError("time.samples does not exist: " + f);
        }
    }

    static std::vector<std::string> split(const std::string& s, char sep) {
        std::vector<std::string> out;
        std::istringstream in(s);
        std::string tok;
        while (std::getline(in, tok, sep)) out.push_back(tok);
        return out;
    }

    int get_int(const std::string& key, int fallback) const {
        auto it = kv_.find(key);
        return it == kv_.end() ? fallback : parse_int(it->second, key);
    }

    double get_num(const std::string& key, double fallback) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        try {
            return std::stod(it->second);
        } catch (const std::exception&) {
            throw ConfigError("bad number for " + key + ": " + it->second);
        }
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        if (it->second == "true" || it->second == "1") return true;
        if (it->second == "false" || it->second == "0") return false;
        throw ConfigError("bad boolean for " + key + ": " + it->second);
    }

    std::map<std::string, std::string> kv_;
    std::string name_;
    std::uint64_t seed_ = 1;
    int trials_ = 100;
    long path_samples_ = 100000;
    std::string output_dir_;
    std::vector<int> k_values_;
    std::vector<double> ell_fractions_;
};

// ---- synthetic AS-relationship file ----------------------------------------

// Five-tier customer->provider hierarchy in CAIDA serial-1 format: a tier-1
// peering mesh, an aggregator tier buying transit from it, two regional
// tiers below, and single/dual-homed stubs at the bottom. Stands in for a
// real snapshot when none is available: path lengths, the betweenness
// concentration in the top tiers, and the stub mass removed by pruning all
// land in the AS-graph regime.
inline void write_synthetic_asrel(std::ostream& out, int n, std::uint64_t seed) {
    if (n < 200) throw DomainError("synthetic topology needs n >= 200");
    Rng rng(seed);
    const int t1 = 10, t2 = 38;
    const int t3_end = t1 + t2 + n * 12 / 100;
    const int t4_end = t3_end + n * 38 / 100;
    out << "# synthetic tiered AS relationships\n";
    out << "# n=" << n << " seed=" << seed << "\n";
    for (int a = 0; a < t1; ++a)
        for (int b = a + 1; b < t1; ++b) out << (a + 1) << '|' << (b + 1) << "|0\n";
    std::unordered_set<std::uint64_t> seen;
    auto emit_c2p = [&](int prov, int cust) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(std::min(prov, cust)) << 32) |
            static_cast<std::uint64_t>(std::max(prov, cust));
        if (prov == cust || !seen.insert(key).second) return;
        out << (prov + 1) << '|' << (cust + 1) << "|-1\n";
    };
    auto pick = [&](int lo, int hi) {
        return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo)));
    };
    for (int v = t1; v < t1 + t2; ++v)
        for (int j = 0; j < 3; ++j) emit_c2p(pick(0, t1), v);
    for (int v = t1 + t2; v < t3_end; ++v) {
        const int nprov = 2 + (rng.uniform01() < 0.5 ? 1 : 0);
        for (int j = 0; j < nprov; ++j) emit_c2p(pick(t1, t1 + t2), v);
    }
    for (int v = t3_end; v < t4_end; ++v) {
        for (int j = 0; j < 3; ++j) emit_c2p(pick(t1 + t2, t3_end), v);
        if (rng.uniform01() < 0.15) emit_c2p(pick(t1, t1 + t2), v);
    }
    for (int v = t4_end; v < n; ++v) {
        const int nprov = 1 + (rng.uniform01() < 0.6 ? 1 : 0);
        for (int j = 0; j < nprov; ++j) emit_c2p(pick(t1 + t2, t4_end), v);
    }
    // lateral peering among similarly-sized regional networks
    const long n_peers = static_cast<long>(0.08 * static_cast<double>(n));
    for (long i = 0; i < n_peers; ++i) {
        const int u = pick(t1 + t2, t4_end);
        const int span = 1 + static_cast<int>(rng.below(10));
        const int v = std::min(u + span, t4_end - 1);
        const std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) |
                                  static_cast<std::uint64_t>(std::max(u, v));
        if (u == v || !seen.insert(key).second) continue;
        out << (u + 1) << '|' << (v + 1) << "|0\n";
    }
}

// ---- centrality cache ------------------------------------------------------

inline std::string centrality_cache_name(std::uint64_t graph_hash, const std::string& backend,
                                         std::uint64_t sample_seed) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "centrality_%016llx_%s_%llu.csv",
                  static_cast<unsigned long long>(graph_hash), backend.c_str(),
                  static_cast<unsigned long long>(sample_seed));
    return buf;
}

inline void save_centrality(const fs::path& file, const CentralityProfile& p) {
    std::ofstream out(file);
    out << "node,score\n";
    char buf[64];
    for (int v = 0; v < p.n(); ++v) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", v, p.values[static_cast<std::size_t>(v)]);
        out << buf;
    }
}

inline std::optional<CentralityProfile> load_centrality(const fs::path& file, int n) {
    std::ifstream in(file);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line) || line != "node,score") return std::nullopt;
    CentralityProfile p;
    p.values.assign(static_cast<std::size_t>(n), 0.0);
    try {
        while (std::getline(in, line)) {
            const auto c = line.find(',');
            if (c == std::string::npos) return std::nullopt;
            const int v = std::stoi(line.substr(0, c));
            if (v < 0 || v >= n) return std::nullopt;
            p.values[static_cast<std::size_t>(v)] = std::stod(line.substr(c + 1));
        }
    } catch (const std::exception&) {
        return std::nullopt; // corrupt cache counts as a miss
    }
    return p;
}

// ---- shared analysis pieces ------------------------------------------------

struct TopologyAnalysis {
    PathLengthDistribution path_dist;
    CentralityProfile profile;
    std::string backend; // "exact" or "path_sample"
    long samples_used = 0;
};

// P{d} and a betweenness profile for a graph: exact Brandes up to 5000
// nodes on unlabeled graphs, sampled paths otherwise (policy paths when the
// graph is labeled).
inline TopologyAnalysis analyze_topology(const AsGraph& g, long path_samples, std::uint64_t seed,
                                         const std::string& cache_dir = "") {
    TopologyAnalysis out;
    const std::vector<PolicyPath> paths = g.labeled()
                                              ? sample_policy_paths(g, path_samples, seed)
                                              : sample_shortest_paths(g, path_samples, seed);
    out.path_dist = path_length_distribution(paths);
    out.samples_used = static_cast<long>(paths.size());
    if (!g.labeled() && g.n() <= 5000) {
        out.backend = "exact";
        if (!cache_dir.empty()) {
            const fs::path f = fs::path(cache_dir) / centrality_cache_name(g.hash(), "exact", 0);
            if (auto cached = load_centrality(f, g.n())) {
                out.profile = *cached;
                return out;
            }
            out.profile = betweenness_exact(g);
            save_centrality(f, out.profile);
            return out;
        }
        out.profile = betweenness_exact(g);
    } else {
        out.backend = "path_sample";
        if (!cache_dir.empty()) {
            const fs::path f =
                fs::path(cache_dir) / centrality_cache_name(g.hash(), "path_sample", seed);
            if (auto cached = load_centrality(f, g.n())) {
                out.profile = *cached;
                return out;
            }
            out.profile = betweenness_from_paths(g.n(), paths);
            save_centrality(f, out.profile);
            return out;
        }
        out.profile = betweenness_from_paths(g.n(), paths);
    }
    return out;
}

// ---- commands --------------------------------------------------------------

struct CommandResult {
    std::vector<std::string> outputs;
    nlohmann::json manifest;
};

inline void write_manifest(const fs::path& dir, const nlohmann::json& manifest) {
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << "\n";
}

inline nlohmann::json base_manifest(const ExperimentConfig& cfg, const AsGraph& g) {
    char hash_hex[24], digest_hex[24];
    std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                  static_cast<unsigned long long>(g.hash()));
    std::snprintf(digest_hex, sizeof digest_hex, "%016llx",
                  static_cast<unsigned long long>(cfg.digest()));
    return nlohmann::json{{"name", cfg.name()},
                          {"seed", cfg.seed()},
                          {"config_digest", digest_hex},
                          {"graph_hash", hash_hex},
                          {"n", g.n()},
                          {"edges", g.edge_count()}};
}

// Analytic T_SD bound sweep, both selection models, normalized by k = 0.
inline CommandResult cmd_analytic_bounds(const ExperimentConfig& cfg) {
    const AsGraph g = cfg.build_graph();
    const fs::path dir(cfg.output_dir());
    fs::create_directories(dir);
    const TopologyAnalysis topo =
        analyze_topology(g, cfg.path_samples(), substream_seed(cfg.seed(), 0x90a7), dir.string());
    const double mu = cfg.bgp_model().mean();
    const double base = topo.path_dist.mean() * mu; // k = 0: LB = UB = E[d] * mu

    CommandResult res;
    res.manifest = base_manifest(cfg, g);
    res.manifest["path_samples"] = topo.samples_used;
    res.manifest["betweenness_backend"] = topo.backend;

    char buf[160];
    for (const char* strat : {"random", "betweenness"}) {
        const fs::path file = dir / ("bounds_" + std::string(strat) + ".csv");
        std::ofstream out(file);
        std::snprintf(buf, sizeof buf, "# seed=%llu digest=%016llx strategy=%s\n",
                      static_cast<unsigned long long>(cfg.seed()),
                      static_cast<unsigned long long>(cfg.digest()), strat);
        out << buf << "k,lower_norm,upper_norm\n";
        for (int k : cfg.k_values()) {
            double lo = base, up = base;
            if (k > 0) {
                KPrimeDistribution dist = KPrimeDistribution::hypergeometric(g.n(), k);
                // at k = N both selections are the whole graph; the
                // hypergeometric form covers it without an odds ratio
                if (std::string(strat) == "betweenness" && k < g.n()) {
                    ClusterSelection sel{ClusterStrategy::TopBetweenness, k};
                    const std::vector<int> cluster =
                        select_cluster(sel, g.n(), &topo.profile, cfg.seed());
                    try {
                        const double omega = omega_ratio(topo.profile, cluster);
                        dist = KPrimeDistribution::fisher_noncentral(g.n(), k, omega);
                    } catch (const DegenerateProfile&) {
                        // the top-k set holds every node that appears inside
                        // a sampled path; the odds-ratio model ends here
                        std::cerr << "note: omega undefined at k=" << k
                                  << " (no betweenness mass outside the cluster); row skipped\n";
                        continue;
                    }
                }
                const TsdBounds b = tsd_bounds(topo.path_dist, dist, mu);
                lo = b.lower;
                up = b.upper;
            }
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", k, lo / base, up / base);
            out << buf;
        }
        res.outputs.push_back(file.string());
    }
    {
        const fs::path pld = dir / "path_length_distribution.csv";
        std::ofstream out(pld);
        std::snprintf(buf, sizeof buf, "# seed=%llu digest=%016llx\n",
                      static_cast<unsigned long long>(cfg.seed()),
                      static_cast<unsigned long long>(cfg.digest()));
        out << buf;
        topo.path_dist.write_csv(out);
        res.outputs.push_back(pld.string());
    }
    res.manifest["outputs"] = res.outputs;
    write_manifest(dir, res.manifest);
    return res;
}

// Analytic convergence sweep on the chain model.
inline CommandResult cmd_analytic_convergence(const ExperimentConfig& cfg) {
    const AsGraph g = cfg.build_graph();
    const fs::path dir(cfg.output_dir());
    fs::create_directories(dir);
    const fs::path file = dir / "converge.csv";
    std::ofstream out(file);
    char buf[256];
    std::snprintf(buf, sizeof buf, "# seed=%llu digest=%016llx\n",
                  static_cast<unsigned long long>(cfg.seed()),
                  static_cast<unsigned long long>(cfg.digest()));
    out << buf << "k,E_Tc";
    for (double f : cfg.ell_fractions()) {
        std::snprintf(buf, sizeof buf, ",E_Tl_%gN", f);
        out << buf;
    }
    out << "\n";
    ChainEvalStats stats;
    for (int k : cfg.k_values()) {
        const ChainScenario s = cfg.chain_scenario(g, k); // k = 0 maps to k = 1
        std::snprintf(buf, sizeof buf, "%d,%.17g", k, expected_tc(s, &stats));
        out << buf;
        for (double f : cfg.ell_fractions()) {
            const long ell = std::clamp<long>(
                std::lround(f * static_cast<double>(s.n)), 1, s.n);
            std::snprintf(buf, sizeof buf, ",%.17g", expected_t_partial(ell, s));
            out << buf;
        }
        out << "\n";
    }
    if (stats.truncated_at_x >= 0)
        std::cerr << "note: P_sdn tail below " << kPsdnTailCutoff << " truncated at x="
                  << stats.truncated_at_x << " (mass " << stats.tail_mass << ")\n";
    CommandResult res;
    res.outputs.push_back(file.string());
    res.manifest = base_manifest(cfg, g);
    res.manifest["outputs"] = res.outputs;
    write_manifest(dir, res.manifest);
    return res;
}

// the subset of a checkpointed summary that sweep.csv needs
inline SweepEntry sweep_entry_from_json(int k, const nlohmann::json& j) {
    SweepEntry e;
    e.k = k;
    e.stats.seed = j.at("seed").get<std::uint64_t>();
    e.stats.n = j.at("n").get<int>();
    e.stats.trials = j.at("trials").get<int>();
    e.stats.cluster_k = j.at("k").get<int>();
    for (const auto& row : j.at("t_ell"))
        e.stats.t_ell.emplace_back(
            row.at("fraction").get<double>(),
            SeriesStat{row.at("count").get<long>(), row.at("mean").get<double>(),
                       row.at("se").get<double>()});
    e.stats.t_c = {j.at("t_c").at("count").get<long>(), j.at("t_c").at("mean").get<double>(),
                   j.at("t_c").at("se").get<double>()};
    for (const auto& row : j.at("ell_ratios"))
        e.ell_ratios.emplace_back(
            row.at("fraction").get<double>(),
            RatioStat{row.at("ratio").get<double>(), row.at("se").get<double>()});
    e.tc_ratio = {j.at("tc_ratio").at("ratio").get<double>(),
                  j.at("tc_ratio").at("se").get<double>()};
    return e;
}

inline nlohmann::json summary_to_json(const SummaryStats& s) {
    nlohmann::json j;
    j["seed"] = s.seed;
    char hex[24];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(s.graph_hash));
    j["graph_hash"] = hex;
    j["n"] = s.n;
    j["trials"] = s.trials;
    j["k"] = s.cluster_k;
    j["unreached_total"] = s.unreached_total;
    auto& jb = j["buckets"] = nlohmann::json::array();
    for (const auto& [key, b] : s.buckets)
        jb.push_back({{"d", key.first},
                      {"k_prime", key.second},
                      {"count", b.count},
                      {"mean", b.mean},
                      {"se", b.se}});
    auto& jd = j["by_d"] = nlohmann::json::array();
    for (const auto& [d, b] : s.by_d)
        jd.push_back({{"d", d}, {"count", b.count}, {"mean", b.mean}, {"se", b.se}});
    auto& jl = j["t_ell"] = nlohmann::json::array();
    for (const auto& [frac, st] : s.t_ell)
        jl.push_back({{"fraction", frac}, {"count", st.count}, {"mean", st.mean}, {"se", st.se}});
    j["t_c"] = {{"count", s.t_c.count}, {"mean", s.t_c.mean}, {"se", s.t_c.se}};
    return j;
}

// Per-node reception times for every trial, one JSON object per line.
// Trials are deterministic, so the dump replays them after the stats pass.
inline void dump_traces(const Scenario& sc, const fs::path& file) {
    std::ofstream out(file);
    for (long t = 0; t < sc.trials; ++t) {
        const PropagationTrace tr = run_trial(sc, t);
        nlohmann::json j;
        j["trial"] = t;
        j["source"] = tr.source;
        j["cluster"] = tr.cluster;
        j["cluster_arrival"] = tr.cluster_arrival < kInfTime ? tr.cluster_arrival : -1.0;
        auto& rec = j["reception"] = nlohmann::json::array();
        for (double x : tr.reception) rec.push_back(x < kInfTime ? x : -1.0);
        out << j.dump() << "\n";
    }
}

// Monte-Carlo sweep with per-k checkpointing: a k whose outputs already
// exist under a manifest with the same config digest is skipped, so an
// interrupted sweep resumes where it stopped.
inline CommandResult cmd_simulate(const ExperimentConfig& cfg) {
    const AsGraph g = cfg.build_graph();
    const fs::path dir(cfg.output_dir());
    fs::create_directories(dir);

    Scenario base;
    base.graph = &g;
    base.mode = cfg.routing_mode();
    base.bgp = cfg.bgp_model();
    base.sdn = cfg.sdn_model();
    base.source = cfg.source();
    base.trials = cfg.trials();
    base.seed = cfg.seed();
    base.per_node_draws = cfg.per_node_draws();
    base.ell_fractions = cfg.ell_fractions();

    TopologyAnalysis topo;
    ClusterSelection sel;
    sel.k = 0;
    sel.strategy = cfg.cluster_strategy() == "top_betweenness" ? ClusterStrategy::TopBetweenness
                                                               : ClusterStrategy::Random;
    if (sel.strategy == ClusterStrategy::TopBetweenness) {
        topo = analyze_topology(g, cfg.path_samples(), substream_seed(cfg.seed(), 0x90a7),
                                dir.string());
        base.cluster = ClusterPolicy::strategy(sel, &topo.profile);
    } else {
        base.cluster = ClusterPolicy::strategy(sel, nullptr);
    }

    char digest_hex[24];
    std::snprintf(digest_hex, sizeof digest_hex, "%016llx",
                  static_cast<unsigned long long>(cfg.digest()));
    // resume: reuse per-k files written under the same digest
    std::string previous_digest;
    if (fs::exists(dir / "manifest.json")) {
        std::ifstream min(dir / "manifest.json");
        nlohmann::json m = nlohmann::json::parse(min, nullptr, false);
        if (!m.is_discarded() && m.contains("config_digest"))
            previous_digest = m["config_digest"].get<std::string>();
    }
    const bool can_resume = previous_digest == digest_hex;

    CommandResult res;
    res.manifest = base_manifest(cfg, g);

    Scenario s0 = base;
    s0.cluster = ClusterPolicy::none();
    SweepResult sweep;
    sweep.baseline = run_monte_carlo(s0);
    {
        const fs::path f = dir / "buckets_baseline.csv";
        std::ofstream out(f);
        out << "# config_digest=" << digest_hex << "\n";
        write_bucket_csv(sweep.baseline, out);
        res.outputs.push_back(f.string());
    }
    for (int k : cfg.k_values()) {
        char kname[48];
        std::snprintf(kname, sizeof kname, "summary_k%d.json", k);
        const fs::path kfile = dir / kname;
        if (can_resume && fs::exists(kfile)) {
            std::ifstream in(kfile);
            nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
            if (!j.is_discarded()) { // checkpointed: reuse, do not rerun
                sweep.entries.push_back(sweep_entry_from_json(k, j));
                res.outputs.push_back(kfile.string());
                continue;
            }
        }
        Scenario sk = base;
        if (k == 0) {
            sk.cluster = ClusterPolicy::none();
        } else if (sel.strategy == ClusterStrategy::Random && !cfg.reselect_per_trial()) {
            // one frozen random cluster for the whole run
            sk.cluster = ClusterPolicy::fixed_set(
                select_cluster({ClusterStrategy::Random, k}, g.n(), nullptr,
                               substream_seed(cfg.seed(), 0xc1u, static_cast<std::uint64_t>(k))));
        } else {
            sk.cluster.selection.k = k;
        }
        SweepEntry e;
        e.k = k;
        e.stats = run_monte_carlo(sk);
        for (std::size_t i = 0; i < e.stats.t_ell.size(); ++i)
            e.ell_ratios.emplace_back(
                e.stats.t_ell[i].first,
                ratio_of(e.stats.t_ell[i].second, sweep.baseline.t_ell[i].second));
        e.tc_ratio = ratio_of(e.stats.t_c, sweep.baseline.t_c);
        {
            std::snprintf(kname, sizeof kname, "buckets_k%d.csv", k);
            std::ofstream out(dir / kname);
            out << "# config_digest=" << digest_hex << "\n";
            write_bucket_csv(e.stats, out);
            res.outputs.push_back((dir / kname).string());
        }
        if (cfg.dump_traces()) {
            std::snprintf(kname, sizeof kname, "traces_k%d.jsonl", k);
            dump_traces(sk, dir / kname);
            res.outputs.push_back((dir / kname).string());
        }
        {
            std::ofstream out(kfile);
            nlohmann::json j = summary_to_json(e.stats);
            j["config_digest"] = digest_hex;
            auto& jr = j["ell_ratios"] = nlohmann::json::array();
            for (const auto& [frac, r] : e.ell_ratios)
                jr.push_back({{"fraction", frac}, {"ratio", r.ratio}, {"se", r.se}});
            j["tc_ratio"] = {{"ratio", e.tc_ratio.ratio}, {"se", e.tc_ratio.se}};
            out << j.dump(2) << "\n";
            res.outputs.push_back(kfile.string());
        }
        sweep.entries.push_back(std::move(e));
    }
    {
        const fs::path f = dir / "sweep.csv";
        std::ofstream out(f);
        out << "# config_digest=" << digest_hex << "\n";
        write_sweep_csv(sweep, out);
        res.outputs.push_back(f.string());
    }
    // one curve file per ell fraction
    for (std::size_t i = 0; i < cfg.ell_fractions().size(); ++i) {
        char fname[48];
        std::snprintf(fname, sizeof fname, "ell_%g.csv", cfg.ell_fractions()[i]);
        const fs::path f = dir / fname;
        std::ofstream out(f);
        out << "# config_digest=" << digest_hex << "\nk,mean,se,ratio\n";
        char buf[160];
        for (const auto& e : sweep.entries) {
            const auto& st = e.stats.t_ell[i].second;
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", e.k, st.mean, st.se,
                          e.ell_ratios[i].second.ratio);
            out << buf;
        }
        res.outputs.push_back(f.string());
    }
    res.manifest["outputs"] = res.outputs;
    write_manifest(dir, res.manifest);
    return res;
}

inline CommandResult cmd_topo_stats(const ExperimentConfig& cfg, std::ostream& report) {
    const AsGraph g = cfg.build_graph();
    const fs::path dir(cfg.output_dir());
    fs::create_directories(dir);
    const TopologyAnalysis topo =
        analyze_topology(g, cfg.path_samples(), substream_seed(cfg.seed(), 0x90a7), dir.string());
    report << "nodes: " << g.n() << "\n";
    report << "edges: " << g.edge_count() << "\n";
    report << "avg_degree: " << 2.0 * static_cast<double>(g.edge_count()) / g.n() << "\n";
    report << "labeled: " << (g.labeled() ? "yes" : "no") << "\n";
    report << "betweenness_backend: " << topo.backend << "\n";
    report << "path_samples: " << topo.samples_used << "\n";
    report << "mean_path_length: " << topo.path_dist.mean() << "\n";
    CommandResult res;
    const fs::path pld = dir / "path_length_distribution.csv";
    {
        std::ofstream out(pld);
        char buf[96];
        std::snprintf(buf, sizeof buf, "# seed=%llu digest=%016llx\n",
                      static_cast<unsigned long long>(cfg.seed()),
                      static_cast<unsigned long long>(cfg.digest()));
        out << buf;
        topo.path_dist.write_csv(out);
    }
    res.outputs.push_back(pld.string());
    {
        const fs::path edges = dir / "edges.csv";
        std::ofstream out(edges);
        g.write_edge_csv(out);
        res.outputs.push_back(edges.string());
    }
    res.manifest = base_manifest(cfg, g);
    res.manifest["outputs"] = res.outputs;
    write_manifest(dir, res.manifest);
    return res;
}

// ---- presets ---------------------------------------------------------------

inline std::string preset_config(const std::string& preset, const std::string& caida_path) {
    const std::string caida_block =
        "[topology]\nkind = caida\npath = " + caida_path + "\n";
    if (preset == "fig3")
        return "name = fig3\nseed = 301\npath_samples = 200000\n" + caida_block +
               "[cluster]\nstrategy = top_betweenness\n"
               "k = 0,10,20,50,100,200,500,1000,2000,5000,10000\n"
               "[time]\nbgp = exponential\nrate = 1\n";
    if (preset == "fig6")
        return "name = fig6\nseed = 601\ntrials = 500\n"
               "[topology]\nkind = poisson\nn = 1000\np = 0.005\n"
               "[cluster]\nstrategy = random\nk = 0,20,50,100,200\n"
               "[time]\nbgp = exponential\nrate = 1\n"
               "[run]\nell = 0.1,0.5,1.0\n";
    if (preset == "fig7")
        return "name = fig7\nseed = 701\ntrials = 500\n"
               "[topology]\nkind = barabasi_albert\nn = 1000\nm = 5\n"
               "[cluster]\nstrategy = random\nk = 0,50,100,200,500\n"
               "[time]\nbgp = exponential\nrate = 1\n"
               "[run]\nell = 0.1,0.5,1.0\n";
    if (preset == "fig8")
        return "name = fig8\nseed = 801\ntrials = 200\npath_samples = 200000\n" + caida_block +
               "prune = true\nmin_degree = 3\ndrop_stubs = true\n"
               "[cluster]\nstrategy = top_betweenness\nk = 0,10,20,50,100,200\n"
               "[time]\nbgp = exponential\nrate = 1\n"
               "[run]\nell = 0.1,0.5,1.0\n";
    if (preset == "table-bounds")
        return "name = table-bounds\nseed = 911\ntrials = 500\n"
               "[topology]\nkind = poisson\nn = 1000\np = 0.005\n"
               "[cluster]\nstrategy = random\nk = 0,20,50,100,200\n"
               "[time]\nbgp = exponential\nrate = 1\n"
               "[run]\nell = 1.0\n";
    throw ConfigError("unknown preset " + preset +
                      " (have: fig3, fig6, fig7, fig8, table-bounds)");
}

inline bool preset_needs_caida(const std::string& preset) {
    return preset == "fig3" || preset == "fig8";
}

// normalized table rows (d in {2,5} by default) derived from a simulate run
inline void write_table_bounds_csv(const SweepResult& sweep, const std::vector<int>& d_rows,
                                   double mu, std::ostream& out) {
    out << "d,k,lower_norm,sim_norm,upper_norm\n";
    char buf[160];
    for (int d : d_rows) {
        auto base_it = sweep.baseline.by_d.find(d);
        if (base_it == sweep.baseline.by_d.end()) continue;
        for (const auto& e : sweep.entries) {
            if (e.k == 0) continue;
            auto it = e.stats.by_d.find(d);
            if (it == e.stats.by_d.end()) continue;
            const KPrimeDistribution dist =
                KPrimeDistribution::hypergeometric(e.stats.n, e.k);
            const TsdBounds b = tsd_bounds_given_d(d, dist, mu);
            const double base = static_cast<double>(d) * mu;
            std::snprintf(buf, sizeof buf, "%d,%d,%.6f,%.6f,%.6f\n", d, e.k, b.lower / base,
                          it->second.mean / base_it->second.mean, b.upper / base);
            out << buf;
        }
    }
}

// ---- plot script emission ---------------------------------------------------

inline std::vector<std::string> cmd_emit_plots(const std::string& results_dir) {
    const fs::path dir(results_dir);
    if (!fs::exists(dir)) throw Error("results directory does not exist: " + results_dir);
    std::vector<std::string> written;
    auto emit = [&](const std::string& name, const std::string& body) {
        const fs::path f = dir / name;
        std::ofstream out(f);
        out << body;
        written.push_back(f.string());
    };
    const bool has_bounds = fs::exists(dir / "bounds_random.csv");
    const bool has_sweep = fs::exists(dir / "sweep.csv");
    const bool has_converge = fs::exists(dir / "converge.csv");
    if (!has_bounds && !has_sweep && !has_converge)
        throw Error("no recognizable result CSVs in " + results_dir);
    if (has_bounds)
        emit("plot_bounds.py", R"(#!/usr/bin/env python3
"""Normalized T_SD bounds vs cluster size: shaded band per selection model."""
import csv, sys, os.path
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
fig, ax = plt.subplots()
for strat, color in (("random", "0.8"), ("betweenness", "0.5")):
    ks, lo, up = [], [], []
    with open(os.path.join(here, f"bounds_{strat}.csv")) as f:
        for row in csv.DictReader(r for r in f if not r.startswith("#")):
            ks.append(int(row["k"])); lo.append(float(row["lower_norm"])); up.append(float(row["upper_norm"]))
    ax.fill_between(ks, lo, up, color=color, alpha=0.7, label=strat)
ax.set_xscale("symlog", linthresh=1)
ax.set_xlabel("SDN cluster size k")
ax.set_ylabel("E[T_SD|k] / E[T_SD|k=0]")
ax.legend()
fig.savefig(os.path.join(here, "bounds.png"), dpi=150)
print("wrote bounds.png")
)");
    if (has_sweep)
        emit("plot_sweep.py", R"(#!/usr/bin/env python3
"""Normalized partial-convergence times vs cluster size, one panel per ell."""
import csv, os.path
from collections import defaultdict
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
series = defaultdict(list)
with open(os.path.join(here, "sweep.csv")) as f:
    for row in csv.DictReader(r for r in f if not r.startswith("#")):
        series[row["ell"]].append((int(row["k"]), float(row["ratio"])))
panels = sorted(series)
fig, axes = plt.subplots(len(panels), 1, figsize=(6, 3 * len(panels)), squeeze=False)
for ax, ell in zip(axes[:, 0], panels):
    pts = sorted(series[ell])
    ax.plot([k for k, _ in pts], [r for _, r in pts], "s-")
    ax.set_ylabel(f"ell={ell}")
    ax.set_ylim(0, 1.05)
axes[-1][0].set_xlabel("SDN cluster size k")
fig.tight_layout()
fig.savefig(os.path.join(here, "sweep.png"), dpi=150)
print("wrote sweep.png")
)");
    if (has_converge)
        emit("plot_converge.py", R"(#!/usr/bin/env python3
"""Analytic E[T_c] and partial-convergence expectations vs cluster size."""
import csv, os.path
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
rows = []
with open(os.path.join(here, "converge.csv")) as f:
    reader = csv.DictReader(r for r in f if not r.startswith("#"))
    cols = [c for c in reader.fieldnames if c != "k"]
    for row in reader:
        rows.append(row)
fig, ax = plt.subplots()
for c in cols:
    ax.plot([int(r["k"]) for r in rows], [float(r[c]) for r in rows], label=c)
ax.set_xlabel("SDN cluster size k")
ax.set_ylabel("time")
ax.legend()
fig.savefig(os.path.join(here, "converge.png"), dpi=150)
print("wrote converge.png")
)");
    return written;
}

} // namespace sdnbgp

#endif
