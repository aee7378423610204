#ifndef SDNBGP_TIME_MODEL_HPP
#define SDNBGP_TIME_MODEL_HPP

#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "sdnbgp/errors.hpp"
#include "sdnbgp/random.hpp"

namespace sdnbgp {

// The per-hop update delay model: one AS receives a route update and
// forwards it to one neighbor after a random time drawn from this model.
struct Exponential {
    double rate; // > 0, mean = 1/rate
};
struct Uniform {
    double lo; // >= 0
    double hi; // > lo
};
struct Deterministic {
    double value; // >= 0
};
struct Empirical {
    std::vector<double> samples; // nonempty, all >= 0
};

class TimeModel {
public:
    using Variant = std::variant<Exponential, Uniform, Deterministic, Empirical>;

    TimeModel() : v_(Deterministic{0.0}) {}
    TimeModel(Variant v) : v_(std::move(v)) { validate(); }

    static TimeModel exponential(double rate) { return TimeModel(Exponential{rate}); }
    static TimeModel uniform(double lo, double hi) { return TimeModel(Uniform{lo, hi}); }
    static TimeModel deterministic(double value) { return TimeModel(Deterministic{value}); }
    static TimeModel empirical(std::vector<double> samples) {
        return TimeModel(Empirical{std::move(samples)});
    }

    const Variant& variant() const { return v_; }

    double mean() const {
        if (auto* e = std::get_if<Exponential>(&v_)) return 1.0 / e->rate;
        if (auto* u = std::get_if<Uniform>(&v_)) return 0.5 * (u->lo + u->hi);
        if (auto* d = std::get_if<Deterministic>(&v_)) return d->value;
        const auto& s = std::get<Empirical>(v_).samples;
        return std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    }

    // One iid draw. Deterministic given the stream state; the Empirical
    // variant resamples stored values uniformly with replacement.
    double sample(Rng& rng) const {
        if (auto* e = std::get_if<Exponential>(&v_)) return rng.exponential(e->rate);
        if (auto* u = std::get_if<Uniform>(&v_)) return u->lo + (u->hi - u->lo) * rng.uniform01();
        if (auto* d = std::get_if<Deterministic>(&v_)) return d->value;
        const auto& s = std::get<Empirical>(v_).samples;
        return s[static_cast<std::size_t>(rng.below(s.size()))];
    }

    std::string to_json() const {
        char buf[512];
        if (auto* e = std::get_if<Exponential>(&v_)) {
            std::snprintf(buf, sizeof buf, "{\"variant\":\"exponential\",\"rate\":%.17g}", e->rate);
            return buf;
        }
        if (auto* u = std::get_if<Uniform>(&v_)) {
            std::snprintf(buf, sizeof buf, "{\"variant\":\"uniform\",\"lo\":%.17g,\"hi\":%.17g}",
                          u->lo, u->hi);
            return buf;
        }
        if (auto* d = std::get_if<Deterministic>(&v_)) {
            std::snprintf(buf, sizeof buf, "{\"variant\":\"deterministic\",\"value\":%.17g}",
                          d->value);
            return buf;
        }
        const auto& s = std::get<Empirical>(v_).samples;
        std::string out = "{\"variant\":\"empirical\",\"samples\":[";
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%s%.17g", i ? "," : "", s[i]);
            out += buf;
        }
        out += "]}";
        return out;
    }

private:
    void validate() const {
        if (auto* e = std::get_if<Exponential>(&v_)) {
            if (!(e->rate > 0.0)) throw DomainError("exponential rate must be > 0");
        } else if (auto* u = std::get_if<Uniform>(&v_)) {
            if (!(u->lo >= 0.0) || !(u->hi > u->lo))
                throw DomainError("uniform bounds must satisfy 0 <= lo < hi");
        } else if (auto* d = std::get_if<Deterministic>(&v_)) {
            if (!(d->value >= 0.0)) throw DomainError("deterministic value must be >= 0");
        } else {
            const auto& s = std::get<Empirical>(v_).samples;
            if (s.empty()) throw DomainError("empirical model needs at least one sample");
            double sum = 0.0;
            for (double x : s) {
                if (!(x >= 0.0)) throw DomainError("empirical samples must be >= 0");
                sum += x;
            }
            if (!(sum > 0.0)) throw DomainError("empirical model mean must be > 0");
        }
    }

    Variant v_;
};

// Intra-cluster dissemination latency; the controller case is
// Deterministic(0), which is the default.
struct SdnLatencyModel {
    TimeModel model = TimeModel::deterministic(0.0);

    double mean() const { return model.mean(); }
    double sample(Rng& rng) const { return model.sample(rng); }
};

// One measured end-to-end update: delay t_sd over a path of d AS hops.
struct PathObservation {
    double t_sd; // >= 0
    int d;       // >= 1
};

// Estimator from measured data: mean per-hop time = sum(t_sd) / sum(d),
// returned as the exponential model with that mean.
inline TimeModel fit_exponential(const std::vector<PathObservation>& obs) {
    if (obs.empty()) throw EmptyObservations();
    double sum_t = 0.0;
    long sum_d = 0;
    for (const auto& o : obs) {
        if (o.d < 1) throw DomainError("path length must be >= 1");
        if (!(o.t_sd >= 0.0)) throw DomainError("observed delay must be >= 0");
        sum_t += o.t_sd;
        sum_d += o.d;
    }
    if (!(sum_t > 0.0)) throw DomainError("all observed delays are zero; rate undefined");
    const double mean_hop = sum_t / static_cast<double>(sum_d);
    return TimeModel::exponential(1.0 / mean_hop);
}

// CSV with header "t_sd,d"; '#' lines are ignored.
inline std::vector<PathObservation> read_observations_csv(std::istream& in) {
    std::vector<PathObservation> out;
    std::string line;
    bool header_seen = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "t_sd,d")
                throw ParseError("expected header 't_sd,d', got '" + line + "'");
            header_seen = true;
            continue;
        }
        std::istringstream ls(line);
        std::string a, b;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b))
            throw ParseError("line " + std::to_string(lineno) + ": expected 't_sd,d'");
        try {
            out.push_back({std::stod(a), std::stoi(b)});
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad number");
        }
    }
    if (!header_seen) throw ParseError("missing 't_sd,d' header");
    return out;
}

inline std::vector<PathObservation> read_observations_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_observations_csv(in);
}

} // namespace sdnbgp

#endif
