#ifndef SDNBGP_RANDOM_HPP
#define SDNBGP_RANDOM_HPP

#include <cstdint>
#include <cmath>
#include <vector>

namespace sdnbgp {

// splitmix64 (Steele, Lea, Flood 2014). Used for seeding and for
// counter-based keyed draws; one full avalanche per call.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t x) {
    std::uint64_t s = x;
    return splitmix64(s);
}

// xoshiro256** 1.0 (Blackman & Vigna). Portable 64-bit generator; the
// project-wide PRNG. Seeded through splitmix64 so any 64-bit seed works.
class Xoshiro256StarStar {
public:
    explicit Xoshiro256StarStar(std::uint64_t seed = 0) { reseed(seed); }

    void reseed(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4]{};
};

// A seeded random stream with the draw primitives the library needs.
// std::uniform_real_distribution and friends are not bit-reproducible
// across standard library implementations, so everything is hand-rolled
// on top of the raw 64-bit output.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_.next(); }

    // uniform in [0,1), 53-bit resolution
    double uniform01() {
        return static_cast<double>(gen_.next() >> 11) * 0x1.0p-53;
    }

    // uniform in [0,1], never exactly 0 (safe for log)
    double uniform01_open() {
        return (static_cast<double>(gen_.next() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential(double rate) {
        return -std::log(uniform01_open()) / rate;
    }

    // uniform integer in [0, n) by rejection; unbiased
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            std::uint64_t r = gen_.next();
            if (r >= threshold) return r % n;
        }
    }

    // uniform k-subset of {0..n-1} (partial Fisher-Yates)
    std::vector<int> sample_without_replacement(int n, int k) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        std::vector<int> out;
        out.reserve(k);
        for (int i = 0; i < k; ++i) {
            const int j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }

    // in-place uniform permutation
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    Xoshiro256StarStar gen_;
};

// Derive an independent substream seed from (master, index...). Keys are
// folded through splitmix64 so nearby indices give uncorrelated streams.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = mix64(master ^ 0x2545f4914f6cdd1dULL);
    h = mix64(h ^ a);
    h = mix64(h ^ b);
    h = mix64(h ^ c);
    return h;
}

} // namespace sdnbgp

#endif
