#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace ews {

/// Deterministic random source. All randomness in the library flows from a
/// single top-level seed fanned out with derive(); the uniform and normal
/// samplers are written out explicitly so that a given seed produces the same
/// stream on every platform (std::*_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller; one spare value is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection-free modulo is fine here; streams are not adversarial.
        return gen_() % n;
    }

    /// Child generator whose seed depends on this seed and a component tag.
    Rng derive(std::string_view tag) const;

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Mixes a master seed with a component tag (FNV-1a over the tag bytes,
/// then splitmix64 finalization). Used to hand every component its own
/// independent, reproducible stream.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag);

inline Rng make_rng(std::uint64_t master, std::string_view tag) {
    return Rng(derive_seed(master, tag));
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ master;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return splitmix64(h);
}

inline Rng Rng::derive(std::string_view tag) const {
    Rng copy = *this;
    return Rng(derive_seed(copy.next_u64(), tag));
}

}  // namespace ews
