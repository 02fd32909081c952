#pragma once

#include <cstddef>
#include <cstdint>

namespace iotrust {

namespace detail {

inline std::uint64_t splitmix_scramble(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace detail

// Derives an independent stream seed from a base seed and up to two stream
// coordinates (e.g. device id, provider id).
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = base + 0x9e3779b97f4a7c15ull * (a + 1);
    s = detail::splitmix_scramble(s);
    s += 0x9e3779b97f4a7c15ull * (b + 1);
    return detail::splitmix_scramble(s);
}

// splitmix64 generator. Hand-rolled so draws are bit-stable across standard
// library implementations, keeping traces reproducible from the seed alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return detail::splitmix_scramble(state_);
    }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    bool bernoulli(double p) {
        return uniform() < p;
    }

    // uniform integer in [0, n), n > 0
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

}  // namespace iotrust
