#pragma once

#include <cstdint>

namespace flagalg {

/// Counter-based generator: the k-th output is splitmix64(seed, k), so any
/// stream position can be recomputed without replaying the stream.
class CounterRng
{
    public:
        explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

        static std::uint64_t mix(std::uint64_t z)
        {
            z += 0x9e3779b97f4a7c15ULL;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }

        /// Output at an explicit counter position.
        std::uint64_t at(std::uint64_t counter) const { return mix(mix(seed_ ^ mix(stream_)) + counter * 0x9e3779b97f4a7c15ULL); }

        std::uint64_t next() { return at(counter_++); }

        /// Uniform in [0, 1) with 53 random bits.
        double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

        /// Uniform integer in [0, n), n > 0, by rejection.
        std::uint64_t below(std::uint64_t n)
        {
            std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
            while (true) {
                std::uint64_t x = next();
                if (x < limit)
                    return x % n;
            }
        }

        std::uint64_t seed() const { return seed_; }
        std::uint64_t counter() const { return counter_; }

    private:
        std::uint64_t seed_, stream_, counter_ = 0;
};

} // namespace flagalg
