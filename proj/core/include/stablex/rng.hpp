#pragma once

#include <cstdint>
#include <random>

namespace stablex {

/// Seeded stream with a draw counter. Identical seeds reproduce identical
/// streams bit-exactly; child streams are derived by mixing the seed with the
/// child index, so parallel workers can split deterministically.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), eng_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

    std::uint64_t next_u64() {
        ++count_;
        return eng_();
    }

    /// Uniform on (0,1); never returns 0 or 1.
    double uniform01() {
        const std::uint64_t x = next_u64();
        return (static_cast<double>(x >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    RngStream child(std::uint64_t index) const {
        return RngStream(mix(seed_ + 0x632be59bd9b4e019ull * (index + 1)));
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t count() const { return count_; }

  private:
    static std::uint64_t mix(std::uint64_t z) {  // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t count_ = 0;
    std::mt19937_64 eng_;
};

}  // namespace stablex
