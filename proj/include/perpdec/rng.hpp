// Splittable counter-based RNG. Every randomized operation takes an explicit
// seed and derives child seeds by hashing, so runs are reproducible and
// parallel branches stay independent.
#pragma once

#include <cstdint>

namespace perpdec {

using u64 = std::uint64_t;

inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
  public:
    explicit Rng(u64 seed) : state_(splitmix64(seed ^ 0x5bf03635a1ce9075ULL)) {}

    u64 next() {
        state_ = splitmix64(state_ + 0x9e3779b97f4a7c15ULL);
        return state_;
    }

    // uniform in [0, n)
    u64 below(u64 n) { return n == 0 ? 0 : next() % n; }

    // independent child stream
    Rng split(u64 tag) const { return Rng(splitmix64(state_ ^ (tag * 0xd1342543de82ef95ULL + 1))); }

  private:
    u64 state_;
};

}  // namespace perpdec
