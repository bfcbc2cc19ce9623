#ifndef RISPACES_RNG_HPP
#define RISPACES_RNG_HPP

#include <cstdint>

#include "rispaces/rational.hpp"

namespace rispaces {

// Deterministic splitmix64 generator. Seeds are printed in report headers so
// randomized rows can be reproduced exactly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    // random small rational p/q with 1 <= p <= pmax, 1 <= q <= qmax
    Rat rat(int pmax, int qmax) {
        int p = static_cast<int>(below(static_cast<std::uint64_t>(pmax))) + 1;
        int q = static_cast<int>(below(static_cast<std::uint64_t>(qmax))) + 1;
        return Rat(p, q);
    }

private:
    std::uint64_t state_;
};

} // namespace rispaces

#endif
