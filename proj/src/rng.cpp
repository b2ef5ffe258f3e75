#include "infobound/rng.hpp"

#include <cmath>
#include <numbers>

namespace infobound {

namespace {

// SplitMix64 finalizer.
uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

uint64_t mix_key(uint64_t seed, uint64_t stream, uint64_t substream) {
    uint64_t k = mix64(seed);
    k = mix64(k ^ stream);
    k = mix64(k ^ substream);
    return k;
}

uint64_t mix_key(uint64_t seed, uint64_t stream, uint64_t substream, uint64_t lane) {
    return mix64(mix_key(seed, stream, substream) ^ lane);
}

uint64_t CounterRng::next_u64() {
    return mix64(key_ + counter_++ * 0x9e3779b97f4a7c15ULL);
}

double CounterRng::uniform01() {
    // 53-bit mantissa, shifted into (0, 1].
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

uint64_t CounterRng::uniform_below(uint64_t n) {
    return static_cast<uint64_t>(uniform01() * static_cast<double>(n)) % n;
}

double CounterRng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

}  // namespace infobound
