#pragma once

#include <cstdint>

namespace infobound {

// Counter-based splittable generator. Streams are keyed by
// (seed, stream, substream); draws within a stream advance a local counter,
// so every stream is reproducible in isolation and independent runs can
// consume streams in any order.
uint64_t mix_key(uint64_t seed, uint64_t stream, uint64_t substream);
uint64_t mix_key(uint64_t seed, uint64_t stream, uint64_t substream, uint64_t lane);

class CounterRng {
public:
    explicit CounterRng(uint64_t key) : key_(key) {}
    CounterRng(uint64_t seed, uint64_t stream, uint64_t substream)
        : key_(mix_key(seed, stream, substream)) {}

    uint64_t next_u64();

    // Uniform on (0, 1]; never returns 0 so log() is safe.
    double uniform01();

    // Uniform integer in [0, n). n must be positive.
    uint64_t uniform_below(uint64_t n);

    // Standard normal via Box-Muller (pairs cached).
    double gaussian();

private:
    uint64_t key_;
    uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Well-known stream tags used to derive sub-seeds across the project.
namespace streams {
inline constexpr uint64_t kInit = 0x494e4954;        // weight initialization
inline constexpr uint64_t kBatch = 0x42415443;       // mini-batch index sampling
inline constexpr uint64_t kNoise = 0x4e4f4953;       // update noise
inline constexpr uint64_t kData = 0x44415441;        // dataset generation
inline constexpr uint64_t kTestData = 0x54455354;    // held-out set generation
inline constexpr uint64_t kReplica = 0x5245504c;     // per-replication seeds
inline constexpr uint64_t kReplace = 0x52504c43;     // replace-one draws
inline constexpr uint64_t kWorld = 0x574f524c;       // tiny-world corpus
}  // namespace streams

}  // namespace infobound
