#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "infobound/tensor.hpp"

namespace infobound {

struct Dataset {
    Tensor features;          // n x feature_dim
    std::vector<int> labels;  // class indices

    std::size_t size() const { return labels.size(); }
};

enum class Generator { gaussian_blobs, two_moons_like, parity_bits, tiny_grid_images };

std::string to_string(Generator g);
Generator generator_from_string(const std::string& s);

// Deterministic: (spec, seed) regenerates identical data.
struct DatasetSpec {
    Generator generator = Generator::gaussian_blobs;
    std::size_t n = 0;
    std::size_t feature_dim = 2;
    std::size_t num_classes = 2;
    double noise_level = 0.1;
    std::uint64_t seed = 0;
};

Dataset gen_dataset(const DatasetSpec& spec);

// Same distribution, disjoint random stream (held-out splits).
Dataset gen_dataset_disjoint(const DatasetSpec& spec, std::uint64_t stream_tag);

}  // namespace infobound
