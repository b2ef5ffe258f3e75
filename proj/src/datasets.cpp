#include "infobound/datasets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "infobound/errors.hpp"
#include "infobound/rng.hpp"

namespace infobound {

std::string to_string(Generator g) {
    switch (g) {
        case Generator::gaussian_blobs: return "gaussian_blobs";
        case Generator::two_moons_like: return "two_moons_like";
        case Generator::parity_bits: return "parity_bits";
        case Generator::tiny_grid_images: return "tiny_grid_images";
    }
    return "?";
}

Generator generator_from_string(const std::string& s) {
    if (s == "gaussian_blobs") return Generator::gaussian_blobs;
    if (s == "two_moons_like") return Generator::two_moons_like;
    if (s == "parity_bits") return Generator::parity_bits;
    if (s == "tiny_grid_images") return Generator::tiny_grid_images;
    throw ConfigError("unknown dataset generator: " + s);
}

namespace {

// Class centroids on coordinate directions, alternating sign so blobs spread
// out even when num_classes > feature_dim.
void blob_centroid(std::size_t cls, std::size_t dim, std::vector<double>& out) {
    out.assign(dim, 0.0);
    std::size_t axis = cls % dim;
    double sign = (cls / dim) % 2 == 0 ? 1.0 : -1.0;
    out[axis] = 2.0 * sign * (1.0 + static_cast<double>(cls / (2 * dim)));
}

Dataset gen_impl(const DatasetSpec& spec, std::uint64_t stream_tag) {
    if (spec.n < 1) throw ConfigError("gen_dataset: n must be >= 1");
    if (spec.feature_dim < 1) throw ConfigError("gen_dataset: feature_dim must be >= 1");
    if (spec.num_classes < 2) throw ConfigError("gen_dataset: num_classes must be >= 2");

    CounterRng rng(spec.seed, stream_tag, static_cast<std::uint64_t>(spec.generator));
    std::vector<double> x(spec.n * spec.feature_dim, 0.0);
    std::vector<int> y(spec.n, 0);

    switch (spec.generator) {
        case Generator::gaussian_blobs: {
            std::vector<double> c;
            for (std::size_t e = 0; e < spec.n; ++e) {
                std::size_t cls = rng.uniform_below(spec.num_classes);
                y[e] = static_cast<int>(cls);
                blob_centroid(cls, spec.feature_dim, c);
                for (std::size_t d = 0; d < spec.feature_dim; ++d)
                    x[e * spec.feature_dim + d] = c[d] + spec.noise_level * rng.gaussian();
            }
            break;
        }
        case Generator::two_moons_like: {
            // Two interleaved half circles in the first two coordinates;
            // remaining coordinates carry scaled noise only.
            if (spec.feature_dim < 2) throw ConfigError("two_moons_like: feature_dim must be >= 2");
            for (std::size_t e = 0; e < spec.n; ++e) {
                std::size_t cls = rng.uniform_below(2);
                y[e] = static_cast<int>(cls);
                double theta = rng.uniform01() * std::numbers::pi;
                double cx = cls == 0 ? std::cos(theta) : 1.0 - std::cos(theta);
                double cy = cls == 0 ? std::sin(theta) : 0.5 - std::sin(theta);
                x[e * spec.feature_dim + 0] = cx + spec.noise_level * rng.gaussian();
                x[e * spec.feature_dim + 1] = cy + spec.noise_level * rng.gaussian();
                for (std::size_t d = 2; d < spec.feature_dim; ++d)
                    x[e * spec.feature_dim + d] = spec.noise_level * rng.gaussian();
            }
            break;
        }
        case Generator::parity_bits: {
            for (std::size_t e = 0; e < spec.n; ++e) {
                int parity = 0;
                for (std::size_t d = 0; d < spec.feature_dim; ++d) {
                    int bit = static_cast<int>(rng.uniform_below(2));
                    parity ^= bit;
                    x[e * spec.feature_dim + d] =
                        static_cast<double>(bit) + spec.noise_level * rng.gaussian();
                }
                y[e] = parity;
            }
            break;
        }
        case Generator::tiny_grid_images: {
            // Square grid; class = stripe orientation (horizontal bands for
            // even classes, vertical for odd), stripe index cycles.
            std::size_t side = 1;
            while ((side + 1) * (side + 1) <= spec.feature_dim) ++side;
            if (side * side != spec.feature_dim)
                throw ConfigError("tiny_grid_images: feature_dim must be a perfect square");
            if (side < 2) throw ConfigError("tiny_grid_images: grid must be at least 2x2");
            for (std::size_t e = 0; e < spec.n; ++e) {
                std::size_t cls = rng.uniform_below(spec.num_classes);
                y[e] = static_cast<int>(cls);
                bool horizontal = cls % 2 == 0;
                std::size_t stripe = (cls / 2) % side;
                for (std::size_t r = 0; r < side; ++r)
                    for (std::size_t c = 0; c < side; ++c) {
                        double v = (horizontal ? r == stripe : c == stripe) ? 1.0 : 0.0;
                        x[e * spec.feature_dim + r * side + c] =
                            v + spec.noise_level * rng.gaussian();
                    }
            }
            break;
        }
    }
    return Dataset{Tensor({spec.n, spec.feature_dim}, std::move(x)), std::move(y)};
}

}  // namespace

Dataset gen_dataset(const DatasetSpec& spec) { return gen_impl(spec, streams::kData); }

Dataset gen_dataset_disjoint(const DatasetSpec& spec, std::uint64_t stream_tag) {
    return gen_impl(spec, stream_tag);
}

}  // namespace infobound
