#include "caj/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace caj {

namespace {

// Box-Muller over mt19937_64 output. The draw sequence is fully specified,
// so a seed pins the generated data bit-exactly on a given platform.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

    double uniform_open() {  // (0, 1]
        const std::uint64_t bits = gen_() >> 11;  // 53 random bits
        return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
    }

    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
        const double angle = 2.0 * std::numbers::pi * uniform_open();
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace

void SynthConfig::validate() const {
    if (num_identities < 1 || samples_per_identity < 1 || num_cameras < 1 ||
        feature_dim < 1)
        throw std::invalid_argument("synth: all counts must be >= 1");
    if (identity_spread < 0.0 || camera_bias < 0.0 || noise_sigma < 0.0)
        throw std::invalid_argument("synth: spreads must be nonnegative");
}

SynthData generate(const SynthConfig& config) {
    config.validate();
    GaussianRng rng(config.seed);

    Matrix identity_means(config.num_identities, config.feature_dim);
    for (Index i = 0; i < identity_means.rows(); ++i)
        for (Index d = 0; d < identity_means.cols(); ++d)
            identity_means(i, d) = config.identity_spread * rng.gaussian();

    Matrix camera_offsets(config.num_cameras, config.feature_dim);
    for (Index c = 0; c < camera_offsets.rows(); ++c)
        for (Index d = 0; d < camera_offsets.cols(); ++d)
            camera_offsets(c, d) = config.camera_bias * rng.gaussian();

    const int n = config.num_identities * config.samples_per_identity;
    SynthData out;
    out.features.resize(n, config.feature_dim);
    out.meta.camera.resize(n);
    out.meta.identity.resize(n);

    int row = 0;
    for (int id = 0; id < config.num_identities; ++id) {
        for (int s = 0; s < config.samples_per_identity; ++s, ++row) {
            const int cam = s % config.num_cameras;  // round-robin within identity
            out.meta.camera[row] = cam;
            out.meta.identity[row] = id;
            for (Index d = 0; d < config.feature_dim; ++d) {
                out.features(row, d) = identity_means(id, d) + camera_offsets(cam, d) +
                                       config.noise_sigma * rng.gaussian();
            }
        }
    }
    return out;
}

}  // namespace caj
