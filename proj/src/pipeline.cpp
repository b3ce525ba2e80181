#include "mixer/pipeline.hpp"

#include <cmath>
#include <string>

#include "mixer/errors.hpp"
#include "mixer/lcg.hpp"
#include "mixer/patches.hpp"
#include "mixer/projector.hpp"

namespace mixer {

std::string branches_to_string(Branches branches) {
    switch (branches) {
    case Branches::Direct: return "direct";
    case Branches::Mixed: return "mixed";
    case Branches::Both: return "both";
    }
    throw InvalidArgumentError("unknown branch selection");
}

Branches branches_from_string(const std::string& text) {
    if (text == "direct") return Branches::Direct;
    if (text == "mixed") return Branches::Mixed;
    if (text == "both") return Branches::Both;
    throw InvalidArgumentError("branches must be one of direct, mixed, both; got '" + text + "'");
}

void PipelineConfig::validate() const {
    if (embedding_sizes.empty()) {
        throw InvalidArgumentError("config: at least one embedding size is required");
    }
    int previous = 0;
    for (const int size : embedding_sizes) {
        if (size < 1) {
            throw InvalidArgumentError("config: embedding sizes must be positive, got " +
                                       std::to_string(size));
        }
        if (size <= previous) {
            throw InvalidArgumentError("config: embedding sizes must be strictly increasing");
        }
        previous = size;
    }
    if (patch_side < 3 || patch_side % 2 == 0) {
        throw InvalidArgumentError("config: patch side must be an odd integer >= 3, got " +
                                   std::to_string(patch_side));
    }
    if (!(gamma_direct > 0.0) || !std::isfinite(gamma_direct)) {
        throw InvalidArgumentError("config: direct regularization must be positive and finite");
    }
    if (!(gamma_mixed > 0.0) || !std::isfinite(gamma_mixed)) {
        throw InvalidArgumentError("config: mixed regularization must be positive and finite");
    }
}

std::int64_t PipelineConfig::descriptor_length() const {
    std::int64_t total = 0;
    for (const int size : embedding_sizes) total += size + 1;
    return 4 * total;
}

namespace {

void check_image(const TextureImage& image) {
    if (image.channels.empty()) {
        throw InvalidArgumentError("describe: image has no channels");
    }
    const Eigen::Index rows = image.channels.front().rows();
    const Eigen::Index cols = image.channels.front().cols();
    for (const auto& channel : image.channels) {
        if (channel.rows() != rows || channel.cols() != cols) {
            throw InvalidArgumentError("describe: image channels differ in shape");
        }
    }
    if (rows * cols < 2) {
        throw InvalidArgumentError("describe: image needs at least 2 pixels");
    }
}

} // namespace

std::vector<EmbeddingMatrix> encode_channels(const std::vector<PatchMatrix>& patches, int omega) {
    if (patches.empty()) {
        throw InvalidArgumentError("encode_channels: no patch matrices given");
    }
    const int channels = static_cast<int>(patches.size());
    const auto patch_len = static_cast<int>(patches.front().data.rows());

    LcgTensor psi;
    try {
        psi = standardized_tensor({channels, omega, patch_len + 1});
    } catch (const DegenerateSequenceError& error) {
        throw DegenerateSequenceError("embedding size " + std::to_string(omega) + ": " +
                                      error.what());
    }

    std::vector<EmbeddingMatrix> embeddings;
    embeddings.reserve(patches.size());
    for (int k = 0; k < channels; ++k) {
        Eigen::MatrixXd projector(omega, patch_len + 1);
        for (int i = 0; i < omega; ++i) {
            const std::int64_t base =
                (static_cast<std::int64_t>(k) * omega + i) * (patch_len + 1);
            for (int j = 0; j <= patch_len; ++j) {
                projector(i, j) = psi.values[static_cast<std::size_t>(base + j)];
            }
        }
        embeddings.push_back(encode(patches[static_cast<std::size_t>(k)], projector));
    }
    return embeddings;
}

std::vector<Descriptor> describe_per_omega(const TextureImage& image,
                                           const PipelineConfig& config) {
    config.validate();
    check_image(image);

    const int channels = image.channel_count();

    std::vector<PatchMatrix> patches;
    patches.reserve(static_cast<std::size_t>(channels));
    for (int k = 0; k < channels; ++k) {
        patches.push_back(extract_patch_matrix(image.channels[static_cast<std::size_t>(k)],
                                               config.patch_side));
    }

    std::vector<Descriptor> parts;
    parts.reserve(config.embedding_sizes.size());
    for (const int omega : config.embedding_sizes) {
        const std::vector<EmbeddingMatrix> embeddings = encode_channels(patches, omega);

        std::vector<DecoderWeights> direct;
        std::vector<DecoderWeights> mixed;
        if (config.branches != Branches::Mixed) {
            direct = direct_branch(patches, embeddings, config.gamma_direct);
        }
        if (config.branches != Branches::Direct) {
            mixed = mixed_branch(patches, embeddings, config.gamma_mixed);
        }
        parts.push_back(assemble_omega(direct, mixed));
    }
    return parts;
}

Descriptor describe(const TextureImage& image, const PipelineConfig& config) {
    return fuse(describe_per_omega(image, config));
}

} // namespace mixer
