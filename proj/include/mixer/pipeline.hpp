#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixer/compressor.hpp"
#include "mixer/image.hpp"

namespace mixer {

enum class Branches { Direct, Mixed, Both };

// "direct", "mixed", or "both"; parsing is case-sensitive and throws
// InvalidArgumentError on anything else.
std::string branches_to_string(Branches branches);
Branches branches_from_string(const std::string& text);

struct PipelineConfig {
    int patch_side = 3;
    std::vector<int> embedding_sizes;
    double gamma_direct = 1.0;
    double gamma_mixed = 1.0;
    Branches branches = Branches::Both;

    // Throws InvalidArgumentError unless embedding sizes are non-empty,
    // positive, and strictly increasing, the patch side is odd >= 3, and
    // both regularizers are positive and finite.
    void validate() const;

    // 4 * sum(omega + 1) over embedding_sizes, independent of branches.
    std::int64_t descriptor_length() const;
};

// Full descriptor of one image under the given configuration.
Descriptor describe(const TextureImage& image, const PipelineConfig& config);

// Per-channel embeddings of the given patch matrices, using each channel's
// slice of the shared pseudorandom tensor for this embedding size. A
// degenerate pseudorandom sequence is reported with the offending size.
std::vector<EmbeddingMatrix> encode_channels(const std::vector<PatchMatrix>& patches, int omega);

// One single-size descriptor per embedding size, ascending; describe() is
// exactly fuse() over this list.
std::vector<Descriptor> describe_per_omega(const TextureImage& image,
                                           const PipelineConfig& config);

} // namespace mixer
