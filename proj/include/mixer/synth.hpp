#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mixer {

enum class TextureKind { StripesVertical, StripesHorizontal, Checkerboard, DiagonalRamp };

struct SynthClass {
    std::string name;
    TextureKind kind = TextureKind::StripesVertical;
    int period = 4;       // full light+dark cycle in pixels, >= 2
    double noise = 0.1;   // amplitude of the pseudorandom perturbation, in [0, 0.5]
};

struct SynthSpec {
    std::vector<SynthClass> classes;
    int samples_per_class = 20;
    int height = 32;
    int width = 32;
    std::int64_t seed = 0;

    void validate() const;
};

// Four visually distinct classes, 20 samples each, 32x32, noise 0.1.
SynthSpec default_synth_spec();

// Writes spec.classes.size() directories of binary PGM files under out_root.
// Byte-identical across runs for a fixed spec; samples within a class differ
// by phase and by their pseudorandom noise stream.
void generate_corpus(const SynthSpec& spec, const std::filesystem::path& out_root);

} // namespace mixer
