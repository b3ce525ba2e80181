#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mixer/image.hpp"

namespace mixer {

// Deterministic listing of a root/<class>/<image> directory tree. Classes
// and samples are sorted by byte order, class indices are dense 0..K-1.
struct CorpusManifest {
    std::vector<std::string> classes;
    std::vector<std::pair<std::filesystem::path, int>> samples;
    std::vector<std::int64_t> class_counts;
};

// Decodes a PNG, PGM, or PPM (binary) file into [0,1] intensities.
// Grayscale gives one channel, RGB three.
TextureImage load_image(const std::filesystem::path& path);

CorpusManifest scan_dataset(const std::filesystem::path& root);

} // namespace mixer
