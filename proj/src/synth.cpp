#include "mixer/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "mixer/errors.hpp"
#include "mixer/lcg.hpp"

namespace mixer {

void SynthSpec::validate() const {
    if (classes.empty()) {
        throw InvalidArgumentError("corpus spec needs at least one class");
    }
    if (samples_per_class < 3) {
        throw InvalidArgumentError("samples per class must be >= 3, got " +
                                   std::to_string(samples_per_class));
    }
    if (height < 1 || width < 1) {
        throw InvalidArgumentError("image size must be positive");
    }
    if (seed < 0) {
        throw InvalidArgumentError("seed must be >= 0, got " + std::to_string(seed));
    }
    std::set<std::string> seen;
    for (const auto& cls : classes) {
        if (cls.name.empty() || cls.name.find('/') != std::string::npos) {
            throw InvalidArgumentError("class name must be a nonempty directory name");
        }
        if (!seen.insert(cls.name).second) {
            throw InvalidArgumentError("duplicate class name '" + cls.name + "'");
        }
        if (cls.period < 2) {
            throw InvalidArgumentError("class '" + cls.name + "': period must be >= 2");
        }
        if (!(cls.noise >= 0.0 && cls.noise <= 0.5)) {
            throw InvalidArgumentError("class '" + cls.name +
                                       "': noise amplitude must lie in [0, 0.5]");
        }
    }
}

SynthSpec default_synth_spec() {
    SynthSpec spec;
    spec.classes = {
        {"stripes_v", TextureKind::StripesVertical, 4, 0.1},
        {"stripes_h", TextureKind::StripesHorizontal, 4, 0.1},
        {"checker", TextureKind::Checkerboard, 4, 0.1},
        {"gradient", TextureKind::DiagonalRamp, 4, 0.1},
    };
    return spec;
}

namespace {

constexpr int kBright = 200;
constexpr int kDark = 55;

// Integer-only base pattern; phase shifts the pattern per sample.
int base_value(const SynthClass& cls, int r, int c, int phase, int height, int width) {
    switch (cls.kind) {
    case TextureKind::StripesVertical:
        return ((c + phase) % cls.period) * 2 < cls.period ? kBright : kDark;
    case TextureKind::StripesHorizontal:
        return ((r + phase) % cls.period) * 2 < cls.period ? kBright : kDark;
    case TextureKind::Checkerboard: {
        const int cell = std::max(1, cls.period / 2);
        return ((r + phase) / cell + (c + phase) / cell) % 2 == 0 ? kBright : kDark;
    }
    case TextureKind::DiagonalRamp: {
        const int span = height + width - 1;
        if (span < 2) return 128;
        const int t = (r + c + phase) % span;
        // rounded 255 * t / (span - 1), kept in integers
        return static_cast<int>((510LL * t + (span - 1)) / (2LL * (span - 1)));
    }
    }
    throw InvalidArgumentError("unknown texture kind");
}

void write_pgm(const std::filesystem::path& path, const std::vector<unsigned char>& pixels,
               int height, int width) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write image file: " + path.string());
    }
    out << "P5\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
    if (!out.good()) {
        throw DataError("cannot write image file: " + path.string());
    }
}

} // namespace

void generate_corpus(const SynthSpec& spec, const std::filesystem::path& out_root) {
    spec.validate();
    std::error_code ec;
    std::filesystem::create_directories(out_root, ec);
    if (ec) {
        throw DataError("cannot create corpus directory: " + out_root.string());
    }

    const std::int64_t pixels_per_image =
        static_cast<std::int64_t>(spec.height) * spec.width;
    std::vector<unsigned char> pixels(static_cast<std::size_t>(pixels_per_image));

    for (std::size_t class_index = 0; class_index < spec.classes.size(); ++class_index) {
        const SynthClass& cls = spec.classes[class_index];
        const std::filesystem::path class_dir = out_root / cls.name;
        std::filesystem::create_directories(class_dir, ec);
        if (ec) {
            throw DataError("cannot create class directory: " + class_dir.string());
        }

        for (int s = 0; s < spec.samples_per_class; ++s) {
            const std::int64_t global_index =
                static_cast<std::int64_t>(class_index) * spec.samples_per_class + s;
            // Distinct sequence length per image gives each image its own
            // noise stream; the first H*W standardized values are used.
            const std::int64_t noise_length = pixels_per_image + 2 + spec.seed + global_index;
            const LcgTensor noise = standardized_tensor({noise_length});

            const int phase = s;
            for (int r = 0; r < spec.height; ++r) {
                for (int c = 0; c < spec.width; ++c) {
                    const std::int64_t flat = static_cast<std::int64_t>(r) * spec.width + c;
                    const int base = base_value(cls, r, c, phase, spec.height, spec.width);
                    const long long jitter =
                        std::llround(cls.noise * 255.0 * noise.values[static_cast<std::size_t>(flat)]);
                    const long long value = std::clamp<long long>(base + jitter, 0, 255);
                    pixels[static_cast<std::size_t>(flat)] = static_cast<unsigned char>(value);
                }
            }

            char name[64];
            std::snprintf(name, sizeof(name), "%s_%05d.pgm", cls.name.c_str(), s);
            write_pgm(class_dir / name, pixels, spec.height, spec.width);
        }
    }
}

} // namespace mixer
