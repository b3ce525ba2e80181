#include "mixer/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstring>
#include <fstream>

#include <png.h>

#include "mixer/errors.hpp"

namespace mixer {

namespace {

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open image file: " + path.string());
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    return bytes;
}

// --- PNM (binary P5/P6) -------------------------------------------------

struct ByteCursor {
    const std::vector<unsigned char>& bytes;
    std::size_t offset = 0;

    bool done() const { return offset >= bytes.size(); }
    unsigned char peek() const { return bytes[offset]; }
};

bool is_pnm_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

// Skips whitespace and '#' comments, then reads one decimal token.
std::int64_t read_pnm_number(ByteCursor& cursor, const std::filesystem::path& path) {
    while (!cursor.done()) {
        const unsigned char c = cursor.peek();
        if (is_pnm_space(c)) {
            ++cursor.offset;
        } else if (c == '#') {
            while (!cursor.done() && cursor.peek() != '\n') ++cursor.offset;
        } else {
            break;
        }
    }
    if (cursor.done() || !std::isdigit(cursor.peek())) {
        throw DataError("malformed PNM header: " + path.string());
    }
    std::int64_t value = 0;
    while (!cursor.done() && std::isdigit(cursor.peek())) {
        value = value * 10 + (cursor.peek() - '0');
        if (value > 1'000'000'000) {
            throw DataError("PNM header value out of range: " + path.string());
        }
        ++cursor.offset;
    }
    return value;
}

TextureImage decode_pnm(const std::vector<unsigned char>& bytes,
                        const std::filesystem::path& path) {
    const int channels = bytes[1] == '5' ? 1 : 3;
    ByteCursor cursor{bytes, 2};
    const std::int64_t width = read_pnm_number(cursor, path);
    const std::int64_t height = read_pnm_number(cursor, path);
    const std::int64_t maxval = read_pnm_number(cursor, path);
    if (width < 1 || height < 1) {
        throw DataError("zero-dimension image: " + path.string());
    }
    if (maxval < 1 || maxval > 65535) {
        throw DataError("unsupported PNM max value " + std::to_string(maxval) + ": " +
                        path.string());
    }
    if (cursor.done() || !is_pnm_space(cursor.peek())) {
        throw DataError("malformed PNM header: " + path.string());
    }
    ++cursor.offset; // single whitespace byte separates header from raster

    const int bytes_per_sample = maxval > 255 ? 2 : 1;
    const std::size_t expected = static_cast<std::size_t>(width) * height * channels *
                                 bytes_per_sample;
    if (bytes.size() - cursor.offset < expected) {
        throw DataError("truncated image file: " + path.string());
    }

    TextureImage image;
    image.channels.assign(static_cast<std::size_t>(channels),
                          Eigen::MatrixXd(height, width));
    const unsigned char* raster = bytes.data() + cursor.offset;
    const double scale = 1.0 / static_cast<double>(maxval);
    std::size_t pos = 0;
    for (std::int64_t r = 0; r < height; ++r) {
        for (std::int64_t c = 0; c < width; ++c) {
            for (int k = 0; k < channels; ++k) {
                std::int64_t sample = raster[pos++];
                if (bytes_per_sample == 2) {
                    sample = (sample << 8) | raster[pos++]; // big-endian per PNM
                }
                image.channels[static_cast<std::size_t>(k)](r, c) =
                    static_cast<double>(sample) * scale;
            }
        }
    }
    return image;
}

// --- PNG -----------------------------------------------------------------

struct PngReadState {
    const unsigned char* data;
    std::size_t size;
    std::size_t offset;
};

extern "C" void mixer_png_read(png_structp png, png_bytep out, png_size_t count) {
    auto* state = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (count > state->size - state->offset) {
        png_error(png, "unexpected end of stream");
    }
    std::memcpy(out, state->data + state->offset, count);
    state->offset += count;
}

TextureImage decode_png(const std::vector<unsigned char>& bytes,
                        const std::filesystem::path& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) {
        throw DataError("PNG decoder initialization failed: " + path.string());
    }
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw DataError("PNG decoder initialization failed: " + path.string());
    }
    PngReadState state{bytes.data(), bytes.size(), 0};
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("failed to decode PNG file: " + path.string());
    }
    png_set_read_fn(png, &state, mixer_png_read);
    // EXPAND turns palette/low-depth into 8-bit gray or RGB, STRIP_ALPHA
    // drops alpha, SWAP_ENDIAN makes 16-bit samples little-endian.
    png_read_png(png, info,
                 PNG_TRANSFORM_EXPAND | PNG_TRANSFORM_STRIP_ALPHA | PNG_TRANSFORM_SWAP_ENDIAN,
                 nullptr);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int channels = png_get_channels(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    png_bytepp rows = png_get_rows(png, info);

    if (width == 0 || height == 0) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("zero-dimension image: " + path.string());
    }
    if ((channels != 1 && channels != 3) || (bit_depth != 8 && bit_depth != 16)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DataError("unsupported PNG layout (" + std::to_string(channels) + " channels, " +
                        std::to_string(bit_depth) + "-bit): " + path.string());
    }

    TextureImage image;
    image.channels.assign(static_cast<std::size_t>(channels),
                          Eigen::MatrixXd(height, width));
    const double scale = bit_depth == 16 ? 1.0 / 65535.0 : 1.0 / 255.0;
    for (png_uint_32 r = 0; r < height; ++r) {
        const png_bytep row = rows[r];
        for (png_uint_32 c = 0; c < width; ++c) {
            for (int k = 0; k < channels; ++k) {
                const std::size_t i = (static_cast<std::size_t>(c) * channels + k);
                double sample;
                if (bit_depth == 16) {
                    std::uint16_t v;
                    std::memcpy(&v, row + 2 * i, 2);
                    sample = static_cast<double>(v);
                } else {
                    sample = static_cast<double>(row[i]);
                }
                image.channels[static_cast<std::size_t>(k)](r, c) = sample * scale;
            }
        }
    }
    png_destroy_read_struct(&png, &info, nullptr);
    return image;
}

bool has_image_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".png" || ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

} // namespace

TextureImage load_image(const std::filesystem::path& path) {
    const std::vector<unsigned char> bytes = read_file(path);
    if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) {
        return decode_png(bytes, path);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6')) {
        return decode_pnm(bytes, path);
    }
    throw DataError("unsupported image format: " + path.string());
}

CorpusManifest scan_dataset(const std::filesystem::path& root) {
    std::error_code ec;
    if (!std::filesystem::is_directory(root, ec)) {
        throw DataError("dataset root not found: " + root.string());
    }

    std::vector<std::string> class_names;
    for (const auto& entry : std::filesystem::directory_iterator(root)) {
        if (entry.is_directory()) {
            class_names.push_back(entry.path().filename().string());
        }
    }
    if (class_names.empty()) {
        throw DataError("no class directories in dataset root: " + root.string());
    }
    std::sort(class_names.begin(), class_names.end());

    CorpusManifest manifest;
    manifest.classes = class_names;
    for (std::size_t k = 0; k < class_names.size(); ++k) {
        const std::filesystem::path class_dir = root / class_names[k];
        std::vector<std::string> files;
        for (const auto& entry : std::filesystem::directory_iterator(class_dir)) {
            if (entry.is_regular_file() && has_image_extension(entry.path())) {
                files.push_back(entry.path().filename().string());
            }
        }
        if (files.empty()) {
            throw DataError("class directory has no images: " + class_dir.string());
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            manifest.samples.emplace_back(class_dir / file, static_cast<int>(k));
        }
        manifest.class_counts.push_back(static_cast<std::int64_t>(files.size()));
    }
    return manifest;
}

} // namespace mixer
