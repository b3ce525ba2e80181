#include "mixer/features.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mixer/errors.hpp"
#include "mixer/parallel.hpp"

namespace mixer {

namespace {

constexpr char kMagic[4] = {'M', 'I', 'X', 'F'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t value) {
    char bytes[4];
    for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
    out.write(bytes, 4);
}

void put_f64(std::ostream& out, double value) {
    const auto bits = std::bit_cast<std::uint64_t>(value);
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    out.write(bytes, 8);
}

struct Reader {
    std::vector<unsigned char> bytes;
    std::size_t offset = 0;
    std::filesystem::path path;

    void need(std::size_t count, const char* what) const {
        if (bytes.size() - offset < count) {
            throw DataError(std::string("feature file truncated (") + what + "): " +
                            path.string());
        }
    }
    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t value = 0;
        for (int i = 0; i < 4; ++i) {
            value |= static_cast<std::uint32_t>(bytes[offset + i]) << (8 * i);
        }
        offset += 4;
        return value;
    }
    double f64(const char* what) {
        need(8, what);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) {
            bits |= static_cast<std::uint64_t>(bytes[offset + i]) << (8 * i);
        }
        offset += 8;
        return std::bit_cast<double>(bits);
    }
};

std::string format_gamma(double gamma) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", gamma);
    return buffer;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        int value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size()) {
            throw DataError("malformed integer list entry '" + token + "'");
        }
        values.push_back(value);
    }
    return values;
}

void write_meta(const FeatureTable& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write feature sidecar: " + path.string());
    }
    out << "dataset=" << table.dataset_name << "\n";
    for (const auto& name : table.class_names) out << "class=" << name << "\n";
    out << "patch_side=" << table.config.patch_side << "\n";
    out << "omegas=";
    for (std::size_t i = 0; i < table.config.embedding_sizes.size(); ++i) {
        if (i > 0) out << ',';
        out << table.config.embedding_sizes[i];
    }
    out << "\n";
    out << "gamma_direct=" << format_gamma(table.config.gamma_direct) << "\n";
    out << "gamma_mixed=" << format_gamma(table.config.gamma_mixed) << "\n";
    out << "branches=" << branches_to_string(table.config.branches) << "\n";
    if (!out.good()) {
        throw DataError("cannot write feature sidecar: " + path.string());
    }
}

void read_meta(FeatureTable& table, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return; // sidecar is optional on read
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto split = line.find('=');
        if (split == std::string::npos) continue;
        const std::string key = line.substr(0, split);
        const std::string value = line.substr(split + 1);
        try {
            if (key == "dataset") {
                table.dataset_name = value;
            } else if (key == "class") {
                table.class_names.push_back(value);
            } else if (key == "patch_side") {
                table.config.patch_side = std::stoi(value);
            } else if (key == "omegas") {
                table.config.embedding_sizes = parse_int_list(value);
            } else if (key == "gamma_direct") {
                table.config.gamma_direct = std::stod(value);
            } else if (key == "gamma_mixed") {
                table.config.gamma_mixed = std::stod(value);
            } else if (key == "branches") {
                table.config.branches = branches_from_string(value);
            }
        } catch (const std::exception&) {
            throw DataError("malformed sidecar entry '" + line + "': " + path.string());
        }
    }
}

} // namespace

FeatureTable describe_corpus(const CorpusManifest& manifest, const PipelineConfig& config,
                             int jobs, std::string dataset_name) {
    config.validate();
    const auto count = static_cast<std::int64_t>(manifest.samples.size());

    FeatureTable table;
    table.values.resize(count, config.descriptor_length());
    table.labels.resize(static_cast<std::size_t>(count));
    table.class_names = manifest.classes;
    table.config = config;
    table.dataset_name = std::move(dataset_name);

    parallel_for(count, jobs, [&](std::int64_t i) {
        const auto& [path, class_index] = manifest.samples[static_cast<std::size_t>(i)];
        const TextureImage image = load_image(path);
        const Descriptor descriptor = describe(image, config);
        table.values.row(i) = descriptor.values.transpose();
        table.labels[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(class_index);
    });
    return table;
}

void write_features(const FeatureTable& table, const std::filesystem::path& path) {
    if (!table.values.allFinite()) {
        throw InvalidArgumentError("feature table must be finite");
    }
    if (static_cast<std::int64_t>(table.labels.size()) != table.values.rows()) {
        throw InvalidArgumentError("feature table has " + std::to_string(table.values.rows()) +
                                   " rows but " + std::to_string(table.labels.size()) +
                                   " labels");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write feature file: " + path.string());
    }
    out.write(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(table.values.rows()));
    put_u32(out, static_cast<std::uint32_t>(table.values.cols()));
    for (const std::uint32_t label : table.labels) put_u32(out, label);
    for (Eigen::Index r = 0; r < table.values.rows(); ++r) {
        for (Eigen::Index c = 0; c < table.values.cols(); ++c) {
            put_f64(out, table.values(r, c));
        }
    }
    if (!out.good()) {
        throw DataError("cannot write feature file: " + path.string());
    }
    out.close();
    write_meta(table, path.string() + ".meta");
}

FeatureTable read_features(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open feature file: " + path.string());
    }
    Reader reader{{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()},
                  0,
                  path};

    reader.need(4, "magic");
    if (std::memcmp(reader.bytes.data(), kMagic, 4) != 0) {
        throw DataError("bad magic, not a feature file: " + path.string());
    }
    reader.offset = 4;
    const std::uint32_t version = reader.u32("version");
    if (version != kVersion) {
        throw DataError("unsupported feature file version " + std::to_string(version) + ": " +
                        path.string());
    }
    const std::uint32_t rows = reader.u32("row count");
    const std::uint32_t cols = reader.u32("column count");

    FeatureTable table;
    table.labels.reserve(rows);
    for (std::uint32_t r = 0; r < rows; ++r) table.labels.push_back(reader.u32("labels"));
    table.values.resize(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r) {
        for (std::uint32_t c = 0; c < cols; ++c) {
            table.values(r, c) = reader.f64("values");
        }
    }
    if (reader.offset != reader.bytes.size()) {
        throw DataError("feature file has trailing bytes: " + path.string());
    }

    read_meta(table, path.string() + ".meta");
    if (!table.class_names.empty()) {
        for (const std::uint32_t label : table.labels) {
            if (label >= table.class_names.size()) {
                throw DataError("label " + std::to_string(label) + " out of range: " +
                                path.string());
            }
        }
    }
    return table;
}

} // namespace mixer
