#include <cstddef>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "mixer/dataset.hpp"
#include "mixer/errors.hpp"
#include "mixer/features.hpp"
#include "test_helpers.hpp"

namespace {

namespace fs = std::filesystem;

// Small PNGs produced offline; byte-for-byte fixtures so decoding is hermetic.
const unsigned char kGrayPng[] = {0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x03, 0x00, 0x00, 0x00, 0x02, 0x08, 0x00, 0x00, 0x00, 0x00, 0xb8, 0x1f, 0x39, 0xc6, 0x00, 0x00, 0x00, 0x10, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x64, 0x30, 0x36, 0x66, 0x98, 0x79, 0xe6, 0x3f, 0x00, 0x06, 0xa3, 0x02, 0xcc, 0xd6, 0x12, 0x05, 0x46, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
const unsigned char kRgbPng[] = {0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02, 0x08, 0x02, 0x00, 0x00, 0x00, 0xfd, 0xd4, 0x9a, 0x73, 0x00, 0x00, 0x00, 0x16, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0xf8, 0xcf, 0xc0, 0xc0, 0xf0, 0x9f, 0x81, 0x81, 0x81, 0xe1, 0x7f, 0x83, 0x83, 0x02, 0x00, 0x1c, 0x14, 0x03, 0xde, 0x64, 0xd4, 0xad, 0x8d, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
const unsigned char kGray16Png[] = {0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x01, 0x10, 0x00, 0x00, 0x00, 0x00, 0x81, 0xd9, 0xfc, 0x15, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x60, 0x60, 0xf8, 0xff, 0x1f, 0x00, 0x03, 0x02, 0x01, 0xff, 0xe6, 0x77, 0x0b, 0xae, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};

fs::path write_fixture(const testutil::TempDir& dir, const std::string& name,
                       const unsigned char* data, std::size_t len) {
    const fs::path path = dir.path() / name;
    testutil::write_bytes(path, std::string(reinterpret_cast<const char*>(data), len));
    return path;
}

fs::path write_text(const fs::path& path, const std::string& text) {
    testutil::write_bytes(path, text);
    return path;
}

} // namespace

TEST_CASE("8-bit PGM decodes row-major and normalizes by the maxval") {
    testutil::TempDir dir;
    std::string bytes = "P5\n3 2\n255\n";
    for (const unsigned char v : {0, 51, 102, 153, 204, 255}) {
        bytes.push_back(static_cast<char>(v));
    }
    const fs::path path = write_text(dir.path() / "g.pgm", bytes);
    const mixer::TextureImage image = mixer::load_image(path);
    REQUIRE(image.channel_count() == 1);
    REQUIRE(image.height() == 2);
    REQUIRE(image.width() == 3);
    CHECK(image.channels[0](0, 0) == 0.0);
    CHECK(image.channels[0](0, 1) == doctest::Approx(51.0 / 255.0).epsilon(1e-15));
    CHECK(image.channels[0](0, 2) == doctest::Approx(102.0 / 255.0).epsilon(1e-15));
    CHECK(image.channels[0](1, 0) == doctest::Approx(153.0 / 255.0).epsilon(1e-15));
    CHECK(image.channels[0](1, 2) == 1.0);
}

TEST_CASE("PGM headers tolerate comments and odd whitespace") {
    testutil::TempDir dir;
    std::string bytes = "P5 # format\n# a comment line\n  3\t2 #dims\n255\n";
    for (int v = 0; v < 6; ++v) bytes.push_back(static_cast<char>(40 * v));
    const fs::path path = write_text(dir.path() / "c.pgm", bytes);
    const mixer::TextureImage image = mixer::load_image(path);
    CHECK(image.height() == 2);
    CHECK(image.width() == 3);
    CHECK(image.channels[0](1, 2) == doctest::Approx(200.0 / 255.0).epsilon(1e-15));
}

TEST_CASE("16-bit PGM reads big-endian samples") {
    testutil::TempDir dir;
    std::string bytes = "P5\n2 1\n65535\n";
    bytes.push_back('\x00'); bytes.push_back('\x00'); // 0
    bytes.push_back('\xff'); bytes.push_back('\xff'); // 65535
    const fs::path path = write_text(dir.path() / "h.pgm", bytes);
    const mixer::TextureImage image = mixer::load_image(path);
    REQUIRE(image.channel_count() == 1);
    CHECK(image.channels[0](0, 0) == 0.0);
    CHECK(image.channels[0](0, 1) == 1.0);
}

TEST_CASE("P6 PPM splits interleaved samples into three channels") {
    testutil::TempDir dir;
    std::string bytes = "P6\n2 2\n255\n";
    const unsigned char px[12] = {255, 0, 0,   0, 255, 0,
                                  0,   0, 255, 128, 64, 32};
    for (const unsigned char v : px) bytes.push_back(static_cast<char>(v));
    const fs::path path = write_text(dir.path() / "c.ppm", bytes);
    const mixer::TextureImage image = mixer::load_image(path);
    REQUIRE(image.channel_count() == 3);
    CHECK(image.channels[0](0, 0) == 1.0);
    CHECK(image.channels[1](0, 1) == 1.0);
    CHECK(image.channels[2](1, 0) == 1.0);
    CHECK(image.channels[0](1, 1) == doctest::Approx(128.0 / 255.0).epsilon(1e-15));
    CHECK(image.channels[1](1, 1) == doctest::Approx(64.0 / 255.0).epsilon(1e-15));
    CHECK(image.channels[2](1, 1) == doctest::Approx(32.0 / 255.0).epsilon(1e-15));
}

TEST_CASE("grayscale PNG matches the equivalent PGM values") {
    testutil::TempDir dir;
    const fs::path path = write_fixture(dir, "g.png", kGrayPng, sizeof(kGrayPng));
    const mixer::TextureImage image = mixer::load_image(path);
    REQUIRE(image.channel_count() == 1);
    REQUIRE(image.height() == 2);
    REQUIRE(image.width() == 3);
    const double expected[2][3] = {{0.0, 51.0, 102.0}, {153.0, 204.0, 255.0}};
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 3; ++c) {
            CHECK(image.channels[0](r, c) ==
                  doctest::Approx(expected[r][c] / 255.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("RGB PNG decodes into three planar channels") {
    testutil::TempDir dir;
    const fs::path path = write_fixture(dir, "c.png", kRgbPng, sizeof(kRgbPng));
    const mixer::TextureImage image = mixer::load_image(path);
    REQUIRE(image.channel_count() == 3);
    REQUIRE(image.height() == 2);
    REQUIRE(image.width() == 2);
    CHECK(image.channels[0](0, 0) == 1.0);
    CHECK(image.channels[1](0, 1) == 1.0);
    CHECK(image.channels[2](1, 0) == 1.0);
    CHECK(image.channels[0](1, 1) == doctest::Approx(128.0 / 255.0).epsilon(1e-12));
}

TEST_CASE("16-bit PNG keeps the full sample range") {
    testutil::TempDir dir;
    const fs::path path = write_fixture(dir, "h.png", kGray16Png, sizeof(kGray16Png));
    const mixer::TextureImage image = mixer::load_image(path);
    REQUIRE(image.channel_count() == 1);
    REQUIRE(image.height() == 1);
    REQUIRE(image.width() == 2);
    CHECK(image.channels[0](0, 0) == 0.0);
    CHECK(image.channels[0](0, 1) == 1.0);
}

TEST_CASE("image loading failures throw data errors") {
    testutil::TempDir dir;
    CHECK_THROWS_AS(mixer::load_image(dir.path() / "missing.png"), mixer::DataError);

    const fs::path garbage = write_text(dir.path() / "x.png", "not an image at all");
    CHECK_THROWS_AS(mixer::load_image(garbage), mixer::DataError);

    const fs::path truncated = write_text(dir.path() / "t.pgm", "P5\n4 4\n255\nab");
    CHECK_THROWS_AS(mixer::load_image(truncated), mixer::DataError);

    const fs::path zero = write_text(dir.path() / "z.pgm", "P5\n0 2\n255\n");
    CHECK_THROWS_AS(mixer::load_image(zero), mixer::DataError);

    const fs::path badmax = write_text(dir.path() / "m.pgm", "P5\n1 1\n0\n\0");
    CHECK_THROWS_AS(mixer::load_image(badmax), mixer::DataError);
}

TEST_CASE("dataset scan orders classes and files lexicographically") {
    testutil::TempDir dir;
    const std::string pgm1 = std::string("P5\n1 2\n255\n") + "ab";
    fs::create_directories(dir.path() / "zebra");
    fs::create_directories(dir.path() / "aardvark");
    write_text(dir.path() / "zebra" / "b.pgm", pgm1);
    write_text(dir.path() / "zebra" / "a.pgm", pgm1);
    write_text(dir.path() / "zebra" / "c.pgm", pgm1);
    write_text(dir.path() / "aardvark" / "2.pgm", pgm1);
    write_text(dir.path() / "aardvark" / "1.pgm", pgm1);
    // distractors that must be ignored
    write_text(dir.path() / "aardvark" / "notes.txt", "not an image");
    write_text(dir.path() / "stray.pgm", pgm1);

    const mixer::CorpusManifest manifest = mixer::scan_dataset(dir.path());
    REQUIRE(manifest.classes == std::vector<std::string>{"aardvark", "zebra"});
    REQUIRE(manifest.class_counts == std::vector<std::int64_t>{2, 3});
    REQUIRE(manifest.samples.size() == 5);
    CHECK(manifest.samples[0].first.filename() == "1.pgm");
    CHECK(manifest.samples[0].second == 0);
    CHECK(manifest.samples[1].first.filename() == "2.pgm");
    CHECK(manifest.samples[2].first.filename() == "a.pgm");
    CHECK(manifest.samples[2].second == 1);
    CHECK(manifest.samples[4].first.filename() == "c.pgm");

    const mixer::CorpusManifest again = mixer::scan_dataset(dir.path());
    CHECK(again.samples == manifest.samples);
}

TEST_CASE("dataset scan failures throw data errors") {
    testutil::TempDir dir;
    CHECK_THROWS_AS(mixer::scan_dataset(dir.path() / "nowhere"), mixer::DataError);

    CHECK_THROWS_AS(mixer::scan_dataset(dir.path()), mixer::DataError); // no classes

    fs::create_directories(dir.path() / "empty_class");
    CHECK_THROWS_AS(mixer::scan_dataset(dir.path()), mixer::DataError);
}

TEST_CASE("feature tables round-trip bit-exactly") {
    testutil::TempDir dir;
    mixer::FeatureTable table;
    table.values = testutil::random_matrix(3, 10, 77);
    table.labels = {0, 1, 1};
    table.class_names = {"bark", "fabric"};
    table.dataset_name = "toy";
    table.config.patch_side = 5;
    table.config.embedding_sizes = {9, 19};
    table.config.gamma_direct = 0.30000000000000004; // survives %.17g
    table.config.gamma_mixed = 12345.678901234567;
    table.config.branches = mixer::Branches::Mixed;

    const fs::path path = dir.path() / "toy.mixf";
    mixer::write_features(table, path);
    CHECK(fs::exists(dir.path() / "toy.mixf.meta"));

    const mixer::FeatureTable loaded = mixer::read_features(path);
    CHECK(loaded.values == table.values);
    CHECK(loaded.labels == table.labels);
    CHECK(loaded.class_names == table.class_names);
    CHECK(loaded.dataset_name == table.dataset_name);
    CHECK(loaded.config.patch_side == 5);
    CHECK(loaded.config.embedding_sizes == std::vector<int>{9, 19});
    CHECK(loaded.config.gamma_direct == table.config.gamma_direct);
    CHECK(loaded.config.gamma_mixed == table.config.gamma_mixed);
    CHECK(loaded.config.branches == mixer::Branches::Mixed);
}

TEST_CASE("feature file layout is stable") {
    testutil::TempDir dir;
    mixer::FeatureTable table;
    table.values.resize(1, 2);
    table.values << 1.0, -2.5;
    table.labels = {3};
    const fs::path path = dir.path() / "one.mixf";
    mixer::write_features(table, path);

    const std::string bytes = testutil::read_bytes(path);
    REQUIRE(bytes.size() == 4 + 4 + 4 + 4 + 4 + 16);
    CHECK(bytes.substr(0, 4) == "MIXF");
    const unsigned char* u = reinterpret_cast<const unsigned char*>(bytes.data());
    CHECK(u[4] == 1);  // version, little-endian
    CHECK(u[8] == 1);  // rows
    CHECK(u[12] == 2); // cols
    CHECK(u[16] == 3); // label
    double first = 0.0;
    std::memcpy(&first, bytes.data() + 20, sizeof(double));
    CHECK(first == 1.0);
}

TEST_CASE("an empty feature table still round-trips") {
    testutil::TempDir dir;
    mixer::FeatureTable table;
    table.values.resize(0, 7);
    const fs::path path = dir.path() / "empty.mixf";
    mixer::write_features(table, path);
    const mixer::FeatureTable loaded = mixer::read_features(path);
    CHECK(loaded.values.rows() == 0);
    CHECK(loaded.values.cols() == 7);
    CHECK(loaded.labels.empty());
}

TEST_CASE("corrupt feature files are rejected") {
    testutil::TempDir dir;
    mixer::FeatureTable table;
    table.values = testutil::random_matrix(2, 3, 5);
    table.labels = {0, 0};
    const fs::path path = dir.path() / "t.mixf";
    mixer::write_features(table, path);
    const std::string good = testutil::read_bytes(path);

    const fs::path short_path = dir.path() / "short.mixf";
    testutil::write_bytes(short_path, good.substr(0, good.size() - 5));
    CHECK_THROWS_AS(mixer::read_features(short_path), mixer::DataError);

    const fs::path magic_path = dir.path() / "magic.mixf";
    std::string bad_magic = good;
    bad_magic[0] = 'X';
    testutil::write_bytes(magic_path, bad_magic);
    CHECK_THROWS_WITH_AS(mixer::read_features(magic_path),
                         doctest::Contains("bad magic"), mixer::DataError);

    const fs::path long_path = dir.path() / "long.mixf";
    testutil::write_bytes(long_path, good + "!!");
    CHECK_THROWS_WITH_AS(mixer::read_features(long_path),
                         doctest::Contains("trailing"), mixer::DataError);

    // sidecar listing fewer classes than the labels reference
    const fs::path narrow = dir.path() / "narrow.mixf";
    mixer::FeatureTable labeled = table;
    labeled.labels = {0, 1};
    labeled.class_names = {"a", "b"};
    mixer::write_features(labeled, narrow);
    testutil::write_bytes(dir.path() / "narrow.mixf.meta", "class=a\n");
    CHECK_THROWS_WITH_AS(mixer::read_features(narrow),
                         doctest::Contains("out of range"), mixer::DataError);

    // malformed sidecar entry
    const fs::path warped = dir.path() / "warped.mixf";
    mixer::write_features(table, warped);
    testutil::write_bytes(dir.path() / "warped.mixf.meta", "patch_side=banana\n");
    CHECK_THROWS_AS(mixer::read_features(warped), mixer::DataError);
}

TEST_CASE("non-finite feature tables cannot be written") {
    testutil::TempDir dir;
    mixer::FeatureTable table;
    table.values.resize(1, 2);
    table.values << 1.0, std::numeric_limits<double>::quiet_NaN();
    table.labels = {0};
    CHECK_THROWS_AS(mixer::write_features(table, dir.path() / "nan.mixf"),
                    mixer::InvalidArgumentError);
}

TEST_CASE("corpus description is deterministic across worker counts") {
    testutil::TempDir dir;
    // two classes of procedurally distinct 8x8 PGMs
    for (const std::string klass : {"one", "two"}) {
        fs::create_directories(dir.path() / klass);
        for (int s = 0; s < 3; ++s) {
            std::string bytes = "P5\n8 8\n255\n";
            for (int i = 0; i < 64; ++i) {
                const int v = (klass == "one") ? (i * 7 + s * 13) % 256
                                               : (i * i + s * 31) % 256;
                bytes.push_back(static_cast<char>(v));
            }
            write_text(dir.path() / klass / ("s" + std::to_string(s) + ".pgm"), bytes);
        }
    }
    const mixer::CorpusManifest manifest = mixer::scan_dataset(dir.path());
    mixer::PipelineConfig config;
    config.embedding_sizes = {9};

    const mixer::FeatureTable serial = mixer::describe_corpus(manifest, config, 1, "toy");
    const mixer::FeatureTable parallel = mixer::describe_corpus(manifest, config, 4, "toy");
    CHECK(serial.values == parallel.values);
    CHECK(serial.labels == parallel.labels);
    CHECK(serial.labels == std::vector<std::uint32_t>{0, 0, 0, 1, 1, 1});
    CHECK(serial.values.rows() == 6);
    CHECK(serial.values.cols() == 40);
}
