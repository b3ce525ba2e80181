#include <cmath>

#include "doctest.h"
#include "mixer/errors.hpp"
#include "mixer/patches.hpp"
#include "mixer/projector.hpp"
#include "test_helpers.hpp"

namespace {

mixer::PatchMatrix patches_from(const Eigen::MatrixXd& data) {
    mixer::PatchMatrix patches;
    patches.patch_side = 3;
    patches.data = data;
    return patches;
}

} // namespace

TEST_CASE("row standardization of (1,2,3)") {
    Eigen::MatrixXd row(1, 3);
    row << 1, 2, 3;
    const Eigen::MatrixXd standardized = mixer::standardize_rows(row);
    CHECK(standardized(0, 0) == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(standardized(0, 1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(standardized(0, 2) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("constant rows standardize to zero") {
    const Eigen::MatrixXd rows = Eigen::MatrixXd::Constant(3, 8, 0.7);
    CHECK((mixer::standardize_rows(rows).array() == 0.0).all());
}

TEST_CASE("row standardization is scale invariant") {
    const Eigen::MatrixXd rows = testutil::random_matrix(5, 30, 17, 0.1, 1.0);
    const Eigen::MatrixXd base = mixer::standardize_rows(rows);
    for (const double c : {0.5, 2.0, 255.0}) {
        CAPTURE(c);
        const Eigen::MatrixXd scaled = mixer::standardize_rows(c * rows);
        CHECK((scaled - base).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("standardization needs at least two columns") {
    CHECK_THROWS_AS(mixer::standardize_rows(Eigen::MatrixXd::Ones(3, 1)),
                    mixer::InvalidArgumentError);
}

TEST_CASE("bias row prepends -1") {
    Eigen::MatrixXd m(2, 2);
    m << 1, 2, 3, 4;
    Eigen::MatrixXd expected(3, 2);
    expected << -1, -1, 1, 2, 3, 4;
    CHECK(mixer::add_bias(m) == expected);

    const Eigen::MatrixXd empty(0, 4);
    const Eigen::MatrixXd biased = mixer::add_bias(empty);
    REQUIRE(biased.rows() == 1);
    CHECK((biased.array() == -1.0).all());

    // not idempotent: a second application stacks a second bias row
    const Eigen::MatrixXd twice = mixer::add_bias(mixer::add_bias(m));
    CHECK(twice.rows() == 4);
    CHECK((twice.row(0).array() == -1.0).all());
    CHECK((twice.row(1).array() == -1.0).all());
}

TEST_CASE("zero projector maps every column to the uniform hypersphere point") {
    const int omega = 16;
    const mixer::PatchMatrix patches = patches_from(testutil::random_matrix(9, 12, 5));
    const Eigen::MatrixXd projector = Eigen::MatrixXd::Zero(omega, 10);
    const mixer::EmbeddingMatrix embedding = mixer::encode(patches, projector);

    REQUIRE(embedding.data.rows() == omega + 1);
    REQUIRE(embedding.data.cols() == 12);
    CHECK(embedding.embedding_size == omega);
    CHECK((embedding.data.row(0).array() == -1.0).all());
    const double uniform = 0.5 / (0.5 * std::sqrt(static_cast<double>(omega)));
    for (Eigen::Index c = 0; c < embedding.data.cols(); ++c) {
        for (Eigen::Index r = 1; r <= omega; ++r) {
            CHECK(embedding.data(r, c) == doctest::Approx(uniform).epsilon(1e-12));
        }
        CHECK(embedding.data.col(c).tail(omega).norm() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("column normalization divides by the Euclidean norm") {
    // Projector rows are chosen so the sigmoid emits (0.6c, 0.8c) with
    // c = 0.5 in every column; normalization must rescale to (0.6, 0.8).
    mixer::PatchMatrix patches;
    patches.patch_side = 3;
    patches.data.resize(1, 2);
    patches.data << 0, 1; // standardizes to (-1/sqrt(2), 1/sqrt(2)), bias row -1
    Eigen::MatrixXd projector(2, 2);
    projector << -std::log(0.3 / 0.7), 0.0,   // sigmoid(-p * -1) = 0.3
                 -std::log(0.4 / 0.6), 0.0;   // sigmoid(-r * -1) = 0.4
    const mixer::EmbeddingMatrix embedding = mixer::encode(patches, projector);
    for (Eigen::Index c = 0; c < 2; ++c) {
        CHECK(embedding.data(1, c) == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(embedding.data(2, c) == doctest::Approx(0.8).epsilon(1e-12));
    }
}

TEST_CASE("embedded columns lie on the unit hypersphere") {
    for (unsigned seed = 0; seed < 8; ++seed) {
        const int omega = 3 + static_cast<int>(seed) * 5;
        const mixer::PatchMatrix patches =
            patches_from(testutil::random_matrix(9, 25, 100 + seed, 0.0, 1.0));
        const Eigen::MatrixXd projector = testutil::random_matrix(omega, 10, 200 + seed);
        const mixer::EmbeddingMatrix embedding = mixer::encode(patches, projector);
        CHECK((embedding.data.row(0).array() == -1.0).all());
        for (Eigen::Index c = 0; c < embedding.data.cols(); ++c) {
            const double norm = embedding.data.col(c).tail(omega).norm();
            CAPTURE(seed);
            CHECK(std::min(std::abs(norm - 1.0), norm) < 1e-9); // on the sphere or exactly 0
        }
    }
}

TEST_CASE("encoding is invariant to input intensity scale") {
    const Eigen::MatrixXd raw = testutil::random_matrix(9, 40, 77, 0.05, 1.0);
    const Eigen::MatrixXd projector = testutil::random_matrix(12, 10, 78);
    const mixer::EmbeddingMatrix base = mixer::encode(patches_from(raw), projector);
    for (const double c : {0.5, 2.0, 255.0}) {
        CAPTURE(c);
        const mixer::EmbeddingMatrix scaled = mixer::encode(patches_from(c * raw), projector);
        CHECK((scaled.data - base.data).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("encode validates the projector shape") {
    const mixer::PatchMatrix patches = patches_from(testutil::random_matrix(9, 6, 3));
    CHECK_THROWS_AS(mixer::encode(patches, Eigen::MatrixXd::Zero(4, 9)),
                    mixer::InvalidArgumentError); // needs J^2+1 = 10 columns
    CHECK_THROWS_AS(mixer::encode(patches, Eigen::MatrixXd::Zero(0, 10)),
                    mixer::InvalidArgumentError);
}

TEST_CASE("encode is deterministic") {
    const mixer::PatchMatrix patches = patches_from(testutil::random_matrix(9, 30, 55));
    const Eigen::MatrixXd projector = testutil::random_matrix(8, 10, 56);
    const mixer::EmbeddingMatrix a = mixer::encode(patches, projector);
    const mixer::EmbeddingMatrix b = mixer::encode(patches, projector);
    CHECK(a.data == b.data);
}
