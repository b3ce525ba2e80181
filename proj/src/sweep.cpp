#include "mixer/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "mixer/errors.hpp"
#include "mixer/lda.hpp"
#include "mixer/parallel.hpp"
#include "mixer/patches.hpp"

namespace mixer {

namespace {

std::vector<std::uint32_t> manifest_labels(const CorpusManifest& manifest) {
    std::vector<std::uint32_t> labels;
    labels.reserve(manifest.samples.size());
    for (const auto& [path, class_index] : manifest.samples) {
        labels.push_back(static_cast<std::uint32_t>(class_index));
    }
    return labels;
}

// Regularization-independent leftovers of one image: ridge sufficient
// statistics per channel, per embedding size, per enabled branch.
struct ImageSystems {
    struct PerOmega {
        std::vector<RidgeSystem> direct;
        std::vector<RidgeSystem> mixed;
    };
    std::vector<PerOmega> per_omega;
};

ImageSystems precompute_systems(const TextureImage& image, const PipelineConfig& config) {
    const int channels = image.channel_count();
    std::vector<PatchMatrix> patches;
    patches.reserve(static_cast<std::size_t>(channels));
    for (int k = 0; k < channels; ++k) {
        patches.push_back(extract_patch_matrix(image.channels[static_cast<std::size_t>(k)],
                                               config.patch_side));
    }

    ImageSystems systems;
    systems.per_omega.resize(config.embedding_sizes.size());
    for (std::size_t o = 0; o < config.embedding_sizes.size(); ++o) {
        const std::vector<EmbeddingMatrix> embeddings =
            encode_channels(patches, config.embedding_sizes[o]);
        auto& slot = systems.per_omega[o];
        if (config.branches != Branches::Mixed) {
            for (int k = 0; k < channels; ++k) {
                slot.direct.push_back(ridge_system(patches[static_cast<std::size_t>(k)].data,
                                                   embeddings[static_cast<std::size_t>(k)].data));
            }
        }
        if (config.branches != Branches::Direct) {
            const Eigen::MatrixXd shared = mixed_embedding(embeddings);
            for (int k = 0; k < channels; ++k) {
                slot.mixed.push_back(
                    ridge_system(patches[static_cast<std::size_t>(k)].data, shared));
            }
        }
    }
    return systems;
}

Eigen::VectorXd cell_descriptor(const ImageSystems& systems, double gamma_direct,
                                double gamma_mixed) {
    std::vector<Descriptor> parts;
    parts.reserve(systems.per_omega.size());
    for (const auto& slot : systems.per_omega) {
        std::vector<DecoderWeights> direct;
        for (std::size_t k = 0; k < slot.direct.size(); ++k) {
            direct.push_back(DecoderWeights{ridge_solve_system(slot.direct[k], gamma_direct),
                                            Branch::Direct, static_cast<int>(k)});
        }
        std::vector<DecoderWeights> mixed;
        for (std::size_t k = 0; k < slot.mixed.size(); ++k) {
            mixed.push_back(DecoderWeights{ridge_solve_system(slot.mixed[k], gamma_mixed),
                                           Branch::Mixed, static_cast<int>(k)});
        }
        parts.push_back(assemble_omega(direct, mixed));
    }
    return fuse(parts).values;
}

void check_gammas(const std::vector<double>& gammas, const char* axis) {
    if (gammas.empty()) {
        throw InvalidArgumentError(std::string("sweep: empty ") + axis + " axis");
    }
    for (const double gamma : gammas) {
        if (!(gamma > 0.0) || !std::isfinite(gamma)) {
            throw InvalidArgumentError(std::string("sweep: ") + axis +
                                       " values must be positive and finite");
        }
    }
}

} // namespace

RegSweepResult sweep_regularization(
    const CorpusManifest& manifest, const PipelineConfig& base,
    const std::vector<double>& gammas_direct, const std::vector<double>& gammas_mixed, int jobs,
    const std::function<void(Eigen::Index, Eigen::Index, double)>& on_cell) {
    base.validate();
    check_gammas(gammas_direct, "gamma_direct");
    check_gammas(gammas_mixed, "gamma_mixed");

    const auto sample_count = static_cast<std::int64_t>(manifest.samples.size());
    const std::vector<std::uint32_t> labels = manifest_labels(manifest);

    std::vector<ImageSystems> systems(static_cast<std::size_t>(sample_count));
    parallel_for(sample_count, jobs, [&](std::int64_t i) {
        const TextureImage image = load_image(manifest.samples[static_cast<std::size_t>(i)].first);
        systems[static_cast<std::size_t>(i)] = precompute_systems(image, base);
    });

    RegSweepResult result;
    result.gammas_direct = gammas_direct;
    result.gammas_mixed = gammas_mixed;
    const auto rows = static_cast<Eigen::Index>(gammas_direct.size());
    const auto cols = static_cast<Eigen::Index>(gammas_mixed.size());
    result.accuracy.resize(rows, cols);

    const std::int64_t cells = rows * cols;
    std::vector<char> done(static_cast<std::size_t>(cells), 0);
    std::mutex flush_mutex;
    std::int64_t cursor = 0;

    parallel_for(cells, jobs, [&](std::int64_t cell) {
        const Eigen::Index d = cell / cols;
        const Eigen::Index m = cell % cols;
        Eigen::MatrixXd features(sample_count, base.descriptor_length());
        for (std::int64_t i = 0; i < sample_count; ++i) {
            features.row(i) = cell_descriptor(systems[static_cast<std::size_t>(i)],
                                              gammas_direct[static_cast<std::size_t>(d)],
                                              gammas_mixed[static_cast<std::size_t>(m)])
                                  .transpose();
        }
        const double accuracy = loo_accuracy(features, labels, 1);

        std::lock_guard<std::mutex> lock(flush_mutex);
        result.accuracy(d, m) = accuracy;
        done[static_cast<std::size_t>(cell)] = 1;
        // flush every finished prefix cell in canonical row-major order
        while (cursor < cells && done[static_cast<std::size_t>(cursor)]) {
            if (on_cell) {
                on_cell(cursor / cols, cursor % cols, result.accuracy(cursor / cols, cursor % cols));
            }
            ++cursor;
        }
    });

    result.best_direct = 0;
    result.best_mixed = 0;
    for (Eigen::Index d = 0; d < rows; ++d) {
        for (Eigen::Index m = 0; m < cols; ++m) {
            if (result.accuracy(d, m) > result.accuracy(result.best_direct, result.best_mixed)) {
                result.best_direct = d;
                result.best_mixed = m;
            }
        }
    }
    return result;
}

std::vector<EmbedSweepRow> sweep_embeddings(const CorpusManifest& manifest,
                                            const PipelineConfig& base,
                                            const std::vector<int>& omegas, int jobs) {
    PipelineConfig config = base;
    config.embedding_sizes = omegas;
    std::sort(config.embedding_sizes.begin(), config.embedding_sizes.end());
    config.validate(); // duplicates still rejected
    const std::vector<int>& sizes = config.embedding_sizes;

    const auto sample_count = static_cast<std::int64_t>(manifest.samples.size());
    const std::vector<std::uint32_t> labels = manifest_labels(manifest);

    // one descriptor per embedding size per image, computed once
    std::vector<std::vector<Eigen::VectorXd>> parts(static_cast<std::size_t>(sample_count));
    parallel_for(sample_count, jobs, [&](std::int64_t i) {
        const TextureImage image = load_image(manifest.samples[static_cast<std::size_t>(i)].first);
        const std::vector<Descriptor> descriptors = describe_per_omega(image, config);
        auto& mine = parts[static_cast<std::size_t>(i)];
        mine.reserve(descriptors.size());
        for (const auto& descriptor : descriptors) mine.push_back(descriptor.values);
    });

    struct Entry {
        int a = 0;
        int b = -1;
    };
    std::vector<Entry> entries;
    for (std::size_t a = 0; a < sizes.size(); ++a) {
        entries.push_back({static_cast<int>(a), -1});
    }
    for (std::size_t a = 0; a < sizes.size(); ++a) {
        for (std::size_t b = a + 1; b < sizes.size(); ++b) {
            entries.push_back({static_cast<int>(a), static_cast<int>(b)});
        }
    }

    std::vector<EmbedSweepRow> rows(entries.size());
    parallel_for(static_cast<std::int64_t>(entries.size()), jobs, [&](std::int64_t e) {
        const Entry entry = entries[static_cast<std::size_t>(e)];
        const auto len_a = parts.front()[static_cast<std::size_t>(entry.a)].size();
        const auto len_b =
            entry.b < 0 ? 0 : parts.front()[static_cast<std::size_t>(entry.b)].size();

        Eigen::MatrixXd features(sample_count, len_a + len_b);
        for (std::int64_t i = 0; i < sample_count; ++i) {
            const auto& mine = parts[static_cast<std::size_t>(i)];
            features.row(i).head(len_a) = mine[static_cast<std::size_t>(entry.a)].transpose();
            if (entry.b >= 0) {
                features.row(i).tail(len_b) = mine[static_cast<std::size_t>(entry.b)].transpose();
            }
        }

        EmbedSweepRow row;
        row.omega1 = sizes[static_cast<std::size_t>(entry.a)];
        row.omega2 = entry.b < 0 ? -1 : sizes[static_cast<std::size_t>(entry.b)];
        row.accuracy = loo_accuracy(features, labels, 1);
        row.feature_count = len_a + len_b;
        rows[static_cast<std::size_t>(e)] = row;
    });
    return rows;
}

} // namespace mixer
