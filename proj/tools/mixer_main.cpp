#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mixer/errors.hpp"
#include "mixer/features.hpp"
#include "mixer/heatmap.hpp"
#include "mixer/lda.hpp"
#include "mixer/pipeline.hpp"
#include "mixer/sweep.hpp"
#include "mixer/synth.hpp"

namespace {

struct CommonOptions {
    std::string dataset;
    int patch_side = 3;
    std::vector<int> omegas = {39, 109};
    double gamma_d = 1.0;
    double gamma_m = 1.0;
    std::string branches = "both";
    std::string out;
    int jobs = 1;
};

std::string format_full(double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string format_short(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%g", value);
    return buffer;
}

std::string join_ints(const std::vector<int>& values, char sep) {
    std::string text;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) text.push_back(sep);
        text += std::to_string(values[i]);
    }
    return text;
}

std::string dataset_label(const std::filesystem::path& root) {
    std::filesystem::path trimmed = root;
    if (!trimmed.has_filename()) trimmed = trimmed.parent_path();
    const std::string name = trimmed.filename().string();
    return name.empty() ? root.string() : name;
}

void add_pipeline_flags(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--patch-side", opt.patch_side, "odd patch side, >= 3")
        ->capture_default_str();
    cmd->add_option("--omegas", opt.omegas, "comma-separated embedding sizes, ascending")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--gamma-d", opt.gamma_d, "direct-branch regularization")
        ->capture_default_str();
    cmd->add_option("--gamma-m", opt.gamma_m, "mixed-branch regularization")
        ->capture_default_str();
    cmd->add_option("--branches", opt.branches, "branches to learn")
        ->check(CLI::IsMember({"direct", "mixed", "both"}))
        ->capture_default_str();
}

void add_jobs_flag(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--jobs", opt.jobs, "worker threads (env MIXER_JOBS)")
        ->envname("MIXER_JOBS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

mixer::PipelineConfig make_config(const CommonOptions& opt) {
    mixer::PipelineConfig config;
    config.patch_side = opt.patch_side;
    config.embedding_sizes = opt.omegas;
    config.gamma_direct = opt.gamma_d;
    config.gamma_mixed = opt.gamma_m;
    config.branches = mixer::branches_from_string(opt.branches);
    config.validate();
    return config;
}

void print_accuracy(const mixer::LooResult& result) {
    std::printf("accuracy %.1f%% (%lld/%lld)\n", 100.0 * result.accuracy(),
                static_cast<long long>(result.correct), static_cast<long long>(result.total));
}

// --- subcommand bodies ----------------------------------------------------

void cmd_synth(const std::string& out, int samples, int size, double noise,
               std::int64_t seed) {
    mixer::SynthSpec spec = mixer::default_synth_spec();
    spec.samples_per_class = samples;
    spec.height = size;
    spec.width = size;
    spec.seed = seed;
    for (auto& cls : spec.classes) cls.noise = noise;
    mixer::generate_corpus(spec, out);
    std::printf("wrote %zu x %d images to %s\n", spec.classes.size(), samples, out.c_str());
}

void cmd_extract(const CommonOptions& opt) {
    const mixer::PipelineConfig config = make_config(opt);
    const mixer::CorpusManifest manifest = mixer::scan_dataset(opt.dataset);
    const mixer::FeatureTable table =
        mixer::describe_corpus(manifest, config, opt.jobs, dataset_label(opt.dataset));
    mixer::write_features(table, opt.out);
    std::printf("wrote %lld rows x %lld cols (%zu classes) to %s\n",
                static_cast<long long>(table.values.rows()),
                static_cast<long long>(table.values.cols()), table.class_names.size(),
                opt.out.c_str());
}

void cmd_evaluate(const std::string& features_path, const std::string& out, int jobs) {
    const mixer::FeatureTable table = mixer::read_features(features_path);
    if (table.values.rows() == 0) {
        throw mixer::DataError("feature file has no rows (empty input): " + features_path);
    }
    const mixer::LooResult result = mixer::loo_evaluate(table.values, table.labels, jobs);
    print_accuracy(result);

    if (!out.empty()) {
        const bool fresh =
            !std::filesystem::exists(out) || std::filesystem::file_size(out) == 0;
        std::ofstream csv(out, std::ios::app);
        if (!csv) {
            throw mixer::DataError("cannot write report file: " + out);
        }
        if (fresh) {
            csv << "dataset,patch_side,omegas,gamma_direct,gamma_mixed,branches,correct,total,"
                   "accuracy\n";
        }
        csv << table.dataset_name << ',' << table.config.patch_side << ',' << '"'
            << join_ints(table.config.embedding_sizes, ',') << '"' << ','
            << format_full(table.config.gamma_direct) << ','
            << format_full(table.config.gamma_mixed) << ','
            << mixer::branches_to_string(table.config.branches) << ',' << result.correct << ','
            << result.total << ',' << format_full(result.accuracy()) << '\n';
        if (!csv.good()) {
            throw mixer::DataError("cannot write report file: " + out);
        }
    }
}

void cmd_sweep_reg(const CommonOptions& opt, int min_exp, int max_exp) {
    if (min_exp > max_exp) {
        throw mixer::InvalidArgumentError("sweep grid: min exponent exceeds max exponent");
    }
    const mixer::PipelineConfig config = make_config(opt);
    const mixer::CorpusManifest manifest = mixer::scan_dataset(opt.dataset);

    std::vector<double> gammas;
    for (int k = min_exp; k <= max_exp; ++k) gammas.push_back(std::pow(10.0, k));

    std::ofstream csv(opt.out);
    if (!csv) {
        throw mixer::DataError("cannot write sweep file: " + opt.out);
    }
    csv << "gamma_d,gamma_m,accuracy\n";
    csv.flush();

    const mixer::RegSweepResult result = mixer::sweep_regularization(
        manifest, config, gammas, gammas, opt.jobs,
        [&](Eigen::Index d, Eigen::Index m, double accuracy) {
            csv << format_short(gammas[static_cast<std::size_t>(d)]) << ','
                << format_short(gammas[static_cast<std::size_t>(m)]) << ','
                << format_full(accuracy) << '\n';
            csv.flush();
            if (!csv.good()) {
                throw mixer::DataError("cannot write sweep file: " + opt.out);
            }
        });

    std::filesystem::path svg_path(opt.out);
    svg_path.replace_extension(".svg");
    if (svg_path == std::filesystem::path(opt.out)) svg_path += ".svg";
    mixer::write_heatmap_svg(result, "leave-one-out accuracy: " + dataset_label(opt.dataset),
                             svg_path);

    std::printf("best accuracy %.1f%% at gamma_d=%s gamma_m=%s\n",
                100.0 * result.best_accuracy(),
                format_short(result.gammas_direct[static_cast<std::size_t>(result.best_direct)])
                    .c_str(),
                format_short(result.gammas_mixed[static_cast<std::size_t>(result.best_mixed)])
                    .c_str());
    std::printf("wrote %s and %s\n", opt.out.c_str(), svg_path.string().c_str());
}

void cmd_sweep_embed(const CommonOptions& opt) {
    const mixer::PipelineConfig config = make_config(opt);
    const mixer::CorpusManifest manifest = mixer::scan_dataset(opt.dataset);
    const std::vector<mixer::EmbedSweepRow> rows =
        mixer::sweep_embeddings(manifest, config, opt.omegas, opt.jobs);

    std::ofstream csv(opt.out);
    if (!csv) {
        throw mixer::DataError("cannot write sweep file: " + opt.out);
    }
    csv << "omega1,omega2,accuracy,feature_count\n";
    const mixer::EmbedSweepRow* best = nullptr;
    for (const auto& row : rows) {
        csv << row.omega1 << ',';
        if (row.omega2 >= 0) csv << row.omega2;
        csv << ',' << format_full(row.accuracy) << ',' << row.feature_count << '\n';
        if (!best || row.accuracy > best->accuracy) best = &row;
    }
    if (!csv.good()) {
        throw mixer::DataError("cannot write sweep file: " + opt.out);
    }

    if (best->omega2 >= 0) {
        std::printf("best accuracy %.1f%% at omegas %d,%d (%lld features)\n",
                    100.0 * best->accuracy, best->omega1, best->omega2,
                    static_cast<long long>(best->feature_count));
    } else {
        std::printf("best accuracy %.1f%% at omega %d (%lld features)\n", 100.0 * best->accuracy,
                    best->omega1, static_cast<long long>(best->feature_count));
    }
    std::printf("wrote %zu rows to %s\n", rows.size(), opt.out.c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"texture descriptors from random hyperspherical embeddings and ridge decoders"};
    app.require_subcommand(1);

    // synth
    std::string synth_out;
    int synth_samples = 20;
    int synth_size = 32;
    double synth_noise = 0.1;
    std::int64_t synth_seed = 0;
    auto* synth = app.add_subcommand("synth", "generate a synthetic texture corpus");
    synth->add_option("--out", synth_out, "corpus directory to create")->required();
    synth->add_option("--samples", synth_samples, "samples per class")->capture_default_str();
    synth->add_option("--size", synth_size, "square image side")->capture_default_str();
    synth->add_option("--noise", synth_noise, "noise amplitude in [0, 0.5]")
        ->capture_default_str();
    synth->add_option("--seed", synth_seed, "corpus seed")->capture_default_str();
    synth->callback(
        [&] { cmd_synth(synth_out, synth_samples, synth_size, synth_noise, synth_seed); });

    // extract
    CommonOptions extract_opt;
    auto* extract = app.add_subcommand("extract", "compute descriptors for a dataset");
    extract->add_option("--dataset", extract_opt.dataset, "dataset root directory")->required();
    extract->add_option("--out", extract_opt.out, "feature file to write")->required();
    add_pipeline_flags(extract, extract_opt);
    add_jobs_flag(extract, extract_opt);
    extract->callback([&] { cmd_extract(extract_opt); });

    // evaluate
    std::string eval_features;
    CommonOptions eval_opt;
    auto* evaluate = app.add_subcommand("evaluate", "leave-one-out accuracy of a feature file");
    evaluate->add_option("features", eval_features, "feature file")->required();
    evaluate->add_option("--out", eval_opt.out, "CSV report to append to");
    add_jobs_flag(evaluate, eval_opt);
    evaluate->callback([&] { cmd_evaluate(eval_features, eval_opt.out, eval_opt.jobs); });

    // sweep-reg
    CommonOptions reg_opt;
    int min_exp = -5;
    int max_exp = 5;
    auto* sweep_reg =
        app.add_subcommand("sweep-reg", "accuracy over a regularization grid (CSV + SVG)");
    sweep_reg->add_option("--dataset", reg_opt.dataset, "dataset root directory")->required();
    sweep_reg->add_option("--out", reg_opt.out, "CSV to write (SVG lands next to it)")
        ->required();
    sweep_reg->add_option("--min-exp", min_exp, "smallest power of ten")->capture_default_str();
    sweep_reg->add_option("--max-exp", max_exp, "largest power of ten")->capture_default_str();
    add_pipeline_flags(sweep_reg, reg_opt);
    add_jobs_flag(sweep_reg, reg_opt);
    sweep_reg->callback([&] { cmd_sweep_reg(reg_opt, min_exp, max_exp); });

    // sweep-embed
    CommonOptions embed_opt;
    embed_opt.omegas = {9, 19, 29, 39, 49, 59, 69, 79, 89, 99, 109};
    auto* sweep_embed =
        app.add_subcommand("sweep-embed", "accuracy of single and paired embedding sizes");
    sweep_embed->add_option("--dataset", embed_opt.dataset, "dataset root directory")
        ->required();
    sweep_embed->add_option("--out", embed_opt.out, "CSV to write")->required();
    add_pipeline_flags(sweep_embed, embed_opt);
    add_jobs_flag(sweep_embed, embed_opt);
    sweep_embed->callback([&] { cmd_sweep_embed(embed_opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const mixer::InvalidArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const mixer::DegenerateSequenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const mixer::DegenerateScatterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const mixer::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
