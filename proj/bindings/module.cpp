// Python bindings for the texture descriptor pipeline. Images come in as
// numpy arrays, (H, W) grayscale or (H, W, C) channels-last.

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mixer/dataset.hpp"
#include "mixer/errors.hpp"
#include "mixer/features.hpp"
#include "mixer/lcg.hpp"
#include "mixer/lda.hpp"
#include "mixer/patches.hpp"
#include "mixer/pipeline.hpp"
#include "mixer/synth.hpp"

namespace py = pybind11;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

mixer::TextureImage image_from_array(const DoubleArray& array) {
    const py::buffer_info info = array.request();
    if (info.ndim != 2 && info.ndim != 3) {
        throw mixer::InvalidArgumentError("image array must be (H, W) or (H, W, C)");
    }
    const auto height = static_cast<Eigen::Index>(info.shape[0]);
    const auto width = static_cast<Eigen::Index>(info.shape[1]);
    const auto channels = info.ndim == 3 ? static_cast<Eigen::Index>(info.shape[2]) : 1;
    const double* data = static_cast<const double*>(info.ptr);

    mixer::TextureImage image;
    image.channels.resize(static_cast<std::size_t>(channels));
    for (Eigen::Index k = 0; k < channels; ++k) {
        image.channels[static_cast<std::size_t>(k)].resize(height, width);
    }
    for (Eigen::Index r = 0; r < height; ++r) {
        for (Eigen::Index c = 0; c < width; ++c) {
            for (Eigen::Index k = 0; k < channels; ++k) {
                image.channels[static_cast<std::size_t>(k)](r, c) =
                    data[(r * width + c) * channels + k];
            }
        }
    }
    return image;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "randomized texture descriptors with closed-form ridge decoders";

    py::register_exception<mixer::InvalidArgumentError>(m, "InvalidArgumentError",
                                                        PyExc_ValueError);
    py::register_exception<mixer::DataError>(m, "DataError", PyExc_RuntimeError);
    py::register_exception<mixer::DegenerateSequenceError>(m, "DegenerateSequenceError",
                                                           PyExc_RuntimeError);
    py::register_exception<mixer::DegenerateScatterError>(m, "DegenerateScatterError",
                                                          PyExc_RuntimeError);

    py::class_<mixer::PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_readwrite("patch_side", &mixer::PipelineConfig::patch_side)
        .def_readwrite("embedding_sizes", &mixer::PipelineConfig::embedding_sizes)
        .def_readwrite("gamma_direct", &mixer::PipelineConfig::gamma_direct)
        .def_readwrite("gamma_mixed", &mixer::PipelineConfig::gamma_mixed)
        .def_property(
            "branches",
            [](const mixer::PipelineConfig& config) {
                return mixer::branches_to_string(config.branches);
            },
            [](mixer::PipelineConfig& config, const std::string& text) {
                config.branches = mixer::branches_from_string(text);
            })
        .def("validate", &mixer::PipelineConfig::validate)
        .def("descriptor_length", &mixer::PipelineConfig::descriptor_length);

    py::class_<mixer::FeatureTable>(m, "FeatureTable")
        .def(py::init<>())
        .def_readwrite("values", &mixer::FeatureTable::values)
        .def_readwrite("labels", &mixer::FeatureTable::labels)
        .def_readwrite("class_names", &mixer::FeatureTable::class_names)
        .def_readwrite("config", &mixer::FeatureTable::config)
        .def_readwrite("dataset_name", &mixer::FeatureTable::dataset_name);

    m.def(
        "describe",
        [](const DoubleArray& array, const mixer::PipelineConfig& config) {
            const mixer::TextureImage image = image_from_array(array);
            Eigen::VectorXd values;
            {
                py::gil_scoped_release release;
                values = mixer::describe(image, config).values;
            }
            return values;
        },
        py::arg("image"), py::arg("config"),
        "Descriptor of one image given as an (H, W) or (H, W, C) float array.");

    m.def(
        "describe_corpus",
        [](const std::filesystem::path& root, const mixer::PipelineConfig& config, int jobs,
           const std::string& dataset_name) {
            py::gil_scoped_release release;
            return mixer::describe_corpus(mixer::scan_dataset(root), config, jobs, dataset_name);
        },
        py::arg("root"), py::arg("config"), py::arg("jobs") = 1, py::arg("dataset_name") = "",
        "Scan a root/<class>/<image> tree and describe every sample.");

    m.def(
        "loo_accuracy",
        [](const Eigen::MatrixXd& features, const std::vector<std::uint32_t>& labels, int jobs) {
            py::gil_scoped_release release;
            return mixer::loo_accuracy(features, labels, jobs);
        },
        py::arg("features"), py::arg("labels"), py::arg("jobs") = 1,
        "Leave-one-out accuracy of the pooled-covariance discriminant.");

    m.def("write_features", &mixer::write_features, py::arg("table"), py::arg("path"));
    m.def("read_features", &mixer::read_features, py::arg("path"));

    m.def(
        "lcg_sequence",
        [](std::int64_t length) {
            const std::vector<std::int64_t> values = mixer::lcg_sequence(length);
            py::array_t<std::int64_t> out(static_cast<py::ssize_t>(values.size()));
            std::copy(values.begin(), values.end(), out.mutable_data());
            return out;
        },
        py::arg("length"), "Raw congruential sequence of the given length.");

    m.def(
        "standardized_tensor",
        [](const std::vector<std::int64_t>& dims) {
            const mixer::LcgTensor tensor = mixer::standardized_tensor(dims);
            py::array_t<double> out(static_cast<py::ssize_t>(tensor.values.size()));
            std::copy(tensor.values.begin(), tensor.values.end(), out.mutable_data());
            return out;
        },
        py::arg("dims"),
        "Standardized congruential tensor, flattened in row-major dimension order.");

    m.def(
        "pad_replicate",
        [](const Eigen::MatrixXd& channel, int patch_side) {
            return mixer::pad_replicate(channel, patch_side);
        },
        py::arg("channel"), py::arg("patch_side"));

    m.def(
        "extract_patch_matrix",
        [](const Eigen::MatrixXd& channel, int patch_side) {
            return mixer::extract_patch_matrix(channel, patch_side).data;
        },
        py::arg("channel"), py::arg("patch_side"),
        "Column j holds the flattened patch centered on row-major pixel j.");

    m.def(
        "generate_corpus",
        [](const std::filesystem::path& out_root, int samples_per_class, int size, double noise,
           std::int64_t seed) {
            mixer::SynthSpec spec = mixer::default_synth_spec();
            spec.samples_per_class = samples_per_class;
            spec.height = size;
            spec.width = size;
            spec.seed = seed;
            for (auto& cls : spec.classes) cls.noise = noise;
            mixer::generate_corpus(spec, out_root);
        },
        py::arg("out_root"), py::arg("samples_per_class") = 20, py::arg("size") = 32,
        py::arg("noise") = 0.1, py::arg("seed") = 0,
        "Write the four-class synthetic texture corpus as PGM files.");
}
