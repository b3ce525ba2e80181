#pragma once

#include <vector>

#include <Eigen/Core>

namespace mixer {

// Multi-channel intensity image. Channels share one H x W shape; values
// loaded from files are normalized to [0, 1].
struct TextureImage {
    std::vector<Eigen::MatrixXd> channels;

    int channel_count() const { return static_cast<int>(channels.size()); }
    Eigen::Index height() const { return channels.empty() ? 0 : channels.front().rows(); }
    Eigen::Index width() const { return channels.empty() ? 0 : channels.front().cols(); }
    Eigen::Index pixel_count() const { return height() * width(); }
};

} // namespace mixer
