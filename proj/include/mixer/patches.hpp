#pragma once

#include <Eigen/Core>

namespace mixer {

// Dense patch matrix of one channel: column j holds the J x J patch centered
// at pixel j, flattened row-major; pixels are enumerated row-major over the
// channel.
struct PatchMatrix {
    int patch_side = 0;
    Eigen::MatrixXd data; // J^2 x H*W
};

// Extends the channel by (J-1)/2 on every side, replicating edge values.
Eigen::MatrixXd pad_replicate(const Eigen::MatrixXd& channel, int patch_side);

// Extracts every J x J window of the replicate-padded channel, one centered
// at each original pixel.
PatchMatrix extract_patch_matrix(const Eigen::MatrixXd& channel, int patch_side);

} // namespace mixer
