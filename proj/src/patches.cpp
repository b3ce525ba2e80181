#include "mixer/patches.hpp"

#include <string>

#include "mixer/errors.hpp"

namespace mixer {

namespace {

void check_patch_side(int patch_side) {
    if (patch_side < 3 || patch_side % 2 == 0) {
        throw InvalidArgumentError("patch side must be an odd integer >= 3, got " +
                                   std::to_string(patch_side));
    }
}

} // namespace

Eigen::MatrixXd pad_replicate(const Eigen::MatrixXd& channel, int patch_side) {
    check_patch_side(patch_side);
    if (channel.rows() < 1 || channel.cols() < 1) {
        throw InvalidArgumentError("pad_replicate: channel must be non-empty");
    }
    const Eigen::Index margin = (patch_side - 1) / 2;
    const Eigen::Index rows = channel.rows();
    const Eigen::Index cols = channel.cols();

    Eigen::MatrixXd padded(rows + 2 * margin, cols + 2 * margin);
    for (Eigen::Index r = 0; r < padded.rows(); ++r) {
        const Eigen::Index src_r = std::min(std::max<Eigen::Index>(r - margin, 0), rows - 1);
        for (Eigen::Index c = 0; c < padded.cols(); ++c) {
            const Eigen::Index src_c = std::min(std::max<Eigen::Index>(c - margin, 0), cols - 1);
            padded(r, c) = channel(src_r, src_c);
        }
    }
    return padded;
}

PatchMatrix extract_patch_matrix(const Eigen::MatrixXd& channel, int patch_side) {
    const Eigen::MatrixXd padded = pad_replicate(channel, patch_side);
    const Eigen::Index rows = channel.rows();
    const Eigen::Index cols = channel.cols();
    const Eigen::Index side = patch_side;

    PatchMatrix result;
    result.patch_side = patch_side;
    result.data.resize(side * side, rows * cols);
    // The window with top-left corner (r, c) in the padded channel is the
    // patch centered at original pixel (r, c).
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Eigen::Index pixel = r * cols + c;
            for (Eigen::Index pr = 0; pr < side; ++pr) {
                for (Eigen::Index pc = 0; pc < side; ++pc) {
                    result.data(pr * side + pc, pixel) = padded(r + pr, c + pc);
                }
            }
        }
    }
    return result;
}

} // namespace mixer
