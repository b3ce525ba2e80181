#pragma once

#include <cstdint>
#include <vector>

namespace mixer {

// Standardized pseudorandom tensor. `values` holds the full sequence after
// global standardization, laid out row-major over `dims`.
struct LcgTensor {
    std::vector<std::int64_t> dims;
    std::vector<double> values;

    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
};

// Raw congruential sequence (v_0, ..., v_{L-1}) with
//   v_0 = L+1,  v_{k+1} = (a v_k + b) mod c,  a = L+2, b = L+3, c = L^2.
// Arithmetic is exact; operands reach ~L^3 and are carried in 128-bit
// integers. Lengths above 2^31 are rejected (element values would no longer
// fit the return type, and such tensors are not allocatable anyway).
std::vector<std::int64_t> lcg_sequence(std::int64_t length);

// Fills a tensor of the given dimensions from the congruential sequence of
// length prod(dims), standardized globally (sample mean 0, sample standard
// deviation 1 with the L-1 denominator) before the row-major reshape.
// Throws DegenerateSequenceError when the raw sequence is constant.
LcgTensor standardized_tensor(const std::vector<std::int64_t>& dims);

} // namespace mixer
