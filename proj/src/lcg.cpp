#include "mixer/lcg.hpp"

#include <cmath>
#include <string>

#include "mixer/errors.hpp"

namespace mixer {

namespace {

using uint128 = unsigned __int128;

// Element values live below c = L^2 and must fit std::int64_t.
constexpr std::int64_t kMaxLength = std::int64_t{1} << 31;

// Neumaier compensated accumulation.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + carry; }
};

} // namespace

std::vector<std::int64_t> lcg_sequence(std::int64_t length) {
    if (length < 2) {
        throw InvalidArgumentError("lcg_sequence: length must be at least 2, got " +
                                   std::to_string(length));
    }
    if (length > kMaxLength) {
        throw InvalidArgumentError("lcg_sequence: length " + std::to_string(length) +
                                   " exceeds the exact-arithmetic limit 2^31");
    }

    const uint128 a = static_cast<uint128>(length) + 2;
    const uint128 b = static_cast<uint128>(length) + 3;
    const uint128 c = static_cast<uint128>(length) * static_cast<uint128>(length);

    std::vector<std::int64_t> seq(static_cast<std::size_t>(length));
    uint128 v = static_cast<uint128>(length) + 1;
    seq[0] = static_cast<std::int64_t>(v);
    for (std::int64_t k = 1; k < length; ++k) {
        v = (a * v + b) % c;
        seq[static_cast<std::size_t>(k)] = static_cast<std::int64_t>(v);
    }
    return seq;
}

LcgTensor standardized_tensor(const std::vector<std::int64_t>& dims) {
    if (dims.empty()) {
        throw InvalidArgumentError("standardized_tensor: dims must be non-empty");
    }
    uint128 count = 1;
    for (std::int64_t d : dims) {
        if (d < 1) {
            throw InvalidArgumentError("standardized_tensor: dimension sizes must be positive, got " +
                                       std::to_string(d));
        }
        count *= static_cast<uint128>(d);
        if (count > static_cast<uint128>(kMaxLength)) {
            throw InvalidArgumentError("standardized_tensor: element count exceeds the supported limit 2^31");
        }
    }
    const auto length = static_cast<std::int64_t>(count);

    const std::vector<std::int64_t> seq = lcg_sequence(length);

    // Exact integer sum keeps the mean accurate enough that the standardized
    // residual mean stays below 1e-9 even for large lengths.
    uint128 total = 0;
    for (std::int64_t v : seq) total += static_cast<uint128>(v);
    const double mean = static_cast<double>(total) / static_cast<double>(length);

    CompensatedSum dev_sum;
    CompensatedSum dev_sq_sum;
    std::vector<double> values(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const double d = static_cast<double>(seq[i]) - mean;
        values[i] = d;
        dev_sum.add(d);
        dev_sq_sum.add(d * d);
    }

    const double n = static_cast<double>(length);
    const double variance = (dev_sq_sum.value() - dev_sum.value() * dev_sum.value() / n) / (n - 1.0);
    if (!(variance > 0.0)) {
        throw DegenerateSequenceError("standardized_tensor: constant congruential sequence for length " +
                                      std::to_string(length) + "; standardization is undefined");
    }
    const double stddev = std::sqrt(variance);
    for (double& v : values) v /= stddev;

    return LcgTensor{dims, std::move(values)};
}

} // namespace mixer
