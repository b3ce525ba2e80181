#include "mixer/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "mixer/errors.hpp"

namespace mixer {

void parallel_for(std::int64_t count, int jobs, const std::function<void(std::int64_t)>& fn) {
    if (jobs < 1) {
        throw InvalidArgumentError("worker count must be >= 1, got " + std::to_string(jobs));
    }
    if (count <= 0) return;

    const int workers = static_cast<int>(std::min<std::int64_t>(jobs, count));
    if (workers == 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::mutex error_mutex;
    std::exception_ptr first_error;
    const std::int64_t chunk = (count + workers - 1) / workers;

    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const std::int64_t begin = static_cast<std::int64_t>(w) * chunk;
        const std::int64_t end = std::min(begin + chunk, count);
        if (begin >= end) break;
        threads.emplace_back([&, begin, end] {
            try {
                for (std::int64_t i = begin; i < end; ++i) {
                    {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (first_error) return;
                    }
                    fn(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& thread : threads) thread.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace mixer
