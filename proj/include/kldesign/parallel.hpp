#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace kld {

/// Hardware concurrency, at least 1.
inline std::size_t default_thread_count() noexcept {
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs task(i) for i in [0, count) on up to `threads` workers. Tasks must
/// write only to their own slot of any shared output. If tasks throw, the
/// exception of the lowest failing index is rethrown after all workers join,
/// so failures are reported the same way regardless of scheduling.
template <class Task>
void parallel_for(std::size_t count, std::size_t threads, Task&& task) {
    std::vector<std::exception_ptr> errors(count);
    const auto run = [&](std::size_t i) {
        try {
            task(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) run(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) run(i);
            });
        }
    }

    for (const auto& error : errors) {
        if (error) std::rethrow_exception(error);
    }
}

}  // namespace kld
