#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace tci {

/// out[i] = fn(i) for i in [0, count), spread over `workers` threads in
/// contiguous blocks. Results land in index order, so any reduction done
/// afterwards is independent of the worker count. The first exception
/// (by index) is rethrown.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, unsigned workers, Fn&& fn) {
    std::vector<T> out(count);
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    const std::size_t threads = std::min<std::size_t>(workers, count);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t begin = count * w / threads;
            const std::size_t end = count * (w + 1) / threads;
            try {
                for (std::size_t i = begin; i < end; ++i) out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

}  // namespace tci
