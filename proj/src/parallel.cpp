#include "betaspec/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace betaspec {

int resolve_threads(int requested) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (requested < 1) return 1;
    return static_cast<int>(std::min<unsigned>(static_cast<unsigned>(requested), hw));
}

ChunkRange chunk_range(std::size_t n, std::size_t chunks, std::size_t chunk) {
    const std::size_t q = n / chunks;
    const std::size_t r = n % chunks;
    const std::size_t begin = chunk * q + std::min(chunk, r);
    const std::size_t end = begin + q + (chunk < r ? 1 : 0);
    return {begin, end};
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const int workers = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace betaspec
