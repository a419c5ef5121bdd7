#include "rlnc/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace rlnc {

unsigned worker_count() {
    if (const char* env = std::getenv("RLNC_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void parallel_chunks(std::uint64_t total,
                     const std::function<void(std::uint64_t, std::uint64_t)>& fn) {
    if (total == 0) return;
    const std::uint64_t workers = std::min<std::uint64_t>(worker_count(), total);
    if (workers <= 1) {
        fn(0, total);
        return;
    }
    const std::uint64_t base = total / workers;
    const std::uint64_t extra = total % workers;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::uint64_t begin = 0;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t end = begin + base + (w < extra ? 1 : 0);
        threads.emplace_back(fn, begin, end);
        begin = end;
    }
    for (auto& t : threads) t.join();
}

}  // namespace rlnc
