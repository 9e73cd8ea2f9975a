#include "rf/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rf {

namespace {
unsigned g_threads = 0;  // 0 = auto

unsigned detect_threads() {
    if (const char* env = std::getenv("RESIDUE_FORGE_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}
}  // namespace

unsigned effective_threads() { return g_threads ? g_threads : detect_threads(); }

void set_threads(unsigned n) { g_threads = n; }

void for_chunks(u64 lo, u64 hi, u64 chunk,
                const std::function<void(std::size_t, u64, u64)>& body) {
    if (hi <= lo) return;
    if (chunk == 0) chunk = 1;
    const u64 span = hi - lo;
    const std::size_t nchunks = static_cast<std::size_t>((span + chunk - 1) / chunk);
    unsigned workers = effective_threads();
    if (workers > nchunks) workers = static_cast<unsigned>(nchunks);

    if (workers <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) {
            u64 clo = lo + static_cast<u64>(c) * chunk;
            u64 chi = std::min(hi, clo + chunk);
            body(c, clo, chi);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t c = next.fetch_add(1);
                if (c >= nchunks) break;
                u64 clo = lo + static_cast<u64>(c) * chunk;
                u64 chi = std::min(hi, clo + chunk);
                body(c, clo, chi);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace rf
