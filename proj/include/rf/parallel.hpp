#pragma once

#include <cstdint>
#include <functional>

namespace rf {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Worker count resolution: set_threads(n) > RESIDUE_FORGE_THREADS > logical cores.
unsigned effective_threads();
void set_threads(unsigned n);  // 0 restores auto detection

// Runs body(chunk_index, chunk_lo, chunk_hi) over [lo, hi) split into fixed-size
// chunks. Chunk boundaries depend only on `chunk`, never on the worker count, so
// callers that merge per-chunk results in index order get identical output for
// any thread count.
void for_chunks(u64 lo, u64 hi, u64 chunk,
                const std::function<void(std::size_t, u64, u64)>& body);

}  // namespace rf
