#pragma once

#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

#include "fibertool/rational.hpp"

namespace fibertool {

/// Inclusive integer range; empty when hi < lo.
struct ChunkRange {
    Int lo;
    Int hi;
};

/// Split [lo, hi] into at most `workers` contiguous chunks of near-equal size,
/// in ascending order. Empty input gives no chunks.
inline std::vector<ChunkRange> split_range(const Int& lo, const Int& hi, int workers) {
    std::vector<ChunkRange> chunks;
    if (hi < lo) return chunks;
    if (workers < 1) throw Error("worker count must be >= 1");
    Int total = hi - lo + 1;
    Int n = (total < workers) ? total : Int(workers);
    Int base = total / n;
    Int rem = total % n;
    Int start = lo;
    for (Int i = 0; i < n; ++i) {
        Int len = base + (i < rem ? 1 : 0);
        chunks.push_back({start, start + len - 1});
        start += len;
    }
    return chunks;
}

/// Apply `fn` to every chunk of [lo, hi], possibly on separate threads, and
/// return the per-chunk results in chunk order. The output is a pure function
/// of (lo, hi, workers, fn) — scheduling never reorders it — so callers get
/// results identical to a sequential run. Exceptions from workers are
/// re-thrown (first chunk in order wins).
template <class Fn>
auto map_chunks(const Int& lo, const Int& hi, int workers, Fn fn)
    -> std::vector<std::invoke_result_t<Fn, const ChunkRange&>> {
    using Result = std::invoke_result_t<Fn, const ChunkRange&>;
    std::vector<ChunkRange> chunks = split_range(lo, hi, workers);
    std::vector<Result> parts(chunks.size());
    if (chunks.empty()) return parts;
    if (chunks.size() == 1) {
        parts[0] = fn(chunks[0]);
        return parts;
    }
    std::vector<std::exception_ptr> errors(chunks.size());
    std::vector<std::thread> pool;
    pool.reserve(chunks.size());
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        pool.emplace_back([&, i] {
            try {
                parts[i] = fn(chunks[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return parts;
}

}  // namespace fibertool
