// Minimal deterministic work-sharing helpers used by the sieves and scans.
//
// All reductions in this project are either exact integer additions (merge
// order irrelevant) or chunked floating-point sums combined in fixed index
// order, so results do not depend on the worker count.

#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "intx.hpp"

namespace disten {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs body(chunk_index) for chunk_index in [0, chunk_count), shared across
// `threads` workers via an atomic cursor.
inline void parallel_chunks(std::uint64_t chunk_count, unsigned threads,
                            const std::function<void(std::uint64_t)>& body) {
    threads = resolve_threads(threads);
    if (threads <= 1 || chunk_count <= 1) {
        for (std::uint64_t c = 0; c < chunk_count; ++c) body(c);
        return;
    }
    std::atomic<std::uint64_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            std::uint64_t c = cursor.fetch_add(1, std::memory_order_relaxed);
            if (c >= chunk_count) return;
            body(c);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

// As parallel_chunks, but body also receives a stable worker index in
// [0, resolve_threads(threads)), for per-worker scratch buffers.
inline void parallel_chunks_indexed(
    std::uint64_t chunk_count, unsigned threads,
    const std::function<void(unsigned, std::uint64_t)>& body) {
    threads = resolve_threads(threads);
    if (threads <= 1 || chunk_count <= 1) {
        for (std::uint64_t c = 0; c < chunk_count; ++c) body(0, c);
        return;
    }
    std::atomic<std::uint64_t> cursor{0};
    auto worker = [&](unsigned id) {
        for (;;) {
            std::uint64_t c = cursor.fetch_add(1, std::memory_order_relaxed);
            if (c >= chunk_count) return;
            body(id, c);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();
}

// Compensated (Kahan) accumulator.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// Sums term(n) for n in [first, last] with a fixed chunk decomposition:
// each chunk is Kahan-summed independently and chunks are folded in index
// order, so the result is bit-identical for every thread count.
template <class Term>
double chunked_sum(u64 first, u64 last, unsigned threads, Term&& term,
                   u64 chunk_size = (1u << 16)) {
    if (last < first) return 0.0;
    u64 count = last - first + 1;
    u64 chunks = (count + chunk_size - 1) / chunk_size;
    std::vector<double> partial(chunks, 0.0);
    parallel_chunks(chunks, threads, [&](u64 c) {
        u64 lo = first + c * chunk_size;
        u64 hi = lo + chunk_size - 1;
        if (hi > last || hi < lo) hi = last;
        KahanSum acc;
        for (u64 n = lo; n <= hi; ++n) acc.add(term(n));
        partial[c] = acc.value();
    });
    KahanSum total;
    for (double p : partial) total.add(p);
    return total.value();
}

} // namespace disten
