// Exact arithmetic tables for the sum-of-two-squares counting function:
// r(n) = #{(a,b) in Z^2 : a^2+b^2 = n}, its prefix sums s(x) = sum_{n<=x} r(n)
// (the Gauss circle count) and E(x) = sum_{n<=x} r(n)^2.
//
// r(n) is available through two independent routes that cross-validate each
// other: a per-value divisor-character formula (r_single) and a lattice-point
// sieve (build_repr_table).

#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "intx.hpp"
#include "parallel.hpp"

namespace disten {

// Memory budgets, in cells / points. Exceeding one raises capacity_error.
struct Limits {
    u64 table_cells = 400'000'000;     // r-table size M+1
    u64 histogram_cells = 100'000'000; // dense histogram size max_sq_dist+1
    u64 points = 20'000'000;           // point-set cardinality
};

// r(n), r(0) = 1. Multiplicative divisor-character evaluation:
// r(n) = 4 * prod over p^e || n of (e+1 if p = 1 mod 4,
//                                   [e even] if p = 3 mod 4, 1 if p = 2).
// Trial division, valid for any u64 n (intended range n <= 1e12).
inline u64 r_single(u64 n) {
    if (n == 0) return 1;
    while ((n & 1) == 0) n >>= 1;
    u64 result = 4;
    for (u64 p = 3; p * p <= n; p += 2) {
        if (n % p != 0) continue;
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (p % 4 == 3) {
            if (e & 1) return 0;
        } else {
            result *= (e + 1);
        }
    }
    if (n > 1) { // leftover prime factor
        if (n % 4 == 3) return 0;
        result *= 2;
    }
    return result;
}

// |Z^2 ∩ B_sqrt(N)(0,0)| by row summation of floor(sqrt(N - x^2)) terms.
inline u64 disk_cardinality(u64 N) {
    u64 R = isqrt(N);
    u64 count = 2 * isqrt(N) + 1; // the x = 0 column
    for (u64 x = 1; x <= R; ++x) count += 2 * (2 * isqrt(N - x * x) + 1);
    return count;
}

struct ReprTable {
    u64 limit = 0;                  // M
    std::vector<std::uint32_t> r;   // r(n), n in [0, M]
    std::vector<u64> prefix_r;      // s(x) = sum_{n<=x} r(n)
    std::vector<u128> prefix_r2;    // E(x) = sum_{n<=x} r(n)^2

    u64 r_at(u64 n) const { return r[n]; }
    u64 s(u64 x) const { return prefix_r[x]; }
    u128 E(u64 x) const { return prefix_r2[x]; }
};

// Sieve of r(n) for n <= M. Each lattice point (a,b) with a^2+b^2 <= M
// contributes one increment; signed symmetry is folded into +4 steps over
// the positive quadrant and axes. Parallelised over disjoint segments of
// the n axis, so the table is bit-identical to the serial result.
inline ReprTable build_repr_table(u64 M, const Limits& limits = {},
                                  unsigned threads = 0) {
    if (M + 1 > limits.table_cells)
        throw capacity_error("r-table of " + std::to_string(M + 1) +
                             " cells exceeds budget of " +
                             std::to_string(limits.table_cells));
    ReprTable t;
    t.limit = M;
    t.r.assign(M + 1, 0);

    unsigned nthreads = resolve_threads(threads);
    u64 seg = M / (8 * static_cast<u64>(nthreads)) + 1;
    if (seg < (1u << 16)) seg = (1u << 16);
    u64 seg_count = M / seg + 1;

    parallel_chunks(seg_count, threads, [&](u64 si) {
        u64 lo = si * seg;
        u64 hi_excl = lo + seg; // cells [lo, min(hi_excl, M+1))
        if (hi_excl > M + 1) hi_excl = M + 1;
        if (lo >= hi_excl) return;
        u64 top = hi_excl - 1;
        if (lo == 0) t.r[0] = 1;
        // axis points (±a, 0), (0, ±a)
        for (u64 a = lo == 0 ? 1 : isqrt_ceil(lo); a * a <= top; ++a)
            t.r[a * a] += 4;
        // quadrant points (±a, ±b), a,b >= 1
        u64 amax = isqrt(top > 0 ? top - 1 : 0);
        for (u64 a = 1; a <= amax; ++a) {
            u64 a2 = a * a;
            u64 b = lo > a2 ? isqrt_ceil(lo - a2) : 1;
            u64 bmax = isqrt(top - a2);
            for (; b <= bmax; ++b) t.r[a2 + b * b] += 4;
        }
    });

    t.prefix_r.resize(M + 1);
    t.prefix_r2.resize(M + 1);
    u64 s_acc = 0;
    u128 e_acc = 0;
    for (u64 n = 0; n <= M; ++n) {
        s_acc += t.r[n];
        u128 sq = static_cast<u128>(t.r[n]) * t.r[n];
        e_acc = checked_add(e_acc, sq);
        t.prefix_r[n] = s_acc;
        t.prefix_r2[n] = e_acc;
    }
    return t;
}

// Empirical ratios E(x) / (4 x ln x) at the given checkpoints. Natural log.
inline std::vector<std::pair<u64, double>>
verify_lemma2(const ReprTable& table, std::span<const u64> checkpoints) {
    std::vector<std::pair<u64, double>> out;
    out.reserve(checkpoints.size());
    for (u64 x : checkpoints) {
        if (x < 2 || x > table.limit)
            throw std::out_of_range("lemma-2 checkpoint " + std::to_string(x) +
                                    " outside [2, " + std::to_string(table.limit) + "]");
        double denom = 4.0 * static_cast<double>(x) * std::log(static_cast<double>(x));
        out.emplace_back(x, static_cast<double>(to_long_double(table.E(x)) / denom));
    }
    return out;
}

inline void export_repr_csv(const ReprTable& t, std::ostream& os) {
    os << "n,r,prefix_r,prefix_r2\n";
    for (u64 n = 0; n <= t.limit; ++n)
        os << n << ',' << t.r[n] << ',' << t.prefix_r[n] << ','
           << to_string(t.prefix_r2[n]) << '\n';
}

} // namespace disten
