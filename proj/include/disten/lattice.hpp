// Exact point sets and exact squared-distance statistics.
//
// Two point-set families share one histogram contract:
//   disk: Z^2 ∩ B_sqrt(N)(0,0)          grid: {1..floor(sqrt(N))}^2
//
// R(n) counts ordered pairs (p,q), p != q, at squared distance n. Two
// independently implemented backends must agree exactly: histogram_pairs
// enumerates every pair (the oracle), histogram_vector_scan counts, for each
// difference vector v, the translates p, p+v inside the set via per-row
// interval intersection, folding the 8-fold dihedral symmetry.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "intx.hpp"
#include "parallel.hpp"

namespace disten {

enum class SetKind : std::uint8_t { disk = 0, grid = 1 };

inline const char* to_cstring(SetKind k) { return k == SetKind::disk ? "disk" : "grid"; }

inline SetKind set_kind_from_string(const std::string& s) {
    if (s == "disk") return SetKind::disk;
    if (s == "grid") return SetKind::grid;
    throw std::invalid_argument("unknown point-set kind '" + s + "'");
}

struct Point {
    std::int32_t x = 0;
    std::int32_t y = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

struct PointSet {
    SetKind kind = SetKind::disk;
    u64 scale = 1;              // N
    std::vector<Point> points;  // lexicographic (x, then y)

    u64 grid_side() const { return isqrt(scale); }

    u64 max_sq_dist() const {
        if (kind == SetKind::disk) return 4 * scale;
        u64 s = grid_side();
        return 2 * (s - 1) * (s - 1);
    }

    bool contains(i64 x, i64 y) const {
        if (kind == SetKind::disk)
            return static_cast<u64>(x * x + y * y) <= scale;
        u64 s = grid_side();
        return x >= 1 && y >= 1 && x <= static_cast<i64>(s) && y <= static_cast<i64>(s);
    }
};

inline PointSet build_point_set(SetKind kind, u64 N, const Limits& limits = {}) {
    if (N < 1) throw std::invalid_argument("point-set scale N must be >= 1");
    PointSet p;
    p.kind = kind;
    p.scale = N;
    if (kind == SetKind::disk) {
        u64 estimate = 4 * N + 5; // pi N plus slack
        if (estimate > limits.points)
            throw capacity_error("disk N=" + std::to_string(N) + " exceeds point budget");
        i64 R = static_cast<i64>(isqrt(N));
        for (i64 x = -R; x <= R; ++x) {
            i64 w = static_cast<i64>(isqrt(N - static_cast<u64>(x * x)));
            for (i64 y = -w; y <= w; ++y)
                p.points.push_back({static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
        }
    } else {
        u64 s = isqrt(N);
        if (s * s > limits.points)
            throw capacity_error("grid N=" + std::to_string(N) + " exceeds point budget");
        for (u64 x = 1; x <= s; ++x)
            for (u64 y = 1; y <= s; ++y)
                p.points.push_back({static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
    }
    return p;
}

struct DistanceHistogram {
    SetKind kind = SetKind::disk;
    u64 scale = 1;           // N of the source set
    u64 zero_count = 0;      // R(0) = |P|, kept apart from the pair counts
    std::vector<u64> counts; // counts[n] = R(n), n in [0, max_sq_dist]; counts[0] == 0

    u64 at(u64 n) const { return n < counts.size() ? counts[n] : 0; }

    friend bool operator==(const DistanceHistogram&, const DistanceHistogram&) = default;
};

namespace detail {

inline DistanceHistogram make_empty_histogram(const PointSet& p, const Limits& limits) {
    u64 cells = p.max_sq_dist() + 1;
    if (cells > limits.histogram_cells)
        throw capacity_error("histogram of " + std::to_string(cells) +
                             " cells exceeds budget of " +
                             std::to_string(limits.histogram_cells));
    DistanceHistogram h;
    h.kind = p.kind;
    h.scale = p.scale;
    h.zero_count = p.points.size();
    h.counts.assign(cells, 0);
    return h;
}

// Orbit size of (dx, dy), dx >= dy >= 0, (dx,dy) != 0, under the dihedral
// symmetry group of the set: 4 for axis and diagonal vectors, 8 otherwise.
inline u64 vector_orbit_size(u64 dx, u64 dy) { return (dy == 0 || dx == dy) ? 4 : 8; }

} // namespace detail

// Oracle backend: enumerate all unordered pairs, count each twice.
inline DistanceHistogram histogram_pairs(const PointSet& p, unsigned threads = 0,
                                         const Limits& limits = {}) {
    DistanceHistogram h = detail::make_empty_histogram(p, limits);
    const auto& pts = p.points;
    u64 npts = pts.size();
    u64 cells = h.counts.size();

    unsigned nthreads = resolve_threads(threads);
    u64 chunk = npts / (16 * static_cast<u64>(nthreads)) + 1;
    u64 chunk_count = (npts + chunk - 1) / chunk;

    std::vector<std::vector<u64>> locals(nthreads);
    parallel_chunks_indexed(chunk_count, threads, [&](unsigned id, u64 c) {
        std::vector<u64>& local = locals[id];
        if (local.empty()) local.assign(cells, 0);
        u64 lo = c * chunk, hi = std::min(npts, lo + chunk);
        for (u64 i = lo; i < hi; ++i) {
            for (u64 j = i + 1; j < npts; ++j) {
                i64 dx = static_cast<i64>(pts[i].x) - pts[j].x;
                i64 dy = static_cast<i64>(pts[i].y) - pts[j].y;
                local[static_cast<u64>(dx * dx + dy * dy)] += 2;
            }
        }
    });
    for (const auto& local : locals)
        for (u64 n = 0; n < local.size(); ++n) h.counts[n] += local[n];
    return h;
}

// Fast backend, O(N^{3/2}) for the disk and O(N) for the grid.
inline DistanceHistogram histogram_vector_scan(const PointSet& p, unsigned threads = 0,
                                               const Limits& limits = {}) {
    DistanceHistogram h = detail::make_empty_histogram(p, limits);

    if (p.kind == SetKind::grid) {
        u64 s = p.grid_side();
        for (u64 dx = 1; dx < s; ++dx)
            for (u64 dy = 0; dy <= dx; ++dy)
                h.counts[dx * dx + dy * dy] +=
                    detail::vector_orbit_size(dx, dy) * (s - dx) * (s - dy);
        return h;
    }

    // disk: count translate pairs row by row. halfw[|x|] is the column height.
    // Orbit representatives are (dx, dy) with dx >= dy >= 0; dx >= 1 always,
    // since (0,0) is excluded and dy <= dx. Vectors with dx > 2R pair nothing.
    u64 N = p.scale;
    i64 R = static_cast<i64>(isqrt(N));
    std::vector<i64> halfw(static_cast<u64>(R) + 1);
    for (i64 x = 0; x <= R; ++x)
        halfw[static_cast<u64>(x)] = static_cast<i64>(isqrt(N - static_cast<u64>(x * x)));
    auto width = [&](i64 x) { return halfw[static_cast<u64>(x < 0 ? -x : x)]; };

    u64 max_d = 2 * static_cast<u64>(R);
    unsigned nthreads = resolve_threads(threads);
    std::vector<std::vector<u64>> locals(nthreads);

    parallel_chunks_indexed(max_d, threads, [&](unsigned id, u64 c) {
        u64 dx = c + 1;
        if (dx * dx > 4 * N) return;
        std::vector<u64>& local = locals[id];
        if (local.empty()) local.assign(h.counts.size(), 0);
        u64 dymax = std::min(dx, isqrt(4 * N - dx * dx));
        i64 sdx = static_cast<i64>(dx);
        for (u64 dy = 0; dy <= dymax; ++dy) {
            i64 sdy = static_cast<i64>(dy);
            u64 cnt = 0;
            for (i64 x = -R; x + sdx <= R; ++x) {
                i64 w1 = width(x), w2 = width(x + sdx);
                i64 hi = std::min(w1, w2 - sdy);
                i64 lo = std::max(-w1, -w2 - sdy);
                if (hi >= lo) cnt += static_cast<u64>(hi - lo + 1);
            }
            local[dx * dx + dy * dy] += detail::vector_orbit_size(dx, dy) * cnt;
        }
    });
    for (const auto& local : locals)
        for (u64 n = 0; n < local.size(); ++n) h.counts[n] += local[n];
    return h;
}

// Sum over n >= 1 of R(n); equals |P|^2 - |P|.
inline u128 ordered_pair_total(const DistanceHistogram& h) {
    u128 total = 0;
    for (u64 n = 1; n < h.counts.size(); ++n) total += h.counts[n];
    return total;
}

// Distance energy E2 = sum R(n)^2 over n >= 1, plus R(0)^2 when the
// zero-distance quadruples are included.
inline u128 energy(const DistanceHistogram& h, bool include_zero) {
    u128 total = 0;
    for (u64 n = 1; n < h.counts.size(); ++n) {
        u128 sq = static_cast<u128>(h.counts[n]) * h.counts[n];
        total = checked_add(total, sq);
    }
    if (include_zero)
        total = checked_add(total, static_cast<u128>(h.zero_count) * h.zero_count);
    return total;
}

// Points of P at squared distance n from a center that must belong to P.
inline u64 r_ab(const PointSet& p, Point center, u64 n) {
    if (!p.contains(center.x, center.y))
        throw std::invalid_argument("r_ab center (" + std::to_string(center.x) + "," +
                                    std::to_string(center.y) + ") is not in the point set");
    u64 count = 0;
    i64 dmax = static_cast<i64>(isqrt(n));
    for (i64 dx = -dmax; dx <= dmax; ++dx) {
        u64 rem = n - static_cast<u64>(dx * dx);
        u64 dy;
        if (!is_square(rem, dy)) continue;
        i64 x = center.x + dx;
        count += p.contains(x, center.y + static_cast<i64>(dy)) ? 1 : 0;
        if (dy != 0) count += p.contains(x, center.y - static_cast<i64>(dy)) ? 1 : 0;
    }
    return count;
}

// Number of realized nonzero squared distances.
inline u64 distinct_distances(const DistanceHistogram& h) {
    u64 count = 0;
    for (u64 n = 1; n < h.counts.size(); ++n) count += h.counts[n] > 0 ? 1 : 0;
    return count;
}

} // namespace disten
