// The arc-fraction model for disk distance counts.
//
// For P = Z^2 ∩ B_sqrt(N)(0,0), the circle of radius sqrt(n) around an
// interior center carries all r(n) lattice directions; near the boundary
// only the arc inside the disk survives. The model weight
//
//   w(u) = 2 arccos(sqrt(u)/2) - sqrt(u(4-u))/2,   u = n/N in [0, 4],
//
// is the average surviving fraction times pi, and the main-term model is
// R(n) ≈ w(n/N) N r(n). The exact side of the same picture is the ball
// count s_{a,b}(n) = #{q in P : |q-(a,b)|^2 <= n} whose summed increments
// reproduce R(n) exactly.

#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "arith.hpp"
#include "intx.hpp"
#include "lattice.hpp"
#include "parallel.hpp"

namespace disten {

// w(u) on [0, 4]; strictly decreasing, w(0) = pi, w(4) = 0.
inline double arc_weight(double u) {
    double t = u / 4.0;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    // 2 arccos(sqrt(t)) - 2 sqrt(t(1-t)), with arccos(sqrt(t)) = asin(sqrt(1-t))
    // so the value stays accurate near u = 4.
    double omt = 1.0 - t;
    return 2.0 * std::asin(std::sqrt(omt)) - 2.0 * std::sqrt(t * omt);
}

namespace detail {

// sqrt(c) + sqrt(n) <= sqrt(N), all integers: 4cn <= (N-c-n)^2 with N >= c+n.
inline bool sum_of_roots_le(u64 c, u64 n, u64 N) {
    if (c + n > N) return false;
    u128 lhs = static_cast<u128>(4) * c * n;
    u128 d = N - c - n;
    return lhs <= d * d;
}

} // namespace detail

// Arc-fraction estimate of r_{a,b}(n) for a center (a,b) of the disk of
// scale N. Exact integer case tests; the arccos argument is clamped to
// [-1, 1] against floating-point spill at the case seams.
inline double r_tilde(i64 a, i64 b, u64 n, u64 N, u64 r_n) {
    u64 c = static_cast<u64>(a * a + b * b);
    if (c > N) throw std::invalid_argument("r_tilde center outside the disk");
    if (n <= N && detail::sum_of_roots_le(c, n, N)) return static_cast<double>(r_n); // interior
    if (n > N && detail::sum_of_roots_le(c, N, n)) return 0.0;                       // circle outside
    if (r_n == 0) return 0.0;
    double num = static_cast<double>(static_cast<i64>(c) + static_cast<i64>(n) - static_cast<i64>(N));
    double den = 2.0 * std::sqrt(static_cast<double>(n) * static_cast<double>(c));
    double arg = std::clamp(num / den, -1.0, 1.0);
    return static_cast<double>(r_n) / M_PI * std::acos(arg);
}

inline double r_tilde(i64 a, i64 b, u64 n, u64 N) {
    return r_tilde(a, b, n, N, r_single(n));
}

// Main-term model of R(n): w(n/N) * N * r(n). Exactly 0 when r(n) = 0.
inline double model_R(u64 n, u64 N, u64 r_n) {
    if (n > 4 * N) throw std::out_of_range("model_R: n > 4N");
    if (r_n == 0) return 0.0;
    return arc_weight(static_cast<double>(n) / static_cast<double>(N)) *
           static_cast<double>(N) * static_cast<double>(r_n);
}

// s_{a,b}(n): points of the disk point set within squared distance n of the
// center (a,b). Counted by row-wise intersection of the two disks.
inline u64 s_ab(i64 a, i64 b, u64 n, u64 N) {
    if (static_cast<u64>(a * a + b * b) > N)
        throw std::invalid_argument("s_ab center outside the disk");
    if (n > 4 * N) throw std::out_of_range("s_ab: n > 4N");
    i64 R = static_cast<i64>(isqrt(N));
    i64 rn = static_cast<i64>(isqrt(n));
    i64 xlo = std::max(-R, a - rn), xhi = std::min(R, a + rn);
    u64 count = 0;
    for (i64 x = xlo; x <= xhi; ++x) {
        i64 w1 = static_cast<i64>(isqrt(N - static_cast<u64>(x * x)));
        i64 w2 = static_cast<i64>(isqrt(n - static_cast<u64>((x - a) * (x - a))));
        i64 hi = std::min(w1, b + w2);
        i64 lo = std::max(-w1, b - w2);
        if (hi >= lo) count += static_cast<u64>(hi - lo + 1);
    }
    return count;
}

// S(n) = sum over centers (a,b) in P of s_{a,b}(n). S(n) - S(n-1) = R(n)
// for n >= 1 is an exact identity (both sides count ordered pairs of P).
inline u128 S_sum(u64 n, u64 N, unsigned threads = 0) {
    i64 R = static_cast<i64>(isqrt(N));
    u64 rows = static_cast<u64>(2 * R + 1);
    std::vector<u128> partial(rows, 0);
    parallel_chunks(rows, threads, [&](u64 row) {
        i64 a = -R + static_cast<i64>(row);
        i64 wa = static_cast<i64>(isqrt(N - static_cast<u64>(a * a)));
        u128 acc = 0;
        for (i64 b = -wa; b <= wa; ++b) acc += s_ab(a, b, n, N);
        partial[row] = acc;
    });
    u128 total = 0;
    for (u128 v : partial) total = checked_add(total, v);
    return total;
}

// Model-vs-exact curve, one row per realized n: n, R_exact, R_model, |diff|/N.
inline void export_model_csv(const DistanceHistogram& h, const ReprTable& table,
                             std::ostream& os) {
    u64 N = h.scale;
    os << "n,R_exact,R_model,abs_dev_over_N\n";
    char buf[64];
    for (u64 n = 1; n < h.counts.size(); ++n) {
        u64 rn = table.r_at(n);
        if (rn == 0 && h.counts[n] == 0) continue;
        double model = model_R(n, N, rn);
        double dev = std::abs(static_cast<double>(h.counts[n]) - model) /
                     static_cast<double>(N);
        std::snprintf(buf, sizeof buf, "%.12g,%.12g", model, dev);
        os << n << ',' << h.counts[n] << ',' << buf << '\n';
    }
}

} // namespace disten
