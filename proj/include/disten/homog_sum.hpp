// Asymptotics of sums  sum_{n<=N} f(n,N) g(n)  for f homogeneous of degree
// alpha (f(n,N) = N^alpha * profile(n/N)) and g slowly varying (log-like).
//
// Three routes are exposed and cross-checked by the tests:
//   direct_sum     exact evaluation, compensated summation
//   block_estimate the double-counting sandwich: partition [1,N] into K
//                  blocks, bound the profile by its per-block inf/sup and
//                  factor out the exact block masses of g
//   predict        the limit law  c * N^{1+alpha} * g(N),  c = int_0^1 f(t,1) dt
//                  with c from tanh-sinh quadrature.

#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "intx.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace disten {

// A maximal interval on which the unit profile is monotone. Declared by the
// profile author; blocks fully inside a declared segment get exact extrema.
struct MonotoneSegment {
    double lo, hi;
    bool increasing;
};

struct HomogeneousSpec {
    std::string name;
    double degree = 0.0; // alpha
    std::function<double(double, double)> profile; // f(t,1) as (t, 1-t), t in (0,1]
    bool singular_at_zero = false;
    bool singular_at_one = false; // raw form diverges at t=1: sums stop at n = N-1
    std::vector<MonotoneSegment> monotone;

    // f(x,y) = y^degree * profile(x/y)
    double value(double x, double y) const {
        double t = x / y;
        return std::pow(y, degree) * profile(t, 1.0 - t);
    }
};

struct SlowFactor {
    std::string name;
    std::function<double(u64)> eval;  // g(n), n >= 1
    std::function<double(u64)> delta; // slow-variation window threshold, default 1/K(N)
};

inline u64 default_block_count(u64 N) {
    // K = floor(exp(sqrt(ln N))): concrete N^{o(1)} schedule
    u64 K = static_cast<u64>(std::exp(std::sqrt(std::log(static_cast<double>(N)))));
    if (K < 2) K = 2;
    if (K > N) K = N;
    return K;
}

// sum_{n=1}^{N} f(n,N) g(n); the n = N term is dropped for profiles whose
// raw form is singular at t = 1 (their summation ranges stop at N-1).
// The N^alpha scale is applied once at the end, so degree-alpha results are
// exactly N^alpha times the degree-0 normalization.
inline double direct_sum(const HomogeneousSpec& f, const SlowFactor& g, u64 N,
                         unsigned threads = 0) {
    if (N < 2) throw std::invalid_argument("direct_sum requires N >= 2");
    u64 last = f.singular_at_one ? N - 1 : N;
    double Nd = static_cast<double>(N);
    std::atomic<bool> bad{false};
    double sum = chunked_sum(1, last, threads, [&](u64 n) {
        double t = static_cast<double>(n) / Nd;
        double omt = static_cast<double>(N - n) / Nd;
        double v = f.profile(t, omt) * g.eval(n);
        if (!std::isfinite(v)) {
            bad.store(true, std::memory_order_relaxed);
            return 0.0;
        }
        return v;
    });
    if (bad.load())
        throw std::domain_error("non-finite profile value inside [1," +
                                std::to_string(last) + "] for " + f.name);
    return std::pow(Nd, f.degree) * sum;
}

struct Block {
    u64 first_n, last_n;
    double xi, eta;   // inf / sup of the unit profile over the block
    double g_mass;    // exact sum of g(n) over the block
    bool resolved;    // extrema exact (monotone segment) and g >= 0 on block
};

struct BlockEstimate {
    u64 K = 0;
    double lower = 0.0, upper = 0.0, midpoint = 0.0;
    bool all_resolved = true;
    std::vector<Block> blocks;
};

// The proof's sandwich: blocks ((m-1)N/K, mN/K], m = 1..K.
inline BlockEstimate block_estimate(const HomogeneousSpec& f, const SlowFactor& g,
                                    u64 N, u64 K) {
    if (K < 2 || K > N) throw std::invalid_argument("block count K must be in [2, N]");
    u64 last = f.singular_at_one ? N - 1 : N;
    double Nd = static_cast<double>(N);

    BlockEstimate est;
    est.K = K;
    est.blocks.reserve(K);
    KahanSum lower, upper;

    auto inside_segment = [&](double lo, double hi, const MonotoneSegment*& seg) {
        for (const auto& s : f.monotone)
            if (s.lo <= lo + 1e-15 && hi <= s.hi + 1e-15) { seg = &s; return true; }
        return false;
    };

    u64 prev_boundary = 0;
    for (u64 m = 1; m <= K; ++m) {
        u64 boundary = static_cast<u64>((static_cast<u128>(m) * N) / K);
        u64 first = prev_boundary + 1;
        u64 block_last = std::min(boundary, last);
        prev_boundary = boundary;
        if (block_last < first) continue;

        Block blk;
        blk.first_n = first;
        blk.last_n = block_last;
        double t_lo = static_cast<double>(first) / Nd;
        double t_hi = static_cast<double>(block_last) / Nd;

        const MonotoneSegment* seg = nullptr;
        double f_lo = f.profile(t_lo, 1.0 - t_lo);
        double f_hi = f.profile(t_hi, 1.0 - t_hi);
        if (inside_segment(t_lo, t_hi, seg)) {
            blk.xi = seg->increasing ? f_lo : f_hi;
            blk.eta = seg->increasing ? f_hi : f_lo;
            blk.resolved = true;
        } else {
            blk.xi = std::min(f_lo, f_hi);
            blk.eta = std::max(f_lo, f_hi);
            for (int i = 1; i <= 64; ++i) {
                double t = t_lo + (t_hi - t_lo) * i / 65.0;
                double v = f.profile(t, 1.0 - t);
                blk.xi = std::min(blk.xi, v);
                blk.eta = std::max(blk.eta, v);
            }
            blk.resolved = false; // sampled extrema only
        }

        KahanSum mass;
        double g_min = 0.0;
        for (u64 n = first; n <= block_last; ++n) {
            double gv = g.eval(n);
            mass.add(gv);
            g_min = std::min(g_min, gv);
        }
        blk.g_mass = mass.value();
        if (g_min < 0.0) blk.resolved = false; // squeeze needs g >= 0

        lower.add(blk.xi * blk.g_mass);
        upper.add(blk.eta * blk.g_mass);
        est.all_resolved = est.all_resolved && blk.resolved;
        est.blocks.push_back(blk);
    }

    double scale = std::pow(Nd, f.degree);
    est.lower = scale * lower.value();
    est.upper = scale * upper.value();
    est.midpoint = 0.5 * (est.lower + est.upper);
    return est;
}

// c = int_0^1 f(t,1) dt by tanh-sinh quadrature.
inline QuadResult limit_constant(const HomogeneousSpec& f, double tol = 1e-10) {
    return tanh_sinh_01(f.profile, tol);
}

// The limit law c * N^{1+alpha} * g(N).
inline double predict(const HomogeneousSpec& f, const SlowFactor& g, u64 N,
                      double tol = 1e-10) {
    double c = limit_constant(f, tol).value;
    return c * std::pow(static_cast<double>(N), 1.0 + f.degree) * g.eval(N);
}

} // namespace disten
