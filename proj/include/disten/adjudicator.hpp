// Assembles the three-term weighted decomposition of the distance energy
//
//   E2 ≈ 4N^2 Σ r^2(n) arccos^2(sqrt(n/4N))
//      - 2N^2 Σ r^2(n) sqrt((4Nn-n^2)/N^2) arccos(sqrt(n/4N))
//      + (N^2/4) Σ r^2(n) (4Nn-n^2)/N^2            (n = 1..4N)
//
// computes every candidate leading constant of E2 / (N^3 ln N), fits the
// empirical leading coefficient from exact E2 samples, and emits an
// adjudication report. The weighted sums normalized by N^3 ln N converge
// too slowly for the true constant to be read off directly, so the report
// ranks candidates by distance from the fit instead of declaring a winner.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "homog_sum.hpp"
#include "intx.hpp"
#include "parallel.hpp"
#include "profiles.hpp"
#include "quadrature.hpp"

namespace disten {

// Abel summation by parts:
//   sum_{n=1}^{M} (A(n)-A(n-1)) phi(n)
//     = A(M) phi(M) - sum_{n=1}^{M-1} A(n) (phi(n+1)-phi(n)).
// Exact in exact arithmetic; used as a float cross-check of direct sums.
template <class Prefix, class Weight>
double abel_transform(Prefix&& A, Weight&& phi, u64 M) {
    if (A(0) != 0.0) throw std::invalid_argument("abel_transform requires A(0) = 0");
    KahanSum acc;
    for (u64 n = 1; n < M; ++n) acc.add(-A(n) * (phi(n + 1) - phi(n)));
    acc.add(A(M) * phi(M));
    return acc.value();
}

struct EnergyBreakdown {
    u64 N = 0;
    double term1 = 0.0, term2 = 0.0, term3 = 0.0;
    double total = 0.0; // term1 - term2 + term3
    // term2 re-derived by summation by parts with E(n) replaced by its
    // average 4 n ln n; drifts far from the direct sum at any desk-scale N,
    // which the report surfaces rather than reconciles
    double term2_transformed = 0.0;
    std::optional<u128> exact_e2;
};

inline EnergyBreakdown breakdown(u64 N, const ReprTable& table, unsigned threads = 0) {
    if (table.limit < 4 * N)
        throw std::invalid_argument("breakdown needs an r-table up to 4N = " +
                                    std::to_string(4 * N));
    double Nd = static_cast<double>(N);
    double M = 4.0 * Nd;
    auto arccos_term = [&](u64 n) {
        // arccos(sqrt(n/4N)) = asin(sqrt((4N-n)/4N))
        return std::asin(std::sqrt((M - static_cast<double>(n)) / M));
    };
    auto r2 = [&](u64 n) {
        double r = static_cast<double>(table.r_at(n));
        return r * r;
    };

    EnergyBreakdown out;
    out.N = N;
    u64 last = 4 * N;
    out.term1 = 4.0 * Nd * Nd *
                chunked_sum(1, last, threads, [&](u64 n) {
                    double a = arccos_term(n);
                    return r2(n) * a * a;
                });
    out.term2 = 2.0 * Nd * Nd *
                chunked_sum(1, last, threads, [&](u64 n) {
                    double nd = static_cast<double>(n);
                    return r2(n) * std::sqrt(nd * (M - nd)) / Nd * arccos_term(n);
                });
    out.term3 = 0.25 * chunked_sum(1, last, threads, [&](u64 n) {
        double nd = static_cast<double>(n);
        return r2(n) * nd * (M - nd);
    });
    out.total = out.term1 - out.term2 + out.term3;

    // 8N^2 sum_{n<4N} [ (1-2 sqrt(t))/sqrt(1-t) arccos(sqrt(t)) - sqrt(t) ] ln n,
    // t = n/4N: what term2 reduces to under summation by parts and the
    // 4 n ln n density
    HomogeneousSpec c2m = profile_registry("c2-integrand");
    out.term2_transformed =
        8.0 * Nd * Nd *
        chunked_sum(1, last - 1, threads, [&](u64 n) {
            double t = static_cast<double>(n) / M;
            double omt = (M - static_cast<double>(n)) / M;
            return (c2m.profile(t, omt) - std::sqrt(t)) * std::log(static_cast<double>(n));
        });
    return out;
}

struct CandidateConstant {
    std::string label;
    double value = 0.0;
    std::string provenance; // paper-theorem | quadrature-heuristic | component
};

// All candidate leading constants of E2(N) / (N^3 ln N). The two
// non-component entries are the ones worth ranking against the fit; the
// component rows echo the per-term limits on both reading conventions of
// the summation scale.
inline std::vector<CandidateConstant> candidate_constants(double tol = 1e-10) {
    double c1 = limit_constant(profile_registry("c1-integrand"), tol).value;
    double c2 = limit_constant(profile_registry("c2-integrand"), tol).value;
    double acos2 = limit_constant(profile_registry("arccos-sq"), tol).value;
    double wsq = limit_constant(profile_registry("w-sq"), tol).value;

    HomogeneousSpec sqrtprod;
    sqrtprod.name = "sqrtprod-arccos";
    sqrtprod.profile = [](double t, double omt) {
        return std::sqrt(t * omt) * std::asin(std::sqrt(omt));
    };
    double spa = tanh_sinh_01(sqrtprod.profile, tol).value;

    const double pi = M_PI;
    std::vector<CandidateConstant> v;
    v.push_back({"theorem", 4 * pi * pi - 8 * pi + 16, "paper-theorem"});
    v.push_back({"cstar-heuristic", 16.0 * wsq, "quadrature-heuristic"}); // 4 * int_0^4 w^2
    v.push_back({"term1-paper", 16.0 * c1, "component"});
    v.push_back({"term2-paper", 8.0 * (c2 - 2.0 / 3.0), "component"});
    v.push_back({"term3", 32.0 / 3.0, "component"});
    v.push_back({"term1-heuristic", 64.0 * acos2, "component"});  // 16 * int_0^4 arccos^2
    v.push_back({"term2-heuristic", 128.0 * spa, "component"});   // 8 * int_0^4 sqrt(u(4-u)) arccos
    return v;
}

struct FitSample {
    u64 N = 0;
    long double e2 = 0.0L;
};

struct FitResult {
    double a = 0.0, b = 0.0; // E2 ≈ a N^3 ln N + b N^3
    std::vector<double> rel_residuals;
    double max_rel_residual = 0.0;
    double rms_rel_residual = 0.0;
};

// Unweighted least squares for E2 = a N^3 ln N + b N^3.
inline FitResult fit_leading(std::span<const FitSample> samples) {
    if (samples.size() < 3)
        throw std::invalid_argument("fit_leading needs at least 3 samples");
    long double sxx = 0, sxy = 0, syy = 0, sxe = 0, sye = 0;
    for (const auto& s : samples) {
        long double nd = static_cast<long double>(s.N);
        long double y = nd * nd * nd;
        long double x = y * std::log(nd);
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        sxe += x * s.e2;
        sye += y * s.e2;
    }
    long double det = sxx * syy - sxy * sxy;
    if (std::abs(det) <= 1e-16L * sxx * syy)
        throw std::invalid_argument("fit_leading: singular design matrix (collinear N values)");
    FitResult fit;
    fit.a = static_cast<double>((sxe * syy - sye * sxy) / det);
    fit.b = static_cast<double>((sxx * sye - sxy * sxe) / det);
    long double sq = 0;
    for (const auto& s : samples) {
        long double nd = static_cast<long double>(s.N);
        long double y = nd * nd * nd;
        long double x = y * std::log(nd);
        double rel = static_cast<double>((s.e2 - fit.a * x - fit.b * y) / s.e2);
        fit.rel_residuals.push_back(rel);
        fit.max_rel_residual = std::max(fit.max_rel_residual, std::abs(rel));
        sq += static_cast<long double>(rel) * rel;
    }
    fit.rms_rel_residual = static_cast<double>(std::sqrt(static_cast<double>(sq) / samples.size()));
    return fit;
}

struct AdjudicationSample {
    u64 N = 0;
    u128 e2 = 0;
    double ratio = 0.0; // E2 / (N^3 ln N)
};

struct RankedCandidate {
    CandidateConstant candidate;
    double distance = 0.0; // |a - value|
};

struct ConvergenceRow {
    u64 N = 0;
    double sum = 0.0;        // sum_{n<4N} sqrt(n/(4N-n)) arccos(sqrt(n/4N)) ln n
    double prediction = 0.0; // c1 * 4N * ln(4N)
    double ratio = 0.0;
};

struct AdjudicationReport {
    std::vector<AdjudicationSample> samples;
    FitResult fit;
    std::vector<RankedCandidate> ranking;     // non-component candidates
    std::vector<CandidateConstant> constants; // the full table
    std::vector<ConvergenceRow> slow_convergence;
};

// The slow-convergence exhibit: the weighted sum inside term1, normalized by
// its limit law. Even at large N the ratio keeps drifting; tabulating it is
// the honest substitute for reading the constant off one sample.
inline std::vector<ConvergenceRow>
slow_convergence_table(std::span<const u64> Ns, double tol = 1e-10, unsigned threads = 0) {
    HomogeneousSpec c1p = profile_registry("c1-integrand");
    SlowFactor lg = slow_factor_registry("log");
    double c1 = limit_constant(c1p, tol).value;
    std::vector<ConvergenceRow> rows;
    for (u64 N : Ns) {
        ConvergenceRow row;
        row.N = N;
        u64 M = 4 * N;
        row.sum = direct_sum(c1p, lg, M, threads);
        row.prediction = c1 * static_cast<double>(M) * std::log(static_cast<double>(M));
        row.ratio = row.sum / row.prediction;
        rows.push_back(row);
    }
    return rows;
}

inline AdjudicationReport adjudicate(std::span<const AdjudicationSample> samples,
                                     std::vector<CandidateConstant> candidates,
                                     std::vector<ConvergenceRow> slow_convergence = {}) {
    AdjudicationReport rep;
    rep.samples.assign(samples.begin(), samples.end());
    std::vector<FitSample> fs;
    fs.reserve(samples.size());
    for (const auto& s : samples) fs.push_back({s.N, to_long_double(s.e2)});
    rep.fit = fit_leading(fs);
    for (const auto& c : candidates)
        if (c.provenance != "component")
            rep.ranking.push_back({c, std::abs(rep.fit.a - c.value)});
    std::sort(rep.ranking.begin(), rep.ranking.end(),
              [](const RankedCandidate& l, const RankedCandidate& r) {
                  return l.distance < r.distance;
              });
    rep.constants = std::move(candidates);
    rep.slow_convergence = std::move(slow_convergence);
    return rep;
}

inline AdjudicationSample make_sample(u64 N, u128 e2) {
    double nd = static_cast<double>(N);
    return {N, e2,
            static_cast<double>(to_long_double(e2) / (nd * nd * nd * std::log(nd)))};
}

} // namespace disten
