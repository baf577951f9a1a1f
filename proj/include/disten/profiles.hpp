// Registry of named unit profiles and slow factors addressable from the CLI.
//
// Every profile is written in an endpoint-stable form: arccos(sqrt(t)) is
// evaluated as asin(sqrt(1-t)) and the 1/sqrt(1-t) poles are folded into
// asin(z)/z, so values stay accurate across (0,1) even though the raw
// formulas are 0 * inf at t = 1.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "homog_sum.hpp"

namespace disten {

namespace detail {

// asin(z)/z, stable for z -> 0.
inline double asin_over_z(double z) {
    return z < 1e-8 ? 1.0 + z * z / 6.0 : std::asin(z) / z;
}

} // namespace detail

// Profiles:
//   const        f(t,1) = 1
//   linear       f(x,y) = x/y                        -> t
//   power-alpha  f(x,y) = x^{1+a}/y, degree a        -> t^{1+a}
//   c1-integrand sqrt(t/(1-t)) arccos(sqrt(t))       (limit constant (pi^2-4)/8)
//   c2-integrand (1-2 sqrt(t))/sqrt(1-t) arccos(sqrt(t))  (pi - 1 - pi^2/4)
//   arccos-sq    arccos^2(sqrt(t))                   (pi^2/8 - 1/2)
//   w            2 arccos(sqrt(t)) - 2 sqrt(t(1-t))  = arc weight at u = 4t
//   w-sq         square of w
inline HomogeneousSpec profile_registry(const std::string& name, double alpha = 0.0) {
    HomogeneousSpec s;
    s.name = name;
    if (name == "const") {
        s.profile = [](double, double) { return 1.0; };
        s.monotone = {{0.0, 1.0, true}};
    } else if (name == "linear") {
        s.profile = [](double t, double) { return t; };
        s.monotone = {{0.0, 1.0, true}};
    } else if (name == "power-alpha") {
        if (alpha <= -2.0)
            throw std::invalid_argument("power-alpha requires alpha > -2");
        s.degree = alpha;
        s.profile = [alpha](double t, double) { return std::pow(t, 1.0 + alpha); };
        s.monotone = {{0.0, 1.0, alpha >= -1.0}};
        s.singular_at_zero = alpha < -1.0;
    } else if (name == "c1-integrand") {
        s.profile = [](double t, double omt) {
            return std::sqrt(t) * detail::asin_over_z(std::sqrt(omt));
        };
        s.monotone = {{0.0, 1.0, true}};
        s.singular_at_one = true;
    } else if (name == "c2-integrand") {
        s.profile = [](double t, double omt) {
            return (1.0 - 2.0 * std::sqrt(t)) * detail::asin_over_z(std::sqrt(omt));
        };
        s.monotone = {{0.0, 1.0, false}};
        s.singular_at_one = true;
    } else if (name == "arccos-sq") {
        s.profile = [](double, double omt) {
            double v = std::asin(std::sqrt(omt));
            return v * v;
        };
        s.monotone = {{0.0, 1.0, false}};
    } else if (name == "w") {
        s.profile = [](double t, double omt) {
            return 2.0 * std::asin(std::sqrt(omt)) - 2.0 * std::sqrt(t * omt);
        };
        s.monotone = {{0.0, 1.0, false}};
    } else if (name == "w-sq") {
        s.profile = [](double t, double omt) {
            double v = 2.0 * std::asin(std::sqrt(omt)) - 2.0 * std::sqrt(t * omt);
            return v * v;
        };
        s.monotone = {{0.0, 1.0, false}};
    } else {
        throw std::invalid_argument("unknown profile '" + name + "'");
    }
    return s;
}

inline std::vector<std::string> profile_names() {
    return {"const", "linear", "power-alpha", "c1-integrand",
            "c2-integrand", "arccos-sq", "w", "w-sq"};
}

// Slow factors:
//   log       ln n
//   log-pow   (ln n)^beta, beta > 0
//   loglog    ln ln n for n >= 2, 0 at n = 1
inline SlowFactor slow_factor_registry(const std::string& name, double beta = 2.0) {
    SlowFactor g;
    g.name = name;
    g.delta = [](u64 N) { return 1.0 / static_cast<double>(default_block_count(N)); };
    if (name == "log") {
        g.eval = [](u64 n) { return std::log(static_cast<double>(n)); };
    } else if (name == "log-pow") {
        if (beta <= 0.0) throw std::invalid_argument("log-pow requires beta > 0");
        g.name += "-" + std::to_string(beta);
        g.eval = [beta](u64 n) {
            return n == 1 ? 0.0 : std::pow(std::log(static_cast<double>(n)), beta);
        };
    } else if (name == "loglog") {
        g.eval = [](u64 n) {
            return n <= 1 ? 0.0 : std::log(std::log(static_cast<double>(n)));
        };
    } else {
        throw std::invalid_argument("unknown slow factor '" + name + "'");
    }
    return g;
}

inline std::vector<std::string> slow_factor_names() { return {"log", "log-pow", "loglog"}; }

} // namespace disten
