// 128-bit integer helpers and exact integer square roots.

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <cmath>

namespace disten {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Thrown when a table, point set or histogram would exceed the memory budget.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an integer accumulator would wrap.
class overflow_error : public std::runtime_error {
public:
    explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an iterative numerical scheme fails to reach its tolerance.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

inline std::string to_string(u128 x) {
    if (x == 0) return "0";
    std::string s;
    while (x != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
        x /= 10;
    }
    return std::string(s.rbegin(), s.rend());
}

inline std::string to_string(i128 x) {
    if (x < 0) return "-" + to_string(static_cast<u128>(-x));
    return to_string(static_cast<u128>(x));
}

inline long double to_long_double(u128 x) {
    constexpr long double two64 = 18446744073709551616.0L;
    return static_cast<long double>(static_cast<u64>(x >> 64)) * two64 +
           static_cast<long double>(static_cast<u64>(x));
}

inline u128 checked_add(u128 a, u128 b) {
    u128 s = a + b;
    if (s < a) throw overflow_error("128-bit accumulator overflow");
    return s;
}

// floor(sqrt(n)), exact for all u64 values.
inline u64 isqrt(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

// largest r with r*r <= n, or isqrt; returns whether n is a perfect square.
inline bool is_square(u64 n, u64& root) {
    root = isqrt(n);
    return root * root == n;
}

// smallest r with r*r >= n.
inline u64 isqrt_ceil(u64 n) {
    u64 r = isqrt(n);
    return r * r == n ? r : r + 1;
}

} // namespace disten
