#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ohull {

// A point in [0,1]^d (intermediate geometry may leave the cube).
using Point = std::vector<double>;

// Sign vector in {-1,+1}^d selecting an orthant.
using SignVec = std::vector<int>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidGeometryError : Error {
    using Error::Error;
};
struct EmptyInputError : Error {
    using Error::Error;
};
struct AdaptivityViolationError : Error {
    using Error::Error;
};
struct BudgetError : Error {
    using Error::Error;
};
struct ConstructionFailedError : Error {
    using Error::Error;
};
struct LoadError : Error {
    using Error::Error;
};
struct InsufficientDataError : Error {
    using Error::Error;
};

// Default predicate tolerance for geometric comparisons.
inline constexpr double kEps = 1e-9;

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t hash_combine(uint64_t a, uint64_t b) {
    return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + b + (a << 6) + (a >> 2)));
}

// Counter-based uniform in [0,1): keyed by (seed, stream, index), order-independent.
inline double counter_uniform(uint64_t seed, uint64_t stream, uint64_t index) {
    uint64_t bits = splitmix64(hash_combine(hash_combine(seed, stream), index));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline bool all_finite(const Point& p) {
    for (double c : p)
        if (!std::isfinite(c)) return false;
    return true;
}

inline bool in_unit_cube(const Point& p) {
    for (double c : p)
        if (c < 0.0 || c > 1.0) return false;
    return true;
}

inline double dot(const Point& a, const Point& b) {
    double s = 0;
    for (size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
}

inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }

// Formats a double with 17 significant digits (round-trip exact).
std::string fmt_real(double x);

// Largest r >= 1 with r^d <= q (integer-safe floor of q^{1/d}).
uint64_t floor_root(uint64_t q, int d);

// Smallest r >= 1 with r^d >= q.
uint64_t ceil_root(uint64_t q, int d);

// Smallest t >= 1 with 2^(t*k) >= q, i.e. ceil(log2(q)/k).
uint64_t ceil_log2_div(uint64_t q, int k);

}  // namespace ohull
