#include "ohull/common.hpp"

#include <cstdio>

namespace ohull {

std::string fmt_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

// r^d, saturating at UINT64_MAX
uint64_t ipow_sat(uint64_t r, int d) {
    uint64_t p = 1;
    for (int i = 0; i < d; ++i) {
        if (r != 0 && p > UINT64_MAX / r) return UINT64_MAX;
        p *= r;
    }
    return p;
}

}  // namespace

uint64_t floor_root(uint64_t q, int d) {
    if (q == 0) return 0;
    if (d <= 1) return q;
    uint64_t r = static_cast<uint64_t>(std::pow(static_cast<double>(q), 1.0 / d));
    if (r < 1) r = 1;
    while (r > 1 && ipow_sat(r, d) > q) --r;
    while (ipow_sat(r + 1, d) <= q) ++r;
    return r;
}

uint64_t ceil_root(uint64_t q, int d) {
    uint64_t r = floor_root(q, d);
    return ipow_sat(r, d) == q ? r : r + 1;
}

uint64_t ceil_log2_div(uint64_t q, int k) {
    uint64_t t = 1;
    while (t * k < 63 && (uint64_t{1} << (t * k)) < q) ++t;
    return t;
}

}  // namespace ohull
