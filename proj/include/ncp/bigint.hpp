#pragma once

// Exact arithmetic aliases and small combinatorial helpers. All counting in
// this library is big-integer/rational; no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace ncp {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct parse_error : error {
    using error::error;
};
struct resource_limit_error : error {
    using error::error;
};

inline Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;  // exact at every step
    }
    return r;
}

inline Int pow_int(const Int& b, unsigned e) {
    Int r = 1, x = b;
    while (e) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

// Exact integer value of a rational; throws if not integral.
inline Int rat_to_int(const Rat& q, const char* what = "non-integral rational") {
    if (denominator(q) != 1) throw error(what);
    return numerator(q);
}

}  // namespace ncp
