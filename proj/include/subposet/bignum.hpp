#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

namespace subposet {

/// Arbitrary-precision nonnegative integer count. No floating point is used
/// anywhere in counting code.
using BigCount = boost::multiprecision::cpp_int;

/// Exact rational, kept in lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Binomial coefficient; 0 outside the usual range.
inline BigCount binomial(long long n, long long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigCount r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline BigCount pow2(unsigned e) { return BigCount(1) << e; }

/// Floor division for possibly negative numerators (b > 0).
inline long long floor_div(long long a, long long b) {
    return a >= 0 ? a / b : -((-a + b - 1) / b);
}

}  // namespace subposet
