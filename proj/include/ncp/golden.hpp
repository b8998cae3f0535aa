#pragma once

// Arithmetic in Z[phi] (phi^2 = phi + 1), the golden-ratio quadratic ring.
// Used for exact root coordinates of H3/H4, where the Cartan pairing takes
// values a + b*phi with integer a, b. Templated on the integer type so the
// same code runs on int64 (root coordinates stay tiny) and on Int for
// fraction-free linear algebra.

#include <utility>

namespace ncp {

template <class I>
struct Golden {
    I a{};  // rational part
    I b{};  // coefficient of phi

    Golden() = default;
    Golden(I a_, I b_ = I(0)) : a(std::move(a_)), b(std::move(b_)) {}
    template <class J>
    explicit Golden(const Golden<J>& o) : a(static_cast<I>(o.a)), b(static_cast<I>(o.b)) {}

    friend Golden operator+(const Golden& x, const Golden& y) { return {x.a + y.a, x.b + y.b}; }
    friend Golden operator-(const Golden& x, const Golden& y) { return {x.a - y.a, x.b - y.b}; }
    friend Golden operator-(const Golden& x) { return {-x.a, -x.b}; }
    friend Golden operator*(const Golden& x, const Golden& y) {
        // (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
        return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
    }
    Golden& operator+=(const Golden& y) { return *this = *this + y; }
    Golden& operator-=(const Golden& y) { return *this = *this - y; }
    Golden& operator*=(const Golden& y) { return *this = *this * y; }

    friend auto operator<=>(const Golden&, const Golden&) = default;  // container ordering only

    bool is_zero() const { return a == I(0) && b == I(0); }

    // Exact quotient; valid only when y divides x in Z[phi] (as in Bareiss
    // elimination). Norm(c + d phi) = c^2 + cd - d^2.
    friend Golden exact_div(const Golden& x, const Golden& y) {
        I norm = y.a * y.a + y.a * y.b - y.b * y.b;
        // multiply by the conjugate (c + d) - d phi, then divide by the norm
        Golden conj{y.a + y.b, -y.b};
        Golden prod = x * conj;
        return {prod.a / norm, prod.b / norm};
    }
};

template <class I>
inline Golden<I> golden_phi() {
    return Golden<I>(I(0), I(1));
}

// Integer scalars satisfy the same ring concept as Golden.
template <class I>
inline bool scalar_is_zero(const I& x) {
    return x == I(0);
}
template <class I>
inline bool scalar_is_zero(const Golden<I>& x) {
    return x.is_zero();
}
template <class I>
inline I scalar_exact_div(const I& x, const I& y) {
    return x / y;
}
template <class I>
inline Golden<I> scalar_exact_div(const Golden<I>& x, const Golden<I>& y) {
    return exact_div(x, y);
}

}  // namespace ncp
