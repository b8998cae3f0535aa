#pragma once

// Univariate polynomials with exact rational coefficients, ascending degree.
// The indeterminate is the Fuss parameter m throughout this library.

#include "ncp/bigint.hpp"

#include <vector>

namespace ncp {

class PolyQ {
  public:
    PolyQ() = default;
    explicit PolyQ(Rat c) : c_{std::move(c)} { trim(); }
    explicit PolyQ(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static PolyQ zero() { return PolyQ{}; }
    static PolyQ one() { return PolyQ{Rat(1)}; }
    // a + b*m
    static PolyQ linear(Rat a, Rat b) { return PolyQ{std::vector<Rat>{std::move(a), std::move(b)}}; }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rat>& coeffs() const { return c_; }

    Rat coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Rat(0);
        return c_[k];
    }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    Rat eval(const Rat& x) const {
        Rat r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    friend PolyQ operator+(const PolyQ& p, const PolyQ& q) {
        std::vector<Rat> r(std::max(p.c_.size(), q.c_.size()), Rat(0));
        for (std::size_t i = 0; i < p.c_.size(); ++i) r[i] += p.c_[i];
        for (std::size_t i = 0; i < q.c_.size(); ++i) r[i] += q.c_[i];
        return PolyQ{std::move(r)};
    }
    friend PolyQ operator*(const PolyQ& p, const PolyQ& q) {
        if (p.is_zero() || q.is_zero()) return PolyQ{};
        std::vector<Rat> r(p.c_.size() + q.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < p.c_.size(); ++i)
            for (std::size_t j = 0; j < q.c_.size(); ++j) r[i + j] += p.c_[i] * q.c_[j];
        return PolyQ{std::move(r)};
    }
    friend PolyQ operator*(const PolyQ& p, const Rat& s) {
        std::vector<Rat> r = p.c_;
        for (auto& x : r) x *= s;
        return PolyQ{std::move(r)};
    }
    PolyQ& operator+=(const PolyQ& q) { return *this = *this + q; }

    friend bool operator==(const PolyQ&, const PolyQ&) = default;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

}  // namespace ncp
