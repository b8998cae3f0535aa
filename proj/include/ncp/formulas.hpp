#pragma once

// Closed-form counting: Fuss-Catalan numbers, the maximal-chain and edge
// formulas, the per-family maximal-chain table, the f_k face-number
// recursion, and the "obvious" saturated-chain product (which is exact
// rational on purpose: its failure to be a chain count is part of what the
// verification suite documents).

#include "ncp/bigint.hpp"
#include "ncp/diagram.hpp"
#include "ncp/polynomial.hpp"

#include <map>
#include <mutex>

namespace ncp {

// Cat^(m)(W) = prod_i (m h + e_i + 1)/(e_i + 1), taken factor by factor for
// reducible types. Exact integer for every integer m >= 0.
inline Int fuss_catalan(const CoxeterType& t, const Int& m) {
    Rat r(1);
    for (const auto& f : t.factors) {
        int h = coxeter_number_of(f);
        for (int e : exponents_of(f)) r *= Rat(m * h + e + 1, e + 1);
    }
    return rat_to_int(r, "Fuss-Catalan product is not integral");
}

inline PolyQ fuss_catalan_poly(const CoxeterType& t) {
    PolyQ p = PolyQ::one();
    for (const auto& f : t.factors) {
        int h = coxeter_number_of(f);
        for (int e : exponents_of(f)) p = p * PolyQ::linear(Rat(1), Rat(h, e + 1));
    }
    return p;
}

inline Int nc_closed(const CoxeterType& t) { return fuss_catalan(t, 1); }

// MC(W) = n! prod_s h_s / |W|  (= n! h^n / |W| for irreducible W)
inline Int mc_closed(const CoxeterType& t) {
    GroupInvariants inv = invariants(t);
    Rat r(factorial(inv.rank), inv.order);
    for (int h : inv.h_by_vertex) r *= h;
    return rat_to_int(r, "maximal-chain closed form is not integral");
}

// Per-family table of maximal-chain counts.
inline Int mc_table(const IrreducibleType& f) {
    switch (f.family) {
        case 'A': return pow_int(f.rank + 1, f.rank - 1);
        case 'B': return pow_int(f.rank, f.rank);
        case 'D': return 2 * pow_int(f.rank - 1, f.rank);
        case 'E': return f.rank == 6 ? Int(41472) : (f.rank == 7 ? Int(1062882) : Int(37968750));
        case 'F': return 432;
        case 'H': return f.rank == 3 ? Int(50) : Int(1350);
        case 'I': return f.edge;
        default: throw error("bad family");
    }
}

// E(W) = n h / (h + 2) * NC(W) for irreducible W
inline Int edge_closed(const IrreducibleType& f) {
    int h = coxeter_number_of(f);
    Rat r = Rat(f.rank * h, h + 2) * Rat(nc_closed(CoxeterType{f}));
    return rat_to_int(r, "edge closed form is not integral");
}

// SC_{n-1}(W) = 2 n! h^n / |W| for irreducible W
inline Int sc_top_closed(const IrreducibleType& f) {
    return 2 * mc_closed(CoxeterType{f});
}

// n(n-1)...(n-k+1) h^k / |W| * prod_{i=k+1..n} (h + e_i + 1), exponents
// ascending. Returns the exact rational: it is a correct chain count only
// for k in {0, 1, n-1, n} and must not be rounded.
inline Rat obvious_formula(const IrreducibleType& f, int k) {
    if (k < 0 || k > f.rank) throw error("k out of range");
    GroupInvariants inv = invariants(CoxeterType{f});
    int h = inv.h();
    Rat r(1, inv.order);
    for (int i = 0; i < k; ++i) r *= f.rank - i;
    r *= pow_int(Int(h), static_cast<unsigned>(k));
    for (int i = k; i < f.rank; ++i) r *= h + inv.exponents[i] + 1;
    return r;
}

// f_k(W, m): number of k-vertex faces of the generalized cluster complex,
// via the (mh+2)/(2k) recursion for irreducible types and join convolution
// for products. Memoized; all arithmetic exact.
inline PolyQ fk_polynomial(const CoxeterType& t, int k) {
    if (k < 0) throw error("k out of range");
    if (k == 0) return PolyQ::one();
    if (k > t.rank()) return PolyQ::zero();

    static std::map<std::pair<std::string, int>, PolyQ> memo;
    static std::mutex mx;
    const auto key = std::make_pair(t.render(), k);
    {
        std::scoped_lock lk(mx);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }

    PolyQ result;
    if (t.irreducible()) {
        int h = coxeter_number_of(t.factors[0]);
        PolyQ sum;
        for (int v = 0; v < t.rank(); ++v) sum += fk_polynomial(delete_vertex(t, v).type, k - 1);
        result = sum * PolyQ::linear(Rat(2), Rat(h)) * Rat(1, 2 * k);
    } else {
        // split off the first factor and convolve
        CoxeterType head{t.factors[0]};
        CoxeterType rest;
        rest.factors.assign(t.factors.begin() + 1, t.factors.end());
        for (int i = 0; i <= k; ++i) {
            PolyQ a = fk_polynomial(head, i);
            if (a.is_zero()) continue;
            result += a * fk_polynomial(rest, k - i);
        }
    }
    std::scoped_lock lk(mx);
    return memo.emplace(key, std::move(result)).first->second;
}

// TW_k(W) = k! [m^k] f_k(W, m); exact integer.
inline Int tw_from_fk(const CoxeterType& t, int k) {
    if (k < 0 || k > t.rank()) throw error("k out of range");
    Rat lead = fk_polynomial(t, k).coeff(k);
    return rat_to_int(Rat(factorial(static_cast<unsigned>(k))) * lead,
                      "k! * leading coefficient is not integral");
}

}  // namespace ncp
