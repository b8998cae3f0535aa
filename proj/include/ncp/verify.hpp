#pragma once

// Verification of the counting identities: each check computes a brute-force
// left side on the relevant poset and an independently assembled right side
// (parabolic sums with exact rational prefactors, products routed through
// the reducible-splitting rule), and demands exact equality.

#include "ncp/bigint.hpp"
#include "ncp/formulas.hpp"
#include "ncp/lattice.hpp"
#include "ncp/mdivisible.hpp"

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace ncp {

struct VerificationReport {
    std::string identity;
    std::string type;
    std::string params;
    std::string left;
    std::string right;
    bool pass = false;
    bool informational = false;  // expected-mismatch checks ("obvious")
};

namespace detail {

inline std::string comp_str(const std::vector<int>& j) {
    std::string s = "(";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? "," : "") + std::to_string(j[i]);
    return s + ")";
}

inline VerificationReport make_report(std::string identity, const CoxeterType& t,
                                      std::string params, const Int& left, const Rat& right) {
    VerificationReport r;
    r.identity = std::move(identity);
    r.type = t.render();
    r.params = std::move(params);
    r.left = left.str();
    if (denominator(right) == 1) {
        r.right = numerator(right).str();
        r.pass = Rat(left) == right;
    } else {
        std::ostringstream os;
        os << right;
        r.right = os.str();
        r.pass = false;
    }
    return r;
}

// all componentwise splittings j' <= j with sum(j') = target
inline void enumerate_splits(const std::vector<int>& j, int target,
                             std::vector<std::vector<int>>& out) {
    std::vector<int> cur(j.size());
    auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
        if (pos == j.size()) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        for (int v = 0; v <= std::min(j[pos], remaining); ++v) {
            cur[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, target);
}

}  // namespace detail

// All compositions of n into exactly `parts` nonnegative parts.
inline std::vector<std::vector<int>> all_compositions(int n, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(parts);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == parts - 1) {
            cur[pos] = remaining;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    if (parts >= 1) rec(rec, 0, n);
    return out;
}

// C_j by type: brute force on irreducible lattices, the reducible-splitting
// rule (factor convolution) for products, 1 for the rank-0 group.
inline Int rank_jump_by_type(const CoxeterType& t, const std::vector<int>& j) {
    long long total = std::accumulate(j.begin(), j.end(), 0ll);
    if (total != t.rank()) throw error("composition does not sum to the rank");
    if (t.empty()) return 1;
    if (t.irreducible()) return count_rank_jump(lattice_for(t).poset(), j);
    CoxeterType head{t.factors[0]};
    CoxeterType rest;
    rest.factors.assign(t.factors.begin() + 1, t.factors.end());
    std::vector<std::vector<int>> splits;
    detail::enumerate_splits(j, head.rank(), splits);
    Int sum = 0;
    for (const auto& jp : splits) {
        std::vector<int> jr(j.size());
        for (std::size_t i = 0; i < j.size(); ++i) jr[i] = j[i] - jp[i];
        sum += rank_jump_by_type(head, jp) * rank_jump_by_type(rest, jr);
    }
    return sum;
}

// Direct count on the (possibly product) lattice, no splitting rule.
inline Int rank_jump_direct(const CoxeterType& t, const std::vector<int>& j) {
    if (t.empty()) return 1;
    return count_rank_jump(lattice_for(t).poset(), j);
}

inline Int nc_by_type(const CoxeterType& t) {
    Int p = 1;
    for (const auto& f : t.factors) p *= Int(lattice_for(CoxeterType{f}).size());
    return p;
}

// MC by type via the reducible product rule MC(W1 x W2) = MC(W1) MC(W2) binom(n, n1).
inline Int mc_by_type(const CoxeterType& t) {
    Int p = 1;
    int placed = 0;
    for (const auto& f : t.factors) {
        p *= count_maximal_chains(lattice_for(CoxeterType{f}).poset());
        placed += f.rank;
        p *= binomial(placed, f.rank);
    }
    return p;
}

inline Int tw_by_type(const CoxeterType& t, int k) {
    if (k < 0 || k > t.rank()) throw error("k out of range");
    std::vector<int> comp(k, 1);
    comp.push_back(t.rank() - k);
    return rank_jump_by_type(t, comp);
}

// SC_k by type; saturated chains in a product interleave, giving the
// binomial shuffle convolution.
inline Int sc_by_type(const CoxeterType& t, int k) {
    if (k < 0) throw error("k out of range");
    if (t.empty()) return k == 0 ? 1 : 0;
    if (k > t.rank()) return 0;
    if (t.irreducible()) return count_sc(lattice_for(t).poset(), k);
    CoxeterType head{t.factors[0]};
    CoxeterType rest;
    rest.factors.assign(t.factors.begin() + 1, t.factors.end());
    Int sum = 0;
    for (int a = 0; a <= std::min(k, head.rank()); ++a)
        sum += binomial(k, a) * sc_by_type(head, a) * sc_by_type(rest, k - a);
    return sum;
}

inline Int zeta_by_type(const CoxeterType& t, int m) {
    Int p = 1;
    for (const auto& f : t.factors) p *= zeta_value(lattice_for(CoxeterType{f}).poset(), m);
    return p;
}

inline Int m_rank_jump_by_type(const CoxeterType& t, int m, const std::vector<int>& j) {
    long long total = std::accumulate(j.begin(), j.end(), 0ll);
    if (total != t.rank()) throw error("composition does not sum to the rank");
    if (t.empty()) return 1;
    if (t.irreducible()) return count_rank_jump(mposet_for(t, m).poset(), j);
    CoxeterType head{t.factors[0]};
    CoxeterType rest;
    rest.factors.assign(t.factors.begin() + 1, t.factors.end());
    std::vector<std::vector<int>> splits;
    detail::enumerate_splits(j, head.rank(), splits);
    Int sum = 0;
    for (const auto& jp : splits) {
        std::vector<int> jr(j.size());
        for (std::size_t i = 0; i < j.size(); ++i) jr[i] = j[i] - jp[i];
        sum += m_rank_jump_by_type(head, m, jp) * m_rank_jump_by_type(rest, m, jr);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// the identity checks; position i is 1-based as in C_{(j_1,...,j_{k+1})}

inline std::vector<int> delete_position(const std::vector<int>& j, int i) {
    if (i < 1 || i > static_cast<int>(j.size())) throw error("position out of range");
    if (j[i - 1] != 1) throw error("deleted position must have j_i = 1");
    std::vector<int> out;
    for (int p = 0; p < static_cast<int>(j.size()); ++p)
        if (p != i - 1) out.push_back(j[p]);
    return out;
}

inline VerificationReport verify_jump_recursion(const CoxeterType& t, const std::vector<int>& j,
                                                int i) {
    if (!t.irreducible()) throw error("jump recursion is stated for irreducible types");
    const std::vector<int> jd = delete_position(j, i);
    const int h = invariants(t).h();
    Int left = rank_jump_direct(t, j);
    Rat right(0);
    for (int s = 0; s < t.rank(); ++s)
        right += Rat(rank_jump_by_type(delete_vertex(t, s).type, jd));
    right *= Rat(h, 2);
    return detail::make_report("jump", t, "j=" + detail::comp_str(j) + " i=" + std::to_string(i),
                               left, right);
}

inline VerificationReport verify_one_formula(const CoxeterType& t, const std::vector<int>& j,
                                             int i) {
    if (t.empty()) throw error("one-formula needs rank >= 1");
    const std::vector<int> jd = delete_position(j, i);
    const GroupInvariants inv = invariants(t);
    Int left = rank_jump_direct(t, j);
    Rat right(0);
    for (int s = 0; s < t.rank(); ++s)
        right += Rat(inv.h_by_vertex[s]) * Rat(rank_jump_by_type(delete_vertex(t, s).type, jd));
    right *= Rat(1, 2);
    return detail::make_report("one-formula", t,
                               "j=" + detail::comp_str(j) + " i=" + std::to_string(i), left, right);
}

inline VerificationReport verify_reducible_product(const CoxeterType& t1, const CoxeterType& t2,
                                                   const std::vector<int>& j) {
    std::vector<IrreducibleType> all = t1.factors;
    all.insert(all.end(), t2.factors.begin(), t2.factors.end());
    CoxeterType prod{std::move(all)};
    Int left = rank_jump_direct(prod, j);
    std::vector<std::vector<int>> splits;
    detail::enumerate_splits(j, t1.rank(), splits);
    Int right = 0;
    for (const auto& jp : splits) {
        std::vector<int> jr(j.size());
        for (std::size_t i = 0; i < j.size(); ++i) jr[i] = j[i] - jp[i];
        right += rank_jump_direct(t1, jp) * rank_jump_direct(t2, jr);
    }
    return detail::make_report("reducible", prod,
                               "W1=" + t1.render() + " W2=" + t2.render() + " j=" + detail::comp_str(j),
                               left, Rat(right));
}

inline VerificationReport verify_steinberg(const CoxeterType& t) {
    if (!t.irreducible()) throw error("Steinberg orbits are stated for irreducible types");
    auto sys = system_for(t);
    const auto& T = sys->reflections();
    const std::size_t h = invariants(t).h();
    std::vector<bool> seen(sys->size(), false);
    std::size_t covered = 0;
    bool ok = true;
    std::string sizes;
    for (ElementId x : T) {
        if (seen[x]) continue;
        SteinbergOrbit orb = sys->steinberg_orbit(x);  // throws if the dichotomy fails
        for (ElementId y : orb.orbit) {
            if (seen[y]) ok = false;  // orbits must partition T
            seen[y] = true;
        }
        covered += orb.orbit.size();
        const bool half = orb.orbit.size() * 2 == h && orb.simple_meet.size() == 1;
        const bool full = orb.orbit.size() == h && orb.simple_meet.size() == 2;
        if (!(half || full)) ok = false;
        sizes += (sizes.empty() ? "" : "+") + std::to_string(orb.orbit.size());
    }
    if (covered != T.size()) ok = false;
    VerificationReport r;
    r.identity = "steinberg";
    r.type = t.render();
    r.params = "orbit sizes " + sizes;
    r.left = std::to_string(covered);
    r.right = std::to_string(T.size());
    r.pass = ok;
    return r;
}

inline VerificationReport verify_zeta_recursion(const CoxeterType& t, int m) {
    if (!t.irreducible()) throw error("zeta recursion is stated for irreducible types");
    const int h = invariants(t).h();
    const int n = t.rank();
    Int left = zeta_value(lattice_for(t).poset(), m);
    Rat right(0);
    for (int s = 0; s < n; ++s) right += Rat(zeta_by_type(delete_vertex(t, s).type, m));
    right *= Rat(m * h + 2, 2 * n);
    return detail::make_report("zeta", t, "m=" + std::to_string(m), left, right);
}

inline VerificationReport verify_nc_recursion(const CoxeterType& t) {
    if (!t.irreducible()) throw error("NC recursion is stated for irreducible types");
    const int h = invariants(t).h();
    const int n = t.rank();
    Int left = Int(lattice_for(t).size());
    Rat right(0);
    for (int s = 0; s < n; ++s) right += Rat(nc_by_type(delete_vertex(t, s).type));
    right *= Rat(h + 2, 2 * n);
    return detail::make_report("nc-recursion", t, "", left, right);
}

// E(W) = #{(s, x) in S x L_W : x not in W_<s>}, via the parabolic embeddings.
inline VerificationReport verify_edge_pair_count(const CoxeterType& t) {
    const NcLattice& L = lattice_for(t);
    const auto& W = *L.system();
    Int left = count_edges(L.poset());
    Int right = 0;
    for (int s = 0; s < t.rank(); ++s) {
        auto par = W.parabolic(s);
        std::vector<bool> member(W.size(), false);
        for (ElementId e : par.embed) member[e] = true;
        for (const auto& lvl : L.levels())
            for (ElementId x : lvl)
                if (!member[x]) ++right;
    }
    return detail::make_report("edge-pairs", t, "", left, Rat(right));
}

enum class CorollaryKind { MC, TW, E, SC };

inline VerificationReport verify_corollary_family(const CoxeterType& t, CorollaryKind which,
                                                  int k = 0) {
    if (!t.irreducible()) throw error("corollary recursions are stated for irreducible types");
    const int h = invariants(t).h();
    const NcLattice& L = lattice_for(t);
    Int left;
    Rat right(0);
    std::string name, params;
    switch (which) {
        case CorollaryKind::MC:
            name = "corollary-mc";
            left = count_maximal_chains(L.poset());
            for (int s = 0; s < t.rank(); ++s)
                right += Rat(mc_by_type(delete_vertex(t, s).type));
            break;
        case CorollaryKind::TW:
            name = "corollary-tw";
            params = "k=" + std::to_string(k);
            if (k < 1 || k > t.rank()) throw error("TW recursion needs 1 <= k <= n");
            left = count_tw(L.poset(), k);
            for (int s = 0; s < t.rank(); ++s)
                right += Rat(tw_by_type(delete_vertex(t, s).type, k - 1));
            break;
        case CorollaryKind::E:
            name = "corollary-e";
            left = count_edges(L.poset());
            for (int s = 0; s < t.rank(); ++s)
                right += Rat(nc_by_type(delete_vertex(t, s).type));
            break;
        case CorollaryKind::SC:
            name = "corollary-sc";
            params = "k=" + std::to_string(k);
            if (k < 1 || k > t.rank()) throw error("SC recursion needs 1 <= k <= n");
            left = count_sc(L.poset(), k);
            for (int s = 0; s < t.rank(); ++s)
                right += Rat(sc_by_type(delete_vertex(t, s).type, k - 1));
            break;
    }
    right *= Rat(h, 2);
    return detail::make_report(name, t, params, left, right);
}

inline VerificationReport verify_m_jump_recursion(const CoxeterType& t, int m,
                                                  const std::vector<int>& j, int i) {
    if (!t.irreducible()) throw error("m jump recursion is stated for irreducible types");
    const std::vector<int> jd = delete_position(j, i);
    const int h = invariants(t).h();
    Int left = count_rank_jump(mposet_for(t, m).poset(), j);
    Rat right(0);
    for (int s = 0; s < t.rank(); ++s)
        right += Rat(m_rank_jump_by_type(delete_vertex(t, s).type, m, jd));
    right *= Rat(m * h, 2);
    return detail::make_report("m-jump", t,
                               "m=" + std::to_string(m) + " j=" + detail::comp_str(j) +
                                   " i=" + std::to_string(i),
                               left, right);
}

inline VerificationReport verify_tw_f(const CoxeterType& t, int k) {
    Int left = t.empty() ? Int(k == 0 ? 1 : 0) : count_tw(lattice_for(t).poset(), k);
    Int right = tw_from_fk(t, k);
    return detail::make_report("tw-f", t, "k=" + std::to_string(k), left, Rat(right));
}

// SC_k against the "obvious" product formula. Agreement is required only at
// k in {0, 1, n-1, n}; elsewhere the comparison is informational (the
// formula is known not to be a chain count in general).
inline VerificationReport verify_obvious(const CoxeterType& t, int k) {
    if (!t.irreducible()) throw error("the obvious formula is stated for irreducible types");
    const int n = t.rank();
    Int left = count_sc(lattice_for(t).poset(), k);
    Rat right = obvious_formula(t.factors[0], k);
    VerificationReport r =
        detail::make_report("obvious", t, "k=" + std::to_string(k), left, right);
    const bool must_agree = k == 0 || k == 1 || k == n - 1 || k == n;
    if (!must_agree) {
        // pass still records raw equality; the flag exempts it from exit status
        r.informational = true;
        r.params += r.pass ? " (agrees)" : " (mismatch; no agreement promised beyond k in {0,1,n-1,n})";
    }
    return r;
}

}  // namespace ncp
