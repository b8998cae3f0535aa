#pragma once

// The m-divisible noncrossing partition poset L^(m)_W: delta sequences
// (d_0, ..., d_m) of m-element multichains of L_W, graded by rank(d) =
// l_T(d_0). We store the poset in the orientation in which that rank
// increases, i.e. d <= d' holds when d'_i <= d_i in absolute order for all
// i = 1..m; this is the dual of the componentwise order and the only
// grading under which L^(1)_W is literally L_W (the unique rank-n element
// is (c, 1, ..., 1)). Chain counts are orientation-invariant; the
// "lower-saturated" chains of the dual convention become saturated chains
// ending at the unique top here.

#include "ncp/bigint.hpp"
#include "ncp/formulas.hpp"
#include "ncp/lattice.hpp"
#include "ncp/poset.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace ncp {

class MDivisiblePoset {
  public:
    static MDivisiblePoset build(const NcLattice& L, int m, const Int& max_size = 1'000'000) {
        if (m < 1) throw error("m must be >= 1");
        const auto& W = *L.system();
        const int n = L.rank();
        if (fuss_catalan(L.type(), m) > max_size)
            throw resource_limit_error("m-divisible poset exceeds the size bound");

        MDivisiblePoset P;
        P.m_ = m;
        P.type_ = L.type();

        // enumerate m-element multichains x_1 <= ... <= x_m of L_W
        std::vector<ElementId> flat;
        for (const auto& lvl : L.levels()) flat.insert(flat.end(), lvl.begin(), lvl.end());
        std::vector<std::vector<DeltaSequence>> by_rank(n + 1);
        std::vector<ElementId> chain(m);
        const ElementId c = W.bipartite_c();
        auto emit = [&] {
            DeltaSequence d;
            ElementId prev = W.identity();
            for (ElementId x : chain) {
                d.d.push_back(W.compose(W.invert(prev), x));
                prev = x;
            }
            d.d.push_back(W.compose(W.invert(prev), c));
            by_rank[W.absolute_length(d.d[0])].push_back(std::move(d));
        };
        auto rec = [&](auto&& self, int depth) -> void {
            if (depth == m) {
                emit();
                return;
            }
            for (ElementId y : flat) {
                if (depth > 0 && !L.leq(chain[depth - 1], y)) continue;
                chain[depth] = y;
                self(self, depth + 1);
            }
        };
        rec(rec, 0);

        std::vector<std::size_t> sizes(n + 1);
        for (int r = 0; r <= n; ++r) sizes[r] = by_rank[r].size();
        P.poset_ = GradedPoset(sizes);
        // d <= d' iff d'_i <= d_i for every i >= 1 (see header note)
        auto below = [&](const DeltaSequence& a, const DeltaSequence& b) {
            for (int i = 1; i <= m; ++i)
                if (!L.leq(b.d[i], a.d[i])) return false;
            return true;
        };
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                BitMatrix& rel = P.poset_.order(i, j);
                for (std::size_t a = 0; a < sizes[i]; ++a)
                    for (std::size_t b = 0; b < sizes[j]; ++b)
                        if (below(by_rank[i][a], by_rank[j][b])) rel.set(a, b);
            }
        P.elements_ = std::move(by_rank);
        return P;
    }

    int m() const { return m_; }
    const CoxeterType& type() const { return type_; }
    const GradedPoset& poset() const { return poset_; }
    std::size_t size() const { return poset_.element_count(); }
    const std::vector<std::vector<DeltaSequence>>& elements_by_rank() const { return elements_; }

  private:
    MDivisiblePoset() = default;
    int m_ = 1;
    CoxeterType type_;
    GradedPoset poset_;
    std::vector<std::vector<DeltaSequence>> elements_;
};

inline const MDivisiblePoset& mposet_for(const CoxeterType& t, int m) {
    static std::map<std::pair<std::string, int>, std::unique_ptr<MDivisiblePoset>> memo;
    static std::mutex mx;
    const auto key = std::make_pair(t.render(), m);
    std::scoped_lock lk(mx);
    if (auto it = memo.find(key); it != memo.end()) return *it->second;
    auto P = std::make_unique<MDivisiblePoset>(MDivisiblePoset::build(lattice_for(t), m));
    return *memo.emplace(key, std::move(P)).first->second;
}

inline Int count_m_rank_jump(const MDivisiblePoset& P, const std::vector<int>& comp) {
    return count_rank_jump(P.poset(), comp);
}
inline Int count_m_maximal_chains(const MDivisiblePoset& P) {
    return count_maximal_chains(P.poset());
}
inline Int count_m_edges(const MDivisiblePoset& P) { return count_edges(P.poset()); }
inline Int count_m_sc(const MDivisiblePoset& P, int k) { return count_sc(P.poset(), k); }

// Saturated chains of length k attached to the unique rank-n element
// (c, 1, ..., 1); equals m^k TW_k(W).
inline Int count_lower_saturated(const MDivisiblePoset& P, int k) {
    return count_saturated_to_top(P.poset(), k);
}

// MC^(m)(W) = n! prod_s (m h_s) / |W|
inline Int m_mc_closed(const CoxeterType& t, int m) {
    GroupInvariants inv = invariants(t);
    Rat r(factorial(inv.rank), inv.order);
    for (int h : inv.h_by_vertex) r *= Int(m) * h;
    return rat_to_int(r, "m-divisible maximal-chain closed form is not integral");
}

// E^(m)(W) = n h m / (m h + 2) * Cat^(m)(W) for irreducible W
inline Int m_edge_closed(const CoxeterType& t, int m) {
    if (!t.irreducible()) throw error("edge closed form is per irreducible type");
    const int h = coxeter_number_of(t.factors[0]);
    Rat r = Rat(t.rank() * h * m, m * h + 2) * Rat(fuss_catalan(t, m));
    return rat_to_int(r, "m-divisible edge closed form is not integral");
}

}  // namespace ncp
