#pragma once

// Rank-level view of a graded poset plus the chain-counting kernels shared
// by the noncrossing partition lattice and its m-divisible generalization.
// Levels are indexed 0..n; order(i, j) is the incidence between levels i < j
// (covers are order(i, i+1): in a graded poset every relation across
// adjacent ranks is a cover). All counts are exact big integers.

#include "ncp/bigint.hpp"
#include "ncp/bitmatrix.hpp"

#include <vector>

namespace ncp {

class GradedPoset {
  public:
    GradedPoset() = default;
    explicit GradedPoset(std::vector<std::size_t> level_sizes)
        : sizes_(std::move(level_sizes)), rel_(sizes_.size() * sizes_.size()) {}

    int top_rank() const { return static_cast<int>(sizes_.size()) - 1; }
    std::size_t level_size(int i) const { return sizes_[i]; }
    const std::vector<std::size_t>& level_sizes() const { return sizes_; }
    std::size_t element_count() const {
        std::size_t n = 0;
        for (auto s : sizes_) n += s;
        return n;
    }

    BitMatrix& order(int i, int j) {
        if (i < 0 || j <= i || j > top_rank()) throw error("bad level pair");
        auto& m = rel_[std::size_t(i) * sizes_.size() + j];
        if (m.rows() == 0 && (sizes_[i] != 0 || sizes_[j] != 0)) m = BitMatrix(sizes_[i], sizes_[j]);
        return m;
    }
    const BitMatrix& order(int i, int j) const {
        if (i < 0 || j <= i || j > top_rank()) throw error("bad level pair");
        return rel_[std::size_t(i) * sizes_.size() + j];
    }
    const BitMatrix& covers(int i) const { return order(i, i + 1); }

    // Rebuilds all non-adjacent order relations from the covers by boolean
    // products (valid because every interval is graded).
    void close_covers() {
        const int n = top_rank();
        for (int span = 2; span <= n; ++span)
            for (int i = 0; i + span <= n; ++i)
                order(i, i + span) = BitMatrix::product(order(i, i + 1), order(i + 1, i + span));
    }

  private:
    std::vector<std::size_t> sizes_;
    std::vector<BitMatrix> rel_;
};

namespace detail {

inline std::vector<Int> transfer(const std::vector<Int>& v, const BitMatrix& rel) {
    std::vector<Int> out(rel.cols(), Int(0));
    for (std::size_t x = 0; x < rel.rows(); ++x) {
        if (v[x] == 0) continue;
        rel.for_each_in_row(x, [&](std::size_t y) { out[y] += v[x]; });
    }
    return out;
}

inline Int sum(const std::vector<Int>& v) {
    Int s = 0;
    for (const auto& x : v) s += x;
    return s;
}

}  // namespace detail

// C_{(j_1,...,j_{k+1})}: multichains x_1 <= ... <= x_k with rank(x_1) = j_1,
// rank jumps j_2..j_k, and j_{k+1} left over at the top. The empty
// composition step convention C_{(n)} = 1 falls out of k = 0.
inline Int count_rank_jump(const GradedPoset& p, const std::vector<int>& comp) {
    long long total = 0;
    for (int j : comp) {
        if (j < 0) throw error("composition parts must be nonnegative");
        total += j;
    }
    if (total != p.top_rank()) throw error("composition does not sum to the rank");
    const int k = static_cast<int>(comp.size()) - 1;
    if (k <= 0) return 1;
    int r = comp[0];
    std::vector<Int> v(p.level_size(r), Int(1));
    for (int i = 1; i < k; ++i) {
        if (comp[i] == 0) continue;  // same level: the identity step
        v = detail::transfer(v, p.order(r, r + comp[i]));
        r += comp[i];
    }
    return detail::sum(v);
}

// Full saturated chains from rank 0 to rank n. On a poset with a unique
// minimum this equals the all-ones rank-jump count C_{(1,...,1)}; on the
// m-divisible posets (several rank-0 elements) only this form is right.
inline Int count_maximal_chains(const GradedPoset& p);

inline Int count_edges(const GradedPoset& p) {
    Int e = 0;
    for (int i = 0; i < p.top_rank(); ++i) e += p.covers(i).count();
    return e;
}

// Reduced T-words for elements of absolute length k: C_{(1,...,1,n-k)}.
inline Int count_tw(const GradedPoset& p, int k) {
    if (k < 0 || k > p.top_rank()) throw error("k out of range");
    std::vector<int> comp(k, 1);
    comp.push_back(p.top_rank() - k);
    return count_rank_jump(p, comp);
}

// Saturated chains of length k anywhere in the poset.
inline Int count_sc(const GradedPoset& p, int k) {
    if (k < 0 || k > p.top_rank()) throw error("k out of range");
    Int total = 0;
    for (int start = 0; start + k <= p.top_rank(); ++start) {
        std::vector<Int> v(p.level_size(start), Int(1));
        for (int s = 0; s < k; ++s) v = detail::transfer(v, p.covers(start + s));
        total += detail::sum(v);
    }
    return total;
}

inline Int count_maximal_chains(const GradedPoset& p) { return count_sc(p, p.top_rank()); }

// Number of m-element multichains (the zeta polynomial value Z(P, m+1)).
inline Int zeta_value(const GradedPoset& p, int m) {
    if (m < 0) throw error("m must be nonnegative");
    if (m == 0) return 1;
    const int n = p.top_rank();
    std::vector<std::vector<Int>> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i].assign(p.level_size(i), Int(1));
    for (int step = 1; step < m; ++step) {
        std::vector<std::vector<Int>> nv = v;  // the same-level (equality) part
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i < j; ++i) {
                auto up = detail::transfer(v[i], p.order(i, j));
                for (std::size_t y = 0; y < nv[j].size(); ++y) nv[j][y] += up[y];
            }
        v = std::move(nv);
    }
    Int total = 0;
    for (auto& lvl : v) total += detail::sum(lvl);
    return total;
}

// Saturated chains of length k ending at the unique top element.
inline Int count_saturated_to_top(const GradedPoset& p, int k) {
    if (k < 0 || k > p.top_rank()) throw error("k out of range");
    if (p.level_size(p.top_rank()) != 1) throw error("poset top level is not a single element");
    std::vector<Int> v{Int(1)};
    for (int s = 0; s < k; ++s) {
        const int i = p.top_rank() - 1 - s;
        const BitMatrix& cov = p.covers(i);
        std::vector<Int> u(p.level_size(i), Int(0));
        for (std::size_t x = 0; x < cov.rows(); ++x)
            cov.for_each_in_row(x, [&](std::size_t y) { u[x] += v[y]; });
        v = std::move(u);
    }
    return detail::sum(v);
}

}  // namespace ncp
