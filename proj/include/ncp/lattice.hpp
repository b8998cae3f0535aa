#pragma once

// The noncrossing partition lattice L_W = [1, c], graded by absolute length,
// with two construction routes:
//
//  - bfs: filter the enumerated group by l(x) + l(x^{-1} c) = l(c); order
//    relations by the same length-additivity test. Available whenever the
//    group fits the enumeration bound; carries group element ids, so delta
//    sequences and the m-divisible poset build on it.
//
//  - interval: top-down from c using covers {w t : l(w t) = l(w) - 1}, with
//    absolute length computed as the codimension of the fixed space (exact
//    Bareiss rank over Z or Z[phi]). Never touches the full group, so it
//    also handles E6-E8 and H4 cheaply; the order relation is the boolean
//    closure of the covers.
//
// Both routes key elements by the packed images of the simple roots, which
// is what the backend cross-validation compares.

#include "ncp/bigint.hpp"
#include "ncp/diagram.hpp"
#include "ncp/exact_linalg.hpp"
#include "ncp/group.hpp"
#include "ncp/poset.hpp"
#include "ncp/root_system.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

namespace ncp {

struct LatticeOptions {
    Int max_lattice_size = 1'000'000;
    BuildOptions group;
};

enum class LatticeBackend { automatic, bfs, interval };

class NcLattice {
  public:
    const CoxeterType& type() const { return type_; }
    int rank() const { return poset_.top_rank(); }
    std::size_t size() const { return poset_.element_count(); }
    const GradedPoset& poset() const { return poset_; }
    LatticeBackend backend() const { return backend_; }

    // --- bfs backend surface ---
    const std::shared_ptr<const CoxeterSystem>& system() const {
        if (!sys_) throw error("lattice was built by the interval backend; no group attached");
        return sys_;
    }
    const std::vector<std::vector<ElementId>>& levels() const {
        if (!sys_) throw error("no element ids on the interval backend");
        return levels_;
    }
    bool contains(ElementId w) const { return w < local_of_.size() && local_of_[w] >= 0; }
    int level_of(ElementId w) const {
        if (!contains(w)) throw error("element is not in [1, c]");
        return sys_->absolute_length(w);
    }
    // order test between lattice members via the precomputed bitmap
    bool leq(ElementId u, ElementId v) const {
        if (!contains(u) || !contains(v)) throw error("element is not in [1, c]");
        return le_.test(static_cast<std::size_t>(local_of_[u]),
                        static_cast<std::size_t>(local_of_[v]));
    }

    // --- interval/cross-validation surface ---
    const std::vector<std::vector<std::uint64_t>>& level_keys() const { return level_keys_; }

  private:
    friend NcLattice build_lattice_bfs(std::shared_ptr<const CoxeterSystem>, const LatticeOptions&);
    friend NcLattice build_lattice_interval(const CoxeterType&, const LatticeOptions&);
    friend NcLattice lattice_from_levels_and_covers(std::shared_ptr<const CoxeterSystem>,
                                                    std::vector<std::vector<ElementId>>,
                                                    std::vector<BitMatrix>);
    NcLattice() = default;

    CoxeterType type_;
    LatticeBackend backend_ = LatticeBackend::bfs;
    GradedPoset poset_;
    std::shared_ptr<const CoxeterSystem> sys_;       // bfs only
    std::vector<std::vector<ElementId>> levels_;     // bfs only
    std::vector<std::int32_t> local_of_;             // bfs only: wid -> flat index, -1 outside
    BitMatrix le_;                                   // bfs only: flat all-pairs order
    std::vector<std::vector<std::uint64_t>> level_keys_;  // interval (and I2) only
};

inline NcLattice build_lattice_bfs(std::shared_ptr<const CoxeterSystem> sys,
                                   const LatticeOptions& opts) {
    NcLattice L;
    L.type_ = sys->type();
    L.backend_ = LatticeBackend::bfs;
    L.sys_ = std::move(sys);
    const auto& W = *L.sys_;
    const int n = W.rank();
    const ElementId c = W.bipartite_c();

    L.levels_.assign(n + 1, {});
    L.local_of_.assign(W.size(), -1);
    for (ElementId w = 0; w < W.size(); ++w)
        if (W.abs_leq(w, c)) L.levels_[W.absolute_length(w)].push_back(w);

    std::vector<std::size_t> sizes(n + 1);
    std::size_t total = 0;
    for (int r = 0; r <= n; ++r) {
        sizes[r] = L.levels_[r].size();
        total += sizes[r];
    }
    if (Int(total) > opts.max_lattice_size) throw resource_limit_error("lattice size exceeds bound");

    std::vector<std::size_t> offset(n + 1, 0);
    for (int r = 1; r <= n; ++r) offset[r] = offset[r - 1] + sizes[r - 1];
    for (int r = 0; r <= n; ++r)
        for (std::size_t i = 0; i < L.levels_[r].size(); ++i)
            L.local_of_[L.levels_[r][i]] = static_cast<std::int32_t>(offset[r] + i);

    L.le_ = BitMatrix(total, total);
    L.poset_ = GradedPoset(sizes);
    for (std::size_t x = 0; x < total; ++x) L.le_.set(x, x);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            BitMatrix& rel = L.poset_.order(i, j);
            for (std::size_t a = 0; a < sizes[i]; ++a)
                for (std::size_t b = 0; b < sizes[j]; ++b)
                    if (W.abs_leq(L.levels_[i][a], L.levels_[j][b])) {
                        rel.set(a, b);
                        L.le_.set(offset[i] + a, offset[j] + b);
                    }
        }
    return L;
}

// Reassembles a bfs-backed lattice from its levels and cover matrices (the
// cached form). The order relation is the boolean closure of the covers,
// which the fresh build path is property-tested to agree with. Validation
// failures throw; callers treat that as a cache miss.
inline NcLattice lattice_from_levels_and_covers(std::shared_ptr<const CoxeterSystem> sys,
                                                std::vector<std::vector<ElementId>> levels,
                                                std::vector<BitMatrix> covers) {
    const int n = sys->rank();
    if (static_cast<int>(levels.size()) != n + 1 ||
        static_cast<int>(covers.size()) != (n == 0 ? 0 : n))
        throw error("lattice cache shape mismatch");
    for (int r = 0; r <= n; ++r) {
        ElementId prev = 0;
        for (std::size_t i = 0; i < levels[r].size(); ++i) {
            ElementId w = levels[r][i];
            if (w >= sys->size() || (i > 0 && w <= prev)) throw error("bad cached level");
            if (sys->absolute_length(w) != r) throw error("cached level has wrong rank");
            prev = w;
        }
    }
    if (levels[0] != std::vector<ElementId>{sys->identity()} ||
        levels[n] != std::vector<ElementId>{sys->bipartite_c()})
        throw error("cached lattice endpoints are wrong");

    NcLattice L;
    L.type_ = sys->type();
    L.backend_ = LatticeBackend::bfs;
    L.sys_ = std::move(sys);
    L.levels_ = std::move(levels);

    std::vector<std::size_t> sizes(n + 1);
    std::size_t total = 0;
    std::vector<std::size_t> offset(n + 1, 0);
    for (int r = 0; r <= n; ++r) {
        sizes[r] = L.levels_[r].size();
        offset[r] = total;
        total += sizes[r];
    }
    L.local_of_.assign(L.sys_->size(), -1);
    for (int r = 0; r <= n; ++r)
        for (std::size_t i = 0; i < L.levels_[r].size(); ++i)
            L.local_of_[L.levels_[r][i]] = static_cast<std::int32_t>(offset[r] + i);

    L.poset_ = GradedPoset(sizes);
    for (int i = 0; i < n; ++i) {
        if (covers[i].rows() != sizes[i] || covers[i].cols() != sizes[i + 1])
            throw error("cached cover matrix has wrong shape");
        L.poset_.order(i, i + 1) = std::move(covers[i]);
    }
    L.poset_.close_covers();

    L.le_ = BitMatrix(total, total);
    for (std::size_t x = 0; x < total; ++x) L.le_.set(x, x);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const BitMatrix& rel = L.poset_.order(i, j);
            for (std::size_t a = 0; a < sizes[i]; ++a)
                rel.for_each_in_row(a, [&](std::size_t b) {
                    L.le_.set(offset[i] + a, offset[j] + b);
                });
        }
    return L;
}

// ---------------------------------------------------------------------------
// interval backend

namespace detail {

template <class Coord, class Big>
int interval_codim(const RootSystem<Coord>& rs, const std::vector<RootIndex>& perm,
                   std::vector<std::vector<Big>>& scratch) {
    const int n = rs.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            scratch[j][i] = Big(rs.roots[perm[i]][j]);
            if (i == j) scratch[j][i] = scratch[j][i] - Big(1);
        }
    return matrix_rank(scratch);
}

struct IntervalParts {
    GradedPoset poset;
    std::vector<std::vector<std::uint64_t>> level_keys;
};

template <class Coord, class Big>
IntervalParts interval_from_roots(const CoxeterType& t, const RootSystem<Coord>& rs,
                                  const LatticeOptions& opts) {
    const int n = rs.n;
    const int nr = rs.num_roots();
    const GroupInvariants inv = invariants(t);

    // one reflection permutation per +/- root pair
    std::vector<int> trefl;
    {
        std::unordered_map<std::uint64_t, int> seen;
        for (int r = 0; r < nr; ++r)
            if (seen.emplace(pack_key(rs.refl[r], n), r).second) trefl.push_back(r);
    }
    if (Int(trefl.size()) != inv.reflection_count) throw error("reflection pairing failed");

    auto compose = [&](const std::vector<RootIndex>& a, const std::vector<RootIndex>& b) {
        std::vector<RootIndex> out(nr);
        for (int j = 0; j < nr; ++j) out[j] = a[b[j]];
        return out;
    };

    std::vector<RootIndex> cperm(nr);
    for (int j = 0; j < nr; ++j) cperm[j] = static_cast<RootIndex>(j);
    Bipartition bip = bipartition(t);
    for (int s : bip.minus) cperm = compose(cperm, rs.refl[s]);
    for (int s : bip.plus) cperm = compose(cperm, rs.refl[s]);

    std::vector<std::vector<Big>> scratch(n, std::vector<Big>(n, Big(0)));
    auto codim = [&](const std::vector<RootIndex>& p) { return interval_codim<Coord, Big>(rs, p, scratch); };
    if (codim(cperm) != n) throw error("bipartite Coxeter element has wrong codimension");

    constexpr int kOutside = -1;
    std::unordered_map<std::uint64_t, std::pair<int, std::uint32_t>> where;  // key -> (level, idx)
    std::vector<std::vector<std::vector<RootIndex>>> lvl(n + 1);
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> cov(n);  // (lower, upper) per i

    lvl[n].push_back(cperm);
    where.emplace(pack_key(cperm, n), std::make_pair(n, 0u));
    std::size_t total = 1;

    for (int k = n; k >= 1; --k) {
        for (std::uint32_t wi = 0; wi < lvl[k].size(); ++wi) {
            for (int r : trefl) {
                std::vector<RootIndex> v = compose(lvl[k][wi], rs.refl[r]);
                const std::uint64_t key = pack_key(v, n);
                auto it = where.find(key);
                if (it == where.end()) {
                    const int d = codim(v);
                    if (d == k - 1) {
                        const auto idx = static_cast<std::uint32_t>(lvl[k - 1].size());
                        lvl[k - 1].push_back(std::move(v));
                        where.emplace(key, std::make_pair(k - 1, idx));
                        cov[k - 1].push_back({idx, wi});
                        if (Int(++total) > opts.max_lattice_size)
                            throw resource_limit_error("lattice size exceeds bound");
                    } else {
                        // above w but outside [1, c]
                        where.emplace(key, std::make_pair(kOutside, 0u));
                    }
                } else if (it->second.first == k - 1) {
                    cov[k - 1].push_back({it->second.second, wi});
                }
            }
        }
    }
    if (lvl[0].size() != 1) throw error("interval bottom level is not the identity alone");

    IntervalParts parts;
    std::vector<std::size_t> sizes(n + 1);
    for (int r = 0; r <= n; ++r) sizes[r] = lvl[r].size();
    parts.poset = GradedPoset(sizes);
    for (int i = 0; i < n; ++i) {
        BitMatrix& rel = parts.poset.order(i, i + 1);
        for (auto [lo, hi] : cov[i]) rel.set(lo, hi);
    }
    parts.poset.close_covers();
    parts.level_keys.assign(n + 1, {});
    for (int r = 0; r <= n; ++r)
        for (const auto& p : lvl[r]) parts.level_keys[r].push_back(pack_key(p, n));
    return parts;
}

// I2(m): the rotation r^k (k != 0) fixes only the origin (codimension 2) and
// every reflection fixes a line (codimension 1), so [1, c] has levels
// (1, m, 1) with every cover present. Keys use the symbolic (rotation, flip)
// encoding.
inline IntervalParts interval_dihedral(int m) {
    IntervalParts parts;
    parts.poset = GradedPoset({1, std::size_t(m), 1});
    BitMatrix& low = parts.poset.order(0, 1);
    BitMatrix& high = parts.poset.order(1, 2);
    for (int i = 0; i < m; ++i) {
        low.set(0, i);
        high.set(i, 0);
    }
    parts.poset.close_covers();
    parts.level_keys.assign(3, {});
    parts.level_keys[0].push_back(0);                       // identity (0, 0)
    for (int a = 0; a < m; ++a) parts.level_keys[1].push_back(std::uint64_t(a) * 2 + 1);
    parts.level_keys[2].push_back(std::uint64_t(m - 1) * 2);  // c = r^{m-1}
    return parts;
}

}  // namespace detail

inline NcLattice build_lattice_interval(const CoxeterType& t, const LatticeOptions& opts) {
    if (!t.irreducible()) throw error("interval backend handles irreducible types only");
    const auto& f = t.factors[0];
    detail::IntervalParts parts;
    // Bareiss intermediates are k x k minors of (w - 1) in root coordinates:
    // entries are at most 8 in absolute value at rank <= 8, so minors stay
    // below ~10^11 (Hadamard) and their pairwise products below ~10^22,
    // comfortably inside __int128.
    if (f.family == 'I')
        parts = detail::interval_dihedral(f.edge);
    else if (f.family == 'H')
        parts = detail::interval_from_roots<Golden<long long>, Golden<__int128>>(t, golden_roots(f),
                                                                                 opts);
    else
        parts = detail::interval_from_roots<long long, __int128>(t, crystallographic_roots(f), opts);
    NcLattice L;
    L.type_ = t;
    L.backend_ = LatticeBackend::interval;
    L.poset_ = std::move(parts.poset);
    L.level_keys_ = std::move(parts.level_keys);
    return L;
}

inline NcLattice build_lattice(const CoxeterType& t, const LatticeOptions& opts = {},
                               LatticeBackend backend = LatticeBackend::automatic) {
    switch (backend) {
        case LatticeBackend::bfs:
            return build_lattice_bfs(system_for(t, opts.group), opts);
        case LatticeBackend::interval:
            return build_lattice_interval(t, opts);
        case LatticeBackend::automatic:
            break;
    }
    if (invariants(t).order <= opts.group.max_group_size)
        return build_lattice_bfs(system_for(t, opts.group), opts);
    if (t.irreducible()) return build_lattice_interval(t, opts);
    throw resource_limit_error("type exceeds the enumeration bound and is not irreducible");
}

// Hooks for the optional on-disk lattice cache (installed by cache.hpp).
struct LatticeCacheHooks {
    std::function<std::unique_ptr<NcLattice>(std::shared_ptr<const CoxeterSystem>)> load;
    std::function<void(const NcLattice&)> save;
};
inline LatticeCacheHooks& lattice_cache_hooks() {
    static LatticeCacheHooks h;
    return h;
}

// Memoized lattice access (bfs-backed; what the counting sweeps use).
inline const NcLattice& lattice_for(const CoxeterType& t, const LatticeOptions& opts = {}) {
    static std::map<std::string, std::unique_ptr<NcLattice>> memo;
    static std::mutex mx;
    const std::string key = t.render();
    std::scoped_lock lk(mx);
    if (auto it = memo.find(key); it != memo.end()) return *it->second;
    auto sys = system_for(t, opts.group);
    std::unique_ptr<NcLattice> L;
    auto& hooks = lattice_cache_hooks();
    if (hooks.load) L = hooks.load(sys);
    if (!L) {
        L = std::make_unique<NcLattice>(build_lattice_bfs(std::move(sys), opts));
        if (hooks.save) hooks.save(*L);
    }
    return *memo.emplace(key, std::move(L)).first->second;
}

// ---------------------------------------------------------------------------
// delta sequences

struct DeltaSequence {
    std::vector<ElementId> d;  // (delta_0, ..., delta_k)
};

inline bool is_valid_delta(const CoxeterSystem& W, const DeltaSequence& delta) {
    if (delta.d.empty()) return false;
    int len = 0;
    ElementId prod = W.identity();
    for (ElementId x : delta.d) {
        len += W.absolute_length(x);
        prod = W.compose(prod, x);
    }
    return len == W.rank() && prod == W.bipartite_c();
}

// chain x_1 <= ... <= x_k  ->  (x_0^{-1} x_1, ..., x_k^{-1} x_{k+1}) with
// x_0 = 1 and x_{k+1} = c
inline DeltaSequence multichain_to_delta(const CoxeterSystem& W, std::span<const ElementId> chain) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (!W.abs_leq(chain[i], chain[i + 1])) throw error("chain is not weakly increasing");
    if (!chain.empty() && !W.abs_leq(chain.back(), W.bipartite_c()))
        throw error("chain is not contained in [1, c]");
    DeltaSequence delta;
    ElementId prev = W.identity();
    for (ElementId x : chain) {
        delta.d.push_back(W.compose(W.invert(prev), x));
        prev = x;
    }
    delta.d.push_back(W.compose(W.invert(prev), W.bipartite_c()));
    return delta;
}

inline std::vector<ElementId> delta_to_multichain(const CoxeterSystem& W, const DeltaSequence& delta) {
    if (!is_valid_delta(W, delta)) throw error("delta sequence fails the sum/product invariant");
    std::vector<ElementId> chain;
    ElementId x = W.identity();
    for (std::size_t i = 0; i + 1 < delta.d.size(); ++i) {
        x = W.compose(x, delta.d[i]);
        chain.push_back(x);
    }
    return chain;
}

// delta'_{i-1} = delta_{i-1} delta_i delta_{i-1}^{-1}, delta'_i = delta_{i-1}
// (1 <= i <= k); swaps the length vector at positions i-1, i and is the
// bijection behind composition-permutation invariance.
inline DeltaSequence permute_delta(const CoxeterSystem& W, const DeltaSequence& delta, int i) {
    if (i < 1 || i >= static_cast<int>(delta.d.size())) throw error("index out of range");
    DeltaSequence out = delta;
    ElementId a = delta.d[i - 1], b = delta.d[i];
    out.d[i - 1] = W.compose(W.compose(a, b), W.invert(a));
    out.d[i] = a;
    return out;
}

// ---------------------------------------------------------------------------
// backend cross-validation: identical level key sets and identical cover
// matrices under the key-sorted element order.

struct BackendComparison {
    bool same = false;
    std::string detail;
};

inline BackendComparison cross_validate_backends(const CoxeterType& t,
                                                 const LatticeOptions& opts = {}) {
    if (!t.irreducible()) throw error("cross-validation is per irreducible type");
    NcLattice bfs = build_lattice_bfs(system_for(t, opts.group), opts);
    NcLattice itv = build_lattice_interval(t, opts);
    const int n = bfs.rank();

    // keys per level on the bfs side
    std::vector<std::vector<std::uint64_t>> bfs_keys(n + 1);
    const auto elem_keys = bfs.system()->element_keys();
    if (elem_keys.empty()) {
        // symbolic dihedral: (rotation, flip) ids coincide with the interval
        // encoding only up to relabeling, so compare the packed (a, e) form
        const auto& W = *bfs.system();
        std::vector<std::pair<int, int>> sym(W.size());
        sym[0] = {0, 0};
        // reconstruct (a, e) from the BFS tree: s_0 = f, s_1 = r f
        const int m = t.factors[0].edge;
        for (ElementId w = 1; w < W.size(); ++w) {
            auto [a, e] = sym[W.raw_parent()[w]];
            if (W.raw_pgen()[w] == 0) sym[w] = {a, e ^ 1};
            else sym[w] = {(a + (e ? m - 1 : 1)) % m, e ^ 1};
        }
        for (int r = 0; r <= n; ++r)
            for (ElementId w : bfs.levels()[r])
                bfs_keys[r].push_back(std::uint64_t(sym[w].first) * 2 + sym[w].second);
    } else {
        for (int r = 0; r <= n; ++r)
            for (ElementId w : bfs.levels()[r]) bfs_keys[r].push_back(elem_keys[w]);
    }

    auto argsort = [](const std::vector<std::uint64_t>& keys) {
        std::vector<std::size_t> idx(keys.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return keys[a] < keys[b]; });
        return idx;
    };

    for (int r = 0; r <= n; ++r) {
        if (bfs_keys[r].size() != itv.level_keys()[r].size())
            return {false, "level " + std::to_string(r) + " sizes differ"};
    }
    std::vector<std::vector<std::size_t>> pb(n + 1), pi(n + 1);
    for (int r = 0; r <= n; ++r) {
        pb[r] = argsort(bfs_keys[r]);
        pi[r] = argsort(itv.level_keys()[r]);
        for (std::size_t i = 0; i < pb[r].size(); ++i)
            if (bfs_keys[r][pb[r][i]] != itv.level_keys()[r][pi[r][i]])
                return {false, "level " + std::to_string(r) + " element sets differ"};
    }
    for (int i = 0; i < n; ++i) {
        const auto& ca = bfs.poset().covers(i);
        const auto& cb = itv.poset().covers(i);
        BitMatrix ra(ca.rows(), ca.cols()), rb(cb.rows(), cb.cols());
        for (std::size_t a = 0; a < ca.rows(); ++a)
            for (std::size_t b = 0; b < ca.cols(); ++b) {
                if (ca.test(pb[i][a], pb[i + 1][b])) ra.set(a, b);
                if (cb.test(pi[i][a], pi[i + 1][b])) rb.set(a, b);
            }
        if (!(ra == rb)) return {false, "cover relation differs between ranks " +
                                            std::to_string(i) + " and " + std::to_string(i + 1)};
    }
    return {true, "levels and covers agree"};
}

}  // namespace ncp
