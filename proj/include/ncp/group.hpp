#pragma once

// Concrete finite Coxeter groups. Elements are dense ids assigned by a
// deterministic breadth-first closure over the simple generators (identity
// is 0, ties broken by (parent id, generator index)). The underlying exact
// realization is a permutation action on the root system for A/B/D/E/F/H
// factors and a symbolic rotation/reflection form for I2(m); reducible types
// are direct products of factor systems with mixed-radix ids.
//
// After the build everything is table-driven: right/left multiplication by
// generators, BFS parent words for general composition, the reflection set,
// and the absolute-length table (graph distance in the T-Cayley graph).

#include "ncp/bigint.hpp"
#include "ncp/diagram.hpp"
#include "ncp/root_system.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

namespace ncp {

using ElementId = std::uint32_t;

struct BuildOptions {
    Int max_group_size = 1'000'000;
};

struct SteinbergOrbit {
    std::vector<ElementId> orbit;  // sorted element ids, all reflections
    std::vector<int> simple_meet;  // vertices of S met by the orbit
};

class CoxeterSystem;
std::shared_ptr<const CoxeterSystem> system_for(const CoxeterType& t, const BuildOptions& opts = {});

class CoxeterSystem {
  public:
    const CoxeterType& type() const { return type_; }
    int rank() const { return n_; }
    std::size_t size() const { return size_; }
    ElementId identity() const { return 0; }

    ElementId generator(int s) const {
        check_vertex(s);
        return gen_mult_[s];
    }

    // w * s_g
    ElementId mult_gen(ElementId w, int g) const { return gen_mult_[std::size_t(w) * n_ + g]; }
    // s_g * w
    ElementId gen_mult(int g, ElementId w) const { return left_mult_[std::size_t(g) * size_ + w]; }

    ElementId compose(ElementId u, ElementId v) const {
        check_element(u);
        check_element(v);
        std::array<std::uint8_t, 256> word;
        int len = 0;
        for (ElementId x = v; x != 0; x = parent_[x]) {
            if (len == 256) throw error("word buffer exceeded");
            word[len++] = pgen_[x];
        }
        ElementId w = u;
        for (int i = len - 1; i >= 0; --i) w = mult_gen(w, word[i]);
        return w;
    }

    ElementId invert(ElementId u) const {
        check_element(u);
        return inv_[u];
    }

    int s_length(ElementId w) const {
        check_element(w);
        return depth_[w];
    }

    int absolute_length(ElementId w) const {
        check_element(w);
        return lT_[w];
    }

    // u <= v in absolute order, by length additivity
    bool abs_leq(ElementId u, ElementId v) const {
        return lT_[u] + lT_[compose(inv_[u], v)] == lT_[v];
    }

    const std::vector<ElementId>& reflections() const { return refl_; }
    bool is_reflection(ElementId w) const { return lT_[w] == 1; }

    const Bipartition& diagram_bipartition() const { return bip_; }
    ElementId bipartite_cminus() const { return cminus_; }
    ElementId bipartite_cplus() const { return cplus_; }
    ElementId bipartite_c() const { return c_; }

    ElementId coxeter_element(std::span<const int> order) const {
        if (static_cast<int>(order.size()) != n_) throw error("order is not a permutation of S");
        std::vector<bool> seen(n_, false);
        ElementId w = 0;
        for (int s : order) {
            check_vertex(s);
            if (seen[s]) throw error("order is not a permutation of S");
            seen[s] = true;
            w = mult_gen(w, s);
        }
        return w;
    }

    // The alternating bipartite word: k >= 0 gives ...c+ c- c+ (k letters,
    // rightmost c+), k < 0 gives c+ c- c+ ... (|k| letters, leftmost c+).
    ElementId c_plus_word(long k) const {
        ElementId w = 0;
        if (k >= 0) {
            for (long j = 1; j <= k; ++j) w = compose(j % 2 ? cplus_ : cminus_, w);
        } else {
            for (long j = 1; j <= -k; ++j) w = compose(w, j % 2 ? cplus_ : cminus_);
        }
        return w;
    }

    // Smallest k >= 0 with c+<k> t c+<-k> = c+<k+1> t c+<-k-1> = s for a
    // simple s; returns (k, vertex of s). Exists by the Steinberg orbit
    // dichotomy; the walk is bounded by c+<2h> = 1.
    std::pair<int, int> k_of_t(ElementId t) const {
        require_irreducible();
        if (!is_reflection(t)) throw error("k_of_t requires a reflection");
        const int h = invariants(type_).h();
        ElementId u = t;
        for (int k = 0; k <= 2 * h; ++k) {
            ElementId letter = (k + 1) % 2 ? cplus_ : cminus_;
            ElementId next = compose(compose(letter, u), letter);
            if (u == next) {
                auto it = vertex_of_gen_.find(u);
                if (it != vertex_of_gen_.end()) return {k, it->second};
            }
            u = next;
        }
        throw error("k(t) walk did not stabilize within 2h steps");
    }

    SteinbergOrbit steinberg_orbit(ElementId t) const {
        require_irreducible();
        if (!is_reflection(t)) throw error("steinberg_orbit requires a reflection");
        std::vector<ElementId> stack{t};
        std::map<ElementId, bool> seen{{t, true}};
        while (!stack.empty()) {
            ElementId x = stack.back();
            stack.pop_back();
            for (ElementId g : {cplus_, cminus_}) {
                ElementId y = compose(compose(g, x), g);
                if (seen.emplace(y, true).second) stack.push_back(y);
            }
        }
        SteinbergOrbit orb;
        for (auto& [x, _] : seen) {
            orb.orbit.push_back(x);
            auto it = vertex_of_gen_.find(x);
            if (it != vertex_of_gen_.end()) orb.simple_meet.push_back(it->second);
        }
        const std::size_t h = invariants(type_).h();
        const bool half = orb.orbit.size() * 2 == h && orb.simple_meet.size() == 1;
        const bool full = orb.orbit.size() == h && orb.simple_meet.size() == 2;
        if (!half && !full) throw error("Steinberg orbit dichotomy violated");
        return orb;
    }

    struct Parabolic {
        VertexDeletion deletion;
        std::shared_ptr<const CoxeterSystem> sub;
        std::vector<ElementId> embed;  // sub id -> id in the ambient group
    };
    Parabolic parabolic(int vertex) const;

    // Packed images of the simple roots, one per element, for backends that
    // share the root realization (cross-validation). Empty for I2/products.
    std::vector<std::uint64_t> element_keys() const;

    // raw tables (serialization)
    const std::vector<ElementId>& raw_gen_mult() const { return gen_mult_; }
    const std::vector<ElementId>& raw_parent() const { return parent_; }
    const std::vector<std::uint8_t>& raw_pgen() const { return pgen_; }
    const std::vector<std::uint8_t>& raw_lT() const { return lT_; }

  private:
    friend std::shared_ptr<const CoxeterSystem> build_system(const CoxeterType&, const BuildOptions&);
    friend std::shared_ptr<const CoxeterSystem> system_from_tables(const CoxeterType&,
                                                                   std::vector<ElementId> gen_mult,
                                                                   std::vector<ElementId> parent,
                                                                   std::vector<std::uint8_t> pgen);
    CoxeterSystem() = default;

    void check_element(ElementId w) const {
        if (w >= size_) throw error("element id out of range (foreign system?)");
    }
    void check_vertex(int s) const {
        if (s < 0 || s >= n_) throw error("invalid vertex id");
    }
    void require_irreducible() const {
        if (!type_.irreducible()) throw error("operation requires an irreducible system");
    }

    // Derives every table from (gen_mult, parent, pgen) and validates the
    // result against the reference invariants.
    void finalize();

    CoxeterType type_;
    int n_ = 0;
    std::size_t size_ = 1;
    std::vector<ElementId> gen_mult_;   // [w*n + s] = w s
    std::vector<ElementId> left_mult_;  // [s*N + w] = s w
    std::vector<ElementId> parent_;
    std::vector<std::uint8_t> pgen_;
    std::vector<std::uint8_t> depth_;   // ell_S
    std::vector<std::uint8_t> lT_;      // absolute length
    std::vector<ElementId> inv_;
    std::vector<ElementId> refl_;       // sorted
    std::map<ElementId, int> vertex_of_gen_;
    Bipartition bip_;
    ElementId cminus_ = 0, cplus_ = 0, c_ = 0;
};

namespace detail {

// BFS closure over explicit generator permutations of the root list.
// Fills gen_mult/parent/pgen; keys are the packed images of the first n
// roots (the simple roots), which determine the element.
struct BfsTables {
    std::vector<ElementId> gen_mult, parent;
    std::vector<std::uint8_t> pgen;
    std::size_t size = 0;
};

inline std::uint64_t pack_key(const std::vector<RootIndex>& perm, int n) {
    std::uint64_t k = 0;
    for (int i = 0; i < n; ++i) k |= std::uint64_t(perm[i]) << (8 * i);
    return k;
}

inline BfsTables bfs_over_perms(const std::vector<std::vector<RootIndex>>& gen_perm,
                                std::size_t expected, std::vector<std::uint64_t>* keys_out = nullptr) {
    const int n = static_cast<int>(gen_perm.size());
    const std::size_t nr = gen_perm[0].size();
    BfsTables t;
    std::vector<std::vector<RootIndex>> perm;
    perm.reserve(expected);
    std::unordered_map<std::uint64_t, ElementId> index;
    index.reserve(expected * 2);

    std::vector<RootIndex> id_perm(nr);
    for (std::size_t j = 0; j < nr; ++j) id_perm[j] = static_cast<RootIndex>(j);
    index.emplace(pack_key(id_perm, n), 0);
    perm.push_back(std::move(id_perm));
    t.parent.push_back(0);
    t.pgen.push_back(0xFF);

    std::vector<RootIndex> buf(nr);
    for (ElementId w = 0; w < perm.size(); ++w) {
        t.gen_mult.resize((std::size_t(w) + 1) * n);
        for (int s = 0; s < n; ++s) {
            const auto& pw = perm[w];
            const auto& ps = gen_perm[s];
            for (std::size_t j = 0; j < nr; ++j) buf[j] = pw[ps[j]];
            auto [it, fresh] = index.emplace(pack_key(buf, n), static_cast<ElementId>(perm.size()));
            if (fresh) {
                if (perm.size() > expected) throw error("BFS exceeded the expected group order");
                perm.push_back(buf);
                t.parent.push_back(w);
                t.pgen.push_back(static_cast<std::uint8_t>(s));
            }
            t.gen_mult[std::size_t(w) * n + s] = it->second;
        }
    }
    t.size = perm.size();
    if (t.size != expected) throw error("BFS closure does not match the group-order table");
    if (keys_out) {
        keys_out->resize(t.size);
        for (std::size_t w = 0; w < t.size; ++w) (*keys_out)[w] = pack_key(perm[w], n);
    }
    return t;
}

inline std::vector<std::vector<RootIndex>> generator_perms(const IrreducibleType& f) {
    std::vector<std::vector<RootIndex>> gp(f.rank);
    if (f.family == 'H') {
        auto rs = golden_roots(f);
        for (int s = 0; s < f.rank; ++s) gp[s] = rs.refl[s];
    } else {
        auto rs = crystallographic_roots(f);
        for (int s = 0; s < f.rank; ++s) gp[s] = rs.refl[s];
    }
    return gp;
}

// Symbolic dihedral tables for I2(m): elements r^a f^e with the generators
// s_0 = f, s_1 = r f, multiplied on the right.
inline BfsTables bfs_dihedral(int m) {
    BfsTables t;
    const std::size_t N = 2 * std::size_t(m);
    auto key = [&](int a, int e) { return a * 2 + e; };
    std::vector<int> id_of(N, -1);
    std::vector<std::pair<int, int>> elems;
    elems.reserve(N);
    auto emplace = [&](int a, int e) -> std::pair<ElementId, bool> {
        int& slot = id_of[key(a, e)];
        if (slot >= 0) return {static_cast<ElementId>(slot), false};
        slot = static_cast<int>(elems.size());
        elems.emplace_back(a, e);
        return {static_cast<ElementId>(slot), true};
    };
    emplace(0, 0);
    t.parent.push_back(0);
    t.pgen.push_back(0xFF);
    for (ElementId w = 0; w < elems.size(); ++w) {
        t.gen_mult.resize((std::size_t(w) + 1) * 2);
        auto [a, e] = elems[w];
        for (int s = 0; s < 2; ++s) {
            int na = s == 0 ? a : (a + (e ? m - 1 : 1)) % m;
            auto [id, fresh] = emplace(na, e ^ 1);
            if (fresh) {
                t.parent.push_back(w);
                t.pgen.push_back(static_cast<std::uint8_t>(s));
            }
            t.gen_mult[std::size_t(w) * 2 + s] = id;
        }
    }
    t.size = elems.size();
    if (t.size != N) throw error("dihedral closure has the wrong order");
    return t;
}

}  // namespace detail

inline void CoxeterSystem::finalize() {
    const GroupInvariants inv = invariants(type_);
    if (Int(size_) != inv.order) throw error("enumerated order disagrees with the invariant table");

    // depth (BFS word length) and left multiplication, both in id order
    depth_.assign(size_, 0);
    for (ElementId w = 1; w < size_; ++w) depth_[w] = depth_[parent_[w]] + 1;

    left_mult_.assign(std::size_t(n_) * size_, 0);
    for (int s = 0; s < n_; ++s) {
        left_mult_[std::size_t(s) * size_] = gen_mult_[s];
        for (ElementId w = 1; w < size_; ++w)
            left_mult_[std::size_t(s) * size_ + w] =
                mult_gen(left_mult_[std::size_t(s) * size_ + parent_[w]], pgen_[w]);
    }

    inv_.assign(size_, 0);
    for (ElementId w = 1; w < size_; ++w)
        inv_[w] = gen_mult(pgen_[w], inv_[parent_[w]]);

    // reflections: closure of S under conjugation by generators
    for (int s = 0; s < n_; ++s) vertex_of_gen_.emplace(gen_mult_[s], s);
    {
        std::vector<bool> in_t(size_, false);
        std::vector<ElementId> stack;
        for (int s = 0; s < n_; ++s) {
            ElementId g = gen_mult_[s];
            if (!in_t[g]) {
                in_t[g] = true;
                stack.push_back(g);
            }
        }
        while (!stack.empty()) {
            ElementId x = stack.back();
            stack.pop_back();
            for (int s = 0; s < n_; ++s) {
                ElementId y = mult_gen(gen_mult(s, x), s);
                if (!in_t[y]) {
                    in_t[y] = true;
                    stack.push_back(y);
                }
            }
        }
        for (ElementId w = 0; w < size_; ++w)
            if (in_t[w]) refl_.push_back(w);
    }
    if (Int(refl_.size()) != inv.reflection_count)
        throw error("reflection count disagrees with n h / 2");

    // absolute length: multi-level BFS over the T-Cayley graph
    std::vector<std::vector<std::uint8_t>> twords;
    twords.reserve(refl_.size());
    for (ElementId t : refl_) {
        std::vector<std::uint8_t> word;
        for (ElementId x = t; x != 0; x = parent_[x]) word.push_back(pgen_[x]);
        std::reverse(word.begin(), word.end());
        twords.push_back(std::move(word));
    }
    lT_.assign(size_, 0xFF);
    lT_[0] = 0;
    std::vector<ElementId> frontier{0};
    std::uint8_t level = 0;
    while (!frontier.empty()) {
        ++level;
        std::vector<ElementId> next;
        for (ElementId w : frontier) {
            for (const auto& word : twords) {
                ElementId v = w;
                for (std::uint8_t g : word) v = mult_gen(v, g);
                if (lT_[v] == 0xFF) {
                    lT_[v] = level;
                    next.push_back(v);
                }
            }
        }
        frontier = std::move(next);
    }

    bip_ = bipartition(type_);
    auto prod = [&](const std::vector<int>& vs) {
        ElementId w = 0;
        for (int s : vs) w = mult_gen(w, s);
        return w;
    };
    cminus_ = prod(bip_.minus);
    cplus_ = prod(bip_.plus);
    c_ = compose(cminus_, cplus_);
    if (lT_[c_] != n_) throw error("bipartite Coxeter element has wrong absolute length");
}

inline std::shared_ptr<const CoxeterSystem> system_from_tables(const CoxeterType& t,
                                                               std::vector<ElementId> gen_mult,
                                                               std::vector<ElementId> parent,
                                                               std::vector<std::uint8_t> pgen) {
    auto sys = std::shared_ptr<CoxeterSystem>(new CoxeterSystem());
    sys->type_ = t;
    sys->n_ = t.rank();
    sys->size_ = parent.size();
    sys->gen_mult_ = std::move(gen_mult);
    sys->parent_ = std::move(parent);
    sys->pgen_ = std::move(pgen);
    sys->finalize();
    return sys;
}

inline std::shared_ptr<const CoxeterSystem> build_system(const CoxeterType& t,
                                                         const BuildOptions& opts) {
    const GroupInvariants inv = invariants(t);
    if (inv.order > opts.max_group_size)
        throw resource_limit_error("group order " + inv.order.str() +
                                   " exceeds the enumeration bound; use closed forms or the "
                                   "interval backend for this type");
    if (inv.order > Int(std::numeric_limits<ElementId>::max()))
        throw resource_limit_error("group order does not fit 32-bit element ids");

    if (t.factors.empty())
        return system_from_tables(t, {}, {0}, {0xFF});

    if (t.irreducible()) {
        const auto& f = t.factors[0];
        detail::BfsTables tabs =
            f.family == 'I'
                ? detail::bfs_dihedral(f.edge)
                : detail::bfs_over_perms(detail::generator_perms(f),
                                         inv.order.convert_to<std::size_t>());
        return system_from_tables(t, std::move(tabs.gen_mult), std::move(tabs.parent),
                                  std::move(tabs.pgen));
    }

    // direct product: mixed-radix ids over the factor systems, first factor
    // fastest; parent words from a BFS pass over the assembled table
    std::vector<std::shared_ptr<const CoxeterSystem>> facs;
    for (const auto& f : t.factors) facs.push_back(system_for(CoxeterType{f}, opts));
    const std::size_t N = inv.order.convert_to<std::size_t>();
    const int n = t.rank();
    std::vector<std::size_t> stride(facs.size());
    std::vector<int> gen_base(facs.size());
    {
        std::size_t s = 1;
        int g = 0;
        for (std::size_t i = 0; i < facs.size(); ++i) {
            stride[i] = s;
            gen_base[i] = g;
            s *= facs[i]->size();
            g += facs[i]->rank();
        }
    }
    std::vector<ElementId> gen_mult(N * n);
    for (std::size_t w = 0; w < N; ++w) {
        for (std::size_t i = 0; i < facs.size(); ++i) {
            const std::size_t Ni = facs[i]->size();
            const ElementId wi = static_cast<ElementId>((w / stride[i]) % Ni);
            for (int s = 0; s < facs[i]->rank(); ++s) {
                const ElementId vi = facs[i]->mult_gen(wi, s);
                const std::ptrdiff_t delta =
                    (std::ptrdiff_t(vi) - std::ptrdiff_t(wi)) * std::ptrdiff_t(stride[i]);
                gen_mult[w * n + gen_base[i] + s] = static_cast<ElementId>(std::ptrdiff_t(w) + delta);
            }
        }
    }
    std::vector<ElementId> parent(N, 0);
    std::vector<std::uint8_t> pgen(N, 0xFF);
    std::vector<bool> seen(N, false);
    seen[0] = true;
    std::vector<ElementId> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        ElementId w = queue[head];
        for (int s = 0; s < n; ++s) {
            ElementId v = gen_mult[std::size_t(w) * n + s];
            if (!seen[v]) {
                seen[v] = true;
                parent[v] = w;
                pgen[v] = static_cast<std::uint8_t>(s);
                queue.push_back(v);
            }
        }
    }
    return system_from_tables(t, std::move(gen_mult), std::move(parent), std::move(pgen));
}

// Hooks for an optional on-disk cache (installed by cache.hpp / the CLI).
struct SystemCacheHooks {
    std::function<std::shared_ptr<const CoxeterSystem>(const CoxeterType&)> load;
    std::function<void(const CoxeterSystem&)> save;
};
inline SystemCacheHooks& system_cache_hooks() {
    static SystemCacheHooks h;
    return h;
}

inline std::shared_ptr<const CoxeterSystem> system_for(const CoxeterType& t,
                                                       const BuildOptions& opts) {
    static std::map<std::string, std::shared_ptr<const CoxeterSystem>> memo;
    static std::mutex mx;
    const std::string key = t.render();
    {
        std::scoped_lock lk(mx);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    std::shared_ptr<const CoxeterSystem> sys;
    auto& hooks = system_cache_hooks();
    if (hooks.load) sys = hooks.load(t);
    if (!sys) {
        sys = build_system(t, opts);
        if (hooks.save) hooks.save(*sys);
    }
    std::scoped_lock lk(mx);
    return memo.emplace(key, std::move(sys)).first->second;
}

inline CoxeterSystem::Parabolic CoxeterSystem::parabolic(int vertex) const {
    check_vertex(vertex);
    Parabolic p;
    p.deletion = delete_vertex(type_, vertex);
    p.sub = system_for(p.deletion.type);
    p.embed.assign(p.sub->size(), 0);
    for (ElementId w = 1; w < p.sub->size(); ++w)
        p.embed[w] = mult_gen(p.embed[p.sub->parent_[w]],
                              p.deletion.orig_vertex[p.sub->pgen_[w]]);
    return p;
}

inline std::vector<std::uint64_t> CoxeterSystem::element_keys() const {
    if (!type_.irreducible() || type_.factors[0].family == 'I') return {};
    auto gp = detail::generator_perms(type_.factors[0]);
    std::vector<std::uint64_t> keys;
    detail::bfs_over_perms(gp, size_, &keys);
    return keys;
}

}  // namespace ncp
