#pragma once

// Exact root systems in simple-root coordinates. Crystallographic families
// (A, B, D, E, F) use 64-bit integer coordinates; H3/H4 use the golden ring
// Z[phi]. Every group element acts as a permutation of the (finite) root
// list, which is what the group-enumeration and interval backends compute
// with.

#include "ncp/bigint.hpp"
#include "ncp/diagram.hpp"
#include "ncp/golden.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace ncp {

using RootIndex = std::uint8_t;  // at most 240 roots at rank <= 8

template <class Coord>
struct RootSystem {
    int n = 0;
    std::vector<std::vector<Coord>> gram;      // (a_i, a_j)
    std::vector<std::vector<Coord>> cartan;    // C[i][j] = 2 (a_j, a_i) / (a_i, a_i)
    std::vector<std::vector<Coord>> roots;     // coordinates in the simple basis
    std::vector<std::vector<RootIndex>> refl;  // refl[r][j] = s_{root r}(root j)

    int num_roots() const { return static_cast<int>(roots.size()); }

    Coord pairing(const std::vector<Coord>& x, const std::vector<Coord>& y) const {
        Coord s(0);
        for (int i = 0; i < n; ++i) {
            if (scalar_is_zero(x[i])) continue;
            Coord row(0);
            for (int j = 0; j < n; ++j) row += gram[i][j] * y[j];
            s += x[i] * row;
        }
        return s;
    }
};

namespace detail {

template <class Coord>
RootSystem<Coord> build_root_system(std::vector<std::vector<Coord>> gram) {
    RootSystem<Coord> rs;
    rs.n = static_cast<int>(gram.size());
    rs.gram = std::move(gram);
    rs.cartan.assign(rs.n, std::vector<Coord>(rs.n, Coord(0)));
    for (int i = 0; i < rs.n; ++i)
        for (int j = 0; j < rs.n; ++j)
            rs.cartan[i][j] = scalar_exact_div(Coord(2) * rs.gram[i][j], rs.gram[i][i]);

    // enumerate roots: closure of the simple roots under simple reflections
    std::map<std::vector<Coord>, int> index;
    for (int i = 0; i < rs.n; ++i) {
        std::vector<Coord> a(rs.n, Coord(0));
        a[i] = Coord(1);
        index.emplace(a, i);
        rs.roots.push_back(std::move(a));
    }
    for (std::size_t head = 0; head < rs.roots.size(); ++head) {
        for (int i = 0; i < rs.n; ++i) {
            std::vector<Coord> b = rs.roots[head];
            Coord c(0);
            for (int j = 0; j < rs.n; ++j) c += rs.cartan[i][j] * b[j];
            b[i] -= c;
            if (index.emplace(b, static_cast<int>(rs.roots.size())).second)
                rs.roots.push_back(std::move(b));
        }
    }
    if (rs.roots.size() > 255) throw error("root system too large for RootIndex");

    // full reflection table s_r(root j) for every root r
    const int nr = rs.num_roots();
    rs.refl.assign(nr, std::vector<RootIndex>(nr));
    for (int r = 0; r < nr; ++r) {
        Coord den = rs.pairing(rs.roots[r], rs.roots[r]);
        for (int j = 0; j < nr; ++j) {
            Coord q = scalar_exact_div(Coord(2) * rs.pairing(rs.roots[j], rs.roots[r]), den);
            std::vector<Coord> img = rs.roots[j];
            for (int i = 0; i < rs.n; ++i) img[i] -= q * rs.roots[r][i];
            auto it = index.find(img);
            if (it == index.end()) throw error("root system is not closed under reflection");
            rs.refl[r][j] = static_cast<RootIndex>(it->second);
        }
    }
    return rs;
}

}  // namespace detail

// Crystallographic factors: integer coordinates. Long roots get squared
// length 4 and short roots 2 in B/F so that every pairing is an integer.
inline RootSystem<long long> crystallographic_roots(const IrreducibleType& f) {
    const int n = f.rank;
    CoxeterMatrix cm = coxeter_matrix(CoxeterType{f});
    std::vector<long long> norms(n, 2);
    if (f.family == 'B') {
        for (int i = 0; i + 1 < n; ++i) norms[i] = 4;
    } else if (f.family == 'F') {
        norms = {4, 4, 2, 2};
    } else if (f.family != 'A' && f.family != 'D' && f.family != 'E') {
        throw error("not a crystallographic family");
    }
    std::vector<std::vector<long long>> gram(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) {
        gram[i][i] = norms[i];
        for (int j = 0; j < n; ++j) {
            if (i == j || cm.m[i][j] == 2) continue;
            // label 3: -1 (short/short) or -2 (long/long); label 4: -2 (mixed)
            gram[i][j] = (norms[i] == 2 && norms[j] == 2) ? -1 : -2;
        }
    }
    return detail::build_root_system(std::move(gram));
}

inline RootSystem<Golden<long long>> golden_roots(const IrreducibleType& f) {
    if (f.family != 'H') throw error("golden root systems are for H3/H4");
    const int n = f.rank;
    CoxeterMatrix cm = coxeter_matrix(CoxeterType{f});
    using G = Golden<long long>;
    std::vector<std::vector<G>> gram(n, std::vector<G>(n, G(0)));
    for (int i = 0; i < n; ++i) {
        gram[i][i] = G(2);
        for (int j = 0; j < n; ++j) {
            if (i == j || cm.m[i][j] == 2) continue;
            gram[i][j] = cm.m[i][j] == 3 ? G(-1) : G(0, -1);  // -1 or -phi
        }
    }
    return detail::build_root_system(std::move(gram));
}

}  // namespace ncp
