#pragma once

// Binary on-disk cache for built groups, keyed by the canonical type string.
// Files carry a magic/version header and the full table set; anything that
// fails validation is discarded and rebuilt. Writes go to a temp file and
// are renamed into place. Derived structures (lattices, m-posets) rebuild
// deterministically from the tables, so caching the group is enough to make
// repeat runs cheap without risking stale derived state.

#include "ncp/group.hpp"
#include "ncp/lattice.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <unistd.h>

namespace ncp {

namespace detail {

constexpr std::uint32_t kCacheMagic = 0x4e435043;  // "NCPC"
constexpr std::uint32_t kCacheVersion = 1;

template <class T>
void put_pod(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <class T>
bool get_pod(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return bool(is);
}
template <class T>
void put_vec(std::ostream& os, const std::vector<T>& v) {
    put_pod(os, std::uint64_t(v.size()));
    os.write(reinterpret_cast<const char*>(v.data()), std::streamsize(v.size() * sizeof(T)));
}
template <class T>
bool get_vec(std::istream& is, std::vector<T>& v) {
    std::uint64_t n = 0;
    if (!get_pod(is, n)) return false;
    v.resize(n);
    is.read(reinterpret_cast<char*>(v.data()), std::streamsize(n * sizeof(T)));
    return bool(is);
}

inline std::string sanitize_key(const std::string& key) {
    std::string out;
    for (char c : key) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return out;
}

}  // namespace detail

inline std::optional<std::filesystem::path> default_cache_dir() {
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x)
        return std::filesystem::path(x) / "ncp";
    if (const char* h = std::getenv("HOME"); h && *h)
        return std::filesystem::path(h) / ".cache" / "ncp";
    return std::nullopt;
}

inline std::filesystem::path group_cache_file(const std::filesystem::path& dir,
                                              const std::string& key) {
    return dir / ("group_" + detail::sanitize_key(key) + ".ncpc");
}

inline void save_group_cache(const std::filesystem::path& dir, const CoxeterSystem& sys) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return;
    const std::string key = sys.type().render();
    const auto final_path = group_cache_file(dir, key);
    const auto tmp_path = final_path.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream os(tmp_path, std::ios::binary | std::ios::trunc);
        if (!os) return;
        detail::put_pod(os, detail::kCacheMagic);
        detail::put_pod(os, detail::kCacheVersion);
        detail::put_pod(os, std::uint64_t(key.size()));
        os.write(key.data(), std::streamsize(key.size()));
        detail::put_pod(os, std::uint64_t(sys.size()));
        detail::put_vec(os, sys.raw_gen_mult());
        detail::put_vec(os, sys.raw_parent());
        detail::put_vec(os, sys.raw_pgen());
        if (!os) return;
    }
    std::filesystem::rename(tmp_path, final_path, ec);
    if (ec) std::filesystem::remove(tmp_path, ec);
}

inline std::shared_ptr<const CoxeterSystem> load_group_cache(const std::filesystem::path& dir,
                                                             const CoxeterType& t) {
    const std::string key = t.render();
    std::ifstream is(group_cache_file(dir, key), std::ios::binary);
    if (!is) return nullptr;
    std::uint32_t magic = 0, version = 0;
    std::uint64_t keylen = 0, size = 0;
    if (!detail::get_pod(is, magic) || magic != detail::kCacheMagic) return nullptr;
    if (!detail::get_pod(is, version) || version != detail::kCacheVersion) return nullptr;
    if (!detail::get_pod(is, keylen) || keylen > 4096) return nullptr;
    std::string stored(keylen, '\0');
    is.read(stored.data(), std::streamsize(keylen));
    if (!is || stored != key) return nullptr;
    if (!detail::get_pod(is, size)) return nullptr;
    std::vector<ElementId> gen_mult, parent;
    std::vector<std::uint8_t> pgen;
    if (!detail::get_vec(is, gen_mult) || !detail::get_vec(is, parent) || !detail::get_vec(is, pgen))
        return nullptr;
    if (parent.size() != size || pgen.size() != size ||
        gen_mult.size() != size * std::size_t(t.rank()))
        return nullptr;
    try {
        // finalize() re-derives and validates everything else
        return system_from_tables(t, std::move(gen_mult), std::move(parent), std::move(pgen));
    } catch (const error&) {
        return nullptr;
    }
}

inline std::filesystem::path lattice_cache_file(const std::filesystem::path& dir,
                                                const std::string& key) {
    return dir / ("lattice_" + detail::sanitize_key(key) + ".ncpc");
}

// Lattice cache: elements by rank plus the cover relation (as set-bit
// pairs); the rest of the order data is the deterministic boolean closure.
inline void save_lattice_cache(const std::filesystem::path& dir, const NcLattice& L) {
    if (L.backend() != LatticeBackend::bfs) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return;
    const std::string key = L.type().render();
    const auto final_path = lattice_cache_file(dir, key);
    const auto tmp_path = final_path.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream os(tmp_path, std::ios::binary | std::ios::trunc);
        if (!os) return;
        detail::put_pod(os, detail::kCacheMagic);
        detail::put_pod(os, detail::kCacheVersion);
        detail::put_pod(os, std::uint64_t(key.size()));
        os.write(key.data(), std::streamsize(key.size()));
        const int n = L.rank();
        detail::put_pod(os, std::uint32_t(n));
        for (int r = 0; r <= n; ++r) detail::put_vec(os, L.levels()[r]);
        for (int i = 0; i < n; ++i) {
            const BitMatrix& cov = L.poset().covers(i);
            std::vector<std::uint64_t> pairs;
            for (std::size_t a = 0; a < cov.rows(); ++a)
                cov.for_each_in_row(a, [&](std::size_t b) {
                    pairs.push_back(std::uint64_t(a) << 32 | std::uint64_t(b));
                });
            detail::put_vec(os, pairs);
        }
        if (!os) return;
    }
    std::filesystem::rename(tmp_path, final_path, ec);
    if (ec) std::filesystem::remove(tmp_path, ec);
}

inline std::unique_ptr<NcLattice> load_lattice_cache(const std::filesystem::path& dir,
                                                     std::shared_ptr<const CoxeterSystem> sys) {
    const std::string key = sys->type().render();
    std::ifstream is(lattice_cache_file(dir, key), std::ios::binary);
    if (!is) return nullptr;
    std::uint32_t magic = 0, version = 0, n = 0;
    std::uint64_t keylen = 0;
    if (!detail::get_pod(is, magic) || magic != detail::kCacheMagic) return nullptr;
    if (!detail::get_pod(is, version) || version != detail::kCacheVersion) return nullptr;
    if (!detail::get_pod(is, keylen) || keylen > 4096) return nullptr;
    std::string stored(keylen, '\0');
    is.read(stored.data(), std::streamsize(keylen));
    if (!is || stored != key) return nullptr;
    if (!detail::get_pod(is, n) || int(n) != sys->rank()) return nullptr;
    std::vector<std::vector<ElementId>> levels(n + 1);
    for (std::uint32_t r = 0; r <= n; ++r)
        if (!detail::get_vec(is, levels[r])) return nullptr;
    std::vector<BitMatrix> covers;
    for (std::uint32_t i = 0; i < n; ++i) {
        std::vector<std::uint64_t> pairs;
        if (!detail::get_vec(is, pairs)) return nullptr;
        BitMatrix cov(levels[i].size(), levels[i + 1].size());
        for (std::uint64_t p : pairs) {
            const std::size_t a = p >> 32, b = p & 0xFFFFFFFFu;
            if (a >= cov.rows() || b >= cov.cols()) return nullptr;
            cov.set(a, b);
        }
        covers.push_back(std::move(cov));
    }
    try {
        return std::make_unique<NcLattice>(
            lattice_from_levels_and_covers(std::move(sys), std::move(levels), std::move(covers)));
    } catch (const error&) {
        return nullptr;
    }
}

// Installs the disk cache behind the in-memory registries.
inline void enable_disk_cache(const std::filesystem::path& dir) {
    system_cache_hooks().load = [dir](const CoxeterType& t) { return load_group_cache(dir, t); };
    system_cache_hooks().save = [dir](const CoxeterSystem& sys) { save_group_cache(dir, sys); };
    lattice_cache_hooks().load = [dir](std::shared_ptr<const CoxeterSystem> sys) {
        return load_lattice_cache(dir, std::move(sys));
    };
    lattice_cache_hooks().save = [dir](const NcLattice& L) { save_lattice_cache(dir, L); };
}

inline void disable_disk_cache() {
    system_cache_hooks().load = nullptr;
    system_cache_hooks().save = nullptr;
    lattice_cache_hooks().load = nullptr;
    lattice_cache_hooks().save = nullptr;
}

}  // namespace ncp
