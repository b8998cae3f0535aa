// ncp: chain counting and identity verification on noncrossing partition
// lattices of finite Coxeter groups.
//
//   ncp count <type> <quantity>     exact counts (nc, mc, edges, tw:K, sc:K,
//                                   rank-jump:J1,J2,..., zeta:M)
//   ncp verify <type> <identity>    check a counting identity, JSON per line
//   ncp table <types...>            CSV of the basic counts per type
//
// Counts are printed as decimal strings (arbitrary precision); verify exits
// nonzero iff a non-informational check fails.

#include "ncp/cache.hpp"
#include "ncp/formulas.hpp"
#include "ncp/lattice.hpp"
#include "ncp/mdivisible.hpp"
#include "ncp/report.hpp"
#include "ncp/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace ncp;

long long now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::vector<int> parse_composition(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(std::stoi(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (out.empty()) throw parse_error("empty composition");
    return out;
}

struct CacheFlags {
    std::string dir;
    bool disabled = false;

    void apply() const {
        if (disabled) {
            disable_disk_cache();
            return;
        }
        std::optional<std::filesystem::path> path;
        if (!dir.empty())
            path = dir;
        else if (const char* env = std::getenv("NCP_CACHE_DIR"); env && *env)
            path = env;
        else
            path = default_cache_dir();
        if (path) enable_disk_cache(*path);
    }
};

struct Quantity {
    std::string kind;
    int k = 0;
    std::vector<int> comp;
};

Quantity parse_quantity(const std::string& q) {
    Quantity out;
    auto colon = q.find(':');
    out.kind = q.substr(0, colon);
    if (out.kind == "nc" || out.kind == "mc" || out.kind == "edges") {
        if (colon != std::string::npos) throw parse_error("quantity takes no parameter: " + q);
        return out;
    }
    if (out.kind == "tw" || out.kind == "sc" || out.kind == "zeta") {
        if (colon == std::string::npos) throw parse_error(out.kind + " needs a parameter, e.g. " +
                                                          out.kind + ":2");
        out.k = std::stoi(q.substr(colon + 1));
        return out;
    }
    if (out.kind == "rank-jump") {
        if (colon == std::string::npos) throw parse_error("rank-jump needs a composition");
        out.comp = parse_composition(q.substr(colon + 1));
        return out;
    }
    throw parse_error("unknown quantity: " + q);
}

std::optional<Int> closed_form_value(const CoxeterType& t, const Quantity& q) {
    if (q.kind == "nc") return nc_closed(t);
    if (q.kind == "mc") return mc_closed(t);
    if (q.kind == "zeta") return fuss_catalan(t, q.k);
    if (q.kind == "tw") return tw_from_fk(t, q.k);
    if (q.kind == "edges" && t.irreducible()) return edge_closed(t.factors[0]);
    if (q.kind == "sc" && t.irreducible()) {
        const int n = t.rank();
        if (q.k == 0) return nc_closed(t);
        if (q.k == 1) return edge_closed(t.factors[0]);
        if (q.k == n - 1) return sc_top_closed(t.factors[0]);
        if (q.k == n) return mc_closed(t);
    }
    return std::nullopt;
}

Int brute_value(const NcLattice& L, const Quantity& q) {
    if (q.kind == "nc") return Int(L.size());
    if (q.kind == "mc") return count_maximal_chains(L.poset());
    if (q.kind == "edges") return count_edges(L.poset());
    if (q.kind == "tw") return count_tw(L.poset(), q.k);
    if (q.kind == "sc") return count_sc(L.poset(), q.k);
    if (q.kind == "zeta") return zeta_value(L.poset(), q.k);
    if (q.kind == "rank-jump") return count_rank_jump(L.poset(), q.comp);
    throw parse_error("unknown quantity kind");
}

int run_count(const std::string& type_str, const std::string& quantity_str, bool closed_form,
              const std::string& backend_str, long long bound, bool json) {
    const auto start = now_ms();
    const CoxeterType t = parse_type(type_str);
    const Quantity q = parse_quantity(quantity_str);

    LatticeOptions opts;
    opts.group.max_group_size = bound;
    opts.max_lattice_size = bound;
    LatticeBackend backend = LatticeBackend::automatic;
    if (backend_str == "bfs") backend = LatticeBackend::bfs;
    else if (backend_str == "interval") backend = LatticeBackend::interval;
    else if (backend_str != "auto") throw parse_error("backend must be auto, bfs or interval");

    std::optional<Int> closed;
    if (closed_form) closed = closed_form_value(t, q);
    std::optional<Int> brute;
    // with --closed-form, an over-bound group is answered by the formula
    // alone unless a backend is forced
    const bool skip_brute =
        closed && backend == LatticeBackend::automatic && invariants(t).order > bound;
    if (!skip_brute) {
        try {
            if (backend != LatticeBackend::interval && invariants(t).order <= bound) {
                // registry path: consults and fills the on-disk caches
                brute = brute_value(lattice_for(t, opts), q);
            } else {
                brute = brute_value(build_lattice(t, opts, backend), q);
            }
        } catch (const resource_limit_error&) {
            if (!closed) throw;  // nothing to fall back on
        }
    }
    if (closed_form && !closed && !brute)
        throw error("no closed form for this quantity on " + t.render());

    const Int value = brute ? *brute : *closed;
    const bool have_both = brute && closed;
    const bool match = !have_both || *brute == *closed;
    if (json) {
        nlohmann::json j{{"quantity", q.kind},
                         {"type", t.render()},
                         {"parameters", quantity_str},
                         {"left", value.str()},
                         {"elapsed_ms", now_ms() - start}};
        if (have_both) {
            j["right"] = closed->str();
            j["pass"] = match;
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cout << value.str() << "\n";
        if (have_both && !match) std::cerr << "closed form disagrees: " << closed->str() << "\n";
    }
    return match ? 0 : 1;
}

int emit_reports(const std::vector<VerificationReport>& reports, long long start) {
    bool failed = false;
    for (const auto& r : reports) {
        std::cout << report_to_json(r, now_ms() - start).dump() << "\n";
        if (!r.pass && !r.informational) failed = true;
    }
    return failed ? 1 : 0;
}

int run_verify(const std::string& type_str, const std::string& identity, const std::string& j_str,
               int i, int k, int m, const std::string& which, int max_parts) {
    const auto start = now_ms();
    const CoxeterType t = parse_type(type_str);
    std::vector<VerificationReport> reports;

    auto sweep_compositions = [&](auto&& emit_one) {
        if (!j_str.empty()) {
            const auto j = parse_composition(j_str);
            if (i > 0) {
                emit_one(j, i);
            } else {
                for (int p = 1; p <= static_cast<int>(j.size()); ++p)
                    if (j[p - 1] == 1) emit_one(j, p);
            }
            return;
        }
        for (int parts = 1; parts <= max_parts; ++parts)
            for (const auto& j : all_compositions(t.rank(), parts))
                for (int p = 1; p <= parts; ++p)
                    if (j[p - 1] == 1) emit_one(j, p);
    };

    if (identity == "jump") {
        sweep_compositions([&](const std::vector<int>& j, int p) {
            reports.push_back(verify_jump_recursion(t, j, p));
        });
    } else if (identity == "one-formula") {
        sweep_compositions([&](const std::vector<int>& j, int p) {
            reports.push_back(verify_one_formula(t, j, p));
        });
    } else if (identity == "reducible") {
        if (t.factors.size() < 2) throw error("reducible check needs a product type");
        CoxeterType head{t.factors[0]};
        CoxeterType rest;
        rest.factors.assign(t.factors.begin() + 1, t.factors.end());
        if (!j_str.empty()) {
            reports.push_back(verify_reducible_product(head, rest, parse_composition(j_str)));
        } else {
            for (int parts = 1; parts <= max_parts; ++parts)
                for (const auto& j : all_compositions(t.rank(), parts))
                    reports.push_back(verify_reducible_product(head, rest, j));
        }
    } else if (identity == "steinberg") {
        reports.push_back(verify_steinberg(t));
    } else if (identity == "zeta") {
        if (m >= 0) reports.push_back(verify_zeta_recursion(t, m));
        else
            for (int mm = 0; mm <= 4; ++mm) reports.push_back(verify_zeta_recursion(t, mm));
    } else if (identity == "nc-recursion") {
        reports.push_back(verify_nc_recursion(t));
    } else if (identity == "edge-pairs") {
        reports.push_back(verify_edge_pair_count(t));
    } else if (identity == "corollaries") {
        auto run_kind = [&](CorollaryKind kind, const char* name) {
            if (!which.empty() && which != name) return;
            if (kind == CorollaryKind::MC || kind == CorollaryKind::E) {
                reports.push_back(verify_corollary_family(t, kind));
            } else if (k > 0) {
                reports.push_back(verify_corollary_family(t, kind, k));
            } else {
                for (int kk = 1; kk <= t.rank(); ++kk)
                    reports.push_back(verify_corollary_family(t, kind, kk));
            }
        };
        run_kind(CorollaryKind::MC, "MC");
        run_kind(CorollaryKind::TW, "TW");
        run_kind(CorollaryKind::E, "E");
        run_kind(CorollaryKind::SC, "SC");
    } else if (identity == "m-jump") {
        const int mm = m >= 0 ? m : 2;
        sweep_compositions([&](const std::vector<int>& j, int p) {
            reports.push_back(verify_m_jump_recursion(t, mm, j, p));
        });
    } else if (identity == "tw-f") {
        if (k >= 0 && !j_str.empty()) throw error("tw-f takes --k only");
        if (k >= 0) {
            reports.push_back(verify_tw_f(t, k));
        } else {
            for (int kk = 0; kk <= t.rank(); ++kk) reports.push_back(verify_tw_f(t, kk));
        }
    } else if (identity == "obvious") {
        if (k >= 0) {
            reports.push_back(verify_obvious(t, k));
        } else {
            for (int kk = 0; kk <= t.rank(); ++kk) reports.push_back(verify_obvious(t, kk));
        }
    } else {
        throw parse_error("unknown identity: " + identity);
    }
    return emit_reports(reports, start);
}

int run_table(const std::vector<std::string>& types) {
    std::cout << "type,n,h,order,NC,MC,E,SC_top\n";
    for (const auto& s : types) {
        const CoxeterType t = parse_type(s);
        const GroupInvariants inv = invariants(t);
        std::string h = t.irreducible() ? std::to_string(inv.h()) : "-";
        Int nc = nc_closed(t), mc = mc_closed(t);
        std::string e = t.irreducible() ? edge_closed(t.factors[0]).str() : "-";
        std::string sc = t.irreducible() && t.rank() >= 1 ? sc_top_closed(t.factors[0]).str() : "-";
        std::cout << csv_escape(t.render()) << "," << inv.rank << "," << h << "," << inv.order.str()
                  << "," << nc.str() << "," << mc.str() << "," << e << "," << sc << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"noncrossing partition lattice chain counting"};
    app.require_subcommand(1);

    CacheFlags cache;
    app.add_option("--cache-dir", cache.dir, "cache directory (overrides NCP_CACHE_DIR)");
    app.add_flag("--no-cache", cache.disabled, "disable the on-disk group cache");

    long long bound = 1'000'000;
    app.add_option("--bound", bound, "group/lattice enumeration bound (default 10^6)");

    auto* count = app.add_subcommand("count", "count chains in L_W");
    std::string count_type, count_quantity, count_backend = "auto";
    bool count_closed = false, count_json = false;
    count->add_option("type", count_type, "Coxeter type, e.g. A3, B4xA1, I2(7)")->required();
    count->add_option("quantity", count_quantity,
                      "nc | mc | edges | tw:K | sc:K | rank-jump:J1,J2,... | zeta:M")
        ->required();
    count->add_flag("--closed-form", count_closed, "also evaluate the closed form and compare");
    count->add_option("--backend", count_backend, "auto | bfs | interval");
    count->add_flag("--json", count_json, "emit a JSON record");

    auto* verify = app.add_subcommand("verify", "verify a counting identity");
    std::string v_type, v_identity, v_j, v_which;
    int v_i = 0, v_k = -1, v_m = -1, v_max_parts = 4;
    verify->add_option("type", v_type)->required();
    verify->add_option("identity", v_identity,
                       "jump | one-formula | reducible | steinberg | zeta | nc-recursion | "
                       "edge-pairs | corollaries | m-jump | tw-f | obvious")
        ->required();
    verify->add_option("--j", v_j, "composition, e.g. 1,1,2 (default: sweep)");
    verify->add_option("--i", v_i, "1-based deleted position (default: all with j_i = 1)");
    verify->add_option("--k", v_k, "chain length parameter");
    verify->add_option("--m", v_m, "Fuss parameter");
    verify->add_option("--which", v_which, "corollary family: MC | TW | E | SC");
    verify->add_option("--max-parts", v_max_parts, "sweep compositions up to this many parts");

    auto* table = app.add_subcommand("table", "CSV of closed-form counts");
    std::vector<std::string> table_types;
    table->add_option("types", table_types, "list of type descriptors")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        cache.apply();
        if (count->parsed())
            return run_count(count_type, count_quantity, count_closed, count_backend, bound,
                             count_json);
        if (verify->parsed())
            return run_verify(v_type, v_identity, v_j, v_i, v_k, v_m, v_which, v_max_parts);
        if (table->parsed()) return run_table(table_types);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
