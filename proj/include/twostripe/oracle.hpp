// Independent brute-force ground truth and the verification sweeps built on it.
//
// Nothing here trusts the closed-form solver: held_karp works on the raw
// circulant cost structure via bitmask dynamic programming, and the cylinder
// search enumerates Hamiltonian paths directly. The verify_* drivers run both
// sides at desk scale and report every disagreement; the test suite and the
// CLI treat a nonzero mismatch count as failure.
#pragma once

#include "congruence.hpp"
#include "ggpath.hpp"
#include "instance.hpp"
#include "materialize.hpp"
#include "solver.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace twostripe {

// ---------------------------------------------------------------------------
// Exact TSP oracle (bitmask dynamic programming over subsets).
// ---------------------------------------------------------------------------

struct HeldKarpSolution {
    u128 cost = 0;
    std::vector<u64> tour; // starts at city 0
};

// Minimum-cost Hamiltonian cycle where only +-a1 and +-a2 steps are allowed
// (every other edge is effectively infinite). Returns nothing when no such
// cycle exists. Exponential in n; rejects n outside [4, 18].
inline std::optional<HeldKarpSolution> held_karp(const TwoStripeInstance& inst)
{
    if (inst.n < 4 || inst.n > 18) {
        throw std::invalid_argument("held_karp: n must be between 4 and 18");
    }
    constexpr u64 cost_cap = u64{1} << 58; // keeps 18-edge path sums below the sentinel
    if (inst.cost1 > cost_cap || inst.cost2 > cost_cap) {
        throw std::invalid_argument("held_karp: stripe costs above 2^58 are not supported");
    }
    const int n = static_cast<int>(inst.n);

    // Neighbor lists; +a and -a land on the same city when 2a = n, so
    // duplicate targets are dropped (their weights necessarily agree).
    std::array<std::array<int, 4>, 18> nbr{};
    std::array<std::array<u64, 4>, 18> wt{};
    std::array<int, 18> deg{};
    for (int v = 0; v < n; ++v) {
        const u64 steps[4] = {inst.a1, inst.n - inst.a1, inst.a2, inst.n - inst.a2};
        const u64 costs[4] = {inst.cost1, inst.cost1, inst.cost2, inst.cost2};
        for (int e = 0; e < 4; ++e) {
            int target = static_cast<int>((static_cast<u64>(v) + steps[e]) % inst.n);
            bool dup = false;
            for (int j = 0; j < deg[v]; ++j) {
                dup = dup || nbr[v][j] == target;
            }
            if (!dup) {
                nbr[v][deg[v]] = target;
                wt[v][deg[v]] = costs[e];
                ++deg[v];
            }
        }
    }

    constexpr u64 INF = u64{1} << 63;
    const size_t full = size_t{1} << n;
    std::vector<u64> dp(full * static_cast<size_t>(n), INF);
    std::vector<uint8_t> par(full * static_cast<size_t>(n), 255);
    dp[size_t{1} * n + 0] = 0;

    for (size_t mask = 1; mask < full; mask += 2) { // paths always contain city 0
        for (int v = 0; v < n; ++v) {
            if (!(mask >> v & 1)) {
                continue;
            }
            u64 d0 = dp[mask * n + v];
            if (d0 >= INF) {
                continue;
            }
            for (int e = 0; e < deg[v]; ++e) {
                int w = nbr[v][e];
                if (mask >> w & 1) {
                    continue;
                }
                size_t next = (mask | (size_t{1} << w)) * n + w;
                if (d0 + wt[v][e] < dp[next]) {
                    dp[next] = d0 + wt[v][e];
                    par[next] = static_cast<uint8_t>(v);
                }
            }
        }
    }

    u64 best = INF;
    int best_v = -1;
    for (int v = 1; v < n; ++v) {
        u64 d0 = dp[(full - 1) * n + v];
        if (d0 >= INF) {
            continue;
        }
        for (int e = 0; e < deg[v]; ++e) {
            if (nbr[v][e] == 0 && d0 + wt[v][e] < best) {
                best = d0 + wt[v][e];
                best_v = v;
            }
        }
    }
    if (best_v < 0) {
        return std::nullopt;
    }

    HeldKarpSolution sol;
    sol.cost = best;
    sol.tour.assign(static_cast<size_t>(n), 0);
    size_t mask = full - 1;
    int v = best_v;
    for (int i = n - 1; i >= 1; --i) {
        sol.tour[static_cast<size_t>(i)] = static_cast<u64>(v);
        int p = par[mask * n + v];
        mask ^= size_t{1} << v;
        v = p;
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Exhaustive cylinder Hamiltonian-path search.
// ---------------------------------------------------------------------------

struct CylinderReachability {
    u64 r = 0;
    u64 c = 0;
    // min_horizontal[row]: minimum horizontal-step count over all Hamiltonian
    // paths from (0,0) to (row, c-1); absent if no such path. Under a budget,
    // minima and reachability are relative to paths within the budget.
    std::vector<std::optional<u64>> min_horizontal;
    bool complete = true; // false when node_cap stopped the search early
    u64 nodes = 0;        // search tree nodes expanded
};

struct CylinderOracleOptions {
    std::optional<u64> horizontal_budget; // explore only paths with at most this many horizontal steps
    std::optional<u64> node_cap;          // abort (complete = false) beyond this many nodes
    bool use_pruning = true;              // connectivity and dead-end cuts; affects speed, never results
};

namespace detail {

// Cells are indexed column-major (cell = col*r + row) so each column is a
// contiguous run of bits in the visited mask.
struct CylinderSearch {
    u64 r;
    u64 c;
    int cells;
    std::array<u64, 64> adj{};
    std::array<int, 64> up{};
    std::array<int, 64> down{};
    std::array<int, 64> left{};
    std::array<int, 64> right{};
    u64 full = 0;
    u64 last_col = 0;
    CylinderOracleOptions opts;
    std::vector<std::optional<u64>> best;
    u64 nodes = 0;
    bool aborted = false;

    CylinderSearch(u64 r_, u64 c_, CylinderOracleOptions opts_)
        : r(r_), c(c_), cells(static_cast<int>(r_ * c_)), opts(opts_)
    {
        best.assign(static_cast<size_t>(r), std::nullopt);
        full = cells == 64 ? ~u64{0} : (u64{1} << cells) - 1;
        last_col = ((u64{1} << r) - 1) << ((c - 1) * r);
        for (u64 col = 0; col < c; ++col) {
            for (u64 row = 0; row < r; ++row) {
                int i = static_cast<int>(col * r + row);
                int u = static_cast<int>(col * r + (row + r - 1) % r);
                int d = static_cast<int>(col * r + (row + 1) % r);
                up[i] = u;
                down[i] = d == u ? -1 : d; // r = 2: both vertical steps coincide
                left[i] = col > 0 ? i - static_cast<int>(r) : -1;
                right[i] = col + 1 < c ? i + static_cast<int>(r) : -1;
                u64 m = u64{1} << u;
                if (down[i] >= 0) {
                    m |= u64{1} << d;
                }
                if (left[i] >= 0) {
                    m |= u64{1} << left[i];
                }
                if (right[i] >= 0) {
                    m |= u64{1} << right[i];
                }
                adj[i] = m;
            }
        }
    }

    // Can the walk still reach every unvisited cell from cur?
    bool connected(int cur, u64 unvisited) const
    {
        u64 frontier = adj[cur] & unvisited;
        u64 reach = frontier;
        while (frontier) {
            u64 next = 0;
            u64 f = frontier;
            while (f) {
                int b = __builtin_ctzll(f);
                f &= f - 1;
                next |= adj[b];
            }
            next &= unvisited & ~reach;
            reach |= next;
            frontier = next;
        }
        return reach == unvisited;
    }

    void dfs(int cur, u64 visited, u64 h)
    {
        if (aborted) {
            return;
        }
        ++nodes;
        if (opts.node_cap && nodes > *opts.node_cap) {
            aborted = true;
            return;
        }
        if (visited == full) {
            if (static_cast<u64>(cur) / r == c - 1) {
                u64 row = static_cast<u64>(cur) % r;
                if (!best[row] || h < *best[row]) {
                    best[row] = h;
                }
            }
            return;
        }
        u64 unvisited = full & ~visited;
        if (opts.use_pruning) {
            if (!(unvisited & last_col)) {
                return; // last column exhausted; the path cannot end there
            }
            if (opts.horizontal_budget) {
                // Crossings still needed: down to the lowest unvisited column
                // and from there over to the last one.
                u64 q = static_cast<u64>(cur) / r;
                u64 lo = static_cast<u64>(__builtin_ctzll(unvisited)) / r;
                u64 needed = (c - 1 - q) + 2 * (q > lo ? q - lo : 0);
                if (h + needed > *opts.horizontal_budget) {
                    return;
                }
            }
            if (!connected(cur, unvisited)) {
                return;
            }
        }
        int u = up[cur];
        if (unvisited >> u & 1) {
            dfs(u, visited | (u64{1} << u), h);
        }
        int d = down[cur];
        if (d >= 0 && (unvisited >> d & 1)) {
            dfs(d, visited | (u64{1} << d), h);
        }
        if (!opts.horizontal_budget || h < *opts.horizontal_budget) {
            int l = left[cur];
            if (l >= 0 && (unvisited >> l & 1)) {
                dfs(l, visited | (u64{1} << l), h + 1);
            }
            int rr = right[cur];
            if (rr >= 0 && (unvisited >> rr & 1)) {
                dfs(rr, visited | (u64{1} << rr), h + 1);
            }
        }
    }
};

} // namespace detail

inline CylinderReachability cylinder_reachability(u64 r, u64 c, const CylinderOracleOptions& opts)
{
    if (r < 2 || c < 2) {
        throw std::invalid_argument("cylinder_reachability: need r >= 2 and c >= 2");
    }
    if (r * c > 64) {
        throw std::invalid_argument("cylinder_reachability: at most 64 cells");
    }
    if (!opts.horizontal_budget && r * c > 24) {
        throw std::invalid_argument("cylinder_reachability: above 24 cells a horizontal budget is required");
    }
    detail::CylinderSearch search(r, c, opts);
    search.dfs(0, 1, 0);
    CylinderReachability out;
    out.r = r;
    out.c = c;
    out.min_horizontal = std::move(search.best);
    out.complete = !search.aborted;
    out.nodes = search.nodes;
    return out;
}

inline CylinderReachability cylinder_reachability(u64 r, u64 c,
                                                  std::optional<u64> horizontal_budget = std::nullopt)
{
    return cylinder_reachability(r, c, CylinderOracleOptions{horizontal_budget, std::nullopt, true});
}

// ---------------------------------------------------------------------------
// Cut-profile enumeration (small grids only).
// ---------------------------------------------------------------------------

struct CutProfilePath {
    u64 end_row = 0;
    std::vector<u64> crossings; // crossings[t]: steps across the cut between columns t and t+1
};

// Every distinct (end row, cut profile) pair realized by a Hamiltonian path
// from (0,0) to the last column. Exhaustive; requires r*c <= 16.
inline std::vector<CutProfilePath> enumerate_last_column_profiles(u64 r, u64 c)
{
    if (r < 2 || c < 2) {
        throw std::invalid_argument("enumerate_last_column_profiles: need r >= 2 and c >= 2");
    }
    if (r * c > 16) {
        throw std::invalid_argument("enumerate_last_column_profiles: at most 16 cells");
    }
    detail::CylinderSearch search(r, c, CylinderOracleOptions{});
    std::set<std::pair<u64, std::vector<u64>>> seen;
    std::vector<u64> cross(static_cast<size_t>(c - 1), 0);

    std::function<void(int, u64)> go = [&](int cur, u64 visited) {
        if (visited == search.full) {
            if (static_cast<u64>(cur) / r == c - 1) {
                seen.emplace(static_cast<u64>(cur) % r, cross);
            }
            return;
        }
        u64 unvisited = search.full & ~visited;
        if (!(unvisited & search.last_col) || !search.connected(cur, unvisited)) {
            return;
        }
        int u = search.up[cur];
        if (unvisited >> u & 1) {
            go(u, visited | (u64{1} << u));
        }
        int d = search.down[cur];
        if (d >= 0 && (unvisited >> d & 1)) {
            go(d, visited | (u64{1} << d));
        }
        int l = search.left[cur];
        if (l >= 0 && (unvisited >> l & 1)) {
            ++cross[static_cast<u64>(l) / r];
            go(l, visited | (u64{1} << l));
            --cross[static_cast<u64>(l) / r];
        }
        int rr = search.right[cur];
        if (rr >= 0 && (unvisited >> rr & 1)) {
            ++cross[static_cast<u64>(cur) / r];
            go(rr, visited | (u64{1} << rr));
            --cross[static_cast<u64>(cur) / r];
        }
    };
    go(0, 1);

    std::vector<CutProfilePath> out;
    out.reserve(seen.size());
    for (const auto& [row, profile] : seen) {
        out.push_back(CutProfilePath{row, profile});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification sweeps.
// ---------------------------------------------------------------------------

namespace detail {

inline unsigned resolve_threads(unsigned requested)
{
    if (requested > 0) {
        return requested;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(u64 count, unsigned threads, Fn&& fn)
{
    threads = resolve_threads(threads);
    if (threads <= 1 || count < 2) {
        for (u64 i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<u64> next{0};
    std::vector<std::thread> pool;
    unsigned spawn = threads < count ? threads : static_cast<unsigned>(count);
    pool.reserve(spawn);
    for (unsigned t = 0; t < spawn; ++t) {
        pool.emplace_back([&] {
            while (true) {
                u64 i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) {
                    break;
                }
                fn(i);
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
}

inline double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace detail

struct InstanceCheck {
    u64 n = 0;
    u64 a1 = 0;
    u64 a2 = 0;
    std::optional<u128> expected; // oracle side (absent: oracle says infeasible)
    std::optional<u128> actual;   // solver side
    bool ok = false;
};

struct HeldKarpAgreementReport {
    u64 instances = 0;
    u64 feasible = 0;
    u64 nontrivial = 0;
    u64 mismatches = 0;        // feasibility or cost disagreement (oracle tour sanity included)
    u64 bound_violations = 0;  // h* outside [c, 2c-2] on a NonTrivial instance
    std::vector<InstanceCheck> checks; // one per instance, sweep order
    double seconds = 0;
};

// Sweeps every ordered distinct stripe pair with costs (0,1) for
// 4 <= n <= n_max and compares solve() against held_karp(), feasibility
// included. The oracle's own tour is also validated.
inline HeldKarpAgreementReport verify_against_held_karp(u64 n_max, unsigned threads = 0)
{
    if (n_max < 4 || n_max > 18) {
        throw std::invalid_argument("verify_against_held_karp: n_max must be between 4 and 18");
    }
    auto start = std::chrono::steady_clock::now();

    std::vector<std::array<u64, 3>> triples;
    for (u64 n = 4; n <= n_max; ++n) {
        for (u64 s1 = 1; s1 <= n / 2; ++s1) {
            for (u64 s2 = 1; s2 <= n / 2; ++s2) {
                if (s1 != s2) {
                    triples.push_back({n, s1, s2});
                }
            }
        }
    }

    struct Extra {
        bool feasible = false;
        bool nontrivial = false;
        bool bounds_ok = true;
    };
    HeldKarpAgreementReport report;
    report.instances = triples.size();
    report.checks.assign(triples.size(), InstanceCheck{});
    std::vector<Extra> extras(triples.size());

    detail::parallel_for(triples.size(), threads, [&](u64 i) {
        auto [n, s1, s2] = triples[static_cast<size_t>(i)];
        InstanceCheck check;
        check.n = n;
        check.a1 = s1;
        check.a2 = s2;
        Extra extra;
        try {
            TwoStripeInstance inst = build_instance(n, s1, 0, s2, 1);
            SolveResult res = solve(inst);
            auto hk = held_karp(inst);
            check.actual = res.total_cost;
            if (hk) {
                check.expected = hk->cost;
            }
            bool oracle_tour_ok = true;
            if (hk) {
                ValidationReport v = validate_tour(inst, hk->tour);
                oracle_tour_ok = v.hamiltonian && v.cost == hk->cost;
            }
            check.ok = oracle_tour_ok && check.expected == check.actual;
            extra.feasible = hk.has_value();
            if (res.triviality == Triviality::NonTrivial) {
                extra.nontrivial = true;
                u64 cc = res.decomposition.c;
                extra.bounds_ok = res.h_star && *res.h_star >= cc && *res.h_star <= 2 * cc - 2;
            }
        } catch (const std::exception&) {
            check.ok = false;
        }
        report.checks[static_cast<size_t>(i)] = check;
        extras[static_cast<size_t>(i)] = extra;
    });

    for (size_t i = 0; i < triples.size(); ++i) {
        report.mismatches += report.checks[i].ok ? 0 : 1;
        report.feasible += extras[i].feasible ? 1 : 0;
        report.nontrivial += extras[i].nontrivial ? 1 : 0;
        report.bound_violations += extras[i].bounds_ok ? 0 : 1;
    }
    report.seconds = detail::seconds_since(start);
    return report;
}

struct RowCheck {
    u64 r = 0;
    u64 c = 0;
    u64 row = 0;
    std::optional<u64> expected; // (c-1) + 2*min_extra_pairs(row, r, c), absent if no path predicted
    std::optional<u64> actual;   // exhaustive search result
    bool ok = false;
};

struct CylinderFormulaReport {
    u64 grids = 0;
    u64 rows_checked = 0;
    u64 violations = 0;
    std::vector<RowCheck> checks;
    double seconds = 0;
};

// For every cylinder with r, c >= 2 and r*c <= cell_cap, checks that the
// exhaustive minimum horizontal count to each end row matches the structured
// prediction (c-1) + 2*min_extra_pairs, absence included.
inline CylinderFormulaReport verify_cylinder_formula(u64 cell_cap)
{
    if (cell_cap < 4 || cell_cap > 24) {
        throw std::invalid_argument("verify_cylinder_formula: cell_cap must be between 4 and 24");
    }
    auto start = std::chrono::steady_clock::now();
    CylinderFormulaReport report;
    for (u64 r = 2; 2 * r <= cell_cap; ++r) {
        for (u64 c = 2; r * c <= cell_cap; ++c) {
            CylinderReachability reach = cylinder_reachability(r, c);
            ++report.grids;
            for (u64 row = 0; row < r; ++row) {
                RowCheck check;
                check.r = r;
                check.c = c;
                check.row = row;
                if (auto extra = min_extra_pairs(row, r, c)) {
                    check.expected = (c - 1) + 2 * *extra;
                }
                check.actual = reach.min_horizontal[static_cast<size_t>(row)];
                check.ok = check.expected == check.actual;
                ++report.rows_checked;
                report.violations += check.ok ? 0 : 1;
                report.checks.push_back(check);
            }
        }
    }
    report.seconds = detail::seconds_since(start);
    return report;
}

struct CostFormulaPerN {
    u64 n = 0;
    u64 pairs = 0;            // ordered distinct stripe pairs with this n
    u64 checked = 0;          // pairs that are feasible with g1 > 1
    u64 mismatches = 0;
    u64 bound_violations = 0;
};

struct CostFormulaReport {
    u64 n_max = 0;
    u64 pairs = 0;
    u64 checked = 0;
    u64 mismatches = 0;
    u64 bound_violations = 0;
    std::vector<CostFormulaPerN> per_n;
    std::vector<InstanceCheck> sample_mismatches; // at most 100, for diagnosis
    double seconds = 0;
};

// For every ordered distinct stripe pair with costs (0,1) and 4 <= n <= n_max,
// compares the solver's h* against the independent closed form. Pairs with
// g2 > 1 (infeasible) or g1 = 1 (single-stripe, no formula) are counted but
// not checked. The progress callback, when given, receives each finished
// per-n row under an internal lock.
inline CostFormulaReport verify_cost_formula(
    u64 n_max, unsigned threads = 0,
    const std::function<void(const CostFormulaPerN&)>& progress = {})
{
    if (n_max < 4) {
        throw std::invalid_argument("verify_cost_formula: n_max must be at least 4");
    }
    auto start = std::chrono::steady_clock::now();
    CostFormulaReport report;
    report.n_max = n_max;
    report.per_n.assign(static_cast<size_t>(n_max - 3), CostFormulaPerN{});
    std::mutex lock;

    detail::parallel_for(n_max - 3, threads, [&](u64 i) {
        u64 n = 4 + i;
        CostFormulaPerN row;
        row.n = n;
        std::vector<InstanceCheck> local_bad;
        for (u64 s1 = 1; s1 <= n / 2; ++s1) {
            u64 g1 = gcd(n, s1);
            if (g1 == 1) {
                row.pairs += n / 2 - 1; // feasible but single-stripe; nothing to compare
                continue;
            }
            for (u64 s2 = 1; s2 <= n / 2; ++s2) {
                if (s2 == s1) {
                    continue;
                }
                ++row.pairs;
                if (gcd(g1, s2) != 1) {
                    continue; // infeasible
                }
                ++row.checked;
                InstanceCheck check;
                check.n = n;
                check.a1 = s1;
                check.a2 = s2;
                try {
                    TwoStripeInstance inst = build_instance(n, s1, 0, s2, 1);
                    SolveResult res = solve(inst);
                    auto formula = solve_via_gg_formula(inst);
                    check.actual = res.h_star ? std::optional<u128>(*res.h_star) : std::nullopt;
                    check.expected = formula ? std::optional<u128>(*formula) : std::nullopt;
                    check.ok = check.expected.has_value() && check.expected == check.actual;
                    u64 cc = res.decomposition.c;
                    if (!(res.h_star && *res.h_star >= cc && *res.h_star <= 2 * cc - 2)) {
                        ++row.bound_violations;
                    }
                } catch (const std::exception&) {
                    check.ok = false;
                }
                if (!check.ok) {
                    ++row.mismatches;
                    local_bad.push_back(check);
                }
            }
        }
        report.per_n[static_cast<size_t>(i)] = row;
        if (!local_bad.empty() || progress) {
            std::lock_guard<std::mutex> guard(lock);
            for (const auto& check : local_bad) {
                if (report.sample_mismatches.size() < 100) {
                    report.sample_mismatches.push_back(check);
                }
            }
            if (progress) {
                progress(row);
            }
        }
    });

    for (const auto& row : report.per_n) {
        report.pairs += row.pairs;
        report.checked += row.checked;
        report.mismatches += row.mismatches;
        report.bound_violations += row.bound_violations;
    }
    report.seconds = detail::seconds_since(start);
    return report;
}

} // namespace twostripe
