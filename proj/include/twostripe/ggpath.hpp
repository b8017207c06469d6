// The gg-path family and its reachable-row sets.
//
// A gg path on an r x c cylinder is a Hamiltonian path from (0,0) to some
// cell in the last column that crosses between columns 0 and 1 exactly 2m+1
// times ("m extra pairs") and between every later pair of adjacent columns
// exactly once, so it uses (c-1)+2m horizontal edges in total. The set of
// last-column rows such paths can end on is
//
//     A(r,c,m) = { (c + 2m - 2i) mod r : 0 <= i <= c + 2m }
//              = { t mod r : |t| <= c + 2m, t = c (mod 2) },
//
// which this header evaluates in O(1) per query: the minimal |t| in a
// residue class is plain interval arithmetic mod r (r even) or mod 2r with a
// parity fixup (r odd). Membership saturates once c + 2m >= r, because the
// minimal witness never exceeds r. (The bound is r, not r-2: when r is odd
// and r = c (mod 2), the row needing |t| = r enters one step later than an
// interval count mod r alone would suggest. See the saturation tests.)
#pragma once

#include "congruence.hpp"
#include "instance.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace twostripe {

enum class ColumnDir { Down, Up }; // Down = row index increases; the wrap 0 -> r-1 is Up

// A concrete gg path: m extra crossing pairs, the first-column direction,
// the row e where the walk finishes column 1, and how many of the later
// columns are swept up-first (each such column shifts the end row by +1,
// the others by -1). The final end row is (e + 2k - (c-2)) mod r.
struct GgParams {
    u64 m;
    ColumnDir first_col_dir;
    u64 second_col_end;
    u64 k;

    bool operator==(const GgParams&) const = default;
};

namespace detail {

// Smallest |t| with t = x (mod r) and t = c (mod 2), or nothing if the class
// is empty (r even with x, c of opposite parity).
inline std::optional<u64> min_abs_witness(u64 x, u64 r, u64 c)
{
    if (r % 2 == 0) {
        if ((x ^ c) & 1) {
            return std::nullopt;
        }
        return std::min(x, r - x) % r;
    }
    // r odd: residue and parity pin t down mod 2r.
    u64 rho = (((x ^ c) & 1) == 0) ? x : x + r;
    return std::min(rho, 2 * r - rho) % (2 * r);
}

} // namespace detail

// True iff x is an end row reachable with at most m extra crossing pairs.
inline bool a_set_contains(u64 x, u64 r, u64 c, u64 m)
{
    if (r < 2 || c < 2 || x >= r) {
        throw std::invalid_argument("a_set_contains: need r >= 2, c >= 2, 0 <= x < r");
    }
    auto witness = detail::min_abs_witness(x, r, c);
    if (!witness) {
        return false;
    }
    u128 budget = static_cast<u128>(c) + 2 * static_cast<u128>(std::min(m, r));
    return static_cast<u128>(*witness) <= budget;
}

// The full set { (c + 2m - 2i) mod r : 0 <= i <= c + 2m }, sorted and
// deduplicated. The -2 stepping revisits values after at most r steps, so
// the loop is capped at min(c + 2m, r) without changing the set.
inline std::vector<u64> a_set_enumerate(u64 r, u64 c, u64 m)
{
    if (r < 2 || c < 2) {
        throw std::invalid_argument("a_set_enumerate: need r >= 2, c >= 2");
    }
    u128 t = static_cast<u128>(c) + 2 * static_cast<u128>(m);
    u64 steps = static_cast<u64>(std::min<u128>(t, r));
    u64 v = static_cast<u64>(t % r);
    std::vector<u64> rows;
    rows.reserve(steps + 1);
    for (u64 i = 0; i <= steps; ++i) {
        rows.push_back(v);
        v = (v + r - 2 % r) % r;
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return rows;
}

// Least m >= 0 with x in A(r,c,m), or nothing if no m ever works. Closed
// form: the minimal witness |t*| decides everything, since membership needs
// exactly c + 2m >= |t*|, and |t*| - c is even whenever the class exists.
inline std::optional<u64> min_extra_pairs(u64 x, u64 r, u64 c)
{
    if (r < 2 || c < 2 || x >= r) {
        throw std::invalid_argument("min_extra_pairs: need r >= 2, c >= 2, 0 <= x < r");
    }
    auto witness = detail::min_abs_witness(x, r, c);
    if (!witness) {
        return std::nullopt;
    }
    if (*witness <= c) {
        return 0;
    }
    return (*witness - c) / 2;
}

namespace detail {

// Emits the column-0/column-1 segment of a gg path in its Down-start form:
// walk column 0 from row 0 down to row s = r-2m-1, zigzag the bottom 2m+1
// rows across both columns (2m+1 crossings), then sweep the untouched top
// of column 1. Up-start paths are the row-negation mirror (y -> (r-y) mod r)
// of this, which keeps the start at (0,0) and mirrors the finishing row.
// Returns the row where column 1 finishes (in emitted, post-mirror space).
template <class Sink>
u64 emit_two_column_prefix(u64 r, u64 m, bool sweep_down, bool mirror, Sink&& sink)
{
    auto put = [&](u64 row, u64 col) {
        sink(CylinderCoord{mirror ? (r - row) % r : row, col});
    };
    u64 s = r - 2 * m - 1;
    for (u64 y = 0; y <= s; ++y) {
        put(y, 0);
    }
    for (u64 j = 0; j < m; ++j) {
        put(s + 2 * j, 1);
        put(s + 2 * j + 1, 1);
        put(s + 2 * j + 1, 0);
        put(s + 2 * j + 2, 0);
    }
    put(r - 1, 1);
    u64 end;
    if (s == 0) {
        end = r - 1; // the zigzag consumed all of column 1
    } else if (sweep_down) {
        for (u64 y = 0; y < s; ++y) {
            put(y, 1);
        }
        end = s - 1;
    } else {
        for (u64 y = s; y-- > 0;) {
            put(y, 1);
        }
        end = 0;
    }
    return mirror ? (r - end) % r : end;
}

// The finishing row of column 1 for a given variant, without emitting.
inline u64 second_column_end_of(u64 r, u64 m, ColumnDir dir, bool sweep_down)
{
    u64 end_down = m >= 1 ? (2 * r - 2 * m - 2) % r : (sweep_down ? r - 2 : 0);
    return dir == ColumnDir::Up ? (r - end_down) % r : end_down;
}

// Recovers the second-column sweep direction of the Down-start form that a
// parameter set denotes. Forced for m >= 1; for m = 0 the end row picks it.
inline bool sweep_down_of(u64 r, u64 m, ColumnDir dir, u64 e)
{
    if (m >= 1) {
        return true;
    }
    u64 e_down = dir == ColumnDir::Up ? (r - e) % r : e;
    return e_down != 0;
}

} // namespace detail

// Streams the full gg path for `params` as r*c cylinder coordinates, from
// (0,0) to ((e + 2k - (c-2)) mod r, c-1). Columns 2..c-1 are entered
// horizontally at the previous column's end row and swept cyclically, the
// first k of them up-first (end row +1 each), the rest down-first (-1 each).
template <class Sink>
void emit_gg_path(u64 r, u64 c, const GgParams& params, Sink&& sink)
{
    if (r < 2 || c < 2) {
        throw std::invalid_argument("emit_gg_path: need r >= 2, c >= 2");
    }
    if (2 * params.m + 1 > r) {
        throw std::invalid_argument("emit_gg_path: at most (r-1)/2 extra pairs fit in a column");
    }
    if (params.k > c - 2) {
        throw std::invalid_argument("emit_gg_path: k exceeds the number of later columns");
    }
    bool mirror = params.first_col_dir == ColumnDir::Up;
    bool sweep_down = detail::sweep_down_of(r, params.m, params.first_col_dir, params.second_col_end);
    if (detail::second_column_end_of(r, params.m, params.first_col_dir, sweep_down) != params.second_col_end) {
        throw std::invalid_argument("emit_gg_path: second_col_end inconsistent with m and direction");
    }
    u64 cur = detail::emit_two_column_prefix(r, params.m, sweep_down, mirror, sink);
    for (u64 col = 2; col < c; ++col) {
        bool up_first = (col - 2) < params.k;
        sink(CylinderCoord{cur, col});
        for (u64 step = 1; step < r; ++step) {
            u64 row = up_first ? (cur + r - step) % r : (cur + step) % r;
            sink(CylinderCoord{row, col});
        }
        cur = up_first ? (cur + 1) % r : (cur + r - 1) % r;
    }
}

inline std::vector<CylinderCoord> gg_path_coords(u64 r, u64 c, const GgParams& params)
{
    std::vector<CylinderCoord> coords;
    coords.reserve(static_cast<std::size_t>(r * c));
    emit_gg_path(r, c, params, [&](CylinderCoord cc) { coords.push_back(cc); });
    return coords;
}

// Finds gg-path parameters reaching end row x with exactly m extra pairs.
// Candidate second-column ends are tried in a fixed order (m >= 1: the
// Up-start end 2m+2, then the Down-start end r-2m-2; m = 0: 0, 2, r-2);
// for each, the smallest k >= 0 with (e + 2k - (c-2)) = x (mod r) is
// accepted iff k <= c-2. Succeeds for every x in A(r,c,m) when m is the
// least budget for x, which is how the solver calls it.
inline GgParams gg_tour_params(u64 x, u64 r, u64 c, u64 m)
{
    if (r < 2 || c < 2 || x >= r) {
        throw std::invalid_argument("gg_tour_params: need r >= 2, c >= 2, 0 <= x < r");
    }
    if (2 * m + 1 > r) {
        throw std::invalid_argument("gg_tour_params: at most (r-1)/2 extra pairs fit in a column");
    }
    std::pair<ColumnDir, u64> candidates[3];
    std::size_t count = 0;
    if (m >= 1) {
        candidates[count++] = {ColumnDir::Up, (2 * m + 2) % r};
        candidates[count++] = {ColumnDir::Down, (2 * r - 2 * m - 2) % r};
    } else {
        candidates[count++] = {ColumnDir::Down, 0};
        candidates[count++] = {ColumnDir::Up, 2 % r};
        candidates[count++] = {ColumnDir::Down, (r - 2) % r};
    }
    for (std::size_t idx = 0; idx < count; ++idx) {
        auto [dir, e] = candidates[idx];
        i64 delta = static_cast<i64>(x) - static_cast<i64>(e) + static_cast<i64>(c - 2);
        auto k = smallest_solution_at_least(2, delta, r, 0);
        if (k && static_cast<u64>(*k) <= c - 2) {
            return GgParams{m, dir, e, static_cast<u64>(*k)};
        }
    }
    throw std::logic_error("gg_tour_params: no candidate parameterization reaches the target row");
}

struct GgPathInfo {
    GgParams params;
    u64 end_row;
    u64 horizontal_edges;
};

// Materializes every canonical gg path with up to max_m extra pairs and
// reports where each actually ends and how many horizontal edges it used
// (measured from the emitted coordinates, not from the closed form — the
// agreement between the two is a tested property, not an assumption).
// Entries landing on an end row already produced at the same m are dropped.
inline std::vector<GgPathInfo> enumerate_gg_paths(u64 r, u64 c, u64 max_m)
{
    if (r < 2 || c < 2) {
        throw std::invalid_argument("enumerate_gg_paths: need r >= 2, c >= 2");
    }
    std::vector<GgPathInfo> out;
    for (u64 m = 0; 2 * m + 1 <= r && m <= max_m; ++m) {
        std::vector<std::pair<ColumnDir, u64>> variants;
        if (m >= 1) {
            variants.push_back({ColumnDir::Up, (2 * m + 2) % r});
            variants.push_back({ColumnDir::Down, (2 * r - 2 * m - 2) % r});
        } else {
            variants.push_back({ColumnDir::Down, 0});
            variants.push_back({ColumnDir::Up, 2 % r});
            variants.push_back({ColumnDir::Down, (r - 2) % r});
        }
        std::vector<bool> seen(r, false);
        for (auto [dir, e] : variants) {
            for (u64 k = 0; k + 2 <= c; ++k) {
                GgParams params{m, dir, e, k};
                u64 cells = 0, horizontal = 0, end_row = 0;
                u64 prev_col = 0;
                emit_gg_path(r, c, params, [&](CylinderCoord cc) {
                    if (cells > 0 && cc.col != prev_col) {
                        ++horizontal;
                    }
                    prev_col = cc.col;
                    end_row = cc.row;
                    ++cells;
                });
                if (!seen[end_row]) {
                    seen[end_row] = true;
                    out.push_back(GgPathInfo{params, end_row, horizontal});
                }
            }
        }
    }
    return out;
}

} // namespace twostripe
