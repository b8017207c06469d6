// Two-stripe circulant TSP instances: input canonicalization, the gcd
// decomposition into an r x c cylinder, trivial-case classification, and the
// bijection between vertex labels and cylinder coordinates.
//
// Conventions: n cities labeled 0..n-1; stripe k connects labels differing by
// +-k (mod n). a1 is the cheap stripe, a2 the expensive one (cost1 <= cost2).
// With g1 = gcd(n, a1), the a1-only graph splits into g1 columns of n/g1
// vertices; cell (row, col) holds label row*a1 + col*a2 (mod n). Vertical
// steps (+-a1) wrap within a column, horizontal steps (+-a2) do not wrap.
#pragma once

#include "congruence.hpp"

#include <cstdint>
#include <stdexcept>

namespace twostripe {

struct TwoStripeInstance {
    u64 n;     // number of cities, 4 <= n < 2^62
    u64 a1;    // cheap stripe length, in [1, n/2]
    u64 a2;    // expensive stripe length, in [1, n/2], != a1
    u64 cost1; // per-edge cost of the a1 stripe
    u64 cost2; // per-edge cost of the a2 stripe, >= cost1
};

struct Decomposition {
    u64 g1; // gcd(n, a1) = number of columns
    u64 g2; // gcd(g1, a2); the instance is feasible iff g2 = 1
    u64 r;  // rows, n / g1
    u64 c;  // columns, g1
};

struct CylinderCoord {
    u64 row; // in [0, r)
    u64 col; // in [0, c)

    bool operator==(const CylinderCoord&) const = default;
};

enum class Triviality {
    Infeasible,   // g2 > 1: no Hamiltonian cycle on the two stripes at all
    SingleStripe, // g1 = 1: the cheap stripe alone is a Hamiltonian cycle
    EqualCosts,   // cost1 = cost2 (and feasible): every tour costs n*cost1
    NonTrivial,
};

// Validates ranges and relabels the stripes so cost1 <= cost2; on a cost tie
// the numerically smaller stripe length becomes a1 (deterministic).
inline TwoStripeInstance build_instance(u64 n, u64 s1, u64 c1, u64 s2, u64 c2)
{
    if (n < 4 || n >= max_modulus) {
        throw std::invalid_argument("build_instance: n must be in [4, 2^62)");
    }
    if (s1 < 1 || s1 > n / 2 || s2 < 1 || s2 > n / 2) {
        throw std::invalid_argument("build_instance: stripe lengths must be in [1, n/2]");
    }
    if (s1 == s2) {
        throw std::invalid_argument("build_instance: stripe lengths must be distinct");
    }
    bool swap = (c2 < c1) || (c1 == c2 && s2 < s1);
    if (swap) {
        return TwoStripeInstance{n, s2, s1, c2, c1};
    }
    return TwoStripeInstance{n, s1, s2, c1, c2};
}

inline Decomposition decompose(const TwoStripeInstance& inst)
{
    u64 g1 = std::gcd(inst.n, inst.a1);
    u64 g2 = std::gcd(g1, inst.a2);
    return Decomposition{g1, g2, inst.n / g1, g1};
}

inline Triviality classify(const TwoStripeInstance& inst)
{
    Decomposition d = decompose(inst);
    if (d.g2 > 1) {
        return Triviality::Infeasible;
    }
    if (d.g1 == 1) {
        return Triviality::SingleStripe;
    }
    if (inst.cost1 == inst.cost2) {
        return Triviality::EqualCosts;
    }
    return Triviality::NonTrivial;
}

inline u64 label_of(CylinderCoord coord, const TwoStripeInstance& inst)
{
    return addmod(mulmod(coord.row, inst.a1, inst.n),
                  mulmod(coord.col, inst.a2, inst.n), inst.n);
}

// Inverse of label_of. The column is the unique solution of col*a2 = label
// (mod g1) (a2 is invertible mod g1 because g2 = 1); peeling off col*a2
// leaves a multiple of a1 whose row is unique mod r.
inline CylinderCoord coord_of(u64 label, const TwoStripeInstance& inst)
{
    Decomposition d = decompose(inst);
    if (d.g2 != 1) {
        throw std::invalid_argument("coord_of: labels and cells are not in bijection when gcd(n, a1, a2) > 1");
    }
    if (label >= inst.n) {
        throw std::invalid_argument("coord_of: label out of range");
    }
    auto col_sol = solve_congruence(inst.a2 % d.g1, static_cast<i64>(label % d.g1), d.g1);
    u64 col = col_sol->base; // solvable: gcd(a2, g1) = 1
    // What remains is a multiple of a1's orbit: solve row*a1 = rest (mod n).
    u64 rest = submod(label, mulmod(col, inst.a2, inst.n), inst.n);
    auto row_sol = solve_congruence(inst.a1, static_cast<i64>(rest), inst.n);
    return CylinderCoord{row_sol->base, col};
}

// Row index x of the cell (x, c-1) holding label n - a2, i.e. the unique
// x in [0, r) with x*a1 = -g1*a2 (mod n). This is where a structured path
// must end so the closing +a2 edge returns to label 0.
inline u64 row_of_minus_a2(const TwoStripeInstance& inst)
{
    Decomposition d = decompose(inst);
    if (d.g2 != 1 || d.g1 == 1) {
        throw std::invalid_argument("row_of_minus_a2: requires gcd(n, a1, a2) = 1 and gcd(n, a1) > 1");
    }
    u64 rhs = submod(0, mulmod(d.g1, inst.a2, inst.n), inst.n);
    auto sol = solve_congruence(inst.a1, static_cast<i64>(rhs), inst.n);
    return sol->base; // solvable: g1 divides g1*a2; unique in [0, r)
}

} // namespace twostripe
