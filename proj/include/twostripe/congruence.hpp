// Exact modular arithmetic: gcd, extended Euclid, and linear congruences
// a*x = b (mod n) with constrained smallest solutions. All routines are pure
// and overflow-safe for moduli below 2^62 (128-bit intermediates throughout).
#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace twostripe {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Largest supported modulus / instance size (exclusive).
inline constexpr u64 max_modulus = u64{1} << 62;

inline u64 gcd(u64 a, u64 b)
{
    if (a == 0 && b == 0) {
        throw std::invalid_argument("gcd(0, 0) is undefined");
    }
    return std::gcd(a, b);
}

inline u64 mulmod(u64 a, u64 b, u64 n)
{
    return static_cast<u64>((static_cast<u128>(a) * b) % n);
}

inline u64 addmod(u64 a, u64 b, u64 n)
{
    return static_cast<u64>((static_cast<u128>(a) + b) % n);
}

inline u64 submod(u64 a, u64 b, u64 n)
{
    u64 bm = b % n;
    u64 am = a % n;
    return am >= bm ? am - bm : am + (n - bm);
}

struct ExtGcdResult {
    i64 g; // gcd(|a|, |b|)
    i64 s; // coefficient of a
    i64 t; // coefficient of b, with s*a + t*b = g
};

// Per-thread high-water mark of loop iterations across every extended-Euclid
// call. Purely diagnostic: measurement code resets it, runs a workload, and
// reads back the worst call seen. Thread-local, so parallel sweeps do not
// contend.
inline thread_local unsigned ext_gcd_iteration_high_water = 0;

// Extended Euclid with an iteration counter. The classic bound applies:
// the loop runs at most 2*ceil(log2(max(|a|,|b|))) + 2 times (Fibonacci
// worst case), which is what keeps every solver query polylogarithmic.
inline ExtGcdResult ext_gcd_counted(i64 a, i64 b, unsigned& iterations)
{
    if (a == 0 && b == 0) {
        throw std::invalid_argument("ext_gcd(0, 0) is undefined");
    }
    i64 old_r = a < 0 ? -a : a;
    i64 r = b < 0 ? -b : b;
    i64 old_s = 1, s = 0;
    i64 old_t = 0, t = 1;
    iterations = 0;
    while (r != 0) {
        ++iterations;
        i64 q = old_r / r;
        i64 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (a < 0) old_s = -old_s;
    if (b < 0) old_t = -old_t;
    if (iterations > ext_gcd_iteration_high_water) {
        ext_gcd_iteration_high_water = iterations;
    }
    return ExtGcdResult{old_r, old_s, old_t};
}

inline ExtGcdResult ext_gcd(i64 a, i64 b)
{
    unsigned ignored = 0;
    return ext_gcd_counted(a, b, ignored);
}

struct CongruenceSolution {
    u64 base;   // smallest nonnegative solution
    u64 period; // n / gcd(a, n); the full set is { base + k*period }

    bool operator==(const CongruenceSolution&) const = default;
};

// Solve a*x = b (mod n). Returns the smallest nonnegative solution and the
// period of the solution set, or nothing when gcd(a, n) does not divide b.
// b may be negative; it is reduced into [0, n) first.
inline std::optional<CongruenceSolution> solve_congruence(u64 a, i64 b, u64 n)
{
    if (n == 0 || n >= max_modulus) {
        throw std::invalid_argument("solve_congruence: modulus out of range");
    }
    u64 am = a % n;
    i64 br = b % static_cast<i64>(n);
    u64 bm = br < 0 ? static_cast<u64>(br + static_cast<i64>(n)) : static_cast<u64>(br);

    u64 g = std::gcd(am, n); // gcd(0, n) = n handles a = 0
    if (bm % g != 0) {
        return std::nullopt;
    }
    u64 period = n / g;
    if (period == 1) {
        return CongruenceSolution{0, 1};
    }
    // base = (b/g) * inverse(a/g) mod n/g
    ExtGcdResult e = ext_gcd(static_cast<i64>(am / g), static_cast<i64>(period));
    u64 inv = e.s >= 0 ? static_cast<u64>(e.s) % period
                       : period - (static_cast<u64>(-e.s) % period);
    u64 base = mulmod((bm / g) % period, inv % period, period);
    return CongruenceSolution{base, period};
}

// Smallest integer x >= L with a*x = b (mod n), or nothing if infeasible.
// Computed as base + period * ceil((L - base) / period); no loops.
inline std::optional<i64> smallest_solution_at_least(u64 a, i64 b, u64 n, i64 L)
{
    auto sol = solve_congruence(a, b, n);
    if (!sol) {
        return std::nullopt;
    }
    i128 diff = static_cast<i128>(L) - static_cast<i128>(sol->base);
    i128 period = static_cast<i128>(sol->period);
    // ceil(diff / period): truncation already rounds toward zero for diff <= 0
    i128 steps = diff <= 0 ? -((-diff) / period) : (diff + period - 1) / period;
    i128 x = static_cast<i128>(sol->base) + steps * period;
    return static_cast<i64>(x);
}

} // namespace twostripe
