// Turning solver output into explicit vertex tours, plus tour validation.
//
// Tours are emitted as city labels in visiting order; the step back from the
// last label to the first is implied. Emission is streamed through a sink
// callback so a tour of 10^8 cities never has to sit in memory; small
// convenience wrappers that collect into a vector are provided for tests.
#pragma once

#include "congruence.hpp"
#include "ggpath.hpp"
#include "instance.hpp"
#include "solver.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace twostripe {

// Serpentine cylinder tour: straight down column 0, boustrophedon over rows
// 1..r-1 of the remaining columns, then back along row 0. Visits all r*c
// cells with exactly 2(c-1) horizontal steps (the cyclic closing step
// (0,1) -> (0,0) included).
template <typename Sink>
void emit_upper_bound_tour(u64 r, u64 c, Sink&& sink)
{
    if (r < 2 || c < 2) {
        throw std::invalid_argument("emit_upper_bound_tour: need r >= 2 and c >= 2");
    }
    for (u64 row = 0; row < r; ++row) {
        sink(CylinderCoord{row, 0});
    }
    for (u64 col = 1; col < c; ++col) {
        if (col % 2 == 1) {
            for (u64 row = r; row-- > 1;) {
                sink(CylinderCoord{row, col});
            }
        } else {
            for (u64 row = 1; row < r; ++row) {
                sink(CylinderCoord{row, col});
            }
        }
    }
    for (u64 col = c; col-- > 1;) {
        sink(CylinderCoord{0, col});
    }
}

inline std::vector<CylinderCoord> upper_bound_tour_coords(u64 r, u64 c)
{
    std::vector<CylinderCoord> coords;
    coords.reserve(static_cast<size_t>(r * c));
    emit_upper_bound_tour(r, c, [&](CylinderCoord coord) { coords.push_back(coord); });
    return coords;
}

// Streams the optimal tour described by a solve result as city labels.
// Throws for infeasible results; there is no tour to emit.
template <typename Sink>
void emit_tour(const TwoStripeInstance& inst, const SolveResult& result, Sink&& sink)
{
    TourClass cls = result.descriptor.tour_class;
    if (cls == TourClass::EqualCostAny) {
        cls = result.descriptor.nested.value();
    }
    const Decomposition& d = result.decomposition;
    switch (cls) {
    case TourClass::Infeasible:
        throw std::invalid_argument("emit_tour: infeasible instance has no tour");
    case TourClass::AllCheapCycle: {
        u64 v = 0;
        for (u64 i = 0; i < inst.n; ++i) {
            sink(v);
            v = addmod(v, inst.a1, inst.n);
        }
        break;
    }
    case TourClass::GgPlusWrap:
        emit_gg_path(d.r, d.c, result.descriptor.params.value(),
                     [&](CylinderCoord coord) { sink(label_of(coord, inst)); });
        break;
    case TourClass::UpperBoundSerpentine:
        emit_upper_bound_tour(d.r, d.c,
                              [&](CylinderCoord coord) { sink(label_of(coord, inst)); });
        break;
    case TourClass::EqualCostAny:
        throw std::logic_error("emit_tour: nested descriptor must not nest again");
    }
}

inline std::vector<u64> tour_labels(const TwoStripeInstance& inst, const SolveResult& result)
{
    std::vector<u64> labels;
    labels.reserve(static_cast<size_t>(inst.n));
    emit_tour(inst, result, [&](u64 label) { labels.push_back(label); });
    return labels;
}

// Wrap-around family used by the matching lower bound: the first y columns
// are swept by -a1 steps, the rest by +a1 steps, consecutive columns joined
// by a single +a2 edge. Closes into a tour exactly when
// (2y - g1)*a1 + g1*a2 = 0 (mod n); throws otherwise. Uses g1 expensive
// edges, so it is optimal whenever h* = c.
template <typename Sink>
void emit_lower_bound_tour_y(const TwoStripeInstance& inst, u64 y, Sink&& sink)
{
    Decomposition d = decompose(inst);
    if (d.g2 != 1 || d.g1 < 2) {
        throw std::invalid_argument("emit_lower_bound_tour_y: need a feasible instance with g1 >= 2");
    }
    if (y > d.g1) {
        throw std::invalid_argument("emit_lower_bound_tour_y: y out of range");
    }
    u64 vertical = y * 2 >= d.g1 ? mulmod(y * 2 - d.g1, inst.a1, inst.n)
                                 : submod(0, mulmod(d.g1 - y * 2, inst.a1, inst.n), inst.n);
    if (addmod(vertical, mulmod(d.g1, inst.a2, inst.n), inst.n) != 0) {
        throw std::invalid_argument("emit_lower_bound_tour_y: y does not close a tour");
    }
    u64 v = 0;
    for (u64 col = 0; col < d.c; ++col) {
        for (u64 step = 0; step + 1 < d.r; ++step) {
            sink(v);
            v = col < y ? submod(v, inst.a1, inst.n) : addmod(v, inst.a1, inst.n);
        }
        sink(v);
        v = addmod(v, inst.a2, inst.n);
    }
}

inline std::vector<u64> lower_bound_tour_labels(const TwoStripeInstance& inst, u64 y)
{
    std::vector<u64> labels;
    labels.reserve(static_cast<size_t>(inst.n));
    emit_lower_bound_tour_y(inst, y, [&](u64 label) { labels.push_back(label); });
    return labels;
}

struct ValidationReport {
    bool hamiltonian = false; // every city exactly once, every step a stripe edge
    u64 count_a1 = 0;         // steps of +-a1, cyclic closing step included
    u64 count_a2 = 0;         // steps of +-a2
    u128 cost = 0;            // count_a1*cost1 + count_a2*cost2
};

// Incremental tour checker; feed labels in visiting order, then finish().
// Counts and cost cover only the recognized stripe steps, so they are
// meaningful even when the sequence fails to be a tour.
class TourValidator {
public:
    explicit TourValidator(const TwoStripeInstance& inst)
        : inst_(inst)
    {
        if (inst.n > (u64{1} << 32)) {
            throw std::invalid_argument("TourValidator: n above 2^32 is not supported");
        }
        seen_.assign(static_cast<size_t>(inst.n), false);
    }

    void feed(u64 label)
    {
        if (label >= inst_.n) {
            out_of_range_ = true;
            return;
        }
        if (seen_[static_cast<size_t>(label)]) {
            duplicate_ = true;
        }
        seen_[static_cast<size_t>(label)] = true;
        if (count_ == 0) {
            first_ = label;
        } else {
            classify_step(prev_, label);
        }
        prev_ = label;
        ++count_;
    }

    ValidationReport finish()
    {
        ValidationReport report;
        if (count_ > 0) {
            classify_step(prev_, first_);
        }
        report.count_a1 = count_a1_;
        report.count_a2 = count_a2_;
        report.cost = static_cast<u128>(count_a1_) * inst_.cost1 +
                      static_cast<u128>(count_a2_) * inst_.cost2;
        report.hamiltonian = !out_of_range_ && !duplicate_ && bad_steps_ == 0 &&
                             count_ == inst_.n;
        return report;
    }

private:
    void classify_step(u64 from, u64 to)
    {
        u64 diff = submod(to, from, inst_.n);
        if (diff == inst_.a1 || diff == inst_.n - inst_.a1) {
            ++count_a1_;
        } else if (diff == inst_.a2 || diff == inst_.n - inst_.a2) {
            ++count_a2_;
        } else {
            ++bad_steps_;
        }
    }

    TwoStripeInstance inst_;
    std::vector<bool> seen_;
    u64 count_ = 0;
    u64 first_ = 0;
    u64 prev_ = 0;
    u64 count_a1_ = 0;
    u64 count_a2_ = 0;
    u64 bad_steps_ = 0;
    bool duplicate_ = false;
    bool out_of_range_ = false;
};

inline ValidationReport validate_tour(const TwoStripeInstance& inst, const std::vector<u64>& labels)
{
    TourValidator validator(inst);
    for (u64 label : labels) {
        validator.feed(label);
    }
    return validator.finish();
}

} // namespace twostripe
