// Command-line surface: solve single instances, emit and check tours, and
// run the verification sweeps with machine-readable output.
//
// Exit codes: 0 success (including feasible=false answers and a "yes" in
// decision mode), 1 a "no" in decision mode or any verification mismatch,
// 2 invalid input.

#include "twostripe/congruence.hpp"
#include "twostripe/instance.hpp"
#include "twostripe/ggpath.hpp"
#include "twostripe/solver.hpp"
#include "twostripe/materialize.hpp"
#include "twostripe/oracle.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using nlohmann::json;
using namespace twostripe;

// JSON numbers stop being exact beyond 64 bits; fall back to a decimal string.
json cost_to_json(u128 value)
{
    if (value <= static_cast<u128>(~u64{0})) {
        return json(static_cast<u64>(value));
    }
    std::string digits;
    while (value > 0) {
        digits.insert(digits.begin(), static_cast<char>('0' + static_cast<unsigned>(value % 10)));
        value /= 10;
    }
    return json(digits);
}

const char* class_name(TourClass cls)
{
    switch (cls) {
    case TourClass::Infeasible: return "infeasible";
    case TourClass::AllCheapCycle: return "all_cheap_cycle";
    case TourClass::EqualCostAny: return "equal_cost_any";
    case TourClass::GgPlusWrap: return "gg_plus_wrap";
    case TourClass::UpperBoundSerpentine: return "upper_bound_serpentine";
    }
    return "unknown";
}

const char* dir_name(ColumnDir dir)
{
    return dir == ColumnDir::Down ? "down" : "up";
}

json record_of(const TwoStripeInstance& inst, const SolveResult& res)
{
    json j;
    j["feasible"] = res.total_cost.has_value();
    j["n"] = inst.n;
    j["a1"] = inst.a1;
    j["a2"] = inst.a2;
    j["cost1"] = inst.cost1;
    j["cost2"] = inst.cost2;
    j["g1"] = res.decomposition.g1;
    j["g2"] = res.decomposition.g2;
    j["r"] = res.decomposition.r;
    j["c"] = res.decomposition.c;
    if (res.x) {
        j["x"] = *res.x;
    }
    if (res.m_star.value) {
        j["m_star"] = *res.m_star.value;
        j["branch"] = *res.m_star.branch == MStarBranch::Plus ? "plus" : "minus";
    }
    if (res.h_star) {
        j["h_star"] = *res.h_star;
    }
    if (res.total_cost) {
        j["cost"] = cost_to_json(*res.total_cost);
    }
    j["tour_class"] = class_name(res.descriptor.tour_class);
    if (res.descriptor.nested) {
        j["nested_class"] = class_name(*res.descriptor.nested);
    }
    if (res.descriptor.params) {
        const GgParams& p = *res.descriptor.params;
        j["params"] = json{{"m", p.m},
                           {"first_col_dir", dir_name(p.first_col_dir)},
                           {"second_col_end", p.second_col_end},
                           {"k", p.k}};
    }
    return j;
}

std::string text_of(const TwoStripeInstance& inst, const SolveResult& res)
{
    std::string out;
    out += "n=" + std::to_string(inst.n);
    out += " a1=" + std::to_string(inst.a1);
    out += " a2=" + std::to_string(inst.a2);
    out += " cost1=" + std::to_string(inst.cost1);
    out += " cost2=" + std::to_string(inst.cost2);
    out += res.total_cost ? " feasible" : " infeasible";
    out += " g1=" + std::to_string(res.decomposition.g1);
    out += " g2=" + std::to_string(res.decomposition.g2);
    out += " r=" + std::to_string(res.decomposition.r);
    out += " c=" + std::to_string(res.decomposition.c);
    if (res.x) {
        out += " x=" + std::to_string(*res.x);
    }
    if (res.m_star.value) {
        out += " m_star=" + std::to_string(*res.m_star.value);
        out += std::string(" branch=") +
               (*res.m_star.branch == MStarBranch::Plus ? "plus" : "minus");
    }
    if (res.h_star) {
        out += " h_star=" + std::to_string(*res.h_star);
    }
    if (res.total_cost) {
        out += " cost=" + cost_to_json(*res.total_cost).dump();
    }
    out += std::string(" tour_class=") + class_name(res.descriptor.tour_class);
    if (res.descriptor.nested) {
        out += std::string(" nested_class=") + class_name(*res.descriptor.nested);
    }
    if (res.descriptor.params) {
        const GgParams& p = *res.descriptor.params;
        out += " params={m=" + std::to_string(p.m) + ",dir=" + dir_name(p.first_col_dir) +
               ",end=" + std::to_string(p.second_col_end) + ",k=" + std::to_string(p.k) + "}";
    }
    return out;
}

void write_label(u64 label, char trailer)
{
    char buf[24];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf) - 1, label);
    (void)ec;
    *end++ = trailer;
    std::fwrite(buf, 1, static_cast<size_t>(end - buf), stdout);
}

struct SolveArgs {
    u64 n = 0;
    u64 a1 = 0;
    u64 a2 = 0;
    u64 c1 = 0;
    u64 c2 = 1;
    bool as_json = false;
    bool emit_tour = false;
    bool check = false;
    std::optional<u64> budget;
};

int run_solve(const SolveArgs& args)
{
    TwoStripeInstance inst;
    try {
        inst = build_instance(args.n, args.a1, args.c1, args.a2, args.c2);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (args.budget) {
        bool yes = decide(inst, *args.budget);
        std::cout << (yes ? "yes" : "no") << "\n";
        return yes ? 0 : 1;
    }

    SolveResult res = solve(inst);
    if (args.as_json) {
        std::cout << record_of(inst, res).dump() << "\n";
    } else {
        std::cout << text_of(inst, res) << "\n";
    }

    if (!args.emit_tour && !args.check) {
        return 0;
    }
    if (!res.total_cost) {
        std::cerr << "error: infeasible instance has no tour to emit\n";
        return 2;
    }
    if (args.check && inst.n > (u64{1} << 32)) {
        std::cerr << "error: --check supports n up to 2^32\n";
        return 2;
    }

    std::optional<TourValidator> validator;
    if (args.check) {
        validator.emplace(inst);
    }
    std::cout.flush();
    if (args.emit_tour && args.as_json) {
        std::fputc('[', stdout);
        bool first = true;
        emit_tour(inst, res, [&](u64 label) {
            if (!first) {
                std::fputc(',', stdout);
            }
            first = false;
            char buf[24];
            auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), label);
            (void)ec;
            std::fwrite(buf, 1, static_cast<size_t>(end - buf), stdout);
            if (validator) {
                validator->feed(label);
            }
        });
        std::fputs("]\n", stdout);
    } else if (args.emit_tour) {
        emit_tour(inst, res, [&](u64 label) {
            write_label(label, '\n');
            if (validator) {
                validator->feed(label);
            }
        });
    } else {
        emit_tour(inst, res, [&](u64 label) { validator->feed(label); });
    }
    std::fflush(stdout);

    if (validator) {
        ValidationReport report = validator->finish();
        bool count_ok = res.h_star && report.count_a2 == *res.h_star;
        bool cost_ok = res.total_cost && report.cost == *res.total_cost;
        bool ok = report.hamiltonian && count_ok && cost_ok;
        if (args.as_json) {
            json j{{"check", ok},
                   {"hamiltonian", report.hamiltonian},
                   {"count_a1", report.count_a1},
                   {"count_a2", report.count_a2},
                   {"tour_cost", cost_to_json(report.cost)}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "check=" << (ok ? "ok" : "FAILED")
                      << " hamiltonian=" << (report.hamiltonian ? "true" : "false")
                      << " count_a1=" << report.count_a1 << " count_a2=" << report.count_a2
                      << " tour_cost=" << cost_to_json(report.cost).dump() << "\n";
        }
        return ok ? 0 : 1;
    }
    return 0;
}

json instance_check_json(const InstanceCheck& check)
{
    json j;
    j["n"] = check.n;
    j["a1"] = check.a1;
    j["a2"] = check.a2;
    if (check.expected) {
        j["expected"] = cost_to_json(*check.expected);
    }
    if (check.actual) {
        j["actual"] = cost_to_json(*check.actual);
    }
    j["ok"] = check.ok;
    return j;
}

int run_verify_held_karp(u64 max_n, unsigned threads)
{
    HeldKarpAgreementReport report = verify_against_held_karp(max_n, threads);
    for (const auto& check : report.checks) {
        std::cout << instance_check_json(check).dump() << "\n";
    }
    json summary{{"summary", "held-karp"},
                 {"instances", report.instances},
                 {"feasible", report.feasible},
                 {"nontrivial", report.nontrivial},
                 {"mismatches", report.mismatches},
                 {"bound_violations", report.bound_violations},
                 {"seconds", report.seconds}};
    std::cout << summary.dump() << "\n";
    return report.mismatches == 0 && report.bound_violations == 0 ? 0 : 1;
}

int run_verify_cylinder(u64 max_cells)
{
    CylinderFormulaReport report = verify_cylinder_formula(max_cells);
    for (const auto& check : report.checks) {
        json j;
        j["r"] = check.r;
        j["c"] = check.c;
        j["row"] = check.row;
        if (check.expected) {
            j["expected"] = *check.expected;
        }
        if (check.actual) {
            j["actual"] = *check.actual;
        }
        j["ok"] = check.ok;
        std::cout << j.dump() << "\n";
    }
    json summary{{"summary", "cylinder"},
                 {"grids", report.grids},
                 {"rows", report.rows_checked},
                 {"violations", report.violations},
                 {"seconds", report.seconds}};
    std::cout << summary.dump() << "\n";
    return report.violations == 0 ? 0 : 1;
}

int run_verify_gg_formula(u64 max_n, unsigned threads)
{
    CostFormulaReport report = verify_cost_formula(max_n, threads, [](const CostFormulaPerN& row) {
        json j{{"n", row.n},
               {"pairs", row.pairs},
               {"checked", row.checked},
               {"mismatches", row.mismatches},
               {"bound_violations", row.bound_violations}};
        std::cout << j.dump() << "\n";
    });
    for (const auto& check : report.sample_mismatches) {
        std::cout << instance_check_json(check).dump() << "\n";
    }
    json summary{{"summary", "gg-formula"},
                 {"n_max", report.n_max},
                 {"pairs", report.pairs},
                 {"checked", report.checked},
                 {"mismatches", report.mismatches},
                 {"bound_violations", report.bound_violations},
                 {"seconds", report.seconds}};
    std::cout << summary.dump() << "\n";
    return report.mismatches == 0 && report.bound_violations == 0 ? 0 : 1;
}

unsigned threads_from_env()
{
    const char* env = std::getenv("TWO_STRIPE_THREADS");
    if (!env || !*env) {
        return 0;
    }
    char* end = nullptr;
    unsigned long parsed = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0') {
        return 0;
    }
    return static_cast<unsigned>(parsed);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact solver for the symmetric two-stripe circulant TSP"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Solve one instance");
    solve_cmd->add_option("--n", solve_args.n, "Number of cities")->required();
    solve_cmd->add_option("--a1", solve_args.a1, "First stripe length, in [1, n/2]")->required();
    solve_cmd->add_option("--a2", solve_args.a2, "Second stripe length, distinct from a1")->required();
    solve_cmd->add_option("--c1", solve_args.c1, "Cost of the first stripe (default 0)");
    solve_cmd->add_option("--c2", solve_args.c2, "Cost of the second stripe (default 1)");
    solve_cmd->add_flag("--json", solve_args.as_json, "Machine-readable output");
    solve_cmd->add_flag("--emit-tour", solve_args.emit_tour, "Stream the full vertex sequence");
    solve_cmd->add_flag("--check", solve_args.check, "Validate the emitted tour internally");
    solve_cmd->add_option("--budget", solve_args.budget,
                          "Decision mode: print yes/no for optimal cost <= budget, exit 0/1");

    CLI::App* verify_cmd = app.add_subcommand("verify", "Run a verification sweep");
    verify_cmd->require_subcommand(1);
    u64 hk_max_n = 16;
    u64 cyl_max_cells = 20;
    u64 gg_max_n = 2000;
    unsigned threads = threads_from_env();
    CLI::App* hk_cmd = verify_cmd->add_subcommand(
        "held-karp", "Compare the solver against exact dynamic programming");
    hk_cmd->add_option("--max-n", hk_max_n, "Largest n to sweep (4..18, default 16)");
    hk_cmd->add_option("--threads", threads, "Worker threads (0 = auto)");
    CLI::App* cyl_cmd = verify_cmd->add_subcommand(
        "cylinder", "Compare exhaustive path search against the reachability formula");
    cyl_cmd->add_option("--max-cells", cyl_max_cells, "Largest r*c to sweep (4..24, default 20)");
    CLI::App* gg_cmd = verify_cmd->add_subcommand(
        "gg-formula", "Compare the solver against the independent cost formula");
    gg_cmd->add_option("--max-n", gg_max_n, "Largest n to sweep (default 2000)");
    gg_cmd->add_option("--threads", threads, "Worker threads (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // help and version are successes, anything else is bad input
    }

    try {
        if (*solve_cmd) {
            return run_solve(solve_args);
        }
        if (*hk_cmd) {
            return run_verify_held_karp(hk_max_n, threads);
        }
        if (*cyl_cmd) {
            return run_verify_cylinder(cyl_max_cells);
        }
        if (*gg_cmd) {
            return run_verify_gg_formula(gg_max_n, threads);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
