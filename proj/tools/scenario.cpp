#include "scenario.hpp"

#include "online/analysis.hpp"
#include "online/binpacking.hpp"
#include "online/colouring.hpp"
#include "online/interval.hpp"
#include "online/jsonl.hpp"
#include "online/reductions.hpp"
#include "online/wkl.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>

namespace onlinectl {

namespace fs = std::filesystem;
using namespace online;

namespace {

class Output {
public:
    Output(const Scenario& s) : dir_(s.out_dir), subcommand_(s.subcommand) {
        fs::create_directories(dir_ / "instances");
        csv_.open(dir_ / (subcommand_ + ".csv"));
        if (!csv_) {
            throw InvalidArgument("cannot write to " + dir_.string());
        }
        write_report_header(csv_);
    }

    std::ofstream instance(const std::string& tag, const char* extension = ".jsonl") {
        std::ofstream out(dir_ / "instances" / (subcommand_ + "-" + tag + extension));
        if (!out) {
            throw InvalidArgument("cannot write instance file for " + tag);
        }
        return out;
    }

    void row(const ReportRow& r) {
        write_report_row(csv_, r);
        rows_.push_back(r);
    }

    void summary(std::ostream& log) const {
        std::optional<Rational> worst;
        for (const auto& r : rows_) {
            if (r.ratio && (!worst || *r.ratio > *worst)) {
                worst = r.ratio;
            }
        }
        log << subcommand_ << ": " << rows_.size() << " rows written to " << (dir_ / (subcommand_ + ".csv")).string()
            << '\n';
        if (worst) {
            log << "  max ratio " << to_string(*worst) << " (" << std::setprecision(4) << worst->get_d() << ")\n";
        }
    }

private:
    fs::path dir_;
    std::string subcommand_;
    std::ofstream csv_;
    std::vector<ReportRow> rows_;
};

std::string tag(const char* key, std::uint64_t value) { return std::string(key) + std::to_string(value); }

std::string solver_or(const Scenario& s, const std::string& fallback) { return s.solver.empty() ? fallback : s.solver; }

[[noreturn]] void unknown_solver(const Scenario& s) {
    throw UsageError("unknown solver \"" + s.solver + "\" for " + s.subcommand);
}

ReportRow row_of(std::string kind, std::size_t n, std::string d_or_k, Rational online_cost, Rational offline_cost,
                 std::uint64_t seed) {
    return with_ratio(ReportRow{std::move(kind), n, std::move(d_or_k), std::move(online_cost),
                                std::move(offline_cost), std::nullopt, seed});
}

Rational count(std::size_t value) { return Rational(static_cast<unsigned long>(value)); }

void run_bean(const Scenario& s, Output& out, std::ostream& log) {
    const std::string name = solver_or(s, "first-fit");
    OnlineSolver solver;
    if (name == "first-fit") {
        solver = colouring::first_fit_solver();
    } else if (name == "cbip") {
        solver = colouring::cbip_solver();
    } else if (name == "arbitrary") {
        solver = colouring::arbitrary_consistent_solver(s.seed);
    } else {
        unknown_solver(s);
    }
    const auto result = colouring::bean_adversary(s.t, solver);
    if (result.violation) {
        log << "  solver broke the rules at height " << result.violation->height << ": " << result.violation->detail
            << '\n';
    }
    auto file = out.instance(tag("t", s.t));
    write_prefix_jsonl(file, result.forest.to_prefix());
    const std::size_t offline = colouring::chromatic_exact(result.forest);
    out.row(row_of("bean", result.forest.size(), "t=" + std::to_string(s.t), count(result.forced), count(offline),
                   s.seed));
}

void run_colour(const Scenario& s, Output& out, std::ostream& log) {
    if (s.t > 0) {
        run_bean(s, out, log);
        return;
    }
    const std::string name = solver_or(s, "first-fit");
    const std::size_t cap = s.oracle_cap.value_or(colouring::kDefaultChromaticCap);
    for (std::uint64_t seed = s.seed; seed < s.seed + s.seeds; ++seed) {
        ArrivalPrefix prefix;
        OnlineSolver solver;
        std::string parameter;
        std::size_t offline = 0;
        if (name == "first-fit" || name == "arbitrary") {
            prefix = colouring::generate_d_inductive(s.d, s.n, seed).graph.to_prefix();
            solver = name == "first-fit" ? colouring::first_fit_solver() : colouring::arbitrary_consistent_solver(seed);
            parameter = "d=" + std::to_string(s.d);
        } else if (name == "cbip") {
            prefix = colouring::generate_bipartite(s.n, static_cast<double>(s.d), seed).to_prefix();
            solver = colouring::cbip_solver();
            parameter = "deg=" + std::to_string(s.d);
        } else if (name == "chains") {
            const auto intervals = interval::generate_intervals(s.n, s.k, seed);
            prefix = interval::order_arrival(intervals);
            prefix.kind = StructureKind::graph;
            solver = interval::chain_colouring_solver(s.k);
            parameter = "k=" + std::to_string(s.k);
            // interval graphs are perfect: chromatic number = largest overlap
            offline = interval::max_overlap(intervals);
        } else {
            unknown_solver(s);
        }
        if (offline == 0) {
            offline = colouring::chromatic_exact(colouring::GraphInstance::from_prefix(prefix), cap);
        }
        auto instance = out.instance(tag("seed", seed));
        write_prefix_jsonl(instance, prefix);
        const SolutionTrace trace = run_online(colouring::colouring_problem(), solver, prefix);
        auto trace_file = out.instance(tag("seed", seed) + "-trace");
        write_trace_jsonl(trace_file, trace);
        if (!trace.clean()) {
            log << "  seed " << seed << ": " << to_string(trace.first_violation()->kind) << " at height "
                << trace.first_violation()->height << '\n';
        }
        const auto colours = trace.final_output();
        out.row(row_of("colour", s.n, parameter, count(colouring::colour_count(colours)), count(offline), seed));
    }
}

void run_pack(const Scenario& s, Output& out, std::ostream&) {
    if (solver_or(s, "first-fit") != "first-fit") {
        unknown_solver(s);
    }
    const std::size_t cap = s.oracle_cap.value_or(packing::kDefaultPackingCap);
    for (std::uint64_t seed = s.seed; seed < s.seed + s.seeds; ++seed) {
        // d doubles as the largest denominator of the random sizes
        const auto instance = packing::generate_random(s.n, std::max<std::size_t>(s.d, 1), seed);
        const std::size_t optimum = packing::optimal_pack_exact(instance, cap);
        auto file = out.instance(tag("seed", seed));
        packing::write_instance_jsonl(file, instance);
        const SolutionTrace trace = packing::first_fit_trace(instance);
        auto trace_file = out.instance(tag("seed", seed) + "-trace");
        write_trace_jsonl(trace_file, trace);
        const auto bins = trace.final_output();
        const std::size_t used = bins.empty() ? 0 : static_cast<std::size_t>(*std::max_element(bins.begin(), bins.end()));
        out.row(packing::report_row(instance, used, optimum, seed));
    }
}

void run_chains(const Scenario& s, Output& out, std::ostream&) {
    if (solver_or(s, "kierstead-trotter") != "kierstead-trotter") {
        unknown_solver(s);
    }
    const std::size_t cap = s.oracle_cap.value_or(interval::kDefaultWidthCap);
    for (std::uint64_t seed = s.seed; seed < s.seed + s.seeds; ++seed) {
        const auto intervals = interval::generate_intervals(s.n, s.k, seed);
        const auto rows = interval::order_arrival(intervals);
        const std::size_t width =
            s.n <= cap ? interval::width_exact(rows, intervals, cap) : interval::max_overlap(intervals);
        auto file = out.instance(tag("seed", seed));
        interval::write_intervals_jsonl(file, intervals);
        const auto cover = interval::kt_chain_cover(rows, s.k);
        auto cover_file = out.instance(tag("seed", seed) + "-cover", ".csv");
        interval::write_chain_cover_csv(cover_file, cover);
        out.row(row_of("chains", s.n, "k=" + std::to_string(s.k), count(cover.chain_count()), count(width), seed));
    }
}

void run_reduce(const Scenario& s, Output& out, std::ostream& log) {
    if (solver_or(s, "colour-via-chains") != "colour-via-chains") {
        unknown_solver(s);
    }
    std::vector<ArrivalPrefix> graphs;
    for (std::uint64_t seed = s.seed; seed < s.seed + s.seeds; ++seed) {
        const auto intervals = interval::generate_intervals(s.n, s.k, seed);
        ArrivalPrefix graph = interval::order_arrival(intervals);
        graph.kind = StructureKind::graph;
        auto file = out.instance(tag("seed", seed));
        write_prefix_jsonl(file, graph);
        const auto colours = interval::colour_via_chains(graph, s.k);
        out.row(row_of("reduce", s.n, "k=" + std::to_string(s.k), count(colouring::colour_count(colours)),
                       count(interval::max_overlap(intervals)), seed));
        graphs.push_back(std::move(graph));
    }

    reductions::RatioSetup setup;
    setup.forward = [](const ArrivalPrefix& g) {
        ArrivalPrefix order = g;
        order.kind = StructureKind::interval_order;
        return order;
    };
    setup.backward = [](const ArrivalPrefix&, const online::Output& chains) { return chains; };
    setup.f = interval::chain_colouring_solver(s.k);
    setup.g = interval::kt_chain_solver(s.k);
    auto distinct = [](const ArrivalPrefix&, const online::Output& o) {
        return count(colouring::colour_count(o));
    };
    setup.f_cost = distinct;
    setup.g_cost = distinct;
    setup.f_offline = [](const ArrivalPrefix& p) { return count(interval::max_clique(p)); };
    setup.g_offline = setup.f_offline;
    const auto verdict = reductions::check_ratio_preserving(setup, graphs);
    log << "  ratio-preserving with d=1: " << (verdict.pass ? "yes" : "no") << " over " << verdict.heights_checked
        << " heights, max quotient " << to_string(verdict.max_quotient) << '\n';
    if (!verdict.pass) {
        log << "  " << verdict.detail << '\n';
    }
}

void run_wkl(const Scenario& s, Output& out, std::ostream& log) {
    if (solver_or(s, "leftmost") != "leftmost") {
        unknown_solver(s);
    }
    for (std::uint64_t seed = s.seed; seed < s.seed + s.seeds; ++seed) {
        const auto stages = wkl::random_stages(s.horizon, 0.5, seed);
        auto file = out.instance(tag("seed", seed));
        wkl::write_stages_jsonl(file, stages);
        const auto run = wkl::composed_limiting_path(stages, s.horizon);
        std::size_t direct = 0;
        std::size_t composed = 0;
        for (std::size_t n = 1; n <= s.horizon; ++n) {
            direct += run.direct.change_count(n);
            composed += run.composed.change_count(n);
        }
        std::string path;
        for (std::size_t n = 1; n <= s.horizon; ++n) {
            path += static_cast<char>('0' + run.composed.value(n, s.horizon));
        }
        log << "  seed " << seed << ": path " << path << ", H height " << wkl::widened_height(s.horizon)
            << (run.valid_paths ? "" : ", INVALID pulled-back path") << '\n';
        // settle changes through the widening against those of the direct leftmost rule
        out.row(row_of("wkl", s.horizon, "H=" + std::to_string(wkl::widened_height(s.horizon)), count(composed),
                       count(direct), seed));
    }
}

analysis::IntervalFunctional functional_named(const Scenario& s) {
    const std::string name = solver_or(s, "x2");
    if (name == "x") {
        return analysis::identity_functional();
    }
    if (name == "x2") {
        return analysis::square_functional();
    }
    if (name == "abs") {
        return analysis::distance_functional(Rational(1, 2));
    }
    if (name == "sine") {
        return analysis::sine_like_functional();
    }
    unknown_solver(s);
}

void run_analysis(const Scenario& s, Output& out, std::ostream&) {
    const auto f = functional_named(s);
    constexpr std::size_t kSamples = 4096;
    for (std::size_t n = 2; n <= s.n; ++n) {
        const auto h = analysis::approximate(f, n);
        const auto cert = analysis::certify_error(f, h, kSamples);
        auto file = out.instance(tag("n", n));
        file << nlohmann::json{{"function", f.name}, {"n", n}, {"samples", kSamples}}.dump() << '\n';
        auto csv = out.instance(tag("n", n) + "-approximant", ".csv");
        analysis::write_approximant_csv(csv, h);
        out.row(row_of("analysis", n, f.name, cert.measured, h.budget, 0));
    }
}

} // namespace

int run_scenario(const Scenario& s, std::ostream& log) {
    if (std::find(kSubcommands.begin(), kSubcommands.end(), s.subcommand) == kSubcommands.end()) {
        throw UsageError("unknown subcommand \"" + s.subcommand + "\"");
    }
    if (s.seeds == 0) {
        throw UsageError("--seeds must be positive");
    }
    Output out(s);
    if (s.subcommand == "colour") {
        run_colour(s, out, log);
    } else if (s.subcommand == "pack") {
        run_pack(s, out, log);
    } else if (s.subcommand == "chains") {
        run_chains(s, out, log);
    } else if (s.subcommand == "reduce") {
        run_reduce(s, out, log);
    } else if (s.subcommand == "wkl") {
        run_wkl(s, out, log);
    } else {
        run_analysis(s, out, log);
    }
    out.summary(log);
    return 0;
}

} // namespace onlinectl
