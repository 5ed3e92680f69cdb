// Acceptance run: one line per criterion, exit status 1 if any fails.

#include "online/analysis.hpp"
#include "online/binpacking.hpp"
#include "online/colouring.hpp"
#include "online/interval.hpp"
#include "online/random.hpp"
#include "online/reductions.hpp"
#include "online/widen.hpp"
#include "online/wkl.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace online;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome within(Outcome o, double elapsed, double limit) {
    if (elapsed > limit) {
        o.pass = false;
        o.detail += "; over the " + std::to_string(static_cast<int>(limit)) + " s limit";
    }
    return o;
}

// ---- 1: first fit against the optimum, sizes in sixths, every sequence up to 12 items

Outcome criterion_packing() {
    constexpr int kTypes = 6;
    constexpr std::size_t kMaxItems = 12;
    constexpr std::size_t kBase = kMaxItems + 1;
    // optimum per multiset, indexed by counts of sizes 1..6 in base 13
    std::size_t table_size = 1;
    for (int t = 0; t < kTypes; ++t) {
        table_size *= kBase;
    }
    std::vector<std::uint8_t> opt(table_size, 0);
    std::array<std::size_t, kTypes> place{};
    place[0] = 1;
    for (int t = 1; t < kTypes; ++t) {
        place[t] = place[t - 1] * kBase;
    }
    std::size_t multisets = 0;
    std::array<int, kTypes> counts{};
    std::function<void(int, std::size_t)> fill = [&](int type, std::size_t left) {
        if (type == kTypes) {
            std::vector<int> sizes;
            std::size_t key = 0;
            for (int t = 0; t < kTypes; ++t) {
                sizes.insert(sizes.end(), counts[t], t + 1);
                key += counts[t] * place[t];
            }
            opt[key] = static_cast<std::uint8_t>(packing::optimal_bins<int>(sizes, kTypes));
            ++multisets;
            return;
        }
        for (std::size_t c = 0; c <= left; ++c) {
            counts[type] = static_cast<int>(c);
            fill(type + 1, left - c);
        }
        counts[type] = 0;
    };
    fill(0, kMaxItems);

    std::uint64_t sequences = 0;
    std::uint64_t violations = 0;
    std::size_t worst_ff = 1;
    std::size_t worst_opt = 1;
    packing::FirstFit<int> ff(kTypes);
    std::size_t key = 0;
    std::function<void(std::size_t)> walk = [&](std::size_t depth) {
        if (depth > 0) {
            ++sequences;
            const std::size_t o = opt[key];
            violations += ff.bins() > 2 * o;
            if (ff.bins() * worst_opt > worst_ff * o) {
                worst_ff = ff.bins();
                worst_opt = o;
            }
        }
        if (depth == kMaxItems) {
            return;
        }
        for (int s = 1; s <= kTypes; ++s) {
            ff.place(s);
            key += place[s - 1];
            walk(depth + 1);
            key -= place[s - 1];
            ff.undo();
        }
    };
    walk(0);
    std::ostringstream d;
    d << sequences << " sequences over " << multisets << " multisets, " << violations
      << " violations, worst FF/OPT " << worst_ff << "/" << worst_opt;
    return {violations == 0, d.str()};
}

// ---- 2: the forcing adversary

Outcome criterion_bean() {
    std::vector<std::pair<std::string, OnlineSolver>> solvers{{"first-fit", colouring::first_fit_solver()},
                                                              {"cbip", colouring::cbip_solver()}};
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        solvers.emplace_back("arbitrary-" + std::to_string(seed), colouring::arbitrary_consistent_solver(seed));
    }
    std::size_t games = 0;
    for (std::size_t t = 1; t <= 6; ++t) {
        for (const auto& [name, solver] : solvers) {
            ++games;
            const auto r = colouring::bean_adversary(t, solver);
            const std::string where = name + " at t=" + std::to_string(t);
            if (r.violation) {
                return {false, where + ": solver broke admissibility"};
            }
            if (!colouring::is_forest(r.forest)) {
                return {false, where + ": not a forest"};
            }
            if (r.forest.size() > (std::size_t{1} << (t - 1))) {
                return {false, where + ": " + std::to_string(r.forest.size()) + " vertices"};
            }
            if (!colouring::is_proper(r.forest, r.colouring) || colouring::colour_count(r.colouring) < t) {
                return {false, where + ": only " + std::to_string(colouring::colour_count(r.colouring)) + " colours"};
            }
        }
    }
    return {true, std::to_string(games) + " games, t = 1..6 against " + std::to_string(solvers.size()) + " solvers"};
}

// ---- 3: chain covers

bool cover_is_valid(const interval::IntervalInstance& xs, const interval::ChainCover& cover, std::size_t k,
                    std::string& why) {
    for (const auto& chain : cover.chains()) {
        for (std::size_t a = 0; a < chain.size(); ++a) {
            for (std::size_t b = a + 1; b < chain.size(); ++b) {
                if (interval::intersects(xs[chain[a] - 1], xs[chain[b] - 1])) {
                    why = "incomparable elements share a chain";
                    return false;
                }
            }
        }
    }
    for (const auto& e : cover.elements) {
        const std::size_t lo = e.level == 1 ? 1 : 2 + 3 * (e.level - 2);
        const std::size_t hi = e.level == 1 ? 1 : lo + 2;
        if (e.level < 1 || e.level > k || e.chain < lo || e.chain > hi) {
            why = "chain outside its level's range";
            return false;
        }
    }
    for (std::size_t j = 1; j < k; ++j) {
        interval::IntervalInstance low;
        for (std::size_t e = 0; e < xs.size(); ++e) {
            if (cover.elements[e].level <= j) {
                low.push_back(xs[e]);
            }
        }
        if (interval::max_overlap(low) > j) {
            why = "levels up to " + std::to_string(j) + " hold a wider antichain";
            return false;
        }
    }
    return true;
}

Outcome criterion_chains() {
    std::size_t worst_by_k[6] = {};
    for (std::size_t k = 1; k <= 5; ++k) {
        for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
            const auto xs = interval::generate_intervals(60, k, seed);
            const auto cover = interval::kt_chain_cover(interval::order_arrival(xs), k);
            std::string why;
            if (cover.chain_count() > interval::chain_budget(k)) {
                why = std::to_string(cover.chain_count()) + " chains";
            }
            if (!why.empty() || !cover_is_valid(xs, cover, k, why)) {
                return {false, "k=" + std::to_string(k) + " seed " + std::to_string(seed) + ": " + why};
            }
            worst_by_k[k] = std::max(worst_by_k[k], cover.chain_count());
        }
    }
    std::ostringstream d;
    d << "5000 orders; most chains per k:";
    for (std::size_t k = 1; k <= 5; ++k) {
        d << ' ' << worst_by_k[k] << '/' << interval::chain_budget(k);
    }
    return {true, d.str()};
}

// ---- 4: colouring through chains

Rational count(std::size_t c) { return Rational(static_cast<unsigned long>(c)); }

Outcome criterion_reduction() {
    Rational worst(0);
    std::size_t instances = 0;
    std::size_t heights = 0;
    Rational quotient(0);
    for (std::size_t k = 1; k <= 5; ++k) {
        std::vector<ArrivalPrefix> graphs;
        for (std::uint64_t seed = 1; seed <= 200; ++seed) {
            const auto xs = interval::generate_intervals(40, k, seed);
            auto g = interval::order_arrival(xs);
            g.kind = StructureKind::graph;
            const auto colours = interval::colour_via_chains(g, k);
            if (!colouring::is_proper(colouring::GraphInstance::from_prefix(g), colours)) {
                return {false, "improper colouring at k=" + std::to_string(k) + " seed " + std::to_string(seed)};
            }
            Rational ratio = count(colouring::colour_count(colours)) / count(interval::max_overlap(xs));
            worst = std::max(worst, ratio);
            if (ratio > 3) {
                return {false, "ratio " + to_string(ratio) + " at k=" + std::to_string(k)};
            }
            ++instances;
            if (seed <= 20) {
                graphs.push_back(g);
            }
        }
        reductions::RatioSetup setup;
        setup.forward = [](const ArrivalPrefix& g) {
            ArrivalPrefix order = g;
            order.kind = StructureKind::interval_order;
            return order;
        };
        setup.backward = [](const ArrivalPrefix&, const Output& chains) { return chains; };
        setup.f = interval::chain_colouring_solver(k);
        setup.g = interval::kt_chain_solver(k);
        setup.f_cost = [](const ArrivalPrefix&, const Output& o) { return count(colouring::colour_count(o)); };
        setup.g_cost = setup.f_cost;
        setup.f_offline = [](const ArrivalPrefix& p) { return count(interval::max_clique(p)); };
        setup.g_offline = setup.f_offline;
        setup.d = 1;
        const auto verdict = reductions::check_ratio_preserving(setup, graphs);
        if (!verdict.pass) {
            return {false, "ratio preservation fails at k=" + std::to_string(k) + ": " + verdict.detail};
        }
        heights += verdict.heights_checked;
        quotient = std::max(quotient, verdict.max_quotient);
    }
    return {true, std::to_string(instances) + " instances, worst colours/chi " + to_string(worst) + "; d=1 over " +
                      std::to_string(heights) + " heights, max quotient " + to_string(quotient)};
}

// ---- 5: CBIP on bipartite graphs

Outcome criterion_cbip() {
    std::size_t graphs = 0;
    std::string worst;
    double slack = 1e9;
    for (std::size_t n : {64u, 128u, 256u, 512u}) {
        const double bound = 1 + 2 * std::log2(static_cast<double>(n));
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const double degree = 2.0 + static_cast<double>(seed % 4);
            const auto g = colouring::generate_bipartite(n, degree, seed);
            const auto trace = colouring::cbip_colour(g.to_prefix());
            const auto colours = trace.final_output();
            if (!trace.clean() || !colouring::is_proper(g, colours)) {
                return {false, "invalid colouring at n=" + std::to_string(n) + " seed " + std::to_string(seed)};
            }
            const auto used = colouring::colour_count(colours);
            if (static_cast<double>(used) > bound) {
                return {false, std::to_string(used) + " colours at n=" + std::to_string(n) + " seed " +
                                   std::to_string(seed)};
            }
            if (bound - static_cast<double>(used) < slack) {
                slack = bound - static_cast<double>(used);
                worst = std::to_string(used) + " colours at n=" + std::to_string(n);
            }
            ++graphs;
        }
    }
    return {true, std::to_string(graphs) + " graphs, tightest " + worst};
}

// ---- 6: first fit on d-inductive graphs

Outcome criterion_inductive() {
    double c = 0;
    std::string where;
    for (std::size_t d = 1; d <= 3; ++d) {
        for (std::size_t n : {16u, 64u, 256u, 1024u, 4096u}) {
            for (std::uint64_t seed = 1; seed <= 10; ++seed) {
                const auto inst = colouring::generate_d_inductive(d, n, seed);
                const auto trace = colouring::first_fit_colour(inst.graph.to_prefix());
                const auto used = colouring::colour_count(trace.final_output());
                const double ratio =
                    static_cast<double>(used) / (static_cast<double>(d) * std::log2(static_cast<double>(n)));
                if (ratio > c) {
                    c = ratio;
                    where = "d=" + std::to_string(d) + " n=" + std::to_string(n) + " (" + std::to_string(used) +
                            " colours)";
                }
            }
        }
    }
    char text[64];
    std::snprintf(text, sizeof text, "%.3f", c);
    return {c <= 4, std::string("C = ") + text + " at " + where + " over 150 graphs"};
}

// ---- 7: widened trees

Outcome criterion_widening() {
    for (std::size_t n = 1; n <= 10; ++n) {
        std::size_t sum = 0;
        for (std::size_t j = 1; j <= n; ++j) {
            sum += std::size_t{1} << j;
        }
        if (wkl::widened_height(n) != sum || wkl::WidenedTree(n).height() != sum) {
            return {false, "height mismatch at n=" + std::to_string(n)};
        }
    }
    std::size_t round_trips = 0;
    std::size_t pulled = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const std::size_t height = 1 + seed % 3;
        const auto t = wkl::random_pruned_tree(height, seed % 5, seed);
        const auto w = wkl::widen_separating(t);
        const auto h = w.materialize();
        if (!wkl::check_separating(h).separating) {
            return {false, "widened tree of seed " + std::to_string(seed) + " is not separating"};
        }
        for (const auto& path : t.paths()) {
            ++round_trips;
            if (wkl::pullback_path(w, wkl::lift_path(w, path)) != path) {
                return {false, "round trip lost " + path + " at seed " + std::to_string(seed)};
            }
        }
        for (const auto& h_path : h.paths()) {
            ++pulled;
            if (!t.live(wkl::pullback_path(w, h_path))) {
                return {false, "H-path pulls back outside T at seed " + std::to_string(seed)};
            }
        }
    }
    return {true, "heights n=1..10 exact; 100 trees separating; " + std::to_string(round_trips) +
                      " round trips, " + std::to_string(pulled) + " H-paths pulled back"};
}

// ---- 8: strict replay of lookahead solvers

ArrivalPrefix random_graph(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::string> rows;
    for (std::size_t v = 0; v < n; ++v) {
        std::string row(v, '0');
        for (auto& c : row) {
            c = uniform_below(rng, 4) == 0 ? '1' : '0';
        }
        rows.push_back(row);
    }
    return ArrivalPrefix::from_rows(StructureKind::graph, rows);
}

Outcome criterion_robustness() {
    const std::vector<LookaheadSpec> specs{
        LookaheadSpec::timestamp([](std::size_t n) { return n; }, "n"),
        LookaheadSpec::timestamp([](std::size_t n) { return n + 2; }, "n+2"),
        LookaheadSpec::timestamp([](std::size_t n) { return 2 * n; }, "2n"),
    };
    std::size_t compared = 0;
    for (const auto& spec : specs) {
        const auto solver = colouring::lookahead_first_fit_solver(spec);
        const auto widening = widen_to_strict(solver, colouring::colouring_problem());
        for (std::uint64_t seed = 1; seed <= 200; ++seed) {
            const auto p = random_graph(4 + seed % 37, seed);
            const auto original = run_online(colouring::colouring_problem(), solver, p);
            const auto wide = run_widened(widening, widening.problem.widen(p));
            if (!wide.clean() || wide.produced() != original.produced()) {
                return {false, "g=" + spec.description() + " seed " + std::to_string(seed) + ": widened run differs"};
            }
            for (std::size_t n = 1; n <= wide.produced(); ++n) {
                if (wide.output(n) != original.output(n)) {
                    return {false, "g=" + spec.description() + " seed " + std::to_string(seed) + " height " +
                                       std::to_string(n)};
                }
                ++compared;
            }
        }
    }
    return {true, "600 prefixes, " + std::to_string(compared) + " heights identical"};
}

// ---- 9: incremental and strong Weihrauch reductions

reductions::SWReduction complement_concatenation() {
    auto red = reductions::row_concatenation();
    red.name = "complement";
    red.forward = [](const ArrivalPrefix& g) {
        std::string bits = reductions::flatten(g);
        for (auto& c : bits) {
            c = c == '1' ? '0' : '1';
        }
        return ArrivalPrefix::from_bits(bits);
    };
    return red;
}

bool sw_holds(const reductions::SWReduction& red, const reductions::DecisionProblem& p,
              const reductions::DecisionProblem& q, const std::vector<ArrivalPrefix>& instances) {
    for (const auto& sigma : instances) {
        if (!reductions::apply_sw(red, p, q, sigma, reductions::predicate_solver(q)).pass()) {
            return false;
        }
    }
    return true;
}

Outcome criterion_incremental() {
    const auto instances = reductions::enumerate_graph_prefixes(4);
    const auto edge = reductions::has_edge_problem();
    const auto one = reductions::has_one_problem();
    struct Case {
        reductions::SWReduction red;
        reductions::DecisionProblem p;
        reductions::DecisionProblem q;
    };
    const std::vector<Case> sw_cases{{reductions::identity_reduction(StructureKind::graph), edge, edge},
                                     {reductions::row_concatenation(), edge, one},
                                     {complement_concatenation(), edge, one}};
    std::size_t holds = 0;
    for (const auto& c : sw_cases) {
        const bool direct = sw_holds(c.red, c.p, c.q, instances);
        const auto incr = reductions::convert_reduction(c.red);
        const bool converted = reductions::check_incremental(incr, c.p, c.q, instances).pass;
        const bool back = sw_holds(reductions::convert_reduction(incr), c.p, c.q, instances);
        if (direct != converted || direct != back) {
            return {false, c.red.name + ": verdicts " + std::to_string(direct) + "/" + std::to_string(converted) +
                               "/" + std::to_string(back)};
        }
        holds += direct;
    }
    // incremental reductions with faithful delta maps, including one whose T is wrong
    const std::vector<Case> incr_cases{{reductions::identity_reduction(StructureKind::graph), edge, edge},
                                       {reductions::row_concatenation(), edge, one},
                                       {complement_concatenation(), edge, one}};
    for (const auto& c : incr_cases) {
        const auto incr = reductions::convert_reduction(c.red);
        const bool direct = reductions::check_incremental(incr, c.p, c.q, instances).pass;
        const auto sw = reductions::convert_reduction(incr);
        const bool via = sw_holds(sw, c.p, c.q, instances);
        const bool back = reductions::check_incremental(reductions::convert_reduction(sw), c.p, c.q, instances).pass;
        if (direct != via || direct != back) {
            return {false, incr.name + ": incremental verdicts " + std::to_string(direct) + "/" +
                               std::to_string(via) + "/" + std::to_string(back)};
        }
    }
    return {true, std::to_string(instances.size()) + " prefixes; " + std::to_string(holds) + " of " +
                      std::to_string(sw_cases.size()) + " reductions hold, verdicts kept both ways"};
}

// ---- 10: piecewise-linear approximation

Outcome criterion_approximation() {
    const std::vector<analysis::IntervalFunctional> fs{analysis::identity_functional(),
                                                       analysis::square_functional(),
                                                       analysis::distance_functional(Rational(1, 2))};
    double worst_share = 0;
    std::string worst;
    for (const auto& f : fs) {
        for (std::size_t n = 2; n <= 8; ++n) {
            const auto h = analysis::approximate(f, n);
            const auto cert = analysis::certify_error(f, h, 4096);
            if (!cert.pass || cert.measured > pow2(-static_cast<long>(n) + 2) || cert.samples < 4096) {
                return {false, f.name + " n=" + std::to_string(n) + " error " + to_string(cert.measured)};
            }
            const double share = cert.measured.get_d() / h.budget.get_d();
            if (share >= worst_share) {
                worst_share = share;
                worst = f.name + " n=" + std::to_string(n);
            }
        }
    }
    char text[32];
    std::snprintf(text, sizeof text, "%.3f", worst_share);
    return {true, "21 approximants, largest error/budget " + std::string(text) + " (" + worst + ")"};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
        double limit; ///< seconds, 0 for none
    };
    const Criterion criteria[] = {
        {"first fit within twice the optimum", criterion_packing, 300},
        {"adversary forces t colours on a small forest", criterion_bean, 60},
        {"chain covers within 3k-2", criterion_chains, 300},
        {"chain colouring ratio and d=1 preservation", criterion_reduction, 0},
        {"CBIP within 1+2log n", criterion_cbip, 0},
        {"first fit on d-inductive graphs, C <= 4", criterion_inductive, 0},
        {"widened heights, separation and round trips", criterion_widening, 0},
        {"strict replay of lookahead solvers", criterion_robustness, 0},
        {"incremental and sW verdicts agree", criterion_incremental, 0},
        {"approximation error within 2^(-n+2)", criterion_approximation, 60},
    };
    int failed = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        const auto start = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double elapsed = seconds_since(start);
        if (c.limit > 0) {
            o = within(o, elapsed, c.limit);
        }
        failed += !o.pass;
        std::printf("criterion %2d %s  %s: %s [%.1f s]\n", index, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                    elapsed);
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
