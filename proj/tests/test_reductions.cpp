#include "online/colouring.hpp"
#include "online/interval.hpp"
#include "online/reductions.hpp"

#include <gtest/gtest.h>

using namespace online;
using namespace online::reductions;

namespace {

ArrivalPrefix graph(const std::vector<std::string>& rows) { return ArrivalPrefix::from_rows(StructureKind::graph, rows); }

// Phi writes the rows out with every bit flipped
SWReduction complement_concatenation() {
    SWReduction red = row_concatenation();
    red.name = "complement";
    red.forward = [](const ArrivalPrefix& g) {
        std::string bits = flatten(g);
        for (auto& c : bits) {
            c = c == '1' ? '0' : '1';
        }
        return ArrivalPrefix::from_bits(bits);
    };
    return red;
}

bool sw_passes_everywhere(const SWReduction& red, const DecisionProblem& p, const DecisionProblem& q,
                          const std::vector<ArrivalPrefix>& instances) {
    for (const auto& sigma : instances) {
        if (!apply_sw(red, p, q, sigma, predicate_solver(q)).pass()) {
            return false;
        }
    }
    return true;
}

RatioSetup chain_setup(std::size_t k) {
    RatioSetup setup;
    setup.forward = [](const ArrivalPrefix& g) {
        ArrivalPrefix order = g;
        order.kind = StructureKind::interval_order;
        return order;
    };
    setup.backward = [](const ArrivalPrefix&, const Output& chains) { return chains; };
    setup.f = interval::chain_colouring_solver(k);
    setup.g = interval::kt_chain_solver(k);
    auto distinct = [](const ArrivalPrefix&, const Output& o) {
        return Rational(static_cast<long>(colouring::colour_count(o)));
    };
    setup.f_cost = distinct;
    setup.g_cost = distinct;
    setup.f_offline = [](const ArrivalPrefix& p) { return Rational(static_cast<long>(interval::max_clique(p))); };
    setup.g_offline = setup.f_offline;
    return setup;
}

std::vector<ArrivalPrefix> interval_graphs(std::size_t count, std::size_t n, std::size_t k) {
    std::vector<ArrivalPrefix> graphs;
    for (std::uint64_t seed = 1; seed <= count; ++seed) {
        auto g = interval::order_arrival(interval::generate_intervals(n, k, seed));
        g.kind = StructureKind::graph;
        graphs.push_back(g);
    }
    return graphs;
}

} // namespace

TEST(Flatten, ChangesKeepShape) {
    auto g = graph({"", "1", "01"});
    EXPECT_EQ(flatten(g), "101");
    IncrementalChange change{{{2, '1'}}};
    auto h = apply_change(g, change);
    EXPECT_EQ(h.events[2].row, "11");
    EXPECT_EQ(diff(g, h), change);
    EXPECT_TRUE(diff(g, g).identity());
    EXPECT_THROW(diff(g, graph({"", "1"})), InvalidArgument);
}

TEST(Enumeration, CountsByHeight) {
    // 1 + 2 + 8 + 64 prefixes with up to four vertices
    EXPECT_EQ(enumerate_graph_prefixes(4).size(), 75u);
    EXPECT_EQ(enumerate_graph_prefixes(1).size(), 1u);
}

TEST(StrongWeihrauch, IdentityPasses) {
    auto p = has_edge_problem();
    auto red = identity_reduction(StructureKind::graph);
    EXPECT_TRUE(sw_passes_everywhere(red, p, p, enumerate_graph_prefixes(4)));
}

TEST(StrongWeihrauch, HasEdgeReducesToHasOne) {
    auto red = row_concatenation();
    for (const auto& sigma : enumerate_graph_prefixes(4)) {
        auto r = apply_sw(red, has_edge_problem(), has_one_problem(), sigma, predicate_solver(has_one_problem()));
        ASSERT_TRUE(r.pass()) << r.detail;
        EXPECT_EQ(r.answers.size(), sigma.height());
    }
}

TEST(StrongWeihrauch, ComplementFails) {
    auto r = apply_sw(complement_concatenation(), has_edge_problem(), has_one_problem(), graph({"", "0"}),
                      predicate_solver(has_one_problem()));
    EXPECT_EQ(r.failure, SWFailure::backward_inadmissible);
    EXPECT_EQ(r.height, 2u);
}

TEST(StrongWeihrauch, NonMonotoneForwardRejected) {
    auto red = row_concatenation();
    red.forward = [](const ArrivalPrefix& g) {
        std::string bits = flatten(g);
        std::reverse(bits.begin(), bits.end());
        return ArrivalPrefix::from_bits(bits);
    };
    auto r = apply_sw(red, has_edge_problem(), has_one_problem(), graph({"", "1", "00"}),
                      predicate_solver(has_one_problem()));
    EXPECT_EQ(r.failure, SWFailure::forward_invalid);
}

TEST(StrongWeihrauch, SolverFailureReported) {
    auto broken = make_solver("throws", LookaheadSpec::strict(), [] {
        return [](std::size_t, const PrefixReader&) -> Output { throw InvariantViolation("broken"); };
    });
    auto r = apply_sw(row_concatenation(), has_edge_problem(), has_one_problem(), graph({"", "1"}), broken);
    EXPECT_EQ(r.failure, SWFailure::solver_failed);
    EXPECT_EQ(to_string(SWFailure::solver_failed), "solver-failed");
}

TEST(Incremental, IdentityDeltaIsDelta) {
    auto red = identity_incremental(StructureKind::graph);
    auto sigma = graph({"", "0", "10"});
    IncrementalChange delta{{{1, '1'}, {3, '1'}}};
    EXPECT_EQ(red.delta_map(sigma, delta), delta);
    EXPECT_TRUE(check_incremental(red, has_edge_problem(), has_edge_problem(), enumerate_graph_prefixes(4)).pass);
}

TEST(Incremental, ConvertedDeltaIsConsistent) {
    auto red = convert_reduction(row_concatenation());
    for (const auto& sigma : enumerate_graph_prefixes(3)) {
        const auto bits = flatten(sigma);
        for (std::size_t pos = 1; pos <= bits.size(); ++pos) {
            IncrementalChange delta{{{pos, bits[pos - 1] == '1' ? '0' : '1'}}};
            auto moved = apply_change(sigma, delta);
            EXPECT_EQ(apply_change(red.transform(sigma), red.delta_map(sigma, delta)), red.transform(moved));
        }
    }
}

TEST(Incremental, NonIdentityBackwardRejected) {
    auto red = row_concatenation();
    red.backward_is_identity = false;
    red.backward = [](const ArrivalPrefix&, bool q) { return !q; };
    EXPECT_THROW(convert_reduction(red), InvalidArgument);
}

TEST(Incremental, BrokenDeltaMapCaught) {
    auto red = identity_incremental(StructureKind::graph);
    red.delta_map = [](const ArrivalPrefix&, const IncrementalChange&) { return IncrementalChange{}; };
    auto verdict = check_incremental(red, has_edge_problem(), has_edge_problem(), enumerate_graph_prefixes(3));
    EXPECT_FALSE(verdict.pass);
    EXPECT_TRUE(verdict.delta);
}

TEST(RoundTrip, VerdictsPreserved) {
    const auto instances = enumerate_graph_prefixes(4);
    auto p = has_edge_problem();
    auto q = has_one_problem();
    for (const auto& sw : {row_concatenation(), complement_concatenation()}) {
        const bool direct = sw_passes_everywhere(sw, p, q, instances);
        auto incr = convert_reduction(sw);
        EXPECT_EQ(check_incremental(incr, p, q, instances).pass, direct) << sw.name;
        EXPECT_EQ(sw_passes_everywhere(convert_reduction(incr), p, q, instances), direct) << sw.name;
    }
    EXPECT_TRUE(sw_passes_everywhere(row_concatenation(), p, q, instances));
    EXPECT_FALSE(sw_passes_everywhere(complement_concatenation(), p, q, instances));
}

TEST(Ratio, ChainColouringWithConstantOne) {
    for (std::size_t k = 1; k <= 3; ++k) {
        auto verdict = check_ratio_preserving(chain_setup(k), interval_graphs(10, 30, k));
        EXPECT_TRUE(verdict.pass) << verdict.detail;
        EXPECT_EQ(verdict.heights_checked, 300u);
        EXPECT_LE(verdict.max_quotient, 1);
    }
}

TEST(Ratio, InflatingTranslationFails) {
    auto setup = chain_setup(3);
    // A ignores g and gives every element its own colour; f does the same
    setup.backward = [](const ArrivalPrefix& sigma, const Output&) {
        Output fresh(sigma.height());
        for (std::size_t i = 0; i < fresh.size(); ++i) {
            fresh[i] = static_cast<std::int64_t>(i + 1);
        }
        return fresh;
    };
    setup.f = make_solver("fresh", LookaheadSpec::strict(), [] {
        return [](std::size_t n, const PrefixReader& reader) {
            reader.at(n);
            Output fresh(n);
            for (std::size_t i = 0; i < n; ++i) {
                fresh[i] = static_cast<std::int64_t>(i + 1);
            }
            return fresh;
        };
    });
    auto verdict = check_ratio_preserving(setup, interval_graphs(3, 30, 3));
    EXPECT_FALSE(verdict.pass);
    EXPECT_TRUE(verdict.witness);
    EXPECT_GT(verdict.max_quotient, 1);
}

TEST(Ratio, MismatchedTranslationFails) {
    auto setup = chain_setup(2);
    setup.backward = [](const ArrivalPrefix&, const Output& chains) {
        Output shifted = chains;
        shifted.back() += 10;
        return shifted;
    };
    EXPECT_FALSE(check_ratio_preserving(setup, interval_graphs(2, 10, 2)).pass);
}

TEST(Limiting, ConstantAlgorithmNeverChanges) {
    auto trace = tabulate_limiting([](std::size_t s) { return Output(s, 7); }, 10);
    EXPECT_EQ(trace.horizon(), 10u);
    for (std::size_t n = 1; n <= 10; ++n) {
        EXPECT_EQ(trace.last_change(n), n);
        EXPECT_EQ(trace.change_count(n), 0u);
        EXPECT_FALSE(trace.changing_at_horizon(n));
        EXPECT_EQ(trace.value(n, 10), 7);
    }
}

TEST(Limiting, LateSettling) {
    // f(n, s) flips to 1 once s >= 2n
    auto trace = tabulate_limiting(
        [](std::size_t s) {
            Output row(s);
            for (std::size_t n = 1; n <= s; ++n) {
                row[n - 1] = s >= 2 * n ? 1 : 0;
            }
            return row;
        },
        8);
    EXPECT_EQ(trace.last_change(1), 2u);
    EXPECT_EQ(trace.last_change(4), 8u);
    EXPECT_EQ(trace.last_change(5), 5u);
    EXPECT_EQ(trace.change_count(3), 1u);
    EXPECT_TRUE(trace.changing_at_horizon(4));
    EXPECT_EQ(trace.value(3, 5), 0);
    EXPECT_EQ(trace.value(3, 6), 1);
}

TEST(Limiting, RunSeesOnlyThePrefix) {
    auto p = ArrivalPrefix::from_bits("0010110");
    // f(n, s): any one among the first s bits at or after position n
    auto trace = limiting_run(
        [](const ArrivalPrefix& sigma) {
            const auto bits = flatten(sigma);
            Output row(bits.size());
            for (std::size_t n = 1; n <= bits.size(); ++n) {
                row[n - 1] = bits.find('1', n - 1) != std::string::npos;
            }
            return row;
        },
        p, 7);
    EXPECT_EQ(trace.value(1, 2), 0);
    EXPECT_EQ(trace.value(1, 3), 1);
    EXPECT_EQ(trace.last_change(1), 3u);
    EXPECT_EQ(trace.last_change(4), 5u);
    EXPECT_EQ(trace.value(7, 7), 0);
}

TEST(Limiting, Dominance) {
    auto eager = tabulate_limiting([](std::size_t s) { return Output(s, 1); }, 6);
    auto lazy = tabulate_limiting(
        [](std::size_t s) {
            Output row(s, 0);
            for (std::size_t n = 1; n <= s; ++n) {
                row[n - 1] = s >= n + 1;
            }
            return row;
        },
        6);
    EXPECT_TRUE(check_settling_dominance(eager, lazy).holds);
    auto reverse = check_settling_dominance(lazy, eager);
    EXPECT_FALSE(reverse.holds);
    EXPECT_EQ(reverse.offending_n, 1u);
    EXPECT_THROW(check_settling_dominance(eager, tabulate_limiting([](std::size_t s) { return Output(s, 1); }, 5)),
                 InvalidArgument);
}
