#pragma once

#include "online/report.hpp"
#include "online/run.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace online::colouring {

/// A finite graph stored as lower-triangular adjacency rows in arrival order:
/// row v (1-based) has v-1 entries, entry u-1 is '1' iff u and v are adjacent.
class GraphInstance {
public:
    GraphInstance() = default;
    explicit GraphInstance(std::vector<std::string> rows);

    static GraphInstance from_prefix(const ArrivalPrefix& prefix);
    static GraphInstance from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

    std::size_t size() const noexcept { return rows_.size(); }
    bool adjacent(std::size_t a, std::size_t b) const;
    std::vector<std::size_t> neighbours(std::size_t v) const;
    std::size_t edge_count() const;
    const std::vector<std::string>& rows() const noexcept { return rows_; }

    /// Appends vertex size()+1 with the given row.
    void add_vertex(std::string row);
    ArrivalPrefix to_prefix() const;

private:
    std::vector<std::string> rows_;
};

/// colour of vertex v at index v-1; colours are positive integers.
using Colouring = std::vector<std::int64_t>;

std::size_t colour_count(std::span<const std::int64_t> colouring);
bool is_proper(const GraphInstance& graph, std::span<const std::int64_t> colouring);
bool is_forest(const GraphInstance& graph);

/// Colouring as an online problem: output at height n assigns a positive
/// colour to each of the first n vertices, properly.
OnlineProblem colouring_problem();

/// Least positive colour not used by an already-coloured neighbour.
OnlineSolver first_fit_solver();

/// Bipartite online colouring: the arriving vertex takes the least colour not
/// present on the opposite side of its component's bipartition. Raises
/// PromiseViolation when an odd cycle closes.
OnlineSolver cbip_solver();

/// Picks uniformly among the consistent choices (a used colour absent from
/// the neighbourhood, or one fresh colour). Deterministic for a given seed.
OnlineSolver arbitrary_consistent_solver(std::uint64_t seed);

/// First fit that reads ahead to horizon(n): a vertex with a neighbour among
/// the visible future vertices skips colour 1.
OnlineSolver lookahead_first_fit_solver(LookaheadSpec lookahead);

SolutionTrace first_fit_colour(const ArrivalPrefix& prefix);
/// Throws PromiseViolation naming the closing edge on a non-bipartite prefix.
SolutionTrace cbip_colour(const ArrivalPrefix& prefix);

inline constexpr std::size_t kDefaultChromaticCap = 16;

/// Exact chromatic number by branch and bound. Forests short-circuit
/// (2 with an edge, 1 without). Throws OracleCapExceeded above `cap`.
std::size_t chromatic_exact(const GraphInstance& graph, std::size_t cap = kDefaultChromaticCap);

struct BeanResult {
    GraphInstance forest;
    Colouring colouring;
    std::size_t forced = 0; ///< distinct colours the solver used
    /// Set when the solver broke O1/O2 mid-game; the lower-bound claim is then void.
    std::optional<Violation> violation;
};

/// Adaptive adversary forcing a strict colouring solver to use at least t
/// colours on a forest with at most 2^(t-1) vertices.
BeanResult bean_adversary(std::size_t t, const OnlineSolver& solver);

struct InductiveInstance {
    GraphInstance graph;                    ///< rows in arrival order
    std::vector<std::size_t> construction;  ///< construction index of each arrival
};

/// Vertex i of the construction gets min(d, i-1) random back-edges; vertices
/// then arrive in reverse construction order, so each arrival has at most d
/// neighbours arriving later.
InductiveInstance generate_d_inductive(std::size_t d, std::size_t n, std::uint64_t seed);

/// Random bipartite graph: random sides, cross edges with probability
/// average_degree / n, random arrival order.
GraphInstance generate_bipartite(std::size_t n, double average_degree, std::uint64_t seed);

/// Degeneracy by repeated minimum-degree removal.
std::size_t degeneracy(const GraphInstance& graph);

struct CompetitiveReport {
    std::size_t online_cost = 0;
    std::size_t offline_cost = 0;
    Rational ratio;
};

/// Exact ratio online/offline. Throws InvalidArgument for a zero cost.
CompetitiveReport performance_report(std::size_t online_cost, std::size_t offline_cost);

ReportRow to_report_row(const CompetitiveReport& report, std::string kind, std::size_t n, std::string d_or_k,
                        std::uint64_t seed);

} // namespace online::colouring
