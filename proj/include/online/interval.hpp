#pragma once

#include "online/colouring.hpp"
#include "online/rational.hpp"
#include "online/run.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

namespace online::interval {

/// Closed interval [left, right].
struct Interval {
    Rational left;
    Rational right;

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Intervals in arrival order.
using IntervalInstance = std::vector<Interval>;

bool intersects(const Interval& a, const Interval& b);
/// a < b in the interval order: a ends strictly before b starts.
bool precedes(const Interval& a, const Interval& b);

/// Throws InvalidArgument if some interval has left > right.
void validate(const IntervalInstance& intervals);

/// Incomparability rows of the interval order (equivalently the adjacency
/// rows of the intersection graph), as an interval-order prefix.
ArrivalPrefix order_arrival(const IntervalInstance& intervals);

/// Maximum number of intervals sharing a point, by sweep line.
std::size_t max_overlap(const IntervalInstance& intervals);

/// Size of the largest clique in the graph given by bit rows, by branch and bound.
std::size_t max_clique(const ArrivalPrefix& rows);

inline constexpr std::size_t kDefaultWidthCap = 64;

/// Width (largest antichain) of the order given by incomparability rows.
/// Throws OracleCapExceeded above `cap`.
std::size_t width_exact(const ArrivalPrefix& rows, std::size_t cap = kDefaultWidthCap);
/// Same, cross-checked against the sweep line of the attached intervals;
/// a disagreement raises InvariantViolation.
std::size_t width_exact(const ArrivalPrefix& rows, const IntervalInstance& attached,
                        std::size_t cap = kDefaultWidthCap);

/// A strict partial order on elements 1..n given explicitly.
class StrictOrder {
public:
    explicit StrictOrder(std::size_t n);
    static StrictOrder of(const IntervalInstance& intervals);
    /// Transitive closure of the given pairs (a < b); throws on a cycle.
    static StrictOrder from_relations(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& less);

    std::size_t size() const noexcept { return n_; }
    bool less(std::size_t a, std::size_t b) const { return less_[(a - 1) * n_ + (b - 1)] != 0; }
    bool comparable(std::size_t a, std::size_t b) const { return less(a, b) || less(b, a); }

private:
    std::size_t n_;
    std::vector<char> less_;
};

struct TwoPlusTwoVerdict {
    bool free = true;
    /// (a, b, c, d) with a < b, c < d and every cross pair incomparable.
    std::optional<std::array<std::size_t, 4>> witness;
};

TwoPlusTwoVerdict check_two_plus_two_free(const StrictOrder& order);

struct ChainAssignment {
    std::size_t level = 0;
    std::size_t chain = 0;
};

struct ChainCover {
    std::vector<ChainAssignment> elements; ///< index e-1 for element e

    /// Distinct chains in use.
    std::size_t chain_count() const;
    /// Members of every chain index that is in use, indexed by chain.
    std::vector<std::vector<std::size_t>> chains() const;
};

/// Chains reserved for widths up to k: one for level 1, three per level above.
constexpr std::size_t chain_budget(std::size_t k) { return k == 0 ? 0 : 3 * k - 2; }

/// Online Kierstead-Trotter chain cover driven only by incomparability rows.
///
/// Levels nest: B_k holds every element that keeps the width of B_k at most
/// k, B_{k-1} is built the same way inside B_k, down to B_1. An element's
/// level is the least j with the element in B_j. Level 1 is one chain; every
/// higher level owns three chains filled greedily by least index, which works
/// because no element is incomparable to more than two others on its level.
class KiersteadTrotterCover {
public:
    explicit KiersteadTrotterCover(std::size_t width_bound);

    /// Places element size()+1. Throws PromiseViolation if the prefix width
    /// exceeds the bound, InvariantViolation if a level loses its degree <= 2
    /// property or the greedy chain choice fails.
    ChainAssignment add(std::string_view row);

    std::size_t size() const noexcept { return cover_.elements.size(); }
    std::size_t width_bound() const noexcept { return k_; }
    const ChainCover& cover() const noexcept { return cover_; }

private:
    bool closes_antichain(const std::vector<std::size_t>& candidates, std::size_t size) const;

    std::size_t k_;
    std::vector<std::string> rows_;
    std::vector<std::vector<std::size_t>> incomparable_;
    std::vector<std::size_t> same_level_degree_;
    ChainCover cover_;
};

ChainCover kt_chain_cover(const ArrivalPrefix& rows, std::size_t k);

/// Chain covering as an online problem: output at height n assigns a chain
/// index to each element, and elements sharing a chain are comparable.
OnlineProblem chain_cover_problem();

/// Strict solver emitting Kierstead-Trotter chain indices.
OnlineSolver kt_chain_solver(std::size_t k);

/// Colours an interval graph by chain index, reading adjacency rows as
/// incomparability rows.
colouring::Colouring colour_via_chains(const ArrivalPrefix& graph, std::size_t k);
OnlineSolver chain_colouring_solver(std::size_t k);

/// n intervals with integer endpoints in [0, 4n] whose width is exactly k.
IntervalInstance generate_intervals(std::size_t n, std::size_t k, std::uint64_t seed);

/// {"i": int, "l": "p/q", "r": "p/q"} per interval.
void write_intervals_jsonl(std::ostream& out, const IntervalInstance& intervals);
IntervalInstance read_intervals_jsonl(std::istream& in);

/// element,level,chain
void write_chain_cover_csv(std::ostream& out, const ChainCover& cover);

} // namespace online::interval
