#pragma once

#include "online/run.hpp"

#include <cstddef>
#include <vector>

namespace online {

/// The events of one widened height: original events (G(n-1), G(n)].
using EventBlock = std::vector<ArrivalEvent>;
using BlockReader = MeteredReader<EventBlock>;
using WidenedSolver = BasicSolver<EventBlock>;

/// Re-indexing between original heights and widened heights, where
/// G(0) = 0 and G(n) = max(g(1..n)) is the monotone closure of g.
class HeightReindex {
public:
    explicit HeightReindex(LookaheadSpec lookahead);

    /// G(n): original events covered by the first n widened events.
    std::size_t covered(std::size_t widened_height) const;
    /// Least n with G(n) >= original_height.
    std::size_t widened_height_for(std::size_t original_height) const;

private:
    LookaheadSpec lookahead_;
};

struct WidenedPrefix {
    StructureKind kind = StructureKind::graph;
    std::optional<Rational> capacity;
    std::vector<EventBlock> blocks;

    std::size_t height() const noexcept { return blocks.size(); }
    /// Number of original events carried by the blocks.
    std::size_t original_height() const;
};

/// The problem I' whose height-n events are blocks of original events up to
/// height G(n). Admissibility at I'-height n is the original admissibility at
/// original height n.
class WidenedProblem {
public:
    WidenedProblem(OnlineProblem original, LookaheadSpec lookahead);

    const OnlineProblem& original() const noexcept { return original_; }
    const HeightReindex& reindex() const noexcept { return reindex_; }

    /// Groups `prefix` into complete blocks; trailing events that do not fill
    /// a block are dropped.
    WidenedPrefix widen(const ArrivalPrefix& prefix) const;
    ArrivalPrefix flatten(const WidenedPrefix& prefix) const;

    /// Product of the original branching bounds over the block's heights.
    std::optional<std::uint64_t> branching_bound(std::size_t n) const;

    bool admissible(const WidenedPrefix& prefix, std::size_t n, const Output& out) const;

private:
    OnlineProblem original_;
    HeightReindex reindex_;
};

struct Widening {
    WidenedSolver solver; ///< strict
    WidenedProblem problem;
};

/// Turns a solver with timestamp g into a strict solver on the widened
/// problem. The strict output at widened height n equals the original output
/// at original height n. Throws InvalidArgument if g is not monotone or the
/// problem is not finitely branching at some height in the checked range.
Widening widen_to_strict(const OnlineSolver& solver, const OnlineProblem& problem);

/// Strict run on a widened prefix with O1/O2 verdicts against the widened problem.
SolutionTrace run_widened(const Widening& widening, const WidenedPrefix& prefix);

} // namespace online
