#include "online/widen.hpp"

#include <algorithm>
#include <limits>

namespace online {

HeightReindex::HeightReindex(LookaheadSpec lookahead) : lookahead_(std::move(lookahead)) {}

std::size_t HeightReindex::covered(std::size_t widened_height) const {
    // g is checked monotone, so the closure max(g(1..n)) is g(n) itself.
    return widened_height == 0 ? 0 : lookahead_.horizon(widened_height);
}

std::size_t HeightReindex::widened_height_for(std::size_t original_height) const {
    if (original_height == 0) {
        return 0;
    }
    // G(n) >= n, so the answer lies in [1, original_height].
    std::size_t lo = 1;
    std::size_t hi = original_height;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (covered(mid) >= original_height) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

std::size_t WidenedPrefix::original_height() const {
    std::size_t total = 0;
    for (const auto& block : blocks) {
        total += block.size();
    }
    return total;
}

WidenedProblem::WidenedProblem(OnlineProblem original, LookaheadSpec lookahead)
    : original_(std::move(original)), reindex_(std::move(lookahead)) {}

WidenedPrefix WidenedProblem::widen(const ArrivalPrefix& prefix) const {
    WidenedPrefix out{prefix.kind, prefix.capacity, {}};
    for (std::size_t n = 1;; ++n) {
        const std::size_t begin = reindex_.covered(n - 1);
        const std::size_t end = reindex_.covered(n);
        if (end > prefix.height()) {
            break;
        }
        out.blocks.emplace_back(prefix.events.begin() + static_cast<std::ptrdiff_t>(begin),
                                prefix.events.begin() + static_cast<std::ptrdiff_t>(end));
    }
    return out;
}

ArrivalPrefix WidenedProblem::flatten(const WidenedPrefix& prefix) const {
    ArrivalPrefix out{prefix.kind, {}, prefix.capacity};
    for (const auto& block : prefix.blocks) {
        out.events.insert(out.events.end(), block.begin(), block.end());
    }
    return out;
}

std::optional<std::uint64_t> WidenedProblem::branching_bound(std::size_t n) const {
    std::uint64_t product = 1;
    for (std::size_t h = reindex_.covered(n - 1) + 1; h <= reindex_.covered(n); ++h) {
        auto bound = original_.branching_bound(h);
        if (!bound) {
            return std::nullopt;
        }
        if (*bound != 0 && product > std::numeric_limits<std::uint64_t>::max() / *bound) {
            product = std::numeric_limits<std::uint64_t>::max();
        } else {
            product *= *bound;
        }
    }
    return product;
}

bool WidenedProblem::admissible(const WidenedPrefix& prefix, std::size_t n, const Output& out) const {
    return original_.admissible(flatten(prefix), n, out);
}

namespace {

/// Replays the original solver from the blocks it is allowed to see.
class WidenedSession final : public BasicSession<EventBlock> {
public:
    WidenedSession(const OnlineSolver& original, HeightReindex reindex)
        : session_(original.start()), reindex_(std::move(reindex)) {}

    Output step(std::size_t n, const BlockReader& reader) override {
        // Strict: only block n is new. Earlier blocks were appended on earlier steps.
        const EventBlock& block = reader.at(n);
        events_.insert(events_.end(), block.begin(), block.end());
        if (events_.size() != reindex_.covered(n)) {
            throw InvariantViolation("widened block " + std::to_string(n) + " does not end at G(n)");
        }
        PrefixReader original_reader(events_, reindex_.covered(n));
        return session_->step(n, original_reader);
    }

private:
    std::unique_ptr<SolverSession> session_;
    HeightReindex reindex_;
    std::vector<ArrivalEvent> events_;
};

} // namespace

Widening widen_to_strict(const OnlineSolver& solver, const OnlineProblem& problem) {
    const LookaheadSpec& lookahead = solver.lookahead;
    // Re-validate the declared timestamp: specs built by hand may bypass the factory checks.
    std::size_t last = 0;
    for (std::size_t n = 1; n <= LookaheadSpec::kCheckedRange; ++n) {
        std::size_t g = lookahead.horizon(n);
        if (g < last) {
            throw InvalidArgument("timestamp is not monotone at n=" + std::to_string(n));
        }
        last = g;
    }
    for (std::size_t n = 1; n <= 64; ++n) {
        if (problem.branching_bound && !problem.branching_bound(n)) {
            throw InvalidArgument("problem " + problem.name + " is not finitely branching at height " +
                                  std::to_string(n));
        }
    }

    HeightReindex reindex(lookahead);
    WidenedSolver strict;
    strict.name = solver.name + "/widened";
    strict.lookahead = LookaheadSpec::strict();
    strict.start = [solver, reindex]() -> std::unique_ptr<BasicSession<EventBlock>> {
        return std::make_unique<WidenedSession>(solver, reindex);
    };
    return Widening{std::move(strict), WidenedProblem(problem, lookahead)};
}

SolutionTrace run_widened(const Widening& widening, const WidenedPrefix& prefix) {
    const ArrivalPrefix flat = widening.problem.flatten(prefix);
    const OnlineProblem& original = widening.problem.original();
    return drive_solver<EventBlock>(widening.solver, prefix.blocks,
                                    [&](std::size_t n, const Output& out, bool extends_admissible) {
                                        if (extends_admissible && original.extension_admissible) {
                                            return original.extension_admissible(flat, n, out);
                                        }
                                        return original.admissible(flat, n, out);
                                    });
}

} // namespace online
