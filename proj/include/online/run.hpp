#pragma once

#include "online/solver.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace online {

enum class ViolationKind {
    admissibility, ///< O1: output not in s(sigma)
    monotonicity,  ///< O2: output at n does not extend output at n-1
    lookahead,     ///< read beyond the declared timestamp
    solver_error,  ///< solver raised (e.g. a promise violation)
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::size_t height;
    std::string detail;
};

/// Per-height outputs of a run with O1/O2 verdicts.
///
/// Outputs that extend one another share storage, so a monotone run of
/// height n costs O(n) memory rather than O(n^2).
class SolutionTrace {
public:
    std::string solver;
    std::vector<bool> admissible;
    std::vector<std::size_t> read_high_water;
    bool monotone = true;
    std::vector<Violation> violations;

    explicit SolutionTrace(std::size_t height = 0);

    std::size_t height() const noexcept { return refs_.size(); }
    bool pending(std::size_t n) const { return !refs_.at(n - 1).has_value(); }
    /// Heights with a produced (non-pending) output.
    std::size_t produced() const;

    /// f(sigma restricted to n), or nullopt while pending.
    std::optional<Output> output(std::size_t n) const;
    /// Non-owning view of a produced output. Throws if pending.
    std::span<const std::int64_t> output_view(std::size_t n) const;
    /// Latest produced output, empty if none.
    Output final_output() const;

    bool clean() const noexcept { return violations.empty(); }
    std::optional<Violation> first_violation() const;

    void record(std::size_t n, Output out);

private:
    struct Ref {
        std::size_t segment;
        std::size_t length;
    };
    std::vector<std::optional<Ref>> refs_;
    std::vector<Output> segments_;
};

using AdmissibleAt = std::function<bool(std::size_t n, const Output& out, bool extends_admissible)>;

/// Runs `solver` on every prefix of `events`. Heights whose lookahead reaches
/// past the available input are left pending. O1/O2 violations are recorded
/// and the run continues; lookahead violations and solver exceptions stop it.
/// `admissible_at` receives whether `out` extends an admissible previous output.
template <class Event>
SolutionTrace drive_solver(const BasicSolver<Event>& solver, std::span<const Event> events,
                           const AdmissibleAt& admissible_at) {
    const std::size_t height = events.size();
    SolutionTrace trace(height);
    trace.solver = solver.name;

    auto session = solver.start();
    std::optional<Output> previous;
    bool previous_admissible = false;
    for (std::size_t n = 1; n <= height; ++n) {
        const std::size_t horizon = solver.lookahead.horizon(n);
        if (horizon > height) {
            break;
        }
        MeteredReader<Event> reader(events, horizon);
        Output out;
        try {
            out = session->step(n, reader);
        } catch (const LookaheadViolation& e) {
            trace.violations.push_back({ViolationKind::lookahead, n, e.what()});
            break;
        } catch (const Error& e) {
            trace.violations.push_back({ViolationKind::solver_error, n, e.what()});
            break;
        }
        trace.read_high_water[n - 1] = reader.high_water();
        const bool extends = !previous || is_output_prefix(*previous, out);
        if (!extends) {
            trace.monotone = false;
            trace.violations.push_back({ViolationKind::monotonicity, n,
                                        "output does not extend the output at height " + std::to_string(n - 1)});
        }
        const bool ok = admissible_at(n, out, previous && extends && previous_admissible);
        trace.admissible[n - 1] = ok;
        if (!ok) {
            trace.violations.push_back({ViolationKind::admissibility, n, "output not admissible"});
        }
        previous = out;
        previous_admissible = ok;
        trace.record(n, std::move(out));
    }
    return trace;
}

/// Drives `solver` over `prefix` checking O1 via `problem.admissible` at every
/// produced height and O2 across heights.
SolutionTrace run_online(const OnlineProblem& problem, const OnlineSolver& solver, const ArrivalPrefix& prefix);

} // namespace online
