#pragma once

#include "online/error.hpp"
#include "online/prefix.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace online {

/// Output prefix f(sigma): a finite string over the problem's output alphabet.
using Output = std::vector<std::int64_t>;

/// Declared lookahead: at height n a solver may read input up to horizon(n).
class LookaheadSpec {
public:
    enum class Mode { strict, timestamp };
    using Timestamp = std::function<std::size_t(std::size_t)>;

    /// Range over which a timestamp function is checked when it is declared.
    static constexpr std::size_t kCheckedRange = 4096;

    static LookaheadSpec strict();

    /// Throws InvalidArgument if g(n) < n or g decreases anywhere on
    /// 1..kCheckedRange. Later evaluations are re-checked lazily.
    static LookaheadSpec timestamp(Timestamp g, std::string description);

    Mode mode() const noexcept { return mode_; }
    bool is_strict() const noexcept { return mode_ == Mode::strict; }
    const std::string& description() const noexcept { return description_; }

    /// g(n). Identity for strict solvers.
    std::size_t horizon(std::size_t n) const;

private:
    LookaheadSpec(Mode mode, Timestamp g, std::string description);

    Mode mode_;
    Timestamp g_;
    std::string description_;
};

/// Read-only view of an input sequence that refuses reads beyond `limit` and
/// records the highest index read.
template <class Event>
class MeteredReader {
public:
    MeteredReader(std::span<const Event> events, std::size_t limit)
        : events_(events), limit_(std::min(limit, events.size())) {}

    /// Event i, 1-based.
    const Event& at(std::size_t i) const {
        if (i == 0 || i > limit_) {
            throw LookaheadViolation(i, limit_);
        }
        high_water_ = std::max(high_water_, i);
        return events_[i - 1];
    }

    std::size_t limit() const noexcept { return limit_; }
    std::size_t high_water() const noexcept { return high_water_; }

private:
    std::span<const Event> events_;
    std::size_t limit_;
    mutable std::size_t high_water_ = 0;
};

using PrefixReader = MeteredReader<ArrivalEvent>;

/// One deterministic run of a solver. `step(n, reader)` is called for
/// n = 1, 2, ... in order and returns the full output prefix for height n.
template <class Event>
class BasicSession {
public:
    virtual ~BasicSession() = default;
    virtual Output step(std::size_t n, const MeteredReader<Event>& reader) = 0;
};

template <class Event>
struct BasicSolver {
    std::string name;
    LookaheadSpec lookahead = LookaheadSpec::strict();
    std::function<std::unique_ptr<BasicSession<Event>>()> start;
};

using SolverSession = BasicSession<ArrivalEvent>;
using OnlineSolver = BasicSolver<ArrivalEvent>;

/// Wraps a callable `Output(std::size_t, const MeteredReader<Event>&)` as a
/// session; the callable carries its own state.
template <class Event, class Step>
class LambdaSession final : public BasicSession<Event> {
public:
    explicit LambdaSession(Step step) : step_(std::move(step)) {}
    Output step(std::size_t n, const MeteredReader<Event>& reader) override { return step_(n, reader); }

private:
    Step step_;
};

template <class Event = ArrivalEvent, class MakeStep>
BasicSolver<Event> make_solver(std::string name, LookaheadSpec lookahead, MakeStep make_step) {
    return BasicSolver<Event>{
        std::move(name), std::move(lookahead), [make_step]() -> std::unique_ptr<BasicSession<Event>> {
            auto step = make_step();
            return std::make_unique<LambdaSession<Event, decltype(step)>>(std::move(step));
        }};
}

/// An online problem (I, S, s).
struct OnlineProblem {
    std::string name;
    StructureKind kind = StructureKind::graph;
    /// Number of possible events at height n; nullopt when unbounded.
    std::function<std::optional<std::uint64_t>(std::size_t)> branching_bound;
    std::string output_alphabet;
    /// Admissibility s: accepts (sigma restricted to height n, candidate output).
    std::function<bool(const ArrivalPrefix& sigma, std::size_t n, const Output& out)> admissible;
    /// Optional fast path with the same meaning, only consulted when the
    /// output at n-1 was admissible and `out` extends it.
    std::function<bool(const ArrivalPrefix& sigma, std::size_t n, const Output& out)> extension_admissible;
};

/// 2^bits saturated at UINT64_MAX.
std::uint64_t saturating_pow2(std::size_t bits);

/// True iff `shorter` is an initial segment of `longer`.
bool is_output_prefix(const Output& shorter, const Output& longer);

} // namespace online
