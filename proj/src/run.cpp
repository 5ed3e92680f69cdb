#include "online/run.hpp"

#include <algorithm>
#include <limits>

namespace online {

LookaheadSpec::LookaheadSpec(Mode mode, Timestamp g, std::string description)
    : mode_(mode), g_(std::move(g)), description_(std::move(description)) {}

LookaheadSpec LookaheadSpec::strict() {
    return LookaheadSpec(Mode::strict, nullptr, "strict");
}

LookaheadSpec LookaheadSpec::timestamp(Timestamp g, std::string description) {
    if (!g) {
        throw InvalidArgument("timestamp function is empty");
    }
    std::size_t last = 0;
    for (std::size_t n = 1; n <= kCheckedRange; ++n) {
        std::size_t value = g(n);
        if (value < n) {
            throw InvalidArgument("timestamp " + description + " has g(" + std::to_string(n) + ") < " +
                                  std::to_string(n));
        }
        if (value < last) {
            throw InvalidArgument("timestamp " + description + " is not monotone at n=" + std::to_string(n));
        }
        last = value;
    }
    return LookaheadSpec(Mode::timestamp, std::move(g), std::move(description));
}

std::size_t LookaheadSpec::horizon(std::size_t n) const {
    if (mode_ == Mode::strict) {
        return n;
    }
    std::size_t value = g_(n);
    if (value < n || (n > 1 && value < g_(n - 1))) {
        throw InvalidArgument("timestamp " + description_ + " violates monotonicity at n=" + std::to_string(n));
    }
    return value;
}

std::uint64_t saturating_pow2(std::size_t bits) {
    return bits >= 64 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << bits);
}

bool is_output_prefix(const Output& shorter, const Output& longer) {
    return shorter.size() <= longer.size() && std::equal(shorter.begin(), shorter.end(), longer.begin());
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::admissibility: return "O1";
    case ViolationKind::monotonicity: return "O2";
    case ViolationKind::lookahead: return "lookahead";
    case ViolationKind::solver_error: return "solver-error";
    }
    return "unknown";
}

SolutionTrace::SolutionTrace(std::size_t height)
    : admissible(height, false), read_high_water(height, 0), refs_(height) {}

std::size_t SolutionTrace::produced() const {
    return static_cast<std::size_t>(
        std::count_if(refs_.begin(), refs_.end(), [](const auto& ref) { return ref.has_value(); }));
}

std::optional<Output> SolutionTrace::output(std::size_t n) const {
    if (pending(n)) {
        return std::nullopt;
    }
    auto view = output_view(n);
    return Output(view.begin(), view.end());
}

std::span<const std::int64_t> SolutionTrace::output_view(std::size_t n) const {
    const auto& ref = refs_.at(n - 1);
    if (!ref) {
        throw InvalidArgument("output at height " + std::to_string(n) + " is pending");
    }
    return std::span<const std::int64_t>(segments_[ref->segment]).first(ref->length);
}

Output SolutionTrace::final_output() const {
    for (std::size_t n = height(); n >= 1; --n) {
        if (!pending(n)) {
            return *output(n);
        }
    }
    return {};
}

std::optional<Violation> SolutionTrace::first_violation() const {
    if (violations.empty()) {
        return std::nullopt;
    }
    return violations.front();
}

void SolutionTrace::record(std::size_t n, Output out) {
    if (!segments_.empty()) {
        Output& last = segments_.back();
        const std::size_t common = std::min(last.size(), out.size());
        if (std::equal(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(common), last.begin())) {
            if (out.size() > last.size()) {
                last.insert(last.end(), out.begin() + static_cast<std::ptrdiff_t>(common), out.end());
            }
            refs_.at(n - 1) = Ref{segments_.size() - 1, out.size()};
            return;
        }
    }
    const std::size_t length = out.size();
    segments_.push_back(std::move(out));
    refs_.at(n - 1) = Ref{segments_.size() - 1, length};
}

SolutionTrace run_online(const OnlineProblem& problem, const OnlineSolver& solver, const ArrivalPrefix& prefix) {
    if (prefix.kind != problem.kind) {
        throw InvalidArgument("prefix kind " + std::string(to_string(prefix.kind)) + " does not match problem " +
                              problem.name);
    }
    auto verdict = validate_prefix(prefix);
    if (!verdict.valid) {
        throw InvalidArgument("invalid prefix at event " + std::to_string(verdict.offending_event.value_or(0)) +
                              ": " + verdict.reason);
    }
    return drive_solver<ArrivalEvent>(solver, prefix.events,
                                      [&](std::size_t n, const Output& out, bool extends_admissible) {
                                          if (extends_admissible && problem.extension_admissible) {
                                              return problem.extension_admissible(prefix, n, out);
                                          }
                                          return problem.admissible(prefix, n, out);
                                      });
}

} // namespace online
