#pragma once

#include "online/run.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace online::reductions {

/// An online problem whose only output is whether the predicate holds.
struct DecisionProblem {
    std::string name;
    StructureKind kind = StructureKind::graph;
    std::function<bool(const ArrivalPrefix&)> predicate;
};

/// As an online problem: the output at height n lists the answers at heights 1..n.
OnlineProblem as_online_problem(const DecisionProblem& problem);

/// Strict solver answering with the predicate itself.
OnlineSolver predicate_solver(const DecisionProblem& problem);

/// Sparse edit of the flattened symbol string of a prefix: 1-based position
/// to replacement symbol. Never changes the length.
struct IncrementalChange {
    std::map<std::size_t, char> changes;

    bool identity() const noexcept { return changes.empty(); }
    friend bool operator==(const IncrementalChange&, const IncrementalChange&) = default;
};

/// Event rows of a bit-valued prefix written one after another.
std::string flatten(const ArrivalPrefix& prefix);
/// Rewrites symbols in place; event boundaries stay where they were.
ArrivalPrefix apply_change(const ArrivalPrefix& prefix, const IncrementalChange& change);
/// The change turning `from` into `to`. Throws InvalidArgument when their
/// shapes (kind, height, row lengths) differ.
IncrementalChange diff(const ArrivalPrefix& from, const ArrivalPrefix& to);

/// Phi maps P-prefixes to Q-prefixes and must be monotone in the prefix
/// order; Psi turns Q's answer on Phi(sigma) into P's answer on sigma.
struct SWReduction {
    std::string name;
    StructureKind from = StructureKind::graph;
    StructureKind to = StructureKind::bitstring;
    std::function<ArrivalPrefix(const ArrivalPrefix&)> forward;
    std::function<bool(const ArrivalPrefix& sigma, bool q_answer)> backward;
    bool backward_is_identity = false;
};

SWReduction identity_reduction(StructureKind kind);

/// T maps instances and preserves the answer; the delta map turns a change
/// of sigma into the change of T(sigma).
struct IncrementalReduction {
    std::string name;
    StructureKind from = StructureKind::graph;
    StructureKind to = StructureKind::bitstring;
    std::function<ArrivalPrefix(const ArrivalPrefix&)> transform;
    std::function<IncrementalChange(const ArrivalPrefix& sigma, const IncrementalChange& delta)> delta_map;
};

IncrementalReduction identity_incremental(StructureKind kind);

/// T becomes Phi and Psi is the identity on answers.
SWReduction convert_reduction(const IncrementalReduction& reduction);
/// Needs Psi = identity; the delta map is the positional difference
/// diff(Phi(sigma), Phi(sigma')). Throws InvalidArgument otherwise.
IncrementalReduction convert_reduction(const SWReduction& reduction);

enum class SWFailure {
    none,
    forward_invalid,      ///< Phi produced an invalid or non-monotone Q-instance
    solver_failed,        ///< the Q-solver broke O1/O2 or raised
    backward_inadmissible ///< Psi produced a wrong answer for P
};

std::string_view to_string(SWFailure failure);

struct SWResult {
    std::vector<bool> answers; ///< P's answer at heights 1..n as far as computed
    SWFailure failure = SWFailure::none;
    std::optional<std::size_t> height; ///< first failing height
    std::string detail;

    bool pass() const noexcept { return failure == SWFailure::none; }
};

/// Runs `q_solver` on Phi(sigma) and maps every answer back through Psi,
/// checking each height against P. Q's answer on an empty image is its
/// predicate on the empty prefix.
SWResult apply_sw(const SWReduction& reduction, const DecisionProblem& p, const DecisionProblem& q,
                  const ArrivalPrefix& sigma, const OnlineSolver& q_solver);

struct IncrementalVerdict {
    bool pass = true;
    std::optional<ArrivalPrefix> witness;
    std::optional<IncrementalChange> delta; ///< set when the delta map was at fault
    std::string detail;
};

/// Checks s_P(sigma) = s_Q(T(sigma)) on every instance, and that applying the
/// mapped change to T(sigma) gives T(sigma') for every single-position change.
IncrementalVerdict check_incremental(const IncrementalReduction& reduction, const DecisionProblem& p,
                                     const DecisionProblem& q, const std::vector<ArrivalPrefix>& instances);

/// Every graph prefix with 1..max_n vertices, by height then row bits.
std::vector<ArrivalPrefix> enumerate_graph_prefixes(std::size_t max_n);

DecisionProblem has_edge_problem();
DecisionProblem has_one_problem();
/// Graph rows concatenated into one bitstring; Psi is the identity.
SWReduction row_concatenation();

/// Ratio-preserving reduction f <=_O^r g witnessed by translations A and B.
struct RatioSetup {
    std::function<ArrivalPrefix(const ArrivalPrefix&)> forward;                // B
    std::function<Output(const ArrivalPrefix&, const Output& g_out)> backward; // A
    OnlineSolver f;
    OnlineSolver g;
    std::function<Rational(const ArrivalPrefix&, const Output&)> f_cost;
    std::function<Rational(const ArrivalPrefix&, const Output&)> g_cost;
    std::function<Rational(const ArrivalPrefix&)> f_offline;
    std::function<Rational(const ArrivalPrefix&)> g_offline;
    Rational d{1};
};

struct RatioVerdict {
    bool pass = true;
    std::size_t heights_checked = 0;
    /// Largest (f ratio) / (g ratio) seen.
    Rational max_quotient{0};
    std::optional<ArrivalPrefix> witness;
    std::string detail;
};

/// At every height of every instance checks f(sigma) = A(sigma, g(B(sigma)))
/// and ratio_f <= d * ratio_g.
RatioVerdict check_ratio_preserving(const RatioSetup& setup, const std::vector<ArrivalPrefix>& instances);

/// f(n, s) for n <= s <= horizon, with the stage of the last change per n.
/// "Settled" always means settled up to the horizon.
class LimitingTrace {
public:
    LimitingTrace() = default;
    explicit LimitingTrace(std::size_t horizon);

    std::size_t horizon() const noexcept { return rows_.size(); }
    std::int64_t value(std::size_t n, std::size_t s) const;
    /// Final stage at which f(n, .) changed; n if it never did.
    std::size_t last_change(std::size_t n) const { return last_change_.at(n - 1); }
    /// Whether f(n, .) changed at the horizon itself, so nothing suggests it has settled.
    bool changing_at_horizon(std::size_t n) const { return last_change(n) == horizon() && n < horizon(); }
    /// Changes of f(n, .) after stage n.
    std::size_t change_count(std::size_t n) const { return changes_.at(n - 1); }

    void push_stage(const Output& row);

private:
    std::vector<Output> rows_; ///< rows_[s-1] holds f(1..s, s)
    std::vector<std::size_t> last_change_;
    std::vector<std::size_t> changes_;
};

/// Builds the table from a stage function returning f(1..s, s).
LimitingTrace tabulate_limiting(const std::function<Output(std::size_t s)>& stage, std::size_t horizon);

/// An algorithm that sees sigma up to s and reports f(1..s, s).
using LimitingAlgorithm = std::function<Output(const ArrivalPrefix& sigma_s)>;

LimitingTrace limiting_run(const LimitingAlgorithm& algorithm, const ArrivalPrefix& p, std::size_t horizon);

struct DominanceVerdict {
    bool holds = true;
    std::optional<std::size_t> offending_n;
    std::size_t horizon = 0;
};

/// Whenever B has settled f(n, .) by stage s, so has A: last_change_A(n) <=
/// last_change_B(n) for every n up to the common horizon.
DominanceVerdict check_settling_dominance(const LimitingTrace& a, const LimitingTrace& b);

} // namespace online::reductions
