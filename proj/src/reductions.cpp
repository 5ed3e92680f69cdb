#include "online/reductions.hpp"

#include <algorithm>

namespace online::reductions {

namespace {

ArrivalPrefix empty_prefix(StructureKind kind) { return ArrivalPrefix{kind, {}, std::nullopt}; }

bool bit_kind(StructureKind kind) { return kind != StructureKind::packing; }

} // namespace

OnlineProblem as_online_problem(const DecisionProblem& problem) {
    OnlineProblem online;
    online.name = problem.name;
    online.kind = problem.kind;
    online.branching_bound = [kind = problem.kind](std::size_t n) -> std::optional<std::uint64_t> {
        switch (kind) {
        case StructureKind::bitstring:
            return 2;
        case StructureKind::packing:
            return std::nullopt;
        default:
            return saturating_pow2(n - 1);
        }
    };
    online.output_alphabet = "{0,1}";
    online.admissible = [predicate = problem.predicate](const ArrivalPrefix& sigma, std::size_t n, const Output& out) {
        if (out.size() != n) {
            return false;
        }
        for (std::size_t i = 1; i <= n; ++i) {
            if (out[i - 1] != (predicate(sigma.truncated(i)) ? 1 : 0)) {
                return false;
            }
        }
        return true;
    };
    online.extension_admissible = [predicate = problem.predicate](const ArrivalPrefix& sigma, std::size_t n,
                                                                  const Output& out) {
        return out.size() == n && out[n - 1] == (predicate(sigma.truncated(n)) ? 1 : 0);
    };
    return online;
}

OnlineSolver predicate_solver(const DecisionProblem& problem) {
    return make_solver("decide-" + problem.name, LookaheadSpec::strict(), [problem] {
        return [problem, seen = empty_prefix(problem.kind), out = Output{}](std::size_t n,
                                                                           const PrefixReader& reader) mutable {
            seen.events.push_back(reader.at(n));
            out.push_back(problem.predicate(seen) ? 1 : 0);
            return out;
        };
    });
}

std::string flatten(const ArrivalPrefix& prefix) {
    if (!bit_kind(prefix.kind)) {
        throw InvalidArgument("packing prefixes have no symbol string");
    }
    std::string out;
    for (const auto& e : prefix.events) {
        out += e.row;
    }
    return out;
}

ArrivalPrefix apply_change(const ArrivalPrefix& prefix, const IncrementalChange& change) {
    const std::size_t length = flatten(prefix).size();
    ArrivalPrefix out = prefix;
    for (const auto& [position, symbol] : change.changes) {
        if (position == 0 || position > length) {
            throw InvalidArgument("change position " + std::to_string(position) + " outside 1.." +
                                  std::to_string(length));
        }
        if (symbol != '0' && symbol != '1') {
            throw InvalidArgument("change symbols must be 0 or 1");
        }
    }
    std::size_t offset = 0;
    for (auto& e : out.events) {
        auto it = change.changes.lower_bound(offset + 1);
        for (; it != change.changes.end() && it->first <= offset + e.row.size(); ++it) {
            e.row[it->first - offset - 1] = it->second;
        }
        offset += e.row.size();
    }
    return out;
}

IncrementalChange diff(const ArrivalPrefix& from, const ArrivalPrefix& to) {
    if (from.kind != to.kind || from.height() != to.height()) {
        throw InvalidArgument("diff needs prefixes of the same kind and height");
    }
    IncrementalChange change;
    std::size_t offset = 0;
    for (std::size_t n = 0; n < from.height(); ++n) {
        const std::string& a = from.events[n].row;
        const std::string& b = to.events[n].row;
        if (a.size() != b.size()) {
            throw InvalidArgument("diff needs rows of equal length at event " + std::to_string(n + 1));
        }
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[j] != b[j]) {
                change.changes[offset + j + 1] = b[j];
            }
        }
        offset += a.size();
    }
    return change;
}

SWReduction identity_reduction(StructureKind kind) {
    return SWReduction{"identity", kind, kind, [](const ArrivalPrefix& sigma) { return sigma; },
                       [](const ArrivalPrefix&, bool answer) { return answer; }, true};
}

IncrementalReduction identity_incremental(StructureKind kind) {
    return IncrementalReduction{"identity", kind, kind, [](const ArrivalPrefix& sigma) { return sigma; },
                                [](const ArrivalPrefix&, const IncrementalChange& delta) { return delta; }};
}

SWReduction convert_reduction(const IncrementalReduction& reduction) {
    return SWReduction{reduction.name + "-as-sw", reduction.from, reduction.to, reduction.transform,
                       [](const ArrivalPrefix&, bool answer) { return answer; }, true};
}

IncrementalReduction convert_reduction(const SWReduction& reduction) {
    if (!reduction.backward_is_identity) {
        throw InvalidArgument("only reductions whose backward map is the identity on {0,1} are incremental");
    }
    auto forward = reduction.forward;
    return IncrementalReduction{reduction.name + "-as-incr", reduction.from, reduction.to, forward,
                                [forward](const ArrivalPrefix& sigma, const IncrementalChange& delta) {
                                    return diff(forward(sigma), forward(apply_change(sigma, delta)));
                                }};
}

std::string_view to_string(SWFailure failure) {
    switch (failure) {
    case SWFailure::none:
        return "pass";
    case SWFailure::forward_invalid:
        return "forward-invalid";
    case SWFailure::solver_failed:
        return "solver-failed";
    case SWFailure::backward_inadmissible:
        return "backward-inadmissible";
    }
    return "?";
}

SWResult apply_sw(const SWReduction& reduction, const DecisionProblem& p, const DecisionProblem& q,
                  const ArrivalPrefix& sigma, const OnlineSolver& q_solver) {
    SWResult result;
    auto fail = [&](SWFailure failure, std::size_t n, std::string detail) {
        result.failure = failure;
        result.height = n;
        result.detail = std::move(detail);
        return result;
    };

    std::vector<std::size_t> image_height(sigma.height() + 1);
    ArrivalPrefix previous = reduction.forward(empty_prefix(sigma.kind));
    image_height[0] = previous.height();
    for (std::size_t n = 1; n <= sigma.height(); ++n) {
        ArrivalPrefix image = reduction.forward(sigma.truncated(n));
        if (image.kind != q.kind) {
            return fail(SWFailure::forward_invalid, n, "image has kind " + std::string(to_string(image.kind)));
        }
        const PrefixVerdict verdict = validate_prefix(image);
        if (!verdict.valid) {
            return fail(SWFailure::forward_invalid, n, "image is not a valid instance: " + verdict.reason);
        }
        if (!previous.is_prefix_of(image)) {
            return fail(SWFailure::forward_invalid, n, "image does not extend the image at height " +
                                                           std::to_string(n - 1));
        }
        image_height[n] = image.height();
        previous = std::move(image);
    }

    const SolutionTrace trace = run_online(as_online_problem(q), q_solver, previous);
    for (std::size_t n = 1; n <= sigma.height(); ++n) {
        const std::size_t m = image_height[n];
        bool q_answer = false;
        if (m == 0) {
            q_answer = q.predicate(empty_prefix(q.kind));
        } else {
            if (auto v = trace.first_violation(); v && v->height <= m) {
                return fail(SWFailure::solver_failed, n, std::string(to_string(v->kind)) + ": " + v->detail);
            }
            if (m > trace.height() || trace.pending(m)) {
                return fail(SWFailure::solver_failed, n, "no answer at image height " + std::to_string(m));
            }
            q_answer = trace.output_view(m)[m - 1] != 0;
        }
        const ArrivalPrefix here = sigma.truncated(n);
        const bool answer = reduction.backward(here, q_answer);
        if (answer != p.predicate(here)) {
            return fail(SWFailure::backward_inadmissible, n, "answer " + std::to_string(answer) + " is wrong");
        }
        result.answers.push_back(answer);
    }
    return result;
}

IncrementalVerdict check_incremental(const IncrementalReduction& reduction, const DecisionProblem& p,
                                     const DecisionProblem& q, const std::vector<ArrivalPrefix>& instances) {
    IncrementalVerdict verdict;
    for (const auto& sigma : instances) {
        const ArrivalPrefix image = reduction.transform(sigma);
        if (p.predicate(sigma) != q.predicate(image)) {
            verdict.pass = false;
            verdict.witness = sigma;
            verdict.detail = "transform changes the answer";
            return verdict;
        }
        const std::string symbols = flatten(sigma);
        for (std::size_t j = 1; j <= symbols.size(); ++j) {
            IncrementalChange delta;
            delta.changes[j] = symbols[j - 1] == '0' ? '1' : '0';
            const ArrivalPrefix changed = apply_change(sigma, delta);
            const IncrementalChange mapped = reduction.delta_map(sigma, delta);
            bool consistent = false;
            try {
                consistent = apply_change(image, mapped) == reduction.transform(changed);
            } catch (const InvalidArgument&) {
                consistent = false;
            }
            if (!consistent) {
                verdict.pass = false;
                verdict.witness = sigma;
                verdict.delta = delta;
                verdict.detail = "mapped change does not produce T(sigma') at position " + std::to_string(j);
                return verdict;
            }
        }
    }
    return verdict;
}

std::vector<ArrivalPrefix> enumerate_graph_prefixes(std::size_t max_n) {
    if (max_n > 8) {
        throw OracleCapExceeded("enumerate_graph_prefixes", max_n, 8);
    }
    std::vector<ArrivalPrefix> out;
    for (std::size_t n = 1; n <= max_n; ++n) {
        const std::size_t bits = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
            ArrivalPrefix prefix = empty_prefix(StructureKind::graph);
            std::size_t position = 0;
            for (std::size_t v = 1; v <= n; ++v) {
                std::string row(v - 1, '0');
                for (auto& c : row) {
                    c = ((mask >> position++) & 1U) ? '1' : '0';
                }
                prefix.events.push_back({std::move(row), Rational(0)});
            }
            out.push_back(std::move(prefix));
        }
    }
    return out;
}

DecisionProblem has_edge_problem() {
    return {"has-edge", StructureKind::graph, [](const ArrivalPrefix& sigma) {
                return std::any_of(sigma.events.begin(), sigma.events.end(),
                                   [](const ArrivalEvent& e) { return e.row.find('1') != std::string::npos; });
            }};
}

DecisionProblem has_one_problem() {
    return {"has-one", StructureKind::bitstring, [](const ArrivalPrefix& sigma) {
                return std::any_of(sigma.events.begin(), sigma.events.end(),
                                   [](const ArrivalEvent& e) { return e.row == "1"; });
            }};
}

SWReduction row_concatenation() {
    return SWReduction{"row-concatenation", StructureKind::graph, StructureKind::bitstring,
                       [](const ArrivalPrefix& sigma) {
                           if (sigma.kind != StructureKind::graph) {
                               throw InvalidArgument("row concatenation reads graph prefixes");
                           }
                           return ArrivalPrefix::from_bits(flatten(sigma));
                       },
                       [](const ArrivalPrefix&, bool answer) { return answer; }, true};
}

RatioVerdict check_ratio_preserving(const RatioSetup& setup, const std::vector<ArrivalPrefix>& instances) {
    RatioVerdict verdict;
    bool have_quotient = false;
    auto fail = [&](const ArrivalPrefix& witness, std::string detail) {
        verdict.pass = false;
        verdict.witness = witness;
        verdict.detail = std::move(detail);
        return verdict;
    };
    const AdmissibleAt any = [](std::size_t, const Output&, bool) { return true; };

    for (const auto& sigma : instances) {
        const SolutionTrace f_trace = drive_solver<ArrivalEvent>(setup.f, sigma.events, any);
        const ArrivalPrefix image = setup.forward(sigma);
        const SolutionTrace g_trace = drive_solver<ArrivalEvent>(setup.g, image.events, any);
        for (std::size_t n = 1; n <= sigma.height(); ++n) {
            const ArrivalPrefix here = sigma.truncated(n);
            if (!f_trace.clean() && f_trace.first_violation()->height <= n) {
                return fail(here, "f failed: " + f_trace.first_violation()->detail);
            }
            const ArrivalPrefix image_n = setup.forward(here);
            if (!image_n.is_prefix_of(image)) {
                return fail(here, "B is not monotone at height " + std::to_string(n));
            }
            const std::size_t m = image_n.height();
            if (!g_trace.clean() && g_trace.first_violation()->height <= m) {
                return fail(here, "g failed: " + g_trace.first_violation()->detail);
            }
            if (f_trace.pending(n) || (m > 0 && g_trace.pending(m))) {
                return fail(here, "an output is pending at height " + std::to_string(n));
            }
            const Output f_out = *f_trace.output(n);
            const Output g_out = m == 0 ? Output{} : *g_trace.output(m);
            if (setup.backward(here, g_out) != f_out) {
                return fail(here, "f differs from A(sigma, g(B(sigma))) at height " + std::to_string(n));
            }
            ++verdict.heights_checked;
            const Rational f_off = setup.f_offline(here);
            const Rational g_off = setup.g_offline(image_n);
            if (f_off == 0 || g_off == 0) {
                continue;
            }
            const Rational f_ratio = setup.f_cost(here, f_out) / f_off;
            const Rational g_ratio = setup.g_cost(image_n, g_out) / g_off;
            if (g_ratio > 0) {
                const Rational quotient = f_ratio / g_ratio;
                if (!have_quotient || quotient > verdict.max_quotient) {
                    verdict.max_quotient = quotient;
                    have_quotient = true;
                }
            }
            if (f_ratio > setup.d * g_ratio) {
                return fail(here, "ratio " + online::to_string(f_ratio) + " exceeds d times " + online::to_string(g_ratio) +
                                      " at height " + std::to_string(n));
            }
        }
    }
    return verdict;
}

LimitingTrace::LimitingTrace(std::size_t horizon) { rows_.reserve(horizon); }

std::int64_t LimitingTrace::value(std::size_t n, std::size_t s) const {
    if (n == 0 || n > s || s > horizon()) {
        throw InvalidArgument("f(n, s) is tabulated only for 1 <= n <= s <= horizon");
    }
    return rows_[s - 1][n - 1];
}

void LimitingTrace::push_stage(const Output& row) {
    const std::size_t s = rows_.size() + 1;
    if (row.size() != s) {
        throw InvalidArgument("stage " + std::to_string(s) + " must report " + std::to_string(s) + " values");
    }
    if (s > 1) {
        const Output& before = rows_.back();
        for (std::size_t n = 1; n < s; ++n) {
            if (row[n - 1] != before[n - 1]) {
                last_change_[n - 1] = s;
                ++changes_[n - 1];
            }
        }
    }
    last_change_.push_back(s);
    changes_.push_back(0);
    rows_.push_back(row);
}

LimitingTrace tabulate_limiting(const std::function<Output(std::size_t s)>& stage, std::size_t horizon) {
    LimitingTrace trace(horizon);
    for (std::size_t s = 1; s <= horizon; ++s) {
        trace.push_stage(stage(s));
    }
    return trace;
}

LimitingTrace limiting_run(const LimitingAlgorithm& algorithm, const ArrivalPrefix& p, std::size_t horizon) {
    if (horizon > p.height()) {
        throw InvalidArgument("horizon beyond the available input");
    }
    return tabulate_limiting([&](std::size_t s) { return algorithm(p.truncated(s)); }, horizon);
}

DominanceVerdict check_settling_dominance(const LimitingTrace& a, const LimitingTrace& b) {
    if (a.horizon() != b.horizon()) {
        throw InvalidArgument("settling can only be compared at a common horizon");
    }
    DominanceVerdict verdict;
    verdict.horizon = a.horizon();
    for (std::size_t n = 1; n <= a.horizon(); ++n) {
        if (a.last_change(n) > b.last_change(n)) {
            verdict.holds = false;
            verdict.offending_n = n;
            break;
        }
    }
    return verdict;
}

} // namespace online::reductions
