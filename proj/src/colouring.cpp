#include "online/colouring.hpp"

#include "online/error.hpp"
#include "online/random.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <set>

namespace online::colouring {

GraphInstance::GraphInstance(std::vector<std::string> rows) {
    for (auto& row : rows) {
        add_vertex(std::move(row));
    }
}

GraphInstance GraphInstance::from_prefix(const ArrivalPrefix& prefix) {
    if (prefix.kind != StructureKind::graph && prefix.kind != StructureKind::interval_order) {
        throw InvalidArgument("graph instance needs a bit-row prefix");
    }
    GraphInstance graph;
    for (const auto& event : prefix.events) {
        graph.add_vertex(event.row);
    }
    return graph;
}

GraphInstance GraphInstance::from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::string> rows(n);
    for (std::size_t v = 1; v <= n; ++v) {
        rows[v - 1].assign(v - 1, '0');
    }
    for (auto [a, b] : edges) {
        if (a == b || a == 0 || b == 0 || a > n || b > n) {
            throw InvalidArgument("edge endpoint out of range");
        }
        auto [lo, hi] = std::minmax(a, b);
        rows[hi - 1][lo - 1] = '1';
    }
    return GraphInstance(std::move(rows));
}

bool GraphInstance::adjacent(std::size_t a, std::size_t b) const {
    if (a == b) {
        return false;
    }
    auto [lo, hi] = std::minmax(a, b);
    return rows_[hi - 1][lo - 1] == '1';
}

std::vector<std::size_t> GraphInstance::neighbours(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t u = 1; u <= size(); ++u) {
        if (adjacent(u, v)) {
            out.push_back(u);
        }
    }
    return out;
}

std::size_t GraphInstance::edge_count() const {
    std::size_t count = 0;
    for (const auto& row : rows_) {
        count += static_cast<std::size_t>(std::count(row.begin(), row.end(), '1'));
    }
    return count;
}

void GraphInstance::add_vertex(std::string row) {
    if (row.size() != rows_.size()) {
        throw InvalidArgument("row for vertex " + std::to_string(rows_.size() + 1) + " has " +
                              std::to_string(row.size()) + " entries");
    }
    if (std::any_of(row.begin(), row.end(), [](char c) { return c != '0' && c != '1'; })) {
        throw InvalidArgument("row contains a symbol outside {0,1}");
    }
    rows_.push_back(std::move(row));
}

ArrivalPrefix GraphInstance::to_prefix() const {
    return ArrivalPrefix::from_rows(StructureKind::graph, rows_);
}

std::size_t colour_count(std::span<const std::int64_t> colouring) {
    std::set<std::int64_t> distinct(colouring.begin(), colouring.end());
    return distinct.size();
}

bool is_proper(const GraphInstance& graph, std::span<const std::int64_t> colouring) {
    if (colouring.size() != graph.size()) {
        return false;
    }
    for (std::size_t v = 1; v <= graph.size(); ++v) {
        if (colouring[v - 1] < 1) {
            return false;
        }
        const std::string& row = graph.rows()[v - 1];
        for (std::size_t u = 1; u < v; ++u) {
            if (row[u - 1] == '1' && colouring[u - 1] == colouring[v - 1]) {
                return false;
            }
        }
    }
    return true;
}

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        parent[a] = b;
        return true;
    }
};

bool proper_at(const ArrivalPrefix& sigma, std::size_t v, const Output& out) {
    if (out[v - 1] < 1) {
        return false;
    }
    const std::string& row = sigma.events[v - 1].row;
    for (std::size_t u = 1; u < v; ++u) {
        if (row[u - 1] == '1' && out[u - 1] == out[v - 1]) {
            return false;
        }
    }
    return true;
}

} // namespace

bool is_forest(const GraphInstance& graph) {
    DisjointSets sets(graph.size());
    for (std::size_t v = 1; v <= graph.size(); ++v) {
        const std::string& row = graph.rows()[v - 1];
        for (std::size_t u = 1; u < v; ++u) {
            if (row[u - 1] == '1' && !sets.unite(u - 1, v - 1)) {
                return false;
            }
        }
    }
    return true;
}

OnlineProblem colouring_problem() {
    OnlineProblem problem;
    problem.name = "graph-colouring";
    problem.kind = StructureKind::graph;
    problem.branching_bound = [](std::size_t n) -> std::optional<std::uint64_t> { return saturating_pow2(n - 1); };
    problem.output_alphabet = "positive integers";
    problem.admissible = [](const ArrivalPrefix& sigma, std::size_t n, const Output& out) {
        if (out.size() != n) {
            return false;
        }
        for (std::size_t v = 1; v <= n; ++v) {
            if (!proper_at(sigma, v, out)) {
                return false;
            }
        }
        return true;
    };
    problem.extension_admissible = [](const ArrivalPrefix& sigma, std::size_t n, const Output& out) {
        return out.size() == n && proper_at(sigma, n, out);
    };
    return problem;
}

namespace {

std::int64_t least_absent(std::vector<std::int64_t> taken, std::int64_t start = 1) {
    std::sort(taken.begin(), taken.end());
    std::int64_t candidate = start;
    for (std::int64_t c : taken) {
        if (c == candidate) {
            ++candidate;
        } else if (c > candidate) {
            break;
        }
    }
    return candidate;
}

std::vector<std::int64_t> neighbour_colours(const std::string& row, const Output& colours) {
    std::vector<std::int64_t> taken;
    for (std::size_t u = 1; u <= row.size(); ++u) {
        if (row[u - 1] == '1') {
            taken.push_back(colours[u - 1]);
        }
    }
    return taken;
}

} // namespace

OnlineSolver first_fit_solver() {
    return make_solver("first-fit", LookaheadSpec::strict(), [] {
        return [colours = Output{}](std::size_t n, const PrefixReader& reader) mutable {
            colours.push_back(least_absent(neighbour_colours(reader.at(n).row, colours)));
            return colours;
        };
    });
}

namespace {

class CbipSession final : public SolverSession {
public:
    Output step(std::size_t n, const PrefixReader& reader) override {
        const std::string& row = reader.at(n).row;
        adjacency_.emplace_back();
        for (std::size_t u = 1; u < n; ++u) {
            if (row[u - 1] == '1') {
                adjacency_[n - 1].push_back(u - 1);
                adjacency_[u - 1].push_back(n - 1);
            }
        }
        // 2-colour the component of n by BFS parity; side 1 is opposite to n.
        std::vector<int> side(n, -1);
        std::deque<std::size_t> queue{n - 1};
        side[n - 1] = 0;
        std::vector<std::int64_t> opposite;
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            if (side[v] == 1) {
                opposite.push_back(colours_[v]);
            }
            for (std::size_t w : adjacency_[v]) {
                if (side[w] == -1) {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                } else if (side[w] == side[v]) {
                    throw PromiseViolation("odd cycle closed by edge (" + std::to_string(std::min(v, w) + 1) + "," +
                                               std::to_string(std::max(v, w) + 1) + ") at vertex " +
                                               std::to_string(n),
                                           n);
                }
            }
        }
        colours_.push_back(least_absent(std::move(opposite)));
        return colours_;
    }

private:
    std::vector<std::vector<std::size_t>> adjacency_;
    Output colours_;
};

} // namespace

OnlineSolver cbip_solver() {
    return OnlineSolver{"cbip", LookaheadSpec::strict(), [] { return std::make_unique<CbipSession>(); }};
}

OnlineSolver arbitrary_consistent_solver(std::uint64_t seed) {
    return make_solver("arbitrary-" + std::to_string(seed), LookaheadSpec::strict(), [seed] {
        return [colours = Output{}, rng = Rng(seed), used = std::int64_t{0}](std::size_t n,
                                                                            const PrefixReader& reader) mutable {
            auto taken = neighbour_colours(reader.at(n).row, colours);
            std::sort(taken.begin(), taken.end());
            std::vector<std::int64_t> choices;
            for (std::int64_t c = 1; c <= used; ++c) {
                if (!std::binary_search(taken.begin(), taken.end(), c)) {
                    choices.push_back(c);
                }
            }
            choices.push_back(used + 1);
            std::int64_t pick = choices[uniform_below(rng, choices.size())];
            used = std::max(used, pick);
            colours.push_back(pick);
            return colours;
        };
    });
}

OnlineSolver lookahead_first_fit_solver(LookaheadSpec lookahead) {
    std::string name = "lookahead-first-fit[" + lookahead.description() + "]";
    return make_solver(std::move(name), lookahead, [] {
        return [colours = Output{}](std::size_t n, const PrefixReader& reader) mutable {
            bool future_neighbour = false;
            for (std::size_t m = n + 1; m <= reader.limit() && !future_neighbour; ++m) {
                future_neighbour = reader.at(m).row[n - 1] == '1';
            }
            colours.push_back(least_absent(neighbour_colours(reader.at(n).row, colours), future_neighbour ? 2 : 1));
            return colours;
        };
    });
}

SolutionTrace first_fit_colour(const ArrivalPrefix& prefix) {
    return run_online(colouring_problem(), first_fit_solver(), prefix);
}

SolutionTrace cbip_colour(const ArrivalPrefix& prefix) {
    SolutionTrace trace = run_online(colouring_problem(), cbip_solver(), prefix);
    for (const auto& violation : trace.violations) {
        if (violation.kind == ViolationKind::solver_error) {
            throw PromiseViolation(violation.detail, violation.height);
        }
    }
    return trace;
}

namespace {

class ChromaticSearch {
public:
    explicit ChromaticSearch(const GraphInstance& graph) : n_(graph.size()), masks_(graph.size(), 0) {
        for (std::size_t v = 0; v < n_; ++v) {
            for (std::size_t u = 0; u < v; ++u) {
                if (graph.adjacent(u + 1, v + 1)) {
                    masks_[v] |= std::uint64_t{1} << u;
                    masks_[u] |= std::uint64_t{1} << v;
                }
            }
        }
    }

    std::size_t solve() {
        best_ = n_;
        colour_.assign(n_, 0);
        classes_.clear();
        search(0);
        return best_;
    }

private:
    // Vertices in index order; vertex v may open colour class used+1 only.
    void search(std::size_t v) {
        if (classes_.size() >= best_) {
            return;
        }
        if (v == n_) {
            best_ = classes_.size();
            return;
        }
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            if ((classes_[c] & masks_[v]) == 0) {
                classes_[c] |= std::uint64_t{1} << v;
                search(v + 1);
                classes_[c] &= ~(std::uint64_t{1} << v);
            }
        }
        if (classes_.size() + 1 < best_) {
            classes_.push_back(std::uint64_t{1} << v);
            search(v + 1);
            classes_.pop_back();
        }
    }

    std::size_t n_;
    std::vector<std::uint64_t> masks_;
    std::vector<std::uint64_t> classes_;
    std::vector<std::size_t> colour_;
    std::size_t best_ = 0;
};

} // namespace

std::size_t chromatic_exact(const GraphInstance& graph, std::size_t cap) {
    if (graph.size() == 0) {
        return 0;
    }
    if (is_forest(graph)) {
        return graph.edge_count() == 0 ? 1 : 2;
    }
    if (graph.size() > cap || graph.size() > 64) {
        throw OracleCapExceeded("chromatic_exact", graph.size(), std::min<std::size_t>(cap, 64));
    }
    return ChromaticSearch(graph).solve();
}

namespace {

struct GameAborted {};

/// The adversary's side of the game: presents vertices one at a time and
/// watches the solver's replies for O1/O2 breaches.
class BeanGame {
public:
    explicit BeanGame(const OnlineSolver& solver) : session_(solver.start()), problem_(colouring_problem()) {}

    std::size_t add_vertex(const std::vector<std::size_t>& neighbours) {
        const std::size_t n = graph_.size() + 1;
        std::string row(n - 1, '0');
        for (std::size_t u : neighbours) {
            row[u - 1] = '1';
        }
        graph_.add_vertex(std::move(row));
        prefix_.events.push_back({graph_.rows().back(), Rational(0)});
        Output out;
        try {
            out = session_->step(n, PrefixReader(prefix_.events, n));
        } catch (const LookaheadViolation& e) {
            abort(ViolationKind::lookahead, n, e.what());
        } catch (const Error& e) {
            abort(ViolationKind::solver_error, n, e.what());
        }
        if (!is_output_prefix(colours_, out)) {
            abort(ViolationKind::monotonicity, n, "solver recoloured an earlier vertex");
        }
        if (!problem_.admissible(prefix_, n, out)) {
            abort(ViolationKind::admissibility, n, "solver produced an improper colouring");
        }
        colours_ = std::move(out);
        return n;
    }

    /// Vertices in pairwise distinct tree components carrying s distinct colours.
    std::vector<std::size_t> rainbow(std::size_t s) {
        if (s == 1) {
            return {add_vertex({})};
        }
        std::vector<std::size_t> first = rainbow(s - 1);
        std::vector<std::size_t> second = rainbow(s - 1);
        std::set<std::int64_t> first_colours;
        for (std::size_t v : first) {
            first_colours.insert(colour(v));
        }
        for (std::size_t v : second) {
            if (!first_colours.count(colour(v))) {
                first.push_back(v);
                return first;
            }
        }
        // Same colour sets: a vertex joined to all of `first` needs a new colour.
        second.push_back(add_vertex(first));
        return second;
    }

    std::int64_t colour(std::size_t v) const { return colours_[v - 1]; }
    const GraphInstance& graph() const { return graph_; }
    const Output& colours() const { return colours_; }
    const std::optional<Violation>& violation() const { return violation_; }

private:
    [[noreturn]] void abort(ViolationKind kind, std::size_t n, std::string detail) {
        violation_ = Violation{kind, n, std::move(detail)};
        throw GameAborted{};
    }

    std::unique_ptr<SolverSession> session_;
    OnlineProblem problem_;
    GraphInstance graph_;
    ArrivalPrefix prefix_{StructureKind::graph, {}, std::nullopt};
    Output colours_;
    std::optional<Violation> violation_;
};

} // namespace

BeanResult bean_adversary(std::size_t t, const OnlineSolver& solver) {
    if (t == 0) {
        throw InvalidArgument("bean_adversary needs t >= 1");
    }
    if (!solver.lookahead.is_strict()) {
        throw InvalidArgument("bean_adversary plays against strict solvers only");
    }
    BeanGame game(solver);
    try {
        if (t == 1) {
            game.add_vertex({});
        } else {
            game.add_vertex(game.rainbow(t - 1));
        }
    } catch (const GameAborted&) {
    }
    BeanResult result;
    result.forest = game.graph();
    result.colouring = game.colours();
    result.forced = colour_count(result.colouring);
    result.violation = game.violation();
    return result;
}

InductiveInstance generate_d_inductive(std::size_t d, std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw InvalidArgument("generate_d_inductive needs n >= 1");
    }
    Rng rng(seed);
    std::vector<std::string> rows(n);
    for (std::size_t a = 1; a <= n; ++a) {
        rows[a - 1].assign(a - 1, '0');
    }
    for (std::size_t c = 2; c <= n; ++c) {
        std::vector<std::size_t> pool(c - 1);
        std::iota(pool.begin(), pool.end(), 1);
        const std::size_t picks = std::min(d, c - 1);
        for (std::size_t i = 0; i < picks; ++i) {
            std::size_t j = i + uniform_below(rng, pool.size() - i);
            std::swap(pool[i], pool[j]);
            // Construction c arrives as n+1-c; its back-neighbour arrives later.
            std::size_t early = n + 1 - c;
            std::size_t late = n + 1 - pool[i];
            rows[late - 1][early - 1] = '1';
        }
    }
    InductiveInstance instance{GraphInstance(std::move(rows)), {}};
    instance.construction.resize(n);
    for (std::size_t a = 1; a <= n; ++a) {
        instance.construction[a - 1] = n + 1 - a;
    }
    return instance;
}

GraphInstance generate_bipartite(std::size_t n, double average_degree, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> side(n);
    for (auto& s : side) {
        s = static_cast<int>(uniform_below(rng, 2));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[uniform_below(rng, i)]);
    }
    const double p = n == 0 ? 0.0 : std::min(1.0, average_degree / static_cast<double>(n));
    const auto threshold = static_cast<std::uint64_t>(p * 1e9);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (side[order[a]] != side[order[b]] && uniform_below(rng, 1000000000) < threshold) {
                edges.emplace_back(a + 1, b + 1);
            }
        }
    }
    return GraphInstance::from_edges(n, edges);
}

std::size_t degeneracy(const GraphInstance& graph) {
    const std::size_t n = graph.size();
    std::vector<std::vector<std::size_t>> adjacency(n);
    for (std::size_t v = 1; v <= n; ++v) {
        const std::string& row = graph.rows()[v - 1];
        for (std::size_t u = 1; u < v; ++u) {
            if (row[u - 1] == '1') {
                adjacency[v - 1].push_back(u - 1);
                adjacency[u - 1].push_back(v - 1);
            }
        }
    }
    std::vector<std::size_t> degree(n);
    std::set<std::pair<std::size_t, std::size_t>> queue;
    for (std::size_t v = 0; v < n; ++v) {
        degree[v] = adjacency[v].size();
        queue.emplace(degree[v], v);
    }
    std::vector<bool> removed(n, false);
    std::size_t result = 0;
    while (!queue.empty()) {
        auto [deg, v] = *queue.begin();
        queue.erase(queue.begin());
        result = std::max(result, deg);
        removed[v] = true;
        for (std::size_t w : adjacency[v]) {
            if (!removed[w]) {
                queue.erase({degree[w], w});
                --degree[w];
                queue.emplace(degree[w], w);
            }
        }
    }
    return result;
}

CompetitiveReport performance_report(std::size_t online_cost, std::size_t offline_cost) {
    if (offline_cost == 0 || online_cost == 0) {
        throw InvalidArgument("performance ratio needs positive costs");
    }
    Rational ratio(static_cast<unsigned long>(online_cost), static_cast<unsigned long>(offline_cost));
    ratio.canonicalize();
    return CompetitiveReport{online_cost, offline_cost, ratio};
}

ReportRow to_report_row(const CompetitiveReport& report, std::string kind, std::size_t n, std::string d_or_k,
                        std::uint64_t seed) {
    return ReportRow{std::move(kind),
                     n,
                     std::move(d_or_k),
                     Rational(static_cast<unsigned long>(report.online_cost)),
                     Rational(static_cast<unsigned long>(report.offline_cost)),
                     report.ratio,
                     seed};
}

} // namespace online::colouring
