#include "online/interval.hpp"

#include "online/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <set>

namespace online::interval {

bool intersects(const Interval& a, const Interval& b) { return a.left <= b.right && b.left <= a.right; }

bool precedes(const Interval& a, const Interval& b) { return a.right < b.left; }

void validate(const IntervalInstance& intervals) {
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (intervals[i].left > intervals[i].right) {
            throw InvalidArgument("interval " + std::to_string(i + 1) + " has left endpoint above right endpoint");
        }
    }
}

ArrivalPrefix order_arrival(const IntervalInstance& intervals) {
    validate(intervals);
    ArrivalPrefix prefix;
    prefix.kind = StructureKind::interval_order;
    prefix.events.reserve(intervals.size());
    for (std::size_t n = 0; n < intervals.size(); ++n) {
        std::string row(n, '0');
        for (std::size_t j = 0; j < n; ++j) {
            if (intersects(intervals[j], intervals[n])) {
                row[j] = '1';
            }
        }
        prefix.events.push_back({std::move(row), Rational(0)});
    }
    return prefix;
}

std::size_t max_overlap(const IntervalInstance& intervals) {
    validate(intervals);
    // closed intervals: at a shared coordinate, openings go first
    std::vector<std::pair<Rational, int>> events;
    events.reserve(2 * intervals.size());
    for (const auto& iv : intervals) {
        events.emplace_back(iv.left, 0);
        events.emplace_back(iv.right, 1);
    }
    std::sort(events.begin(), events.end());
    std::size_t open = 0;
    std::size_t best = 0;
    for (const auto& [x, type] : events) {
        if (type == 0) {
            best = std::max(best, ++open);
        } else {
            --open;
        }
    }
    return best;
}

namespace {

class Bits {
public:
    explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    bool any() const {
        return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
    }
    std::size_t first() const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w] != 0) {
                return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
            }
        }
        return SIZE_MAX;
    }
    Bits operator&(const Bits& o) const {
        Bits r = *this;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            r.words_[w] &= o.words_[w];
        }
        return r;
    }
    Bits minus(const Bits& o) const {
        Bits r = *this;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            r.words_[w] &= ~o.words_[w];
        }
        return r;
    }

private:
    std::vector<std::uint64_t> words_;
};

// Colour-bounded maximum clique search. Stops early once `target` is reached.
class CliqueSearch {
public:
    explicit CliqueSearch(std::vector<Bits> adjacency) : adj_(std::move(adjacency)) {}

    std::size_t run(std::size_t target) {
        const std::size_t m = adj_.size();
        best_ = 0;
        target_ = target;
        if (m == 0) {
            return 0;
        }
        Bits all(m);
        for (std::size_t i = 0; i < m; ++i) {
            all.set(i);
        }
        expand(0, all);
        return best_;
    }

private:
    void expand(std::size_t size, Bits candidates) {
        std::vector<std::size_t> order;
        std::vector<std::size_t> bound;
        colour_sort(candidates, order, bound);
        for (std::size_t i = order.size(); i-- > 0;) {
            if (best_ >= target_ || size + bound[i] <= best_) {
                return;
            }
            const std::size_t v = order[i];
            Bits next = candidates & adj_[v];
            if (next.any()) {
                expand(size + 1, next);
            } else {
                best_ = std::max(best_, size + 1);
            }
            candidates.reset(v);
        }
    }

    void colour_sort(const Bits& candidates, std::vector<std::size_t>& order, std::vector<std::size_t>& bound) const {
        Bits uncoloured = candidates;
        std::size_t colour = 0;
        while (uncoloured.any()) {
            ++colour;
            Bits q = uncoloured;
            while (q.any()) {
                const std::size_t v = q.first();
                q.reset(v);
                q = q.minus(adj_[v]);
                uncoloured.reset(v);
                order.push_back(v);
                bound.push_back(colour);
            }
        }
    }

    std::vector<Bits> adj_;
    std::size_t best_ = 0;
    std::size_t target_ = SIZE_MAX;
};

// Clique number of the subgraph induced by `vertices` (0-based) under `edge`.
template <class Edge>
std::size_t clique_on(const std::vector<std::size_t>& vertices, Edge edge, std::size_t target = SIZE_MAX) {
    const std::size_t m = vertices.size();
    std::vector<Bits> adj(m, Bits(m));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            if (edge(vertices[a], vertices[b])) {
                adj[a].set(b);
                adj[b].set(a);
            }
        }
    }
    return CliqueSearch(std::move(adj)).run(target);
}

bool row_edge(const std::vector<std::string>& rows, std::size_t a, std::size_t b) {
    if (a < b) {
        std::swap(a, b);
    }
    return rows[a][b] == '1';
}

std::vector<std::string> rows_of(const ArrivalPrefix& prefix) {
    if (prefix.kind != StructureKind::graph && prefix.kind != StructureKind::interval_order) {
        throw InvalidArgument("expected bit rows, got " + std::string(to_string(prefix.kind)));
    }
    const PrefixVerdict verdict = validate_prefix(prefix);
    if (!verdict.valid) {
        throw InvalidArgument("invalid prefix: " + verdict.reason);
    }
    std::vector<std::string> rows;
    rows.reserve(prefix.height());
    for (const auto& e : prefix.events) {
        rows.push_back(e.row);
    }
    return rows;
}

} // namespace

std::size_t max_clique(const ArrivalPrefix& prefix) {
    const auto rows = rows_of(prefix);
    std::vector<std::size_t> all(rows.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        all[i] = i;
    }
    return clique_on(all, [&](std::size_t a, std::size_t b) { return row_edge(rows, a, b); });
}

std::size_t width_exact(const ArrivalPrefix& rows, std::size_t cap) {
    if (rows.height() > cap) {
        throw OracleCapExceeded("width_exact", rows.height(), cap);
    }
    return max_clique(rows);
}

std::size_t width_exact(const ArrivalPrefix& rows, const IntervalInstance& attached, std::size_t cap) {
    if (attached.size() != rows.height()) {
        throw InvalidArgument("attached intervals do not match the prefix height");
    }
    const ArrivalPrefix expected = order_arrival(attached);
    for (std::size_t n = 0; n < rows.height(); ++n) {
        if (rows.events[n].row != expected.events[n].row) {
            throw InvalidArgument("attached intervals disagree with row " + std::to_string(n + 1));
        }
    }
    const std::size_t exact = width_exact(rows, cap);
    const std::size_t sweep = max_overlap(attached);
    if (exact != sweep) {
        throw InvariantViolation("width oracle " + std::to_string(exact) + " disagrees with sweep line " +
                                 std::to_string(sweep));
    }
    return exact;
}

StrictOrder::StrictOrder(std::size_t n) : n_(n), less_(n * n, 0) {}

StrictOrder StrictOrder::of(const IntervalInstance& intervals) {
    validate(intervals);
    StrictOrder order(intervals.size());
    for (std::size_t a = 0; a < intervals.size(); ++a) {
        for (std::size_t b = 0; b < intervals.size(); ++b) {
            if (precedes(intervals[a], intervals[b])) {
                order.less_[a * order.n_ + b] = 1;
            }
        }
    }
    return order;
}

StrictOrder StrictOrder::from_relations(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& less) {
    StrictOrder order(n);
    for (const auto& [a, b] : less) {
        if (a == 0 || b == 0 || a > n || b > n) {
            throw InvalidArgument("relation names an element outside 1.." + std::to_string(n));
        }
        order.less_[(a - 1) * n + (b - 1)] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!order.less_[i * n + k]) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (order.less_[k * n + j]) {
                    order.less_[i * n + j] = 1;
                }
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (order.less_[i * n + i]) {
            throw InvalidArgument("relations contain a cycle through element " + std::to_string(i + 1));
        }
    }
    return order;
}

TwoPlusTwoVerdict check_two_plus_two_free(const StrictOrder& order) {
    const std::size_t n = order.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 1; a <= n; ++a) {
        for (std::size_t b = 1; b <= n; ++b) {
            if (order.less(a, b)) {
                pairs.emplace_back(a, b);
            }
        }
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [a, b] = pairs[i];
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            const auto [c, d] = pairs[j];
            if (a == c || a == d || b == c || b == d) {
                continue;
            }
            if (!order.comparable(a, c) && !order.comparable(a, d) && !order.comparable(b, c) &&
                !order.comparable(b, d)) {
                return {false, std::array<std::size_t, 4>{a, b, c, d}};
            }
        }
    }
    return {};
}

std::size_t ChainCover::chain_count() const {
    std::set<std::size_t> used;
    for (const auto& e : elements) {
        used.insert(e.chain);
    }
    return used.size();
}

std::vector<std::vector<std::size_t>> ChainCover::chains() const {
    std::size_t top = 0;
    for (const auto& e : elements) {
        top = std::max(top, e.chain);
    }
    std::vector<std::vector<std::size_t>> out(top + 1);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        out[elements[i].chain].push_back(i + 1);
    }
    return out;
}

KiersteadTrotterCover::KiersteadTrotterCover(std::size_t width_bound) : k_(width_bound) {
    if (k_ == 0) {
        throw InvalidArgument("width bound must be positive");
    }
}

bool KiersteadTrotterCover::closes_antichain(const std::vector<std::size_t>& candidates, std::size_t size) const {
    // an antichain of `size` among the candidates, i.e. a clique in incomparability
    if (size == 0) {
        return true;
    }
    if (candidates.size() < size) {
        return false;
    }
    return clique_on(candidates, [&](std::size_t a, std::size_t b) { return row_edge(rows_, a, b); }, size) >= size;
}

ChainAssignment KiersteadTrotterCover::add(std::string_view row) {
    const std::size_t n = size() + 1;
    if (row.size() != n - 1) {
        throw InvalidArgument("row for element " + std::to_string(n) + " must have " + std::to_string(n - 1) +
                              " entries");
    }
    std::vector<std::size_t> neighbours;
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] == '1') {
            neighbours.push_back(j);
        } else if (row[j] != '0') {
            throw InvalidArgument("row entries must be 0 or 1");
        }
    }
    rows_.emplace_back(row);

    // B_k is everything that keeps width <= k; inside it B_{k-1} keeps width
    // <= k-1, and so on. The level is the least j with the element in B_j.
    std::size_t level = k_ + 1;
    for (std::size_t j = k_; j >= 1; --j) {
        std::vector<std::size_t> lower;
        for (std::size_t u : neighbours) {
            if (cover_.elements[u].level <= j) {
                lower.push_back(u);
            }
        }
        if (closes_antichain(lower, j)) {
            break;
        }
        level = j;
    }
    if (level == k_ + 1) {
        rows_.pop_back();
        throw PromiseViolation("width exceeds " + std::to_string(k_), n);
    }

    std::vector<std::size_t> same;
    for (std::size_t u : neighbours) {
        if (cover_.elements[u].level == level) {
            same.push_back(u);
        }
    }
    if (same.size() > 2) {
        rows_.pop_back();
        throw InvariantViolation("element " + std::to_string(n) + " is incomparable to " +
                                 std::to_string(same.size()) + " elements on level " + std::to_string(level));
    }
    for (std::size_t u : same) {
        if (same_level_degree_[u] + 1 > 2) {
            rows_.pop_back();
            throw InvariantViolation("element " + std::to_string(u + 1) + " would have three incomparable peers on level " +
                                     std::to_string(level));
        }
    }

    std::size_t chain = 0;
    if (level == 1) {
        chain = 1;
    } else {
        const std::size_t base = 2 + 3 * (level - 2);
        for (std::size_t c = base; c < base + 3 && chain == 0; ++c) {
            const bool blocked =
                std::any_of(same.begin(), same.end(), [&](std::size_t u) { return cover_.elements[u].chain == c; });
            if (!blocked) {
                chain = c;
            }
        }
        if (chain == 0) {
            rows_.pop_back();
            throw InvariantViolation("no free chain on level " + std::to_string(level));
        }
    }

    for (std::size_t u : same) {
        ++same_level_degree_[u];
    }
    same_level_degree_.push_back(same.size());
    incomparable_.push_back(neighbours);
    cover_.elements.push_back({level, chain});
    return cover_.elements.back();
}

ChainCover kt_chain_cover(const ArrivalPrefix& rows, std::size_t k) {
    const auto checked = rows_of(rows);
    KiersteadTrotterCover cover(k);
    for (const auto& row : checked) {
        cover.add(row);
    }
    return cover.cover();
}

namespace {

bool chain_ok_at(const ArrivalPrefix& sigma, std::size_t v, const Output& out) {
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

OnlineProblem chain_cover_problem() {
    OnlineProblem problem;
    problem.name = "chain-cover";
    problem.kind = StructureKind::interval_order;
    problem.branching_bound = [](std::size_t n) -> std::optional<std::uint64_t> { return saturating_pow2(n - 1); };
    problem.output_alphabet = "positive chain indices";
    problem.admissible = [](const ArrivalPrefix& sigma, std::size_t n, const Output& out) {
        if (out.size() != n) {
            return false;
        }
        for (std::size_t v = 1; v <= n; ++v) {
            if (!chain_ok_at(sigma, v, out)) {
                return false;
            }
        }
        return true;
    };
    problem.extension_admissible = [](const ArrivalPrefix& sigma, std::size_t n, const Output& out) {
        return out.size() == n && chain_ok_at(sigma, n, out);
    };
    return problem;
}

namespace {

OnlineSolver chain_solver(std::string name, std::size_t k) {
    if (k == 0) {
        throw InvalidArgument("width bound must be positive");
    }
    return make_solver(std::move(name), LookaheadSpec::strict(), [k] {
        return [cover = KiersteadTrotterCover(k), out = Output{}](std::size_t n, const PrefixReader& reader) mutable {
            out.push_back(static_cast<std::int64_t>(cover.add(reader.at(n).row).chain));
            return out;
        };
    });
}

} // namespace

OnlineSolver kt_chain_solver(std::size_t k) { return chain_solver("kierstead-trotter-" + std::to_string(k), k); }

colouring::Colouring colour_via_chains(const ArrivalPrefix& graph, std::size_t k) {
    const ChainCover cover = kt_chain_cover(graph, k);
    colouring::Colouring colours;
    colours.reserve(cover.elements.size());
    for (const auto& e : cover.elements) {
        colours.push_back(static_cast<std::int64_t>(e.chain));
    }
    return colours;
}

OnlineSolver chain_colouring_solver(std::size_t k) { return chain_solver("chain-colouring-" + std::to_string(k), k); }

namespace {

// Largest number of accepted intervals sharing a point inside [l, r].
std::size_t overlap_within(const IntervalInstance& accepted, const Interval& probe) {
    IntervalInstance clipped;
    for (const auto& iv : accepted) {
        if (intersects(iv, probe)) {
            clipped.push_back({std::max(iv.left, probe.left), std::min(iv.right, probe.right)});
        }
    }
    return max_overlap(clipped);
}

} // namespace

IntervalInstance generate_intervals(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k == 0 || n < k) {
        throw InvalidArgument("need 1 <= k <= n");
    }
    Rng rng(seed);
    const std::uint64_t span = 4 * static_cast<std::uint64_t>(n);
    const std::uint64_t max_length = 2 * static_cast<std::uint64_t>(k);
    constexpr std::size_t kTriesPerInterval = 1000;
    for (;;) {
        IntervalInstance out;
        bool stuck = false;
        while (out.size() < n && !stuck) {
            stuck = true;
            for (std::size_t attempt = 0; attempt < kTriesPerInterval; ++attempt) {
                const std::uint64_t l = uniform_below(rng, span + 1);
                const std::uint64_t r = std::min(span, l + uniform_below(rng, max_length + 1));
                Interval iv{Rational(static_cast<unsigned long>(l)), Rational(static_cast<unsigned long>(r))};
                if (overlap_within(out, iv) + 1 <= k) {
                    out.push_back(std::move(iv));
                    stuck = false;
                    break;
                }
            }
        }
        if (!stuck && max_overlap(out) == k) {
            return out;
        }
    }
}

void write_intervals_jsonl(std::ostream& out, const IntervalInstance& intervals) {
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        nlohmann::json line{{"i", i + 1}, {"l", to_string(intervals[i].left)}, {"r", to_string(intervals[i].right)}};
        out << line.dump() << '\n';
    }
}

IntervalInstance read_intervals_jsonl(std::istream& in) {
    IntervalInstance intervals;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("l") || !j.contains("r")) {
            throw ParseError("line " + std::to_string(line_no) + ": expected {\"i\", \"l\", \"r\"}");
        }
        if (j.contains("i") && j["i"].get<std::size_t>() != intervals.size() + 1) {
            throw ParseError("line " + std::to_string(line_no) + ": intervals must be numbered consecutively from 1");
        }
        auto endpoint = [&](const nlohmann::json& v) {
            return v.is_string() ? parse_rational(v.get<std::string>()) : parse_rational(v.dump());
        };
        intervals.push_back({endpoint(j["l"]), endpoint(j["r"])});
    }
    validate(intervals);
    return intervals;
}

void write_chain_cover_csv(std::ostream& out, const ChainCover& cover) {
    out << "element,level,chain\n";
    for (std::size_t i = 0; i < cover.elements.size(); ++i) {
        out << i + 1 << ',' << cover.elements[i].level << ',' << cover.elements[i].chain << '\n';
    }
}

} // namespace online::interval
