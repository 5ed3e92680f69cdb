#include "online/wkl.hpp"

#include "online/random.hpp"

#include <json.hpp>

#include <algorithm>

namespace online::wkl {

namespace {

void check_bits(const std::string& node) {
    if (node.find_first_not_of("01") != std::string::npos) {
        throw InvalidArgument("tree nodes are strings over {0,1}, got \"" + node + "\"");
    }
}

bool extends(const std::string& longer, const std::string& shorter) {
    return longer.size() >= shorter.size() && longer.compare(0, shorter.size(), shorter) == 0;
}

} // namespace

PrunedTree PrunedTree::full(std::size_t height) {
    PrunedTree t;
    t.levels_.push_back({""});
    for (std::size_t j = 1; j <= height; ++j) {
        std::set<std::string> next;
        for (const auto& node : t.levels_.back()) {
            next.insert(node + '0');
            next.insert(node + '1');
        }
        t.levels_.push_back(std::move(next));
    }
    return t;
}

PrunedTree PrunedTree::from_levels(std::vector<std::set<std::string>> levels) {
    if (levels.empty() || levels[0] != std::set<std::string>{""}) {
        throw InvalidArgument("level 0 must hold exactly the empty string");
    }
    for (std::size_t j = 1; j < levels.size(); ++j) {
        for (const auto& node : levels[j]) {
            check_bits(node);
            if (node.size() != j) {
                throw InvalidArgument("node \"" + node + "\" listed on level " + std::to_string(j));
            }
            if (!levels[j - 1].contains(node.substr(0, j - 1))) {
                throw InvalidArgument("node \"" + node + "\" has no parent");
            }
        }
    }
    PrunedTree t;
    t.levels_ = std::move(levels);
    return t;
}

bool PrunedTree::contains(const std::string& node) const {
    return node.size() <= height() && levels_[node.size()].contains(node);
}

bool PrunedTree::live(const std::string& node) const {
    if (node.size() > height()) {
        return false;
    }
    const auto& top = levels_.back();
    auto it = top.lower_bound(node);
    return it != top.end() && extends(*it, node);
}

void PrunedTree::kill(const std::string& node) {
    check_bits(node);
    if (node.empty()) {
        throw InvalidArgument("the root cannot be killed");
    }
    for (std::size_t j = node.size(); j <= height(); ++j) {
        auto& level = levels_[j];
        auto it = level.lower_bound(node);
        while (it != level.end() && extends(*it, node)) {
            it = level.erase(it);
        }
    }
}

std::optional<std::string> PrunedTree::leftmost_path() const {
    if (levels_.back().empty()) {
        return std::nullopt;
    }
    return *levels_.back().begin();
}

SeparatingVerdict check_separating(const PrunedTree& tree) {
    for (std::size_t j = 0; j < tree.height(); ++j) {
        for (int i = 0; i < 2; ++i) {
            const char c = static_cast<char>('0' + i);
            const std::string* dead = nullptr;
            const std::string* alive = nullptr;
            for (const auto& node : tree.level(j)) {
                if (tree.live(node + c)) {
                    alive = alive ? alive : &node;
                } else {
                    dead = dead ? dead : &node;
                }
            }
            if (dead && alive) {
                return {false, SeparatingWitness{j, i, *dead, *alive}};
            }
        }
    }
    return {};
}

std::size_t widened_height(std::size_t n) {
    if (n >= 62) {
        throw InvalidArgument("widened height overflows");
    }
    return (std::size_t{2} << n) - 2;
}

std::size_t h_level(const std::string& rho) {
    check_bits(rho);
    if (rho.empty() || rho.size() >= 62) {
        throw InvalidArgument("h_level needs a nonempty string shorter than 62");
    }
    const std::size_t value = std::stoull(rho, nullptr, 2);
    return (std::size_t{1} << rho.size()) - 2 + value + 1;
}

std::string t_string_at(std::size_t level) {
    if (level == 0) {
        throw InvalidArgument("H-levels start at 1");
    }
    std::size_t m = 1;
    while (widened_height(m) < level) {
        ++m;
    }
    std::size_t value = level - widened_height(m - 1) - 1;
    std::string rho(m, '0');
    for (std::size_t b = m; b-- > 0;) {
        rho[b] = (value & 1U) ? '1' : '0';
        value >>= 1;
    }
    return rho;
}

WidenedTree::WidenedTree(std::size_t t_height)
    : t_height_(t_height), allowed_(widened_height(t_height), std::array<bool, 2>{true, true}) {}

bool WidenedTree::empty() const {
    return std::any_of(allowed_.begin(), allowed_.end(), [](const auto& a) { return !a[0] && !a[1]; });
}

bool WidenedTree::survives(const std::string& h_path) const {
    if (h_path.size() > height()) {
        return false;
    }
    for (std::size_t i = 0; i < h_path.size(); ++i) {
        if ((h_path[i] != '0' && h_path[i] != '1') || !allowed_[i][h_path[i] - '0']) {
            return false;
        }
    }
    return true;
}

WidenedTree WidenedTree::truncated(std::size_t n) const {
    if (n > t_height_) {
        throw InvalidArgument("cannot truncate H above its T-height");
    }
    WidenedTree w(n);
    std::copy_n(allowed_.begin(), w.allowed_.size(), w.allowed_.begin());
    return w;
}

std::optional<std::string> WidenedTree::leftmost_path() const {
    std::string path;
    path.reserve(height());
    for (const auto& a : allowed_) {
        if (a[0]) {
            path += '0';
        } else if (a[1]) {
            path += '1';
        } else {
            return std::nullopt;
        }
    }
    return path;
}

PrunedTree WidenedTree::materialize(std::size_t max_t_height) const {
    if (t_height_ > max_t_height) {
        throw OracleCapExceeded("WidenedTree::materialize", t_height_, max_t_height);
    }
    std::vector<std::set<std::string>> levels{{""}};
    for (const auto& a : allowed_) {
        std::set<std::string> next;
        for (const auto& node : levels.back()) {
            for (int bit = 0; bit < 2; ++bit) {
                if (a[bit]) {
                    next.insert(node + static_cast<char>('0' + bit));
                }
            }
        }
        levels.push_back(std::move(next));
    }
    return PrunedTree::from_levels(std::move(levels));
}

SeparatingWidener::SeparatingWidener(std::size_t max_t_height) : h_(max_t_height) {}

void SeparatingWidener::observe(const PrunedTree& t) {
    if (t.height() > h_.t_height()) {
        throw InvalidArgument("tree is taller than the widener was built for");
    }
    if (t.height() == 0) {
        return;
    }
    if (!t.live("")) {
        h_.forbid(1, 0);
        h_.forbid(1, 1);
        return;
    }
    for (std::size_t j = 0; j < t.height(); ++j) {
        for (const auto& pi : t.level(j)) {
            if (!t.live(pi)) {
                continue;
            }
            for (char x : {'0', '1'}) {
                if (!t.live(pi + x)) {
                    const char other = x == '0' ? '1' : '0';
                    h_.forbid(h_level(pi + x), 1);
                    h_.forbid(h_level(pi + other), 0);
                }
            }
        }
    }
}

WidenedTree widen_separating(const PrunedTree& t) {
    SeparatingWidener widener(t.height());
    widener.observe(t);
    return widener.tree(t.height());
}

std::string pullback_path(const WidenedTree& w, const std::string& h_path) {
    std::size_t m = 0;
    while (m <= w.t_height() && widened_height(m) < h_path.size()) {
        ++m;
    }
    if (m > w.t_height() || widened_height(m) != h_path.size()) {
        throw InvalidArgument("H-path of length " + std::to_string(h_path.size()) + " does not end on a block boundary");
    }
    if (!w.survives(h_path)) {
        throw InvalidArgument("H-path does not survive in H");
    }
    std::string pi;
    for (std::size_t step = 0; step < m; ++step) {
        const char b0 = h_path[h_level(pi + '0') - 1];
        const char b1 = h_path[h_level(pi + '1') - 1];
        pi += (b1 == '1' && b0 == '0') ? '1' : '0';
    }
    return pi;
}

std::string lift_path(const WidenedTree& w, const std::string& t_path) {
    check_bits(t_path);
    if (t_path.size() > w.t_height()) {
        throw InvalidArgument("T-path is taller than H covers");
    }
    const std::size_t length = widened_height(t_path.size());
    std::string h_path(length, '0');
    for (std::size_t level = 1; level <= length; ++level) {
        const bool zero = w.allowed(level, 0);
        const bool one = w.allowed(level, 1);
        if (!zero && !one) {
            throw InvalidArgument("H has no path");
        }
        if (zero && one) {
            h_path[level - 1] = extends(t_path, t_string_at(level)) ? '1' : '0';
        } else {
            h_path[level - 1] = one ? '1' : '0';
        }
    }
    return h_path;
}

PrunedTree TreeStages::tree_at(std::size_t s) const {
    PrunedTree t = PrunedTree::full(s);
    for (std::size_t stage = 1; stage <= std::min(s, deaths.size()); ++stage) {
        for (const auto& node : deaths[stage - 1]) {
            check_bits(node);
            if (!node.empty() && t.contains(node)) {
                t.kill(node);
            }
        }
    }
    return t;
}

namespace {

std::vector<std::string> non_root_nodes(const PrunedTree& t) {
    std::vector<std::string> nodes;
    for (std::size_t j = 1; j <= t.height(); ++j) {
        nodes.insert(nodes.end(), t.level(j).begin(), t.level(j).end());
    }
    return nodes;
}

bool draw(Rng& rng, double probability) {
    return static_cast<double>(uniform_below(rng, 1'000'000)) < probability * 1e6;
}

} // namespace

TreeStages random_stages(std::size_t horizon, double death_probability, std::uint64_t seed) {
    Rng rng(seed);
    TreeStages stages;
    for (std::size_t s = 1; s <= horizon; ++s) {
        stages.deaths.emplace_back();
        if (!draw(rng, death_probability)) {
            continue;
        }
        const PrunedTree current = stages.tree_at(s);
        const auto nodes = non_root_nodes(current);
        for (int attempt = 0; attempt < 8 && !nodes.empty(); ++attempt) {
            const std::string& node = nodes[uniform_below(rng, nodes.size())];
            PrunedTree trial = current;
            trial.kill(node);
            if (trial.live("")) {
                stages.deaths.back().push_back(node);
                break;
            }
        }
    }
    return stages;
}

PrunedTree random_pruned_tree(std::size_t height, std::size_t deaths, std::uint64_t seed) {
    Rng rng(seed);
    PrunedTree t = PrunedTree::full(height);
    for (std::size_t d = 0; d < deaths; ++d) {
        const auto nodes = non_root_nodes(t);
        if (nodes.empty()) {
            break;
        }
        PrunedTree trial = t;
        trial.kill(nodes[uniform_below(rng, nodes.size())]);
        if (trial.live("")) {
            t = std::move(trial);
        }
    }
    return t;
}

namespace {

Output bits_of(const std::string& path) {
    Output out;
    out.reserve(path.size());
    for (char c : path) {
        out.push_back(c - '0');
    }
    return out;
}

} // namespace

reductions::LimitingTrace limiting_path(const TreeStages& stages, std::size_t horizon) {
    return reductions::tabulate_limiting(
        [&](std::size_t s) {
            auto path = stages.tree_at(s).leftmost_path();
            if (!path) {
                throw InvalidArgument("T_" + std::to_string(s) + " has no path");
            }
            return bits_of(*path);
        },
        horizon);
}

ComposedRun composed_limiting_path(const TreeStages& stages, std::size_t horizon) {
    ComposedRun run;
    run.direct = limiting_path(stages, horizon);
    run.composed = reductions::LimitingTrace(horizon);
    SeparatingWidener widener(horizon);
    std::string previous;
    std::vector<std::size_t> changes(widened_height(horizon), 0);
    for (std::size_t s = 1; s <= horizon; ++s) {
        const PrunedTree t = stages.tree_at(s);
        widener.observe(t);
        const WidenedTree h = widener.tree(s);
        const auto h_path = h.leftmost_path();
        if (!h_path) {
            throw InvalidArgument("H_" + std::to_string(s) + " has no path");
        }
        for (std::size_t i = 0; i < previous.size(); ++i) {
            if (previous[i] != (*h_path)[i]) {
                run.max_h_level_changes = std::max(run.max_h_level_changes, ++changes[i]);
            }
        }
        previous = *h_path;
        const std::string pulled = pullback_path(h, *h_path);
        run.valid_paths = run.valid_paths && t.contains(pulled);
        run.composed.push_stage(bits_of(pulled));
    }
    return run;
}

void write_stages_jsonl(std::ostream& out, const TreeStages& stages) {
    for (std::size_t s = 1; s <= stages.stages(); ++s) {
        out << nlohmann::json{{"stage", s}, {"dead", stages.deaths[s - 1]}}.dump() << '\n';
    }
}

TreeStages read_stages_jsonl(std::istream& in) {
    TreeStages stages;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            const auto record = nlohmann::json::parse(line);
            const auto s = record.at("stage").get<std::size_t>();
            if (s != stages.stages() + 1) {
                throw ParseError("line " + std::to_string(line_no) + ": stages must be numbered consecutively from 1");
            }
            auto dead = record.at("dead").get<std::vector<std::string>>();
            for (const auto& node : dead) {
                if (node.empty() || node.find_first_not_of("01") != std::string::npos) {
                    throw ParseError("line " + std::to_string(line_no) + ": bad node \"" + node + "\"");
                }
            }
            stages.deaths.push_back(std::move(dead));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return stages;
}

} // namespace online::wkl
