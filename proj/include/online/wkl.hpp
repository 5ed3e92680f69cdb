#pragma once

#include "online/reductions.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace online::wkl {

/// Binary tree of a fixed height stored as its nodes per level. Level j holds
/// strings of length j; the node set is closed under prefixes. Nodes need not
/// reach the top: a node is live when some top-level node extends it.
class PrunedTree {
public:
    /// The full binary tree of the given height.
    static PrunedTree full(std::size_t height);
    /// Throws InvalidArgument unless level 0 is {""}, lengths match levels
    /// and every node's parent is present.
    static PrunedTree from_levels(std::vector<std::set<std::string>> levels);

    std::size_t height() const noexcept { return levels_.size() - 1; }
    const std::set<std::string>& level(std::size_t j) const { return levels_.at(j); }
    bool contains(const std::string& node) const;
    bool live(const std::string& node) const;

    /// Removes the node and everything above it.
    void kill(const std::string& node);

    /// Least top-level node, if any.
    std::optional<std::string> leftmost_path() const;
    /// Every top-level node.
    const std::set<std::string>& paths() const { return levels_.back(); }

    friend bool operator==(const PrunedTree&, const PrunedTree&) = default;

private:
    std::vector<std::set<std::string>> levels_;
};

struct SeparatingWitness {
    std::size_t level = 0; ///< j = |sigma| = |tau|
    int direction = 0;     ///< i
    std::string sigma;     ///< sigma*i has no extension to the top
    std::string tau;       ///< tau*i does
};

struct SeparatingVerdict {
    bool separating = true;
    std::optional<SeparatingWitness> witness;
};

/// A tree is separating when, at every level, a direction that is dead above
/// one node is dead above every node of that level.
SeparatingVerdict check_separating(const PrunedTree& tree);

/// 2^(n+1) - 2.
std::size_t widened_height(std::size_t n);
/// 1-based H-level of T-string rho: block |rho| starts after 2^|rho| - 2
/// levels and lists the strings of that length in increasing order.
std::size_t h_level(const std::string& rho);
/// The T-string represented by an H-level.
std::string t_string_at(std::size_t level);

/// The widened tree H for a T of height n. Every H-level keeps or drops each
/// direction uniformly, so H is determined by which directions survive per
/// level and is separating by construction. The bit at rho's level says
/// whether a path prefers rho.
class WidenedTree {
public:
    explicit WidenedTree(std::size_t t_height);

    std::size_t t_height() const noexcept { return t_height_; }
    std::size_t height() const noexcept { return allowed_.size(); }
    bool allowed(std::size_t level, int bit) const { return allowed_.at(level - 1)[bit]; }
    /// Some level has no direction left, so H has no path.
    bool empty() const;
    /// Every bit of the H-string is allowed at its level.
    bool survives(const std::string& h_path) const;
    /// The first `n` blocks as the widening of the height-n truncation.
    WidenedTree truncated(std::size_t n) const;

    void forbid(std::size_t level, int bit) { allowed_.at(level - 1)[bit] = false; }

    /// Least surviving H-path of full height.
    std::optional<std::string> leftmost_path() const;

    /// Explicit node sets; only for t_height <= max_t_height (H has up to
    /// 2^(2^(n+1)-2) paths). Throws OracleCapExceeded above that.
    PrunedTree materialize(std::size_t max_t_height = 3) const;

    friend bool operator==(const WidenedTree&, const WidenedTree&) = default;

private:
    std::size_t t_height_;
    std::vector<std::array<bool, 2>> allowed_;
};

/// Builds H stage by stage. For every shortest node sigma' = pi*x that lost
/// its extensions to the top while pi kept one, paths stop preferring
/// sigma' and start preferring its sibling. Restrictions accumulate, so H
/// only ever loses nodes.
class SeparatingWidener {
public:
    explicit SeparatingWidener(std::size_t max_t_height);

    /// Records the deaths visible in a tree of height <= max_t_height.
    void observe(const PrunedTree& t);
    /// H for the first n blocks.
    WidenedTree tree(std::size_t n) const { return h_.truncated(n); }

private:
    WidenedTree h_;
};

WidenedTree widen_separating(const PrunedTree& t);

/// Walks T from the root: at pi go to pi*1 iff the bit at pi*1 is 1 and the
/// bit at pi*0 is 0. The H-path must survive and end on a block boundary.
std::string pullback_path(const WidenedTree& w, const std::string& h_path);

/// The H-path of block height |t_path| that pulls back to t_path: forced
/// bits as H dictates, free bits 1 on the path and 0 elsewhere.
std::string lift_path(const WidenedTree& w, const std::string& t_path);

/// Deaths supplied per stage; stage s lists the nodes killed at s.
struct TreeStages {
    std::vector<std::vector<std::string>> deaths;

    std::size_t stages() const noexcept { return deaths.size(); }
    /// T_s: the full tree of height s minus every node killed by stage s and
    /// everything above it.
    PrunedTree tree_at(std::size_t s) const;
};

/// Stages with random deaths that never kill the last path.
TreeStages random_stages(std::size_t horizon, double death_probability, std::uint64_t seed);
/// A tree of the given height with random deaths; always keeps a path.
PrunedTree random_pruned_tree(std::size_t height, std::size_t deaths, std::uint64_t seed);

/// f(n, s) = bit n of the leftmost path of T_s. Throws InvalidArgument if
/// some T_s has no path.
reductions::LimitingTrace limiting_path(const TreeStages& stages, std::size_t horizon);

struct ComposedRun {
    reductions::LimitingTrace direct;   ///< leftmost path of T_s
    reductions::LimitingTrace composed; ///< leftmost path of H_s pulled back
    std::size_t max_h_level_changes = 0;
    bool valid_paths = true; ///< every pulled-back path survived in T_s
};

/// Widens every stage, takes the leftmost H-path and pulls it back.
ComposedRun composed_limiting_path(const TreeStages& stages, std::size_t horizon);

/// {"stage": s, "dead": ["bits", ...]} per stage.
void write_stages_jsonl(std::ostream& out, const TreeStages& stages);
TreeStages read_stages_jsonl(std::istream& in);

} // namespace online::wkl
