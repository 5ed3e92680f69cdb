#pragma once

#include "online/report.hpp"
#include "online/run.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <vector>

namespace online::packing {

struct PackingInstance {
    Rational capacity{1};
    std::vector<Rational> sizes;

    /// Throws InvalidArgument unless V > 0 and every size is in (0, V].
    void validate() const;
    ArrivalPrefix to_prefix() const;
    static PackingInstance from_prefix(const ArrivalPrefix& prefix);
};

struct Packing {
    std::vector<std::size_t> bin_of; ///< 1-based bin of item i at index i-1
    std::vector<Rational> loads;     ///< load of bin b at index b-1

    std::size_t bin_count() const noexcept { return loads.size(); }
};

/// Bin indices per item form a packing of the instance that respects V and
/// numbers bins 1..count without gaps.
bool is_valid_packing(const PackingInstance& instance, const Packing& packing);

/// Incremental first fit over any ordered additive weight type. Supports undo
/// so enumerations can walk a search tree without copying state.
template <class W>
class FirstFit {
public:
    explicit FirstFit(W capacity) : capacity_(std::move(capacity)) {}

    /// Places an item in the least-index bin with room, opening one if none has.
    std::size_t place(const W& size) {
        std::size_t bin = 0;
        while (bin < loads_.size() && loads_[bin] + size > capacity_) {
            ++bin;
        }
        if (bin == loads_.size()) {
            loads_.push_back(W{});
        }
        loads_[bin] += size;
        placed_.push_back({bin, size});
        return bin + 1;
    }

    /// Removes the most recently placed item.
    void undo() {
        const auto [bin, size] = placed_.back();
        placed_.pop_back();
        loads_[bin] -= size;
        if (bin + 1 == loads_.size() && loads_[bin] == W{}) {
            loads_.pop_back();
        }
    }

    std::size_t bins() const noexcept { return loads_.size(); }
    const std::vector<W>& loads() const noexcept { return loads_; }

private:
    struct Placed {
        std::size_t bin;
        W size;
    };
    W capacity_;
    std::vector<W> loads_;
    std::vector<Placed> placed_;
};

/// Minimum bin count by depth-first search over items in decreasing order.
/// Bins are kept in order of their first item; bins with equal load are
/// interchangeable and only the first is tried. Visited (item, load multiset)
/// states are memoised.
template <class W>
std::size_t optimal_bins(std::vector<W> sizes, const W& capacity) {
    if (sizes.empty()) {
        return 0;
    }
    std::sort(sizes.begin(), sizes.end(), [](const W& a, const W& b) { return a > b; });
    std::vector<W> suffix(sizes.size() + 1, W{});
    for (std::size_t i = sizes.size(); i-- > 0;) {
        suffix[i] = suffix[i + 1] + sizes[i];
    }

    // first fit decreasing seeds the incumbent
    FirstFit<W> ffd(capacity);
    for (const W& s : sizes) {
        ffd.place(s);
    }
    std::size_t best = ffd.bins();

    std::vector<W> loads;
    std::set<std::pair<std::size_t, std::vector<W>>> seen;
    auto lower_bound = [&](std::size_t i) {
        // each bin holds at most `capacity`, so the open slack caps what fits without new bins
        W slack{};
        for (const W& l : loads) {
            slack += capacity - l;
        }
        std::size_t extra = 0;
        W overflow = suffix[i] - slack;
        while (overflow > W{}) {
            ++extra;
            overflow -= capacity;
        }
        return loads.size() + extra;
    };

    auto search = [&](auto&& self, std::size_t i) -> void {
        if (i == sizes.size()) {
            best = std::min(best, loads.size());
            return;
        }
        if (lower_bound(i) >= best) {
            return;
        }
        std::vector<W> key = loads;
        std::sort(key.begin(), key.end());
        if (!seen.emplace(i, std::move(key)).second) {
            return;
        }
        for (std::size_t b = 0; b < loads.size(); ++b) {
            if (loads[b] + sizes[i] > capacity) {
                continue;
            }
            bool repeat = false;
            for (std::size_t e = 0; e < b && !repeat; ++e) {
                repeat = loads[e] == loads[b];
            }
            if (repeat) {
                continue;
            }
            loads[b] += sizes[i];
            self(self, i + 1);
            loads[b] -= sizes[i];
        }
        if (loads.size() + 1 < best) {
            loads.push_back(sizes[i]);
            self(self, i + 1);
            loads.pop_back();
        }
    };
    search(search, 0);
    return best;
}

/// Packing as an online problem: output at height n is the bin of each of
/// the first n items, with no bin over capacity.
OnlineProblem packing_problem();

/// The capacity is part of the instance rather than of any event.
OnlineSolver first_fit_solver(Rational capacity);

SolutionTrace first_fit_trace(const PackingInstance& instance);
Packing first_fit_pack(const PackingInstance& instance);

inline constexpr std::size_t kDefaultPackingCap = 12;

/// Exact optimum. Throws OracleCapExceeded for more than `cap` items.
std::size_t optimal_pack_exact(const PackingInstance& instance, std::size_t cap = kDefaultPackingCap);

/// n sizes p/q with q drawn from 1..max_denominator and p from 1..q (V = 1).
PackingInstance generate_random(std::size_t n, std::uint64_t max_denominator, std::uint64_t seed);

/// Header {"capacity": "p/q"} then {"i": int, "size": "p/q"} per item.
void write_instance_jsonl(std::ostream& out, const PackingInstance& instance);
PackingInstance read_instance_jsonl(std::istream& in);

ReportRow report_row(const PackingInstance& instance, std::size_t first_fit_bins, std::size_t optimum,
                     std::uint64_t seed);

} // namespace online::packing
