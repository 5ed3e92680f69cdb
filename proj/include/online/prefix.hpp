#pragma once

#include "online/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace online {

/// What kind of structure an arrival sequence builds.
enum class StructureKind {
    graph,          ///< event n: adjacency row to vertices 1..n-1
    interval_order, ///< event n: incomparability row to elements 1..n-1
    packing,        ///< event n: one rational item size
    bitstring,      ///< event n: a single bit
};

std::string_view to_string(StructureKind kind);
StructureKind parse_structure_kind(std::string_view text);

/// One arrival. Bit-valued kinds use `row` ('0'/'1' characters, entry j-1 is
/// the relation to element j); packing uses `size`.
struct ArrivalEvent {
    std::string row;
    Rational size;

    friend bool operator==(const ArrivalEvent&, const ArrivalEvent&) = default;
};

/// A finite monotone encoding of a growing structure, one event per height.
struct ArrivalPrefix {
    StructureKind kind = StructureKind::graph;
    std::vector<ArrivalEvent> events;
    std::optional<Rational> capacity; ///< packing only

    std::size_t height() const noexcept { return events.size(); }

    /// The first m events. Truncations of a valid prefix are valid.
    ArrivalPrefix truncated(std::size_t m) const;

    /// True iff this prefix is an initial segment of `other`.
    bool is_prefix_of(const ArrivalPrefix& other) const;

    static ArrivalPrefix from_rows(StructureKind kind, const std::vector<std::string>& rows);
    static ArrivalPrefix from_sizes(Rational capacity, const std::vector<Rational>& sizes);
    static ArrivalPrefix from_bits(std::string_view bits);

    friend bool operator==(const ArrivalPrefix&, const ArrivalPrefix&) = default;
};

/// Bit j (1-based, j < n) of event n of a bit-row prefix.
bool relation_bit(const ArrivalPrefix& prefix, std::size_t n, std::size_t j);

/// Symmetric relation lookup for graph and order prefixes (1-based, a != b).
bool related(const ArrivalPrefix& prefix, std::size_t a, std::size_t b);

struct PrefixVerdict {
    bool valid = true;
    std::size_t height = 0;
    std::optional<std::size_t> offending_event; ///< 1-based
    std::string reason;
};

/// Checks arity and alphabet of every event; names the first offending event.
PrefixVerdict validate_prefix(const ArrivalPrefix& prefix);

} // namespace online
