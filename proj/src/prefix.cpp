#include "online/prefix.hpp"

#include "online/error.hpp"

#include <algorithm>

namespace online {

std::string_view to_string(StructureKind kind) {
    switch (kind) {
    case StructureKind::graph: return "graph";
    case StructureKind::interval_order: return "interval-order";
    case StructureKind::packing: return "packing";
    case StructureKind::bitstring: return "bitstring";
    }
    return "unknown";
}

StructureKind parse_structure_kind(std::string_view text) {
    for (auto kind : {StructureKind::graph, StructureKind::interval_order, StructureKind::packing,
                      StructureKind::bitstring}) {
        if (to_string(kind) == text) {
            return kind;
        }
    }
    throw ParseError("unknown structure kind '" + std::string(text) + "'");
}

ArrivalPrefix ArrivalPrefix::truncated(std::size_t m) const {
    ArrivalPrefix out{kind, {}, capacity};
    m = std::min(m, events.size());
    out.events.assign(events.begin(), events.begin() + static_cast<std::ptrdiff_t>(m));
    return out;
}

bool ArrivalPrefix::is_prefix_of(const ArrivalPrefix& other) const {
    return kind == other.kind && capacity == other.capacity && events.size() <= other.events.size() &&
           std::equal(events.begin(), events.end(), other.events.begin());
}

ArrivalPrefix ArrivalPrefix::from_rows(StructureKind kind, const std::vector<std::string>& rows) {
    ArrivalPrefix out{kind, {}, std::nullopt};
    out.events.reserve(rows.size());
    for (const auto& row : rows) {
        out.events.push_back({row, Rational(0)});
    }
    return out;
}

ArrivalPrefix ArrivalPrefix::from_sizes(Rational capacity, const std::vector<Rational>& sizes) {
    ArrivalPrefix out{StructureKind::packing, {}, std::move(capacity)};
    out.events.reserve(sizes.size());
    for (const auto& size : sizes) {
        out.events.push_back({std::string(), size});
    }
    return out;
}

ArrivalPrefix ArrivalPrefix::from_bits(std::string_view bits) {
    ArrivalPrefix out{StructureKind::bitstring, {}, std::nullopt};
    for (char bit : bits) {
        out.events.push_back({std::string(1, bit), Rational(0)});
    }
    return out;
}

bool relation_bit(const ArrivalPrefix& prefix, std::size_t n, std::size_t j) {
    return prefix.events[n - 1].row[j - 1] == '1';
}

bool related(const ArrivalPrefix& prefix, std::size_t a, std::size_t b) {
    if (a == b) {
        return false;
    }
    return a > b ? relation_bit(prefix, a, b) : relation_bit(prefix, b, a);
}

PrefixVerdict validate_prefix(const ArrivalPrefix& prefix) {
    PrefixVerdict verdict;
    verdict.height = prefix.height();
    auto fail = [&](std::size_t n, std::string reason) {
        verdict.valid = false;
        verdict.offending_event = n;
        verdict.reason = std::move(reason);
        return verdict;
    };
    if (prefix.kind == StructureKind::packing && prefix.capacity && *prefix.capacity <= 0) {
        return fail(0, "capacity must be positive");
    }
    for (std::size_t n = 1; n <= prefix.height(); ++n) {
        const ArrivalEvent& event = prefix.events[n - 1];
        switch (prefix.kind) {
        case StructureKind::graph:
        case StructureKind::interval_order:
            if (event.row.size() != n - 1) {
                return fail(n, "row has " + std::to_string(event.row.size()) + " entries, expected " +
                                   std::to_string(n - 1));
            }
            break;
        case StructureKind::bitstring:
            if (event.row.size() != 1) {
                return fail(n, "bitstring event must carry exactly one bit");
            }
            break;
        case StructureKind::packing:
            if (event.size <= 0) {
                return fail(n, "item size must be positive");
            }
            if (prefix.capacity && event.size > *prefix.capacity) {
                return fail(n, "item size exceeds capacity");
            }
            continue;
        }
        if (std::any_of(event.row.begin(), event.row.end(), [](char c) { return c != '0' && c != '1'; })) {
            return fail(n, "row contains a symbol outside {0,1}");
        }
    }
    return verdict;
}

} // namespace online
