#include "online/jsonl.hpp"

#include "online/error.hpp"

#include <json.hpp>

#include <string>

namespace online {

using nlohmann::json;

void write_prefix_jsonl(std::ostream& out, const ArrivalPrefix& prefix) {
    for (std::size_t n = 1; n <= prefix.height(); ++n) {
        const ArrivalEvent& event = prefix.events[n - 1];
        json record;
        record["n"] = n;
        if (prefix.kind == StructureKind::packing) {
            record["size"] = to_string(event.size);
        } else {
            record["row"] = event.row;
        }
        out << record.dump() << '\n';
    }
}

ArrivalPrefix read_prefix_jsonl(std::istream& in, StructureKind kind) {
    ArrivalPrefix prefix{kind, {}, std::nullopt};
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError("line " + std::to_string(line_number) + ": " + e.what());
        }
        if (kind == StructureKind::packing && record.contains("capacity")) {
            prefix.capacity = parse_rational(record.at("capacity").get<std::string>());
            continue;
        }
        try {
            std::size_t n = record.contains("n") ? record.at("n").get<std::size_t>()
                                                 : record.at("i").get<std::size_t>();
            if (n != prefix.height() + 1) {
                throw ParseError("line " + std::to_string(line_number) + ": expected event " +
                                 std::to_string(prefix.height() + 1) + ", found " + std::to_string(n));
            }
            ArrivalEvent event;
            if (kind == StructureKind::packing) {
                event.size = parse_rational(record.at("size").get<std::string>());
            } else {
                event.row = record.at("row").get<std::string>();
            }
            prefix.events.push_back(std::move(event));
        } catch (const json::exception& e) {
            throw ParseError("line " + std::to_string(line_number) + ": " + e.what());
        }
    }
    return prefix;
}

void write_trace_jsonl(std::ostream& out, const SolutionTrace& trace) {
    for (std::size_t n = 1; n <= trace.height(); ++n) {
        json record;
        record["height"] = n;
        if (trace.pending(n)) {
            record["output"] = nullptr;
        } else {
            auto view = trace.output_view(n);
            record["output"] = json(std::vector<std::int64_t>(view.begin(), view.end()));
        }
        record["admissible"] = static_cast<bool>(trace.admissible[n - 1]);
        record["read_high_water"] = trace.read_high_water[n - 1];
        bool monotone_here = true;
        json violation = nullptr;
        for (const auto& v : trace.violations) {
            if (v.height == n) {
                if (v.kind == ViolationKind::monotonicity) {
                    monotone_here = false;
                }
                if (violation.is_null()) {
                    violation = {{"kind", std::string(to_string(v.kind))}, {"detail", v.detail}};
                }
            }
        }
        record["monotone"] = monotone_here;
        record["violation"] = violation;
        out << record.dump() << '\n';
    }
}

} // namespace online
