#include "online/binpacking.hpp"

#include "online/jsonl.hpp"
#include "online/random.hpp"

#include <json.hpp>

namespace online::packing {

void PackingInstance::validate() const {
    if (capacity <= 0) {
        throw InvalidArgument("capacity must be positive");
    }
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] <= 0 || sizes[i] > capacity) {
            throw InvalidArgument("size of item " + std::to_string(i + 1) + " is outside (0, V]");
        }
    }
}

ArrivalPrefix PackingInstance::to_prefix() const {
    validate();
    return ArrivalPrefix::from_sizes(capacity, sizes);
}

PackingInstance PackingInstance::from_prefix(const ArrivalPrefix& prefix) {
    if (prefix.kind != StructureKind::packing || !prefix.capacity) {
        throw InvalidArgument("expected a packing prefix with a capacity");
    }
    PackingInstance instance{*prefix.capacity, {}};
    for (const auto& e : prefix.events) {
        instance.sizes.push_back(e.size);
    }
    instance.validate();
    return instance;
}

bool is_valid_packing(const PackingInstance& instance, const Packing& packing) {
    if (packing.bin_of.size() != instance.sizes.size()) {
        return false;
    }
    std::vector<Rational> loads(packing.loads.size());
    for (std::size_t i = 0; i < instance.sizes.size(); ++i) {
        const std::size_t b = packing.bin_of[i];
        if (b == 0 || b > loads.size()) {
            return false;
        }
        loads[b - 1] += instance.sizes[i];
    }
    for (std::size_t b = 0; b < loads.size(); ++b) {
        if (loads[b] == 0 || loads[b] > instance.capacity || loads[b] != packing.loads[b]) {
            return false;
        }
    }
    return true;
}

namespace {

// loads implied by the bin labels of items 1..n; empty when a label is out of range
bool fits(const ArrivalPrefix& sigma, std::size_t n, const Output& out) {
    if (out.size() != n || !sigma.capacity) {
        return false;
    }
    std::vector<Rational> loads;
    for (std::size_t i = 0; i < n; ++i) {
        if (out[i] < 1) {
            return false;
        }
        const auto b = static_cast<std::size_t>(out[i]);
        if (b > loads.size()) {
            loads.resize(b);
        }
        loads[b - 1] += sigma.events[i].size;
        if (loads[b - 1] > *sigma.capacity) {
            return false;
        }
    }
    return true;
}

} // namespace

OnlineProblem packing_problem() {
    OnlineProblem problem;
    problem.name = "bin-packing";
    problem.kind = StructureKind::packing;
    // sizes are arbitrary rationals
    problem.branching_bound = [](std::size_t) -> std::optional<std::uint64_t> { return std::nullopt; };
    problem.output_alphabet = "positive bin indices";
    problem.admissible = fits;
    problem.extension_admissible = [](const ArrivalPrefix& sigma, std::size_t n, const Output& out) {
        if (out.size() != n || out[n - 1] < 1 || !sigma.capacity) {
            return false;
        }
        Rational load;
        for (std::size_t i = 0; i < n; ++i) {
            if (out[i] == out[n - 1]) {
                load += sigma.events[i].size;
            }
        }
        return load <= *sigma.capacity;
    };
    return problem;
}

OnlineSolver first_fit_solver(Rational capacity) {
    if (capacity <= 0) {
        throw InvalidArgument("capacity must be positive");
    }
    return make_solver("first-fit-packing", LookaheadSpec::strict(), [capacity] {
        return [ff = FirstFit<Rational>(capacity), out = Output{}](std::size_t n, const PrefixReader& reader) mutable {
            out.push_back(static_cast<std::int64_t>(ff.place(reader.at(n).size)));
            return out;
        };
    });
}

SolutionTrace first_fit_trace(const PackingInstance& instance) {
    return run_online(packing_problem(), first_fit_solver(instance.capacity), instance.to_prefix());
}

Packing first_fit_pack(const PackingInstance& instance) {
    instance.validate();
    FirstFit<Rational> ff(instance.capacity);
    Packing packing;
    for (const auto& s : instance.sizes) {
        packing.bin_of.push_back(ff.place(s));
    }
    packing.loads = ff.loads();
    return packing;
}

std::size_t optimal_pack_exact(const PackingInstance& instance, std::size_t cap) {
    instance.validate();
    if (instance.sizes.size() > cap) {
        throw OracleCapExceeded("optimal_pack_exact", instance.sizes.size(), cap);
    }
    return optimal_bins(instance.sizes, instance.capacity);
}

PackingInstance generate_random(std::size_t n, std::uint64_t max_denominator, std::uint64_t seed) {
    if (max_denominator == 0) {
        throw InvalidArgument("max_denominator must be positive");
    }
    Rng rng(seed);
    PackingInstance instance;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t q = uniform_between(rng, 1, max_denominator);
        const std::uint64_t p = uniform_between(rng, 1, q);
        Rational size(static_cast<unsigned long>(p), static_cast<unsigned long>(q));
        size.canonicalize();
        instance.sizes.push_back(size);
    }
    return instance;
}

void write_instance_jsonl(std::ostream& out, const PackingInstance& instance) {
    out << nlohmann::json{{"capacity", to_string(instance.capacity)}}.dump() << '\n';
    for (std::size_t i = 0; i < instance.sizes.size(); ++i) {
        out << nlohmann::json{{"i", i + 1}, {"size", to_string(instance.sizes[i])}}.dump() << '\n';
    }
}

PackingInstance read_instance_jsonl(std::istream& in) {
    ArrivalPrefix prefix = read_prefix_jsonl(in, StructureKind::packing);
    if (!prefix.capacity) {
        throw ParseError("packing instance has no capacity header");
    }
    return PackingInstance::from_prefix(prefix);
}

ReportRow report_row(const PackingInstance& instance, std::size_t first_fit_bins, std::size_t optimum,
                     std::uint64_t seed) {
    ReportRow row;
    row.kind = "pack";
    row.n = instance.sizes.size();
    row.d_or_k = "V=" + to_string(instance.capacity);
    row.online_cost = Rational(static_cast<unsigned long>(first_fit_bins));
    row.offline_cost = Rational(static_cast<unsigned long>(optimum));
    row.seed = seed;
    return with_ratio(std::move(row));
}

} // namespace online::packing
