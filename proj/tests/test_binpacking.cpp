#include "online/binpacking.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <sstream>

using namespace online;
using namespace online::packing;

namespace {

PackingInstance instance(std::vector<Rational> sizes, Rational capacity = Rational(1)) {
    return PackingInstance{std::move(capacity), std::move(sizes)};
}

// test oracle: every set partition by restricted growth strings
std::size_t brute_optimum(const PackingInstance& inst) {
    const std::size_t n = inst.sizes.size();
    std::size_t best = n;
    std::vector<Rational> loads;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == n) {
            best = std::min(best, loads.size());
            return;
        }
        for (std::size_t b = 0; b <= loads.size(); ++b) {
            if (b == loads.size()) {
                loads.push_back(inst.sizes[i]);
                walk(i + 1);
                loads.pop_back();
            } else if (loads[b] + inst.sizes[i] <= inst.capacity) {
                loads[b] += inst.sizes[i];
                walk(i + 1);
                loads[b] -= inst.sizes[i];
            }
        }
    };
    walk(0);
    return best;
}

} // namespace

TEST(FirstFit, ClassicGap) {
    auto inst = instance({Rational(3, 10), Rational(3, 10), Rational(3, 10), Rational(7, 10), Rational(7, 10),
                          Rational(7, 10)});
    auto p = first_fit_pack(inst);
    EXPECT_EQ(p.bin_count(), 4u);
    EXPECT_EQ(p.bin_of, (std::vector<std::size_t>{1, 1, 1, 2, 3, 4}));
    EXPECT_TRUE(is_valid_packing(inst, p));
    EXPECT_EQ(optimal_pack_exact(inst), 3u);
}

TEST(FirstFit, FullItemsNeedOneBinEach) {
    auto inst = instance(std::vector<Rational>(5, Rational(2)), Rational(2));
    EXPECT_EQ(first_fit_pack(inst).bin_count(), 5u);
    EXPECT_EQ(optimal_pack_exact(inst), 5u);
}

TEST(FirstFit, SmallTotalFitsOneBin) {
    auto inst = instance({Rational(1, 4), Rational(1, 3), Rational(1, 6), Rational(1, 4)});
    EXPECT_EQ(first_fit_pack(inst).bin_count(), 1u);
    EXPECT_EQ(optimal_pack_exact(inst), 1u);
}

TEST(FirstFit, TemplateUndo) {
    FirstFit<int> ff(6);
    EXPECT_EQ(ff.place(4), 1u);
    EXPECT_EQ(ff.place(3), 2u);
    EXPECT_EQ(ff.place(2), 1u);
    ff.undo();
    ff.undo();
    EXPECT_EQ(ff.bins(), 1u);
    EXPECT_EQ(ff.loads(), std::vector<int>{4});
}

TEST(FirstFit, TraceIsMonotoneAndWithinCapacity) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto inst = generate_random(40, 7, seed);
        auto trace = first_fit_trace(inst);
        ASSERT_TRUE(trace.clean());
        for (std::size_t n = 2; n <= trace.height(); ++n) {
            const auto prev = *trace.output(n - 1);
            const auto cur = *trace.output(n);
            EXPECT_TRUE(std::equal(prev.begin(), prev.end(), cur.begin()));
        }
        auto p = first_fit_pack(inst);
        EXPECT_TRUE(is_valid_packing(inst, p));
        for (const auto& load : p.loads) {
            EXPECT_LE(load, inst.capacity);
        }
    }
}

TEST(Optimum, AgreesWithBruteForce) {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        auto inst = generate_random(3 + seed % 6, 1 + seed % 9, seed);
        EXPECT_EQ(optimal_pack_exact(inst), brute_optimum(inst)) << "seed " << seed;
    }
}

TEST(Optimum, IntegerAndRationalAgree) {
    // sixths scaled to integers give the same optimum
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto inst = generate_random(10, 6, seed);
        std::vector<int> scaled;
        for (const auto& s : inst.sizes) {
            Rational x = s * 60;
            scaled.push_back(static_cast<int>(x.get_num().get_si()));
        }
        EXPECT_EQ(optimal_bins<int>(scaled, 60), optimal_pack_exact(inst));
    }
}

TEST(Optimum, NeverAboveFirstFit) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto inst = generate_random(12, 10, seed);
        EXPECT_LE(optimal_pack_exact(inst), first_fit_pack(inst).bin_count());
    }
}

TEST(Optimum, CapExceeded) {
    auto inst = generate_random(13, 4, 1);
    EXPECT_THROW(optimal_pack_exact(inst), OracleCapExceeded);
    EXPECT_NO_THROW(optimal_pack_exact(inst, 13));
}

TEST(Instance, Validation) {
    EXPECT_THROW(instance({Rational(0)}).validate(), InvalidArgument);
    EXPECT_THROW(instance({Rational(3, 2)}).validate(), InvalidArgument);
    EXPECT_THROW(instance({Rational(1, 2)}, Rational(0)).validate(), InvalidArgument);
    EXPECT_NO_THROW(instance({Rational(1)}).validate());
}

TEST(Instance, PrefixRoundTrip) {
    auto inst = instance({Rational(1, 3), Rational(1, 2)}, Rational(3, 2));
    auto back = PackingInstance::from_prefix(inst.to_prefix());
    EXPECT_EQ(back.capacity, inst.capacity);
    EXPECT_EQ(back.sizes, inst.sizes);
}

TEST(Instance, GeneratorRange) {
    auto inst = generate_random(200, 5, 3);
    for (const auto& s : inst.sizes) {
        EXPECT_GT(s, 0);
        EXPECT_LE(s, 1);
        EXPECT_LE(s.get_den(), 5);
    }
    EXPECT_EQ(generate_random(20, 5, 3).sizes, generate_random(20, 5, 3).sizes);
}

TEST(Io, JsonlRoundTrip) {
    auto inst = instance({Rational(1, 3), Rational(2, 7)}, Rational(5, 4));
    std::stringstream s;
    write_instance_jsonl(s, inst);
    auto back = read_instance_jsonl(s);
    EXPECT_EQ(back.capacity, inst.capacity);
    EXPECT_EQ(back.sizes, inst.sizes);
}

TEST(Report, Row) {
    auto inst = instance({Rational(1, 2)});
    auto row = report_row(inst, 4, 3, 7);
    EXPECT_EQ(row.kind, "pack");
    EXPECT_EQ(row.seed, 7u);
    EXPECT_EQ(row.ratio, Rational(4, 3));
}
