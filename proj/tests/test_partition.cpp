#include <random>
#include <functional>
#include <set>

#include "doctest.h"
#include "gwc/partition.hpp"

using namespace gwc;

namespace {

PartitionContext bl_ctx() { return PartitionContext::from_space(build_space(2, SubmanifoldDescriptor::parse("point"))); }

}  // namespace

TEST_CASE("size relation") {
    auto ctx = PartitionContext::from_space(build_space(3, SubmanifoldDescriptor::parse("line")));
    int one = ctx.class_of(0, 0), ptS = ctx.class_of(1, 0), fib = ctx.class_of(0, 1), top = ctx.class_of(1, 1);
    CHECK(size_compare({2, one}, {1, top}, ctx) == Ordering::Greater);
    CHECK(size_compare({1, ptS}, {1, fib}, ctx) == Ordering::Greater);
    CHECK(size_compare({1, fib}, {1, one}, ctx) == Ordering::Greater);
    CHECK(size_compare({1, one}, {1, one}, ctx) == Ordering::Equal);
}

TEST_CASE("lexicographic order") {
    auto ctx = PartitionContext::from_space(build_space(3, SubmanifoldDescriptor::parse("line")));
    int one = ctx.class_of(0, 0), ptS = ctx.class_of(1, 0);
    WeightedPartition a{{2, one}}, b{{1, one}, {1, one}};
    CHECK(lex_compare(a, b, ctx) == Ordering::Greater);
    CHECK(lex_compare(b, a, ctx) == Ordering::Less);
    CHECK(lex_compare({{1, ptS}}, {{1, one}}, ctx) == Ordering::Greater);
    CHECK(lex_compare(b, b, ctx) == Ordering::Equal);
}

TEST_CASE("automorphisms and delta") {
    CHECK(delta_coeff({{2, 0}, {2, 0}}) == 8);
    CHECK(delta_coeff({{1, 0}}) == 1);
    CHECK(delta_coeff({{3, 0}, {1, 0}, {1, 1}}) == 6);
    CHECK(delta_coeff({}) == 1);
    CHECK(weighted_aut_order({{1, 0}, {1, 1}}) == 1);
    CHECK(aut_order({1, 1}) == 2);
    CHECK(delta_coeff({{1, 0}, {3, 0}, {1, 1}}) == delta_coeff({{3, 0}, {1, 1}, {1, 0}}));
}

TEST_CASE("dual partitions") {
    auto ctx = bl_ctx();
    auto d = dual_partition({{2, 0}}, ctx);
    CHECK(d == WeightedPartition{{2, 1}});
    CHECK(dual_partition({}, ctx).empty());
    std::mt19937 rng(11);
    auto big = PartitionContext::synthetic(3, 3);
    std::uniform_int_distribution<int> len(0, 4), m(1, 4), c(0, big.size() - 1);
    for (int i = 0; i < 500; ++i) {
        WeightedPartition mu;
        for (int l = len(rng); l > 0; --l) mu.push_back({m(rng), c(rng)});
        CHECK(dual_partition(dual_partition(mu, big), big) == canonical(mu, big));
    }
}

TEST_CASE("insertion trade") {
    auto line = PartitionContext::from_space(build_space(2, SubmanifoldDescriptor::parse("line")));
    int ptE = line.class_of(1, 0);
    auto t = trade({{3, ptE}}, line);
    REQUIRE(t.size() == 1);
    CHECK(t[0].d == 2);
    CHECK(t[0].theta == 1);
    auto ctx = bl_ctx();
    auto t2 = trade({{2, 1}}, ctx);
    CHECK(t2[0].d == 3);
    CHECK(t2[0].theta == 0);
    CHECK(trade({{1, 0}}, ctx)[0].d == 0);
    CHECK(untrade({3, 0}, ctx) == Part{2, ctx.class_of(0, 1)});
    CHECK(untrade({0, 0}, line) == Part{1, line.class_of(0, 0)});
    auto k3 = PartitionContext::synthetic(3, 1);
    CHECK(untrade({4, 0}, k3) == Part{2, k3.class_of(0, 1)});
    CHECK_THROWS_WITH(untrade({0, 5}, ctx), "not a supported insertion");
}

TEST_CASE("trade is injective on small partitions") {
    for (int k = 1; k <= 3; ++k)
        for (int s = 1; k * s <= 4; ++s) {
            auto ctx = PartitionContext::synthetic(k, s);
            std::vector<Part> parts;
            for (int m = 1; m <= 4; ++m)
                for (int c = 0; c < ctx.size(); ++c) parts.push_back({m, c});
            std::set<std::vector<TradedInsertion>> seen;
            size_t count = 0;
            std::function<void(size_t, WeightedPartition)> rec = [&](size_t from, WeightedPartition mu) {
                auto tr = trade(mu, ctx);
                std::sort(tr.begin(), tr.end());
                seen.insert(tr);
                ++count;
                for (const Part& p : parts) {
                    CHECK(untrade(trade({p}, ctx)[0], ctx) == p);
                }
                if (mu.size() == 4) return;
                for (size_t i = from; i < parts.size(); ++i) {
                    auto next = mu;
                    next.push_back(parts[i]);
                    rec(i, next);
                }
            };
            rec(0, {});
            CHECK(seen.size() == count);
        }
}

TEST_CASE("divisor case bookkeeping and deg_S additivity") {
    auto line = PartitionContext::from_space(build_space(2, SubmanifoldDescriptor::parse("line")));
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> len(0, 4), m(1, 5), c(0, line.size() - 1);
    for (int i = 0; i < 200; ++i) {
        WeightedPartition a, b;
        for (int l = len(rng); l > 0; --l) a.push_back({m(rng), c(rng)});
        for (int l = len(rng); l > 0; --l) b.push_back({m(rng), c(rng)});
        long sd = 0;
        for (auto& t : trade(a, line)) sd += t.d;
        CHECK(sd + static_cast<long>(a.size()) == tangency_sum(a));
        auto ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        CHECK(deg_S(ab, line) == deg_S(a, line) + deg_S(b, line));
    }
}

TEST_CASE("partition parsing") {
    auto ctx = bl_ctx();
    auto mu = parse_partition(R"([[1,"1_E"],[2,"[E]"]])", ctx);
    CHECK(mu == canonical({{2, 1}, {1, 0}}, ctx));
}
