#include <random>

#include "doctest.h"
#include "gwc/correspondence.hpp"
#include "gwc/relative_fiber.hpp"

using namespace gwc;

namespace {

CorrespondenceEngine& engine() {
    static CorrespondenceEngine e;
    return e;
}

const CorrespondenceMatrix& matrix(long B) {
    static std::map<long, CorrespondenceMatrix> cache;
    auto it = cache.find(B);
    if (it == cache.end()) it = cache.emplace(B, engine().build_matrix(Rational(B), GraphFilter::Genus0Pt)).first;
    return it->second;
}

}  // namespace

TEST_CASE("splittings form trees with the delta weight") {
    int count = 0;
    for_each_splitting({{1}, {1}}, 1, 1, true, [&](const SplitShape& s) {
        ++count;
        CHECK(s.edges.size() == 1);
        CHECK(s.delta == 1);
        CHECK(s.weight == 1);
    });
    CHECK(count == 1);
    for_each_splitting({{2}, {1}}, 2, 3, false, [&](const SplitShape& s) {
        CHECK(static_cast<int>(s.edges.size()) == s.p + s.q - 1);
        mpz_class prod = 1;
        std::vector<int> T;
        for (const auto& e : s.edges) {
            prod *= e.t;
            T.push_back(e.t);
        }
        CHECK(s.delta == prod * aut_order(T));
        CHECK(s.weight * Rational(mpz_class(aut_order(T) * aut_order(T))) == Rational(s.delta));
    });
}

TEST_CASE("P1 point degeneration") {
    const Target& t = engine_for(TargetKind::P1).target();
    int pt = t.point();
    auto r = degeneration_sum_p1(1, {{0, pt}, {0, pt}}, {0, 1});
    CHECK(r.value == 1);
    REQUIRE(r.terms.size() == 1);
    CHECK(r.terms[0].delta == 1);
    CHECK(r.terms[0].minus == std::vector<std::string>{"<pt|1>_1"});
    CHECK(r.terms[0].plus == std::vector<std::string>{"<pt|1>_1"});
    CHECK_THROWS_AS(degeneration_sum_p1(1, {{0, pt}}, {0, 1}), Error);
}

TEST_CASE("P1 degeneration matches the absolute invariants") {
    GwEngine& g = engine_for(TargetKind::P1);
    const Target& t = g.target();
    std::mt19937_64 rng(20240611);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 60; ++trial) {
        long d = 1 + static_cast<long>(rng() % 3);
        int n = 1 + static_cast<int>(rng() % 4);
        std::vector<Insertion> ins;
        std::vector<int> side;
        for (int i = 0; i < n; ++i) {
            int cls = static_cast<int>(rng() % 2);
            int psi = static_cast<int>(rng() % 3);
            ins.push_back({psi, cls});
            side.push_back(static_cast<int>(rng() % 2));
        }
        if (!g.dimension_ok(t.make_class({d}), ins)) continue;
        ++checked;
        CHECK(degeneration_sum_p1(d, ins, side).value == g.evaluate(t.make_class({d}), ins));
    }
    CHECK(checked >= 20);
}

TEST_CASE("matrix is lower triangular with the closed-form diagonal") {
    for (long B : {1L, 2L, 3L}) {
        const auto& m = matrix(B);
        CHECK(triangularity_violations(m).empty());
        for (size_t i = 0; i < m.order.size(); ++i) CHECK(m.at(i, i) == engine().diagonal_expected(m.graphs[i]));
    }
    CHECK(matrix(3).order.size() == 167);
}

TEST_CASE("rows with empty partitions are unit rows") {
    const auto& m = matrix(2);
    for (size_t i = 0; i < m.order.size(); ++i) {
        bool empty_mu = true;
        for (const auto& v : m.graphs[i].comps) empty_mu &= v.mu.empty();
        if (!empty_mu) continue;
        CHECK(m.at(i, i) == 1);
        for (size_t c = 0; c < i; ++c) CHECK(m.at(i, c) == 0);
    }
}

TEST_CASE("solved relative invariants count curves on the blow-up") {
    const auto& m = matrix(3);
    auto abs = engine().absolute_vector(m);
    auto rel = solve_lower(m, abs.entries, SolveDirection::AbsToRel);
    GwEngine& bl = engine_for(TargetKind::BlP2);
    int pt = bl.target().point();
    int checked = 0;
    for (size_t i = 0; i < m.order.size(); ++i) {
        const auto& g = m.graphs[i];
        if (g.comps.size() != 1) continue;
        const auto& v = g.comps[0];
        bool simple = true;
        for (const auto& x : v.tails) simple &= x.cls == pt && x.d == 0;
        for (const auto& p : v.mu) simple &= p.m == 1 && p.cls == engine().graphs().partitions().class_of(0, 0);
        if (!simple) continue;
        long b = static_cast<long>(v.mu.size());
        CHECK(rel.at(m.order[i]) == Rational(mpz_class(factorial(b))) * bl.point_invariant(v.A));
        ++checked;
    }
    CHECK(checked >= 5);
    CHECK(rel.at("g0:L-E:pt|[(1,1_E)]") == 1);
    CHECK(rel.at("g0:3L-E:pt,pt,pt,pt,pt,pt,pt|[(1,1_E)]") == 12);
    CHECK(rel.at("g0:3L-2E:pt,pt,pt,pt,pt,pt|[(1,1_E),(1,1_E)]") == 2);
}

TEST_CASE("relative divisor axiom for the pulled-back line") {
    const auto& m = matrix(3);
    auto rel = solve_lower(m, engine().absolute_vector(m).entries, SolveDirection::AbsToRel);
    const auto& ctx = engine().graphs();
    int H = ctx.space().X.index("H");
    int checked = 0;
    for (size_t i = 0; i < m.order.size(); ++i) {
        const auto& g = m.graphs[i];
        if (g.comps.size() != 1) continue;
        RelVertex v = g.comps[0];
        auto it = std::find(v.tails.begin(), v.tails.end(), Insertion{0, H});
        if (it == v.tails.end()) continue;
        v.tails.erase(it);
        std::string k = ctx.key(ctx.single(v));
        if (!m.index(k)) continue;
        CHECK(rel.at(m.order[i]) == Rational(v.A.coeff[0]) * rel.at(k));
        ++checked;
    }
    CHECK(checked >= 10);
}

TEST_CASE("disconnected rows are products") {
    const auto& m = matrix(3);
    auto abs = engine().absolute_vector(m);
    auto rel = solve_lower(m, abs.entries, SolveDirection::AbsToRel);
    const auto& ctx = engine().graphs();
    for (size_t i = 0; i < m.order.size(); ++i) {
        const auto& g = m.graphs[i];
        if (g.comps.size() < 2) continue;
        Rational p(1);
        bool all = true;
        for (const auto& v : g.comps) {
            auto k = ctx.key(ctx.single(v));
            if (!m.index(k)) {
                all = false;
                break;
            }
            p *= rel.at(k);
        }
        if (all) CHECK(rel.at(m.order[i]) == p);
    }
}

TEST_CASE("round trip on random vectors") {
    const auto& m = matrix(2);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        InvariantVector v;
        for (const auto& k : m.order) v[k] = rat(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 7));
        auto a = solve_lower(m, v, SolveDirection::RelToAbs);
        auto back = solve_lower(m, a, SolveDirection::AbsToRel);
        for (const auto& k : m.order) CHECK(back.at(k) == v.at(k));
    }
}

TEST_CASE("truncation is local") {
    const auto& small = matrix(2);
    const auto& big = matrix(3);
    for (size_t r = 0; r < small.order.size(); ++r)
        for (size_t c = 0; c <= r; ++c) {
            auto R = big.index(small.order[r]);
            auto C = big.index(small.order[c]);
            REQUIRE(R);
            REQUIRE(C);
            CHECK(big.at(*R, *C) == small.at(r, c));
        }
}

TEST_CASE("degeneration sum with an oracle table") {
    const auto& m = matrix(2);
    auto abs = engine().absolute_vector(m);
    auto rel = solve_lower(m, abs.entries, SolveDirection::AbsToRel);
    for (size_t i = 0; i < m.order.size(); ++i)
        CHECK(engine().degeneration_sum(m.graphs[i], rel).value == abs.entries.at(m.order[i]));
    auto last = m.graphs.back();
    InvariantVector partial = rel;
    partial.erase(m.order.back());
    CHECK_THROWS_WITH_AS(engine().degeneration_sum(last, partial), doctest::Contains("missing oracle value"), Error);
}

TEST_CASE("solver errors") {
    auto m = matrix(1);
    CHECK_THROWS_AS(solve_lower(m, {{"nonsense", Rational(1)}}, SolveDirection::AbsToRel), Error);
    auto singular = m;
    singular.entries.erase({0, 0});
    CHECK_THROWS_WITH_AS(solve_lower(singular, {}, SolveDirection::AbsToRel),
                         doctest::Contains("non-invertible truncation"), Error);
    CHECK_THROWS_AS(parse_direction("sideways"), Error);
}

TEST_CASE("matrix json round trip") {
    const auto& m = matrix(2);
    auto m2 = CorrespondenceMatrix::from_json(m.to_json());
    CHECK(m2.order == m.order);
    CHECK(m2.entries == m.entries);
    TaggedVector v = engine().absolute_vector(m);
    auto v2 = vector_from_json(vector_to_json(v));
    CHECK(v2.entries == v.entries);
    CHECK(to_string(v2.tag) == "I_0pt");
}

TEST_CASE("uniruled search") {
    auto p2 = uniruled_search(TargetKind::P2, 3);
    REQUIRE(p2.found);
    CHECK(query_string(engine_for(TargetKind::P2).target(), p2.query) == query_string(engine_for(TargetKind::P2).target(), Query{engine_for(TargetKind::P2).target().make_class({1}), {{0, 2}, {0, 2}}}));
    CHECK(p2.value == 1);
    auto bl = uniruled_search(TargetKind::BlP2, 3);
    REQUIRE(bl.found);
    CHECK(bl.query.A == engine_for(TargetKind::BlP2).target().parse_class("L-E"));
    CHECK(bl.value == 1);
    auto none = uniruled_search(TargetKind::P2, 0);
    CHECK_FALSE(none.found);
    CHECK_FALSE(none.trail.empty());
}

TEST_CASE("transfer in both directions") {
    const auto& m = matrix(3);
    auto a = transfer_p2_to_blowup(engine(), m);
    CHECK(a.ok);
    CHECK(a.relative_key == "g0:L-E:pt|[(1,1_E)]");
    CHECK(a.relative_value == 1);
    CHECK(a.target.value == 1);
    auto b = transfer_blowup_to_p2(engine(), m);
    CHECK(b.ok);
    CHECK(b.relative_key == "g0:L-E:pt|[(1,1_E)]");
    CHECK(b.target.found);
    CHECK(b.target.query.A.coeff == std::vector<long>{1});
    CHECK(b.target.value == 1);
}
