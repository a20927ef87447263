#include <random>

#include "doctest.h"
#include "gwc/gw.hpp"

using namespace gwc;

namespace {

Rational inv_fact_pow(long d, long e) { return Rational(1) / pow(Rational(mpz_class(factorial(d))), e); }

}  // namespace

TEST_CASE("kontsevich numbers agree along both routes") {
    const long expected[] = {1, 1, 12, 620, 87304, 26312976};
    for (int d = 1; d <= 6; ++d) {
        CHECK(kontsevich(d) == Rational(expected[d - 1]));
        CHECK(kontsevich_via_blowup(d) == kontsevich(d));
    }
}

TEST_CASE("blow-up point invariants") {
    GwEngine& e = engine_for(TargetKind::BlP2);
    const Target& t = e.target();
    CHECK(e.point_invariant(t.parse_class("E")) == 1);
    CHECK(e.point_invariant(t.parse_class("L-E")) == 1);
    CHECK(e.point_invariant(t.parse_class("2L-2E")) == 0);
    CHECK(e.point_invariant(t.parse_class("3L-2E")) == 1);
    CHECK(e.point_invariant(t.parse_class("4L")) == 620);
    CHECK(e.point_invariant(t.parse_class("4L-E")) == 620);
    CHECK(e.point_invariant(t.parse_class("L+E")) == 0);
}

TEST_CASE("one-point descendents of P1 and P2") {
    GwEngine& p2 = engine_for(TargetKind::P2);
    GwEngine& p1 = engine_for(TargetKind::P1);
    for (long d = 1; d <= 3; ++d) {
        Query q{p2.target().make_class({d}), {{static_cast<int>(3 * d - 2), p2.target().point()}}};
        CHECK(p2.evaluate(q) == inv_fact_pow(d, 3));
        Query r{p1.target().make_class({d}), {{static_cast<int>(2 * d - 2), p1.target().point()}}};
        CHECK(p1.evaluate(r) == inv_fact_pow(d, 2));
    }
}

TEST_CASE("axioms and dimension filter") {
    GwEngine& e = engine_for(TargetKind::P2);
    const Target& t = e.target();
    auto L = t.make_class({1});
    CHECK(e.evaluate(L, parse_insertions(t, "pt,pt")) == 1);
    CHECK(e.evaluate(L, parse_insertions(t, "pt,pt,H")) == 1);
    CHECK(e.evaluate(L, parse_insertions(t, "pt,H")) == 0);
    CHECK(e.evaluate(L, parse_insertions(t, "pt,tau1(H)")) == -1);
    CHECK(e.evaluate(L, parse_insertions(t, "pt,tau1(H),H")) == 0);
    auto C = t.make_class({2});
    auto pts = parse_insertions(t, "pt,pt,pt,pt,pt");
    auto with_unit = pts;
    with_unit.push_back({1, t.unit()});
    CHECK(e.evaluate(C, with_unit) == Rational(static_cast<long>(pts.size()) - 2) * e.evaluate(C, pts));
}

TEST_CASE("zero-class rule") {
    GwEngine& e = engine_for(TargetKind::P2);
    const Target& t = e.target();
    CHECK(e.zero_class(parse_insertions(t, "pt,1,1")) == 1);
    CHECK(e.zero_class(parse_insertions(t, "H,H,1")) == 1);
    std::string note;
    CHECK(e.zero_class(parse_insertions(t, "pt,tau1(H),H"), &note) == 0);
    CHECK(e.zero_class(parse_insertions(t, "pt,1"), &note) == 0);
    CHECK(note == "unstable");
}

TEST_CASE("multilinearity on random two-term combinations") {
    std::mt19937 rng(20240611);
    GwEngine& e = engine_for(TargetKind::BlP2);
    const Target& t = e.target();
    std::uniform_int_distribution<int> coef(-3, 3), cls(0, t.basis().size() - 1), psi(0, 2);
    auto A = t.parse_class("2L-E");
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::pair<int, ClassVec>> ins;
        std::vector<Insertion> base;
        for (int i = 0; i < 3; ++i) {
            Insertion x{psi(rng), cls(rng)};
            base.push_back(x);
            ins.push_back({x.d, t.basis().basis_vector(x.cls)});
        }
        int i = trial % 3;
        int c1 = cls(rng), c2 = cls(rng);
        Rational a = coef(rng), b = coef(rng);
        ClassVec v(t.basis().size());
        v[c1] += a;
        v[c2] += b;
        ins[i].second = v;
        auto q1 = base, q2 = base;
        q1[i].cls = c1;
        q2[i].cls = c2;
        CHECK(e.evaluate_linear(A, ins) == a * e.evaluate(A, q1) + b * e.evaluate(A, q2));
    }
}

TEST_CASE("divisor reduction relation holds") {
    GwEngine& e = engine_for(TargetKind::P2);
    const Target& t = e.target();
    Query q{t.make_class({1}), parse_insertions(t, "pt,tau1(H),H")};
    Relation r = e.divisor_reduce(q, 2);
    CHECK(r.terms.size() == 3);
    CHECK(r.terms[0].first == 1);
    Rational s;
    for (auto& [c, x] : r.terms) s += c * e.evaluate(x);
    CHECK(s == 0);
    Query q2{t.make_class({2}), parse_insertions(t, "pt,pt,pt,tau1(pt),H")};
    CHECK(e.divisor_reduce(q2, 4).terms[0].first == 2);
    Query bad{t.make_class({1}), parse_insertions(t, "pt,pt")};
    CHECK_THROWS_WITH(e.divisor_reduce(bad, 0), "insertion is not a primary divisor");
}

TEST_CASE("boundary split reproduces the query") {
    GwEngine& e = engine_for(TargetKind::BlP2);
    const Target& t = e.target();
    Query q{t.parse_class("2L-E"), parse_insertions(t, "pt,tau2(pt),H,pt")};
    auto terms = e.psi_boundary_split(q, 0, 2, 1);
    Rational s;
    for (auto& term : terms) {
        CHECK(t.add(term.factors[0].A, term.factors[1].A) == q.A);
        s += term.coeff * e.evaluate(term.factors[0]) * e.evaluate(term.factors[1]);
    }
    CHECK(s == e.evaluate(q));
    Query prim{t.parse_class("L"), parse_insertions(t, "pt,pt,H")};
    CHECK_THROWS_WITH(e.psi_boundary_split(prim, 0, 1, 2), "nothing to reduce");
}

TEST_CASE("reduction to primary") {
    GwEngine& e = engine_for(TargetKind::P2);
    const Target& t = e.target();
    Query prim{t.make_class({1}), parse_insertions(t, "pt,pt")};
    auto r0 = e.reduce_to_primary(prim);
    CHECK(r0.has_witness);
    CHECK(r0.steps.empty());
    Query q{t.make_class({1}), parse_insertions(t, "pt,tau1(H),H")};
    auto r1 = e.reduce_to_primary(q);
    CHECK(r1.value == 0);
    CHECK(r1.steps.size() <= 10);
    for (const char* s : {"pt,tau1(H)", "pt,tau2(1)", "pt,tau1(pt),H,H", "pt,pt,tau2(H),pt"}) {
        Query x{t.make_class({1}), parse_insertions(t, s)};
        for (long d = 1; d <= 2; ++d) {
            x.A = t.make_class({d});
            Rational v = e.evaluate(x);
            auto r = e.reduce_to_primary(x);
            CHECK(r.value == v);
            if (v.is_zero()) {
                Rational s2;
                for (auto& term : r.primary_expansion) {
                    Rational p = term.coeff;
                    for (auto& f : term.factors) p *= e.evaluate(f);
                    s2 += p;
                }
                CHECK(s2 == 0);
            } else {
                REQUIRE(r.has_witness);
                CHECK(!e.evaluate(r.witness).is_zero());
                CHECK(!r.witness.A.is_zero());
            }
        }
    }
}
