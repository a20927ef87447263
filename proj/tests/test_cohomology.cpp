#include "doctest.h"
#include "gwc/cohomology.hpp"

using namespace gwc;

namespace {

void audit(const GradedBasis& b) {
    int n = b.size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CHECK(b.pairing()[i][j] == b.pairing()[j][i]);
            CHECK(b.product(i, j) == b.product(j, i));
            for (int k = 0; k < n; ++k) {
                ClassVec ij = b.cup(b.basis_vector(i), b.basis_vector(j));
                ClassVec jk = b.cup(b.basis_vector(j), b.basis_vector(k));
                CHECK(b.cup(ij, b.basis_vector(k)) == b.cup(b.basis_vector(i), jk));
            }
        }
    CHECK(b.degree(b.unit()) == 0);
    if (b.self_dual())
        for (int i = 0; i < n; ++i) {
            CHECK(b.pairing()[i][b.dual_class(i)] == 1);
            CHECK(b.dual_class(b.dual_class(i)) == i);
        }
}

}  // namespace

TEST_CASE("blow-up of P2 at a point") {
    SpaceModel sp = build_space(2, SubmanifoldDescriptor::parse("point"));
    CHECK(sp.k == 2);
    CHECK(sp.E.size() == 2);
    CHECK(sp.E.label(0) == "1_E");
    CHECK(sp.E.label(1) == "[E]");
    CHECK(sp.Xt.size() == 4);
    int E = sp.Xt.index("E"), H = sp.Xt.index("H"), pt = sp.Xt.index("pt");
    CHECK(sp.Xt.integral_of_product({E, E}) == -1);
    CHECK(sp.Xt.integral_of_product({H, H}) == 1);
    CHECK(sp.Xt.integral_of_product({H, E}) == 0);
    CHECK(sp.Xt.integral_of_product({pt}) == 1);
    CHECK(sp.E.dual_class(0) == 1);
    for (auto* b : {&sp.X, &sp.S, &sp.E, &sp.Xt}) audit(*b);
}

TEST_CASE("other centers") {
    SpaceModel line = build_space(2, SubmanifoldDescriptor::parse("line"));
    CHECK(line.k == 1);
    CHECK(line.E.size() == 2);
    SpaceModel p3 = build_space(3, SubmanifoldDescriptor::parse("point"));
    CHECK(p3.k == 3);
    CHECK(p3.E.size() == 3);
    int top = p3.e_index(0, 2);
    CHECK(p3.deg_S(top) == 0);
    CHECK(p3.deg_f(top) == 4);
    SpaceModel l3 = build_space(3, SubmanifoldDescriptor::parse("line"));
    int d = l3.e_index(l3.S.index("pt_S"), 0);
    CHECK(l3.deg_S(d) == 2);
    CHECK(l3.deg_f(d) == 0);
    for (auto* sp : {&line, &p3, &l3})
        for (auto* b : {&sp->X, &sp->S, &sp->E, &sp->Xt}) audit(*b);
    CHECK_THROWS_WITH(SubmanifoldDescriptor::parse("conic"), "unsupported geometry");
}

TEST_CASE("pullback is injective and P2 middle class is self-dual") {
    GradedBasis p2 = build_projective_space(2);
    CHECK(p2.dual_class(p2.index("H")) == p2.index("H"));
    CHECK(p2.dual_class(p2.unit()) == p2.top());
    SpaceModel sp = build_space(3, SubmanifoldDescriptor::parse("line"));
    for (size_t i = 0; i < sp.pullback.size(); ++i)
        for (size_t j = 0; j < i; ++j) CHECK(sp.pullback[i] != sp.pullback[j]);
}
