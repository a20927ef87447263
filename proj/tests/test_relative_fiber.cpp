#include "doctest.h"
#include "gwc/relative_fiber.hpp"

using namespace gwc;

TEST_CASE("closed form values") {
    CHECK(closed_form({2, 1, 0}) == 1);
    CHECK(closed_form({2, 2, 1}) == rat(1, 2));
    CHECK(closed_form({3, 2, 0}) == rat(1, 8));
}

TEST_CASE("localization sum") {
    FiberQuery q{2, 2, 0};
    WeightVector l{0, 1, 3};
    CHECK(localization_inner(q, l) == rat(1, 4));
    CHECK(localization_sum(q, l) == rat(1, 4));
    CHECK_THROWS_WITH(localization_sum(q, {0, 1, 1}), "degenerate torus weights");
    for (int n = 1; n <= 4; ++n)
        for (int d = 1; d <= 5; ++d)
            for (int j = 0; j < n; ++j)
                for (unsigned long s = 0; s < 10; ++s)
                    CHECK(localization_sum({n, d, j}, random_weights(n + 1, 1000 * n + 100 * d + 10 * j + s)) ==
                          closed_form({n, d, j}));
}

TEST_CASE("vandermonde") {
    CHECK(vandermonde_identity({1}) == 1);
    CHECK(vandermonde_identity({0, 1}) == 1);
    CHECK(vandermonde_identity({2, 5, 7}) == 1);
    for (unsigned long s = 0; s < 200; ++s) CHECK(vandermonde_identity(random_weights(1 + s % 6, s)) == 1);
    CHECK_THROWS(vandermonde_identity({1, 1}));
}

TEST_CASE("psi power factorization") {
    auto c = psi_power_class_check(1, 3);
    CHECK(c.prefactor == rat(1, 2));
    CHECK(c.inner == rat(1, 3));
    CHECK(c.agrees);
    CHECK(psi_power_class_check(2, 1).closed == 1);
    auto c2 = psi_power_class_check(2, 3, 1);
    CHECK(c2.prefactor == rat(1, 4));
    CHECK(c2.inner == rat(1, 3));
    CHECK(c2.closed == rat(1, 12));
}

TEST_CASE("diagonal coefficients") {
    auto line = PartitionContext::from_space(build_space(2, SubmanifoldDescriptor::parse("line")));
    int ptE = line.class_of(1, 0), one = line.class_of(0, 0);
    CHECK(diagonal_coefficient({{2, ptE}}, line, 2) == 1);
    CHECK(diagonal_coefficient({{1, one}, {1, one}}, line, 2) == 4);
    CHECK_THROWS_WITH(diagonal_coefficient({{1, one}}, line, 2), "inadmissible partition");
    auto pt = PartitionContext::from_space(build_space(2, SubmanifoldDescriptor::parse("point")));
    CHECK(diagonal_coefficient({{2, pt.class_of(0, 1)}}, pt, 2) == rat(1, 2));
    auto k3 = PartitionContext::synthetic(3, 2);
    WeightedPartition a{{2, k3.class_of(0, 1)}, {1, k3.class_of(1, 2)}}, b{{3, k3.class_of(1, 0)}};
    auto ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    CHECK(diagonal_coefficient(ab, k3, 0) == diagonal_coefficient(a, k3, 0) * diagonal_coefficient(b, k3, 0));
    for (int m = 1; m <= 5; ++m)
        for (int j = 0; j < 3; ++j) CHECK(!part_diagonal_factor(m, j, 3).is_zero());
}
