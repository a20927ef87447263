#include "gwc/relative_fiber.hpp"

#include <random>

namespace gwc {

void FiberQuery::validate() const {
    if (n < 1) throw Error("dimension must be positive");
    if (d < 1) throw Error("invalid tangency");
    if (j < 0 || j > n - 1) throw Error("hyperplane power out of range");
}

Rational closed_form(const FiberQuery& q) {
    q.validate();
    Rational f(mpz_class(factorial(q.d - 1)));
    return Rational(1) / (pow(Rational(q.d), q.n - q.j) * pow(f, q.n));
}

Rational localization_inner(const FiberQuery& q, const WeightVector& lambda) {
    q.validate();
    if (lambda.size() != static_cast<size_t>(q.n + 1)) throw Error("expected n+1 torus weights");
    require_distinct(lambda, "degenerate torus weights");
    int p = q.n - q.j;
    Rational d(q.d), sum;
    for (int i = 1; i <= p; ++i) {
        Rational num = pow((lambda[i] - lambda[0]) / d, q.n - 1 - q.j);
        Rational den(1);
        for (int a = 1; a <= p; ++a)
            if (a != i) den *= lambda[i] - lambda[a];
        sum += num / den;
    }
    return sum / d;
}

Rational localization_sum(const FiberQuery& q, const WeightVector& lambda) {
    Rational f(mpz_class(factorial(q.d - 1)));
    return localization_inner(q, lambda) / pow(f, q.n);
}

Rational vandermonde_identity(const WeightVector& x) {
    if (x.empty()) throw Error("empty tuple");
    require_distinct(x, "repeated entries");
    long p = static_cast<long>(x.size());
    Rational sum;
    for (long i = 0; i < p; ++i) {
        Rational den(1);
        for (long a = 0; a < p; ++a)
            if (a != i) den *= x[i] - x[a];
        sum += pow(x[i], p - 1) / den;
    }
    return sum;
}

PsiPowerCheck psi_power_class_check(int n, int d, int j) {
    FiberQuery q{n, d, j};
    q.validate();
    PsiPowerCheck c;
    c.prefactor = Rational(1) / pow(Rational(mpz_class(factorial(d - 1))), n);
    c.inner = Rational(1) / pow(Rational(d), n - j);
    c.closed = closed_form(q);
    c.agrees = c.prefactor * c.inner == c.closed;
    return c;
}

Rational part_diagonal_factor(int m, int j, int k) {
    return Rational(m) * closed_form(FiberQuery{k, m, k - 1 - j});
}

Rational diagonal_coefficient(const WeightedPartition& mu, const PartitionContext& ctx, long AE) {
    if (ctx.k == 1) {
        if (tangency_sum(mu) != AE) throw Error("inadmissible partition");
        Rational c(1);
        long ones = 0;
        for (const Part& p : mu) {
            c /= Rational(mpz_class(factorial(p.m - 1)));
            if (p.m == 1 && ctx.deg_S[p.cls] == 0 && ctx.deg_f[p.cls] == 0) ++ones;
        }
        return c * pow(Rational(AE), ones);
    }
    Rational c(1);
    for (const Part& p : mu) c *= part_diagonal_factor(p.m, ctx.fiber[p.cls], ctx.k);
    return c;
}

WeightVector random_weights(size_t count, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-50, 50), den(1, 9);
    WeightVector w;
    while (w.size() < count) {
        Rational r = rat(num(rng), den(rng));
        bool dup = false;
        for (const auto& x : w) dup |= x == r;
        if (!dup) w.push_back(r);
    }
    return w;
}

}  // namespace gwc
