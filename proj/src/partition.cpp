#include "gwc/partition.hpp"

#include <algorithm>
#include <iostream>
#include <map>

#include <json.hpp>

namespace gwc {

PartitionContext PartitionContext::from_space(const SpaceModel& sp) {
    PartitionContext c;
    c.k = sp.k;
    for (int i = 0; i < sp.E.size(); ++i) {
        c.deg_S.push_back(sp.deg_S(i));
        c.deg_f.push_back(sp.deg_f(i));
        c.theta.push_back(sp.e_classes[i].s_part_index);
        c.fiber.push_back(sp.e_classes[i].fiber_power);
        c.dual.push_back(sp.E.dual_class(i));
        c.labels.push_back(sp.E.label(i));
    }
    return c;
}

PartitionContext PartitionContext::synthetic(int k, int s_size) {
    PartitionContext c;
    c.k = k;
    for (int a = 0; a < s_size; ++a)
        for (int j = 0; j < k; ++j) {
            c.deg_S.push_back(2 * a);
            c.deg_f.push_back(2 * j);
            c.theta.push_back(a);
            c.fiber.push_back(j);
            c.labels.push_back("t" + std::to_string(a) + "e" + std::to_string(j));
        }
    for (int i = 0; i < c.size(); ++i) c.dual.push_back(c.class_of(s_size - 1 - c.theta[i], k - 1 - c.fiber[i]));
    return c;
}

int PartitionContext::class_of(int th, int j) const {
    for (int i = 0; i < size(); ++i)
        if (theta[i] == th && fiber[i] == j) return i;
    throw Error("not a supported insertion");
}

Ordering size_compare(const Part& a, const Part& b, const PartitionContext& ctx) {
    auto key = [&](const Part& p) { return std::tuple(p.m, ctx.deg_S.at(p.cls), ctx.deg_f.at(p.cls)); };
    auto ka = key(a), kb = key(b);
    if (ka > kb) return Ordering::Greater;
    if (ka < kb) return Ordering::Less;
    return Ordering::Equal;
}

WeightedPartition canonical(WeightedPartition mu, const PartitionContext& ctx) {
    std::sort(mu.begin(), mu.end(), [&](const Part& a, const Part& b) {
        Ordering o = size_compare(a, b, ctx);
        if (o != Ordering::Equal) return o == Ordering::Greater;
        return a.cls < b.cls;
    });
    return mu;
}

Ordering lex_compare(const WeightedPartition& a, const WeightedPartition& b, const PartitionContext& ctx) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        Ordering o = size_compare(a[i], b[i], ctx);
        if (o != Ordering::Equal) return o;
    }
    // A pair is larger than no pair at all.
    if (a.size() > b.size()) return Ordering::Greater;
    if (a.size() < b.size()) return Ordering::Less;
    return Ordering::Equal;
}

long tangency_sum(const WeightedPartition& mu) {
    long s = 0;
    for (const Part& p : mu) s += p.m;
    return s;
}

int deg_S(const WeightedPartition& mu, const PartitionContext& ctx) {
    int s = 0;
    for (const Part& p : mu) s += ctx.deg_S.at(p.cls);
    return s;
}

std::vector<int> underlying(const WeightedPartition& mu) {
    std::vector<int> T;
    for (const Part& p : mu) T.push_back(p.m);
    std::sort(T.rbegin(), T.rend());
    return T;
}

mpz_class aut_order(const std::vector<int>& T) {
    std::map<int, long> mult;
    for (int t : T) ++mult[t];
    mpz_class r = 1;
    for (auto& [t, c] : mult) r *= factorial(c);
    return r;
}

mpz_class weighted_aut_order(const WeightedPartition& mu) {
    std::map<std::pair<int, int>, long> mult;
    for (const Part& p : mu) ++mult[{p.m, p.cls}];
    mpz_class r = 1;
    for (auto& [t, c] : mult) r *= factorial(c);
    return r;
}

Rational delta_coeff(const WeightedPartition& mu) {
    if (mu.empty()) {
        if (verbose()) std::clog << "delta_coeff: empty partition, using 1\n";
        return Rational(1);
    }
    mpz_class prod = 1;
    for (const Part& p : mu) prod *= p.m;
    return Rational(mpz_class(prod * aut_order(underlying(mu))));
}

WeightedPartition dual_partition(const WeightedPartition& mu, const PartitionContext& ctx) {
    WeightedPartition out;
    for (const Part& p : mu) out.push_back({p.m, ctx.dual.at(p.cls)});
    return canonical(out, ctx);
}

std::vector<TradedInsertion> trade(const WeightedPartition& mu, const PartitionContext& ctx) {
    std::vector<TradedInsertion> out;
    for (const Part& p : mu) {
        if (p.m < 1) throw Error("invalid tangency");
        out.push_back({ctx.k * p.m - ctx.k + ctx.fiber.at(p.cls), ctx.theta.at(p.cls)});
    }
    return out;
}

Part untrade(const TradedInsertion& t, const PartitionContext& ctx) {
    if (t.d < 0) throw Error("not a supported insertion");
    return {t.d / ctx.k + 1, ctx.class_of(t.theta, t.d % ctx.k)};
}

std::string to_string(const WeightedPartition& mu, const PartitionContext& ctx) {
    std::string s = "[";
    for (size_t i = 0; i < mu.size(); ++i) {
        if (i) s += ",";
        s += "(" + std::to_string(mu[i].m) + "," + ctx.labels.at(mu[i].cls) + ")";
    }
    return s + "]";
}

WeightedPartition parse_partition(const std::string& json_text, const PartitionContext& ctx) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed partition: ") + e.what());
    }
    WeightedPartition mu;
    for (const auto& pair : j) {
        int m = pair.at(0).get<int>();
        std::string label = pair.at(1).get<std::string>();
        auto it = std::find(ctx.labels.begin(), ctx.labels.end(), label);
        if (it == ctx.labels.end()) throw Error("unknown class '" + label + "'");
        if (m < 1) throw Error("invalid tangency");
        mu.push_back({m, static_cast<int>(it - ctx.labels.begin())});
    }
    return canonical(mu, ctx);
}

}  // namespace gwc
