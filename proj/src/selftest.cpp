#include "gwc/selftest.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "gwc/correspondence.hpp"
#include "gwc/relative_fiber.hpp"

namespace gwc {

namespace {

struct Check {
    bool ok = true;
    std::string first_failure;
    long count = 0;
    void expect(bool c, const std::string& what) {
        ++count;
        if (!c && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

bool c1_fiber_grid(unsigned long seed, std::string& detail) {
    Check c;
    for (int n = 1; n <= 4; ++n)
        for (int d = 1; d <= 5; ++d)
            for (int j = 0; j < n; ++j) {
                FiberQuery q{n, d, j};
                Rational expect = Rational(1) / (pow(Rational(d), n - j) * pow(Rational(mpz_class(factorial(d - 1))), n));
                c.expect(closed_form(q) == expect, "closed form n=" + std::to_string(n) + " d=" + std::to_string(d));
                for (unsigned long s = 0; s < 10; ++s) {
                    auto w = random_weights(n + 1, seed + 1000 * n + 100 * d + 10 * j + s);
                    c.expect(localization_sum(q, w) == expect,
                             "localization n=" + std::to_string(n) + " d=" + std::to_string(d) + " j=" + std::to_string(j));
                }
            }
    detail = c.ok ? std::to_string(c.count) + " exact equalities" : c.first_failure;
    return c.ok;
}

bool c2_vandermonde(unsigned long seed, std::string& detail) {
    Check c;
    for (unsigned long s = 0; s < 200; ++s) {
        auto w = random_weights(1 + s % 6, seed + s);
        c.expect(vandermonde_identity(w) == 1, "tuple " + std::to_string(s));
    }
    detail = c.ok ? "200 tuples" : c.first_failure;
    return c.ok;
}

bool c3_trade(std::string& detail) {
    Check c;
    long total = 0;
    for (int k = 1; k <= 3; ++k)
        for (int s = 1; k * s <= 4; ++s) {
            auto ctx = PartitionContext::synthetic(k, s);
            std::vector<Part> parts;
            for (int m = 1; m <= 4; ++m)
                for (int cl = 0; cl < ctx.size(); ++cl) parts.push_back({m, cl});
            for (const Part& p : parts) {
                auto tr = trade({p}, ctx);
                c.expect(tr.size() == 1 && untrade(tr[0], ctx) == p, "untrade after trade");
            }
            std::set<std::vector<TradedInsertion>> seen;
            long count = 0;
            std::function<void(size_t, WeightedPartition)> rec = [&](size_t from, WeightedPartition mu) {
                auto tr = trade(mu, ctx);
                WeightedPartition back;
                for (const auto& t : tr) back.push_back(untrade(t, ctx));
                c.expect(canonical(back, ctx) == canonical(mu, ctx), "untrade of a partition");
                std::sort(tr.begin(), tr.end());
                seen.insert(tr);
                ++count;
                if (mu.size() == 4) return;
                for (size_t i = from; i < parts.size(); ++i) {
                    auto next = mu;
                    next.push_back(parts[i]);
                    rec(i, next);
                }
            };
            rec(0, {});
            c.expect(static_cast<long>(seen.size()) == count, "injectivity k=" + std::to_string(k));
            total += count;
        }
    detail = c.ok ? std::to_string(total) + " partitions" : c.first_failure;
    return c.ok;
}

RelGraph random_graph(const GraphContext& ctx, std::mt19937& rng) {
    auto vertex = [&] {
        std::uniform_int_distribution<int> a(1, 3), n(0, 3), g(0, 1), cls(0, ctx.space().X.size() - 1),
            ecls(0, ctx.partitions().size() - 1), m(1, 2);
        RelVertex v;
        long aa = a(rng);
        v.A = ctx.target().make_class({aa, std::uniform_int_distribution<long>(0, aa)(rng)});
        v.genus = g(rng);
        for (int i = n(rng); i > 0; --i) v.tails.push_back({0, cls(rng)});
        for (int i = n(rng) % 3; i > 0; --i) v.mu.push_back({m(rng), ecls(rng)});
        return v;
    };
    RelGraph g = ctx.single(vertex());
    if (rng() % 3 == 0) g = ctx.disjoint_union(g, ctx.single(vertex()));
    return g;
}

bool c4_order(unsigned long seed, std::string& detail) {
    Check c;
    GraphContext ctx;
    std::mt19937 rng(static_cast<unsigned>(seed));
    for (int i = 0; i < 500; ++i) {
        RelGraph a = random_graph(ctx, rng), b = random_graph(ctx, rng), d = random_graph(ctx, rng);
        c.expect(ctx.order_compare(a, a) == GraphOrder::Equal, "irreflexive");
        if (ctx.order_compare(a, b) == GraphOrder::Lower && ctx.order_compare(b, d) == GraphOrder::Lower)
            c.expect(ctx.order_compare(a, d) == GraphOrder::Lower, "transitive");
        c.expect(!(ctx.order_compare(a, b) == GraphOrder::Lower && ctx.order_compare(b, a) == GraphOrder::Lower),
                 "antisymmetric");
    }
    int hits = 0;
    for (int i = 0; i < 200; ++i) {
        RelGraph a = random_graph(ctx, rng), b = random_graph(ctx, rng), d = random_graph(ctx, rng);
        if (ctx.order_compare(a, b) != GraphOrder::Lower) std::swap(a, b);
        if (ctx.order_compare(a, b) != GraphOrder::Lower) continue;
        ++hits;
        c.expect(ctx.order_compare(ctx.disjoint_union(a, d), ctx.disjoint_union(b, d)) == GraphOrder::Lower,
                 "union monotonicity");
    }
    c.expect(hits > 0, "no comparable pairs sampled");
    size_t prev = 0;
    std::string sizes;
    for (int B = 1; B <= 3; ++B) {
        size_t n = ctx.enumerate_below(Rational(B), GraphFilter::Genus0Pt).size();
        c.expect(n >= prev, "enumeration not monotone");
        prev = n;
        sizes += (B > 1 ? "," : "") + std::to_string(n);
    }
    detail = c.ok ? "union pairs " + std::to_string(hits) + ", sizes " + sizes : c.first_failure;
    return c.ok;
}

bool c5_matrix(unsigned long seed, std::string& detail) {
    Check c;
    CorrespondenceEngine eng;
    auto m = eng.build_matrix(Rational(3), GraphFilter::Genus0Pt);
    auto viol = triangularity_violations(m);
    c.expect(viol.empty(), viol.empty() ? "" : "entry above diagonal " + viol[0].first + " / " + viol[0].second);
    for (size_t i = 0; i < m.order.size(); ++i) {
        Rational d = m.at(i, i);
        c.expect(!d.is_zero() && d == eng.diagonal_expected(m.graphs[i]), "diagonal at " + m.order[i]);
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < 100; ++t) {
        InvariantVector v;
        for (const auto& k : m.order)
            if (rng() % 4 == 0) v[k] = rat(static_cast<long>(rng() % 61) - 30, 1 + static_cast<long>(rng() % 9));
        auto back = solve_lower(m, solve_lower(m, v, SolveDirection::RelToAbs), SolveDirection::AbsToRel);
        bool same = true;
        for (const auto& k : m.order) {
            auto it = v.find(k);
            same &= back.at(k) == (it == v.end() ? Rational(0) : it->second);
        }
        c.expect(same, "round trip " + std::to_string(t));
    }
    detail = c.ok ? std::to_string(m.order.size()) + " rows, " + std::to_string(m.entries.size()) + " nonzero entries"
                  : c.first_failure;
    return c.ok;
}

bool c6_wdvv(std::string& detail) {
    Check c;
    const long expect[] = {1, 1, 12, 620, 87304, 26312976};
    for (int d = 1; d <= 6; ++d) {
        Rational a = kontsevich(d), b = kontsevich_via_blowup(d);
        c.expect(a == Rational(expect[d - 1]) && b == a, "N_" + std::to_string(d));
    }
    detail = c.ok ? "N_1..N_6 agree on both routes" : c.first_failure;
    return c.ok;
}

bool c7_zero_class(std::string& detail) {
    Check c;
    long descendent = 0;
    for (TargetKind k : {TargetKind::Point, TargetKind::P1, TargetKind::P2, TargetKind::BlP2}) {
        GwEngine& e = engine_for(k);
        const Target& t = e.target();
        std::vector<Insertion> three{{0, t.point()}, {0, t.unit()}, {0, t.unit()}};
        c.expect(e.zero_class(three) == 1 && e.evaluate(t.zero_class(), three) == 1, "<pt,1,1>_0 on " + t.name());
        int nb = t.basis().size();
        std::vector<Insertion> cur;
        std::function<void(int)> rec = [&](int left) {
            bool desc = false;
            for (const auto& x : cur) desc |= x.d > 0;
            if (desc) {
                ++descendent;
                c.expect(e.zero_class(cur).is_zero(), "descendent zero-class on " + t.name());
            }
            if (left == 0) return;
            for (int d = 0; d <= 2; ++d)
                for (int cl = 0; cl < nb; ++cl) {
                    cur.push_back({d, cl});
                    rec(left - 1);
                    cur.pop_back();
                }
        };
        rec(4);
    }
    detail = c.ok ? std::to_string(descendent) + " strictly descendent queries" : c.first_failure;
    return c.ok;
}

bool c8_uniruled(std::string& detail) {
    Check c;
    auto p2 = uniruled_search(TargetKind::P2, 3);
    c.expect(p2.found && p2.query.A.coeff == std::vector<long>{1} && p2.value == 1, "P2 witness");
    auto bl = uniruled_search(TargetKind::BlP2, 3);
    const Target& blt = engine_for(TargetKind::BlP2).target();
    c.expect(bl.found && bl.query.A == blt.parse_class("L-E") && bl.value == 1, "Bl witness");
    CorrespondenceEngine eng;
    auto m = eng.build_matrix(Rational(3), GraphFilter::Genus0Pt);
    auto up = transfer_p2_to_blowup(eng, m);
    c.expect(up.ok && up.target.found && up.target.query.A == blt.parse_class("L-E") && up.target.value == 1,
             "P2 to Bl transfer");
    auto down = transfer_blowup_to_p2(eng, m);
    c.expect(down.ok && down.target.found && down.target.query.A.coeff == std::vector<long>{1} &&
                 down.target.value == 1,
             "Bl to P2 transfer");
    detail = c.ok ? "P2 " + query_string(engine_for(TargetKind::P2).target(), p2.query) + ", Bl " +
                        query_string(blt, bl.query) + ", via " + up.relative_key
                  : c.first_failure;
    return c.ok;
}

bool c9_degeneration(std::string& detail) {
    Check c;
    int pt = engine_for(TargetKind::P1).target().point();
    auto r = degeneration_sum_p1(1, {{0, pt}, {0, pt}}, {0, 1});
    Rational sum;
    for (const auto& t : r.terms) sum += t.contribution;
    c.expect(r.value == 1 && sum == 1 && !r.terms.empty(), "<pt,pt>_1");
    c.expect(engine_for(TargetKind::P1).evaluate(engine_for(TargetKind::P1).target().make_class({1}),
                                                 {{0, pt}, {0, pt}}) == 1,
             "direct count");
    detail = c.ok ? std::to_string(r.terms.size()) + " splitting term(s)" : c.first_failure;
    return c.ok;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(unsigned long seed) {
    struct Entry {
        int id;
        const char* name;
        double limit;
        std::function<bool(std::string&)> run;
    };
    std::vector<Entry> specs = {
        {1, "fiber closed form vs localization grid", 10, [&](std::string& d) { return c1_fiber_grid(seed, d); }},
        {2, "vandermonde identity", 1, [&](std::string& d) { return c2_vandermonde(seed, d); }},
        {3, "trade bijectivity", 5, [](std::string& d) { return c3_trade(d); }},
        {4, "order laws", 5, [&](std::string& d) { return c4_order(seed, d); }},
        {5, "matrix structure", 30, [&](std::string& d) { return c5_matrix(seed, d); }},
        {6, "WDVV kernel", 5, [](std::string& d) { return c6_wdvv(d); }},
        {7, "zero-class rule", 1, [](std::string& d) { return c7_zero_class(d); }},
        {8, "uniruledness transfer", 60, [](std::string& d) { return c8_uniruled(d); }},
        {9, "degeneration smoke test", 1, [](std::string& d) { return c9_degeneration(d); }},
    };
    std::vector<CriterionResult> out;
    for (const auto& s : specs) {
        CriterionResult r;
        r.id = s.id;
        r.name = s.name;
        r.limit = s.limit;
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.pass = s.run(r.detail);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.pass && r.seconds >= r.limit) {
            r.pass = false;
            r.detail += " (exceeded time limit)";
        }
        out.push_back(r);
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " [" << std::fixed
       << std::setprecision(3) << r.seconds << "s < " << std::setprecision(0) << r.limit << "s] " << r.detail;
    return os.str();
}

}  // namespace gwc
