#include "gwc/graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace gwc {

int RelGraph::arithmetic_genus() const {
    int g = 1;
    for (const auto& v : comps) g += v.genus - 1;
    return g;
}

GraphFilter parse_filter(const std::string& s) {
    if (s == "all") return GraphFilter::All;
    if (s == "pt-first") return GraphFilter::PtFirst;
    if (s == "genus0-pt") return GraphFilter::Genus0Pt;
    throw Error("unknown filter: " + s);
}

std::string to_string(GraphOrder o) {
    switch (o) {
        case GraphOrder::Lower: return "lower";
        case GraphOrder::Higher: return "higher";
        case GraphOrder::Equal: return "equal";
        case GraphOrder::Incomparable: return "incomparable";
    }
    return "?";
}

GraphContext::GraphContext()
    : target_(TargetKind::BlP2),
      sp_(build_space(2, SubmanifoldDescriptor{0})),
      pc_(PartitionContext::from_space(sp_)),
      id_("P2|point") {}

RelVertex GraphContext::canonical(RelVertex v) const {
    std::sort(v.tails.begin(), v.tails.end(), [&](const Insertion& x, const Insertion& y) {
        int dx = sp_.X.degree(x.cls), dy = sp_.X.degree(y.cls);
        if (dx != dy) return dx > dy;
        return x < y;
    });
    v.mu = gwc::canonical(v.mu, pc_);
    return v;
}

RelGraph GraphContext::canonical(RelGraph g) const {
    for (auto& v : g.comps) v = canonical(v);
    std::sort(g.comps.begin(), g.comps.end(),
              [&](const RelVertex& x, const RelVertex& y) { return vertex_key(x) < vertex_key(y); });
    return g;
}

std::string GraphContext::vertex_key(const RelVertex& v) const {
    std::ostringstream os;
    os << "g" << v.genus << ":" << target_.class_string(v.A) << ":";
    for (size_t i = 0; i < v.tails.size(); ++i) {
        if (i) os << ",";
        const auto& t = v.tails[i];
        if (t.d) os << "tau" << t.d << "(";
        os << sp_.X.label(t.cls);
        if (t.d) os << ")";
    }
    os << "|" << to_string(v.mu, pc_);
    return os.str();
}

std::string GraphContext::key(const RelGraph& g) const {
    RelGraph c = canonical(g);
    std::string out;
    for (size_t i = 0; i < c.comps.size(); ++i) {
        if (i) out += " + ";
        out += vertex_key(c.comps[i]);
    }
    return out.empty() ? "empty" : out;
}

std::string GraphContext::absolute_key(const RelGraph& g) const {
    RelGraph c = canonical(g);
    std::string out;
    for (size_t i = 0; i < c.comps.size(); ++i) {
        const auto& v = c.comps[i];
        if (i) out += " * ";
        out += "<";
        bool first = true;
        for (const auto& t : v.tails) {
            if (!first) out += ",";
            first = false;
            out += t.d ? "tau" + std::to_string(t.d) + "(" + sp_.X.label(t.cls) + ")" : sp_.X.label(t.cls);
        }
        for (const auto& tr : trade(v.mu, pc_)) {
            if (!first) out += ",";
            first = false;
            out += "tau" + std::to_string(tr.d) + "(" + sp_.X.label(sp_.theta_to_x[tr.theta]) + ")";
        }
        out += ">_" + std::to_string(v.A.coeff[0]) + "L";
        if (v.genus) out += ",g" + std::to_string(v.genus);
    }
    return out.empty() ? "empty" : out;
}

long GraphContext::pushforward_degree(const RelGraph& g) const {
    long a = 0;
    for (const auto& v : g.comps) a += v.A.coeff[0];
    return a;
}

long GraphContext::tail_count(const RelGraph& g) const {
    long n = 0;
    for (const auto& v : g.comps) n += static_cast<long>(v.tails.size());
    return n;
}

WeightedPartition GraphContext::merged_mu(const RelGraph& g) const {
    WeightedPartition mu;
    for (const auto& v : g.comps) mu.insert(mu.end(), v.mu.begin(), v.mu.end());
    return gwc::canonical(mu, pc_);
}

bool GraphContext::dimension_valid(const RelVertex& v) const {
    if (tangency_sum(v.mu) != target_.divisor_pairing(target_.basis().index("E"), v.A)) return false;
    long vdim = target_.c1(v.A) + (target_.dim() - 3) * (1 - v.genus) + static_cast<long>(v.tails.size()) +
                static_cast<long>(v.mu.size()) - tangency_sum(v.mu);
    long constraints = 0;
    for (const auto& t : v.tails) constraints += t.d + sp_.X.degree(t.cls) / 2;
    for (const auto& p : v.mu) constraints += sp_.E.degree(p.cls) / 2;
    return vdim == constraints;
}

bool GraphContext::has_point(const RelGraph& g) const {
    int pt = sp_.X.top();
    for (const auto& v : g.comps)
        for (const auto& t : v.tails)
            if (t.cls == pt && t.d == 0) return true;
    return false;
}

GraphOrder GraphContext::order_compare(const RelGraph& a, const RelGraph& b) const {
    if (a.space != b.space) throw Error("incomparable spaces");
    auto cmp = [](auto x, auto y) { return x < y ? GraphOrder::Lower : (y < x ? GraphOrder::Higher : GraphOrder::Equal); };
    GraphOrder o = cmp(pushforward_degree(a), pushforward_degree(b));
    if (o != GraphOrder::Equal) return o;
    o = cmp(a.arithmetic_genus(), b.arithmetic_genus());
    if (o != GraphOrder::Equal) return o;
    o = cmp(tail_count(a), tail_count(b));
    if (o != GraphOrder::Equal) return o;
    WeightedPartition ma = merged_mu(a), mb = merged_mu(b);
    o = cmp(deg_S(mb, pc_), deg_S(ma, pc_));
    if (o != GraphOrder::Equal) return o;
    Ordering l = lex_compare(ma, mb, pc_);
    if (l == Ordering::Greater) return GraphOrder::Lower;
    if (l == Ordering::Less) return GraphOrder::Higher;
    return key(a) == key(b) ? GraphOrder::Equal : GraphOrder::Incomparable;
}

bool GraphContext::total_less(const RelGraph& a, const RelGraph& b) const {
    GraphOrder o = order_compare(a, b);
    if (o == GraphOrder::Lower) return true;
    if (o == GraphOrder::Higher || o == GraphOrder::Equal) return false;
    return key(a) < key(b);
}

RelGraph GraphContext::disjoint_union(const RelGraph& a, const RelGraph& b) const {
    if (!a.empty() && !b.empty() && a.space != b.space) throw Error("incomparable spaces");
    RelGraph g{a.empty() ? b.space : a.space, a.comps};
    g.comps.insert(g.comps.end(), b.comps.begin(), b.comps.end());
    return canonical(g);
}

RelGraph GraphContext::single(RelVertex v) const { return canonical(RelGraph{id_, {std::move(v)}}); }

std::vector<RelVertex> GraphContext::connected_below(long degree_bound, const EnumConfig& cfg) const {
    std::vector<RelVertex> out;
    int pt = sp_.X.top(), H = sp_.X.index("H");
    int one_E = pc_.class_of(0, 0), e_E = pc_.class_of(0, 1);
    for (long a = 1; a <= degree_bound; ++a)
        for (long b = 0; b <= a; ++b) {
            CurveClass A = target_.make_class({a, b});
            // partitions of b into parts with classes 1_E and [E]
            std::vector<WeightedPartition> parts;
            std::function<void(long, long, WeightedPartition)> rec = [&](long left, long maxpart, WeightedPartition cur) {
                if (left == 0) {
                    parts.push_back(cur);
                    return;
                }
                for (long m = std::min(left, maxpart); m >= 1; --m) {
                    auto c1 = cur;
                    c1.push_back({static_cast<int>(m), one_E});
                    rec(left - m, m, c1);
                }
            };
            rec(b, b, {});
            std::vector<WeightedPartition> colored;
            for (const auto& p : parts) {
                // assign classes: for each group of equal tangencies choose how many carry [E]
                std::vector<std::pair<int, int>> groups;
                for (const auto& q : p) {
                    if (groups.empty() || groups.back().first != q.m)
                        groups.push_back({q.m, 1});
                    else
                        ++groups.back().second;
                }
                std::function<void(size_t, WeightedPartition)> col = [&](size_t gi, WeightedPartition cur) {
                    if (gi == groups.size()) {
                        colored.push_back(gwc::canonical(cur, pc_));
                        return;
                    }
                    for (int ne = 0; ne <= groups[gi].second; ++ne) {
                        auto c2 = cur;
                        for (int i = 0; i < groups[gi].second; ++i)
                            c2.push_back({groups[gi].first, i < ne ? e_E : one_E});
                        col(gi + 1, c2);
                    }
                };
                col(0, {});
            }
            for (int g = 0; g <= cfg.max_genus; ++g)
                for (const auto& mu : colored) {
                    long ne = 0;
                    for (const auto& p : mu)
                        if (p.cls == e_E) ++ne;
                    long npt = 3 * a - 2 * b - 1 + g + static_cast<long>(mu.size()) - ne;
                    if (npt < 0) continue;
                    for (int nh = 0; nh <= cfg.max_divisor_tails; ++nh) {
                        RelVertex v;
                        v.genus = g;
                        v.A = A;
                        v.mu = mu;
                        for (long i = 0; i < npt; ++i) v.tails.push_back({0, pt});
                        for (int i = 0; i < nh; ++i) v.tails.push_back({0, H});
                        v = canonical(v);
                        if (!dimension_valid(v)) throw Error("internal: enumerated vertex fails the dimension check");
                        out.push_back(v);
                        if (out.size() > cfg.max_graphs) throw Error("truncation limit exceeded");
                    }
                }
        }
    return out;
}

std::vector<RelGraph> GraphContext::enumerate_below(const Rational& area_bound, GraphFilter f,
                                                    const EnumConfig& cfg) const {
    if (area_bound.sign() < 0) throw Error("area bound must be nonnegative");
    mpz_class fl = area_bound.num() / area_bound.den();
    if (fl > 64) throw Error("truncation limit exceeded");
    long B = fl.get_si();
    EnumConfig c = cfg;
    if (f == GraphFilter::Genus0Pt) c.max_genus = 0;
    std::vector<RelVertex> conn = connected_below(B, c);
    std::vector<RelGraph> out;
    std::vector<RelVertex> cur;
    std::function<void(size_t, long, int)> rec = [&](size_t from, long deg, int nh) {
        if (!cur.empty()) {
            RelGraph g = canonical(RelGraph{id_, cur});
            bool keep = true;
            if (f != GraphFilter::All && !has_point(g)) keep = false;
            if (keep) {
                out.push_back(g);
                if (out.size() > cfg.max_graphs) throw Error("truncation limit exceeded");
            }
        }
        for (size_t i = from; i < conn.size(); ++i) {
            long d = conn[i].A.coeff[0];
            int h = 0;
            for (const auto& t : conn[i].tails)
                if (sp_.X.degree(t.cls) == 2) ++h;
            if (deg + d > B || nh + h > cfg.max_divisor_tails) continue;
            cur.push_back(conn[i]);
            rec(i, deg + d, nh + h);
            cur.pop_back();
        }
    };
    rec(0, 0, 0);
    std::sort(out.begin(), out.end(), [&](const RelGraph& x, const RelGraph& y) { return total_less(x, y); });
    return out;
}

}  // namespace gwc
