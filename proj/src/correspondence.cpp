#include "gwc/correspondence.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <atomic>
#include <thread>

#include "gwc/relative_fiber.hpp"

namespace gwc {

namespace {

// Restricted growth strings: set partitions of n labeled elements.
void for_each_set_partition(int n, const std::function<void(const std::vector<int>&, int)>& f) {
    std::vector<int> a(n, 0);
    std::function<void(int, int)> rec = [&](int i, int blocks) {
        if (i == n) {
            f(a, blocks);
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            a[i] = b;
            rec(i + 1, std::max(blocks, b + 1));
        }
    };
    if (n == 0)
        f(a, 0);
    else
        rec(0, 0);
}

// Distributes counts[t] copies of each type among `blocks` distinguishable blocks.
void for_each_distribution(const std::vector<int>& counts, int blocks,
                           const std::function<void(const std::vector<std::vector<int>>&, const mpz_class&)>& f) {
    std::vector<std::vector<int>> cur(blocks, std::vector<int>(counts.size(), 0));
    std::function<void(size_t, mpz_class)> by_type = [&](size_t t, mpz_class mult) {
        if (t == counts.size()) {
            f(cur, mult);
            return;
        }
        std::function<void(int, int)> comp = [&](int b, int left) {
            if (b == blocks - 1) {
                cur[b][t] = left;
                std::vector<long> parts;
                for (int i = 0; i < blocks; ++i) parts.push_back(cur[i][t]);
                by_type(t + 1, mult * multinomial(parts));
                return;
            }
            for (int c = 0; c <= left; ++c) {
                cur[b][t] = c;
                comp(b + 1, left - c);
            }
        };
        if (blocks == 0) {
            if (counts[t] == 0) by_type(t + 1, mult);
            return;
        }
        comp(0, counts[t]);
    };
    by_type(0, 1);
}

bool is_tree(int p, int q, const std::vector<SplitEdge>& edges) {
    if (static_cast<int>(edges.size()) != p + q - 1) return false;
    std::vector<int> parent(p + q);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& e : edges) {
        int a = find(e.minus), b = find(p + e.plus);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

}  // namespace

void for_each_splitting(const CutItems& items, int rho_count, long max_contact, bool exact_contact,
                        const std::function<void(const SplitShape&)>& f) {
    long plus_total = std::accumulate(items.plus_types.begin(), items.plus_types.end(), 0L);
    if (plus_total == 0 && (!exact_contact || max_contact == 0)) {
        SplitShape s;
        s.p = 1;
        s.q = 0;
        s.minus_counts = {items.minus_types};
        s.weight = Rational(1);
        s.delta = 1;
        f(s);
    }
    std::vector<int> t;
    std::function<void(long, int)> tangencies = [&](long left, int maxpart) {
        if (!t.empty() && (!exact_contact || left == 0)) {
            int l = static_cast<int>(t.size());
            mpz_class prod = 1;
            for (int x : t) prod *= x;
            mpz_class aut = aut_order(t);
            std::vector<int> rho(l, 0);
            std::function<void(int)> classes = [&](int i) {
                if (i < l) {
                    for (int r = 0; r < rho_count; ++r) {
                        rho[i] = r;
                        classes(i + 1);
                    }
                    return;
                }
                for_each_set_partition(l, [&](const std::vector<int>& mb, int p) {
                    for_each_set_partition(l, [&](const std::vector<int>& pb, int q) {
                        if (p + q - 1 != l) return;
                        std::vector<SplitEdge> edges(l);
                        for (int e = 0; e < l; ++e) edges[e] = {t[e], rho[e], mb[e], pb[e]};
                        if (!is_tree(p, q, edges)) return;
                        for_each_distribution(items.minus_types, p, [&](const auto& mc, const mpz_class& m1) {
                            for_each_distribution(items.plus_types, q, [&](const auto& pc, const mpz_class& m2) {
                                SplitShape s;
                                s.edges = edges;
                                s.p = p;
                                s.q = q;
                                s.minus_counts = mc;
                                s.plus_counts = pc;
                                s.item_multiplicity = Rational(mpz_class(m1 * m2));
                                s.weight = Rational(prod, aut);
                                s.delta = prod * aut;
                                f(s);
                            });
                        });
                    });
                });
            };
            classes(0);
        }
        for (int m = static_cast<int>(std::min<long>(left, maxpart)); m >= 1; --m) {
            t.push_back(m);
            tangencies(left - m, m);
            t.pop_back();
        }
    };
    tangencies(max_contact, static_cast<int>(max_contact));
}

std::string to_string(IndexSetTag t) {
    switch (t) {
        case IndexSetTag::I: return "I";
        case IndexSetTag::I_pt: return "I_pt";
        case IndexSetTag::I_0pt: return "I_0pt";
    }
    return "?";
}

IndexSetTag tag_for(GraphFilter f) {
    switch (f) {
        case GraphFilter::All: return IndexSetTag::I;
        case GraphFilter::PtFirst: return IndexSetTag::I_pt;
        case GraphFilter::Genus0Pt: return IndexSetTag::I_0pt;
    }
    return IndexSetTag::I;
}

static IndexSetTag parse_tag(const std::string& s) {
    if (s == "I") return IndexSetTag::I;
    if (s == "I_pt") return IndexSetTag::I_pt;
    if (s == "I_0pt") return IndexSetTag::I_0pt;
    throw Error("unknown index set tag: " + s);
}

static std::string filter_name(GraphFilter f) {
    switch (f) {
        case GraphFilter::All: return "all";
        case GraphFilter::PtFirst: return "pt-first";
        case GraphFilter::Genus0Pt: return "genus0-pt";
    }
    return "?";
}

Rational CorrespondenceMatrix::at(size_t r, size_t c) const {
    auto it = entries.find({r, c});
    return it == entries.end() ? Rational(0) : it->second;
}

std::optional<size_t> CorrespondenceMatrix::index(const std::string& key) const {
    if (idx_.size() != order.size()) {
        idx_.clear();
        for (size_t i = 0; i < order.size(); ++i) idx_[order[i]] = i;
    }
    auto it = idx_.find(key);
    if (it == idx_.end()) return std::nullopt;
    return it->second;
}

nlohmann::json CorrespondenceMatrix::to_json() const {
    nlohmann::json j;
    j["order"] = order;
    j["bound"] = bound;
    j["filter"] = filter_name(filter);
    j["index_set"] = to_string(tag_for(filter));
    nlohmann::json e = nlohmann::json::array();
    for (const auto& [rc, v] : entries) e.push_back(nlohmann::json::array({order[rc.first], order[rc.second], v}));
    j["entries"] = e;
    return j;
}

CorrespondenceMatrix CorrespondenceMatrix::from_json(const nlohmann::json& j) {
    CorrespondenceMatrix m;
    m.order = j.at("order").get<std::vector<std::string>>();
    if (j.contains("bound")) m.bound = j.at("bound").get<Rational>();
    if (j.contains("filter")) m.filter = parse_filter(j.at("filter").get<std::string>());
    for (const auto& e : j.at("entries")) {
        if (!e.is_array() || e.size() != 3) throw Error("matrix entries must be [row, col, value] triples");
        auto r = m.index(e.at(0).get<std::string>());
        auto c = m.index(e.at(1).get<std::string>());
        if (!r || !c) throw Error("matrix entry outside the index set");
        m.entries[{*r, *c}] = e.at(2).get<Rational>();
    }
    return m;
}

CorrespondenceEngine::CorrespondenceEngine() = default;

Query CorrespondenceEngine::absolute_query(const RelVertex& v) const {
    const auto& sp = ctx_.space();
    Query q;
    q.A = engine_for(TargetKind::P2).target().make_class({v.A.coeff[0]});
    q.ins = v.tails;
    for (const auto& tr : trade(v.mu, ctx_.partitions())) q.ins.push_back({tr.d, sp.theta_to_x[tr.theta]});
    return q;
}

Rational CorrespondenceEngine::absolute_value(const RelGraph& g) {
    if (g.arithmetic_genus() > 0) throw Error("higher genus graph: " + ctx_.key(g));
    Rational r(1);
    for (const auto& v : g.comps) {
        if (v.genus) throw Error("higher genus graph: " + ctx_.key(g));
        r *= engine_for(TargetKind::P2).evaluate(absolute_query(v));
        if (r.is_zero()) break;
    }
    return r;
}

Rational CorrespondenceEngine::diagonal_expected(const RelGraph& g) const {
    Rational r(1);
    for (const auto& v : g.comps)
        r *= diagonal_coefficient(v.mu, ctx_.partitions(),
                                  ctx_.target().divisor_pairing(ctx_.target().basis().index("E"), v.A));
    return r;
}

namespace {

struct TypeList {
    std::vector<Insertion> types;
    std::vector<int> counts;
    void add(const Insertion& x) {
        for (size_t i = 0; i < types.size(); ++i)
            if (types[i] == x) {
                ++counts[i];
                return;
            }
        types.push_back(x);
        counts.push_back(1);
    }
};

// Connected row expansion: column vertices (already canonical) with coefficients.
struct ColumnTerm {
    std::vector<RelVertex> comps;
    Rational coeff;
};

}  // namespace

static std::vector<ColumnTerm> expand_vertex(const GraphContext& ctx, const RelVertex& row) {
    if (row.genus) throw Error("higher genus graph: " + ctx.vertex_key(row));
    const auto& sp = ctx.space();
    const auto& pc = ctx.partitions();
    const Target& bl = ctx.target();
    HyperplaneEngine& plus = hyperplane_engine(TargetKind::P2);
    long a = row.A.coeff[0];

    TypeList minus_items, plus_items;
    for (const auto& t : row.tails) minus_items.add(t);
    for (const auto& tr : trade(row.mu, pc)) plus_items.add({tr.d, sp.theta_to_x[tr.theta]});

    std::map<std::string, ColumnTerm> acc;
    CutItems items{minus_items.counts, plus_items.counts};
    for_each_splitting(items, sp.E.size(), a, false, [&](const SplitShape& s) {
        Rational coef = s.weight * s.item_multiplicity;
        for (int r = 0; r < s.q && !coef.is_zero(); ++r) {
            std::vector<RelPoint> pts;
            long c = 0;
            for (size_t ty = 0; ty < plus_items.types.size(); ++ty)
                for (int i = 0; i < s.plus_counts[r][ty]; ++i)
                    pts.push_back({0, plus_items.types[ty].cls, plus_items.types[ty].d});
            for (const auto& e : s.edges)
                if (e.plus == r) {
                    c += e.t;
                    pts.push_back({e.t, plus.lift(pc.fiber[pc.dual[e.rho]]), 0});
                }
            coef *= plus.evaluate(c, pts);
        }
        if (coef.is_zero()) return;
        std::vector<long> b(s.p, 0);
        for (const auto& e : s.edges) b[e.minus] += e.t;
        std::vector<long> ai(s.p, 0);
        std::function<void(int, long)> classes = [&](int i, long left) {
            if (i == s.p) {
                if (left != 0) return;
                std::vector<RelVertex> comps;
                for (int j = 0; j < s.p; ++j) {
                    RelVertex v;
                    v.A = bl.make_class({ai[j], b[j]});
                    for (size_t ty = 0; ty < minus_items.types.size(); ++ty)
                        for (int k = 0; k < s.minus_counts[j][ty]; ++k) v.tails.push_back(minus_items.types[ty]);
                    for (const auto& e : s.edges)
                        if (e.minus == j) v.mu.push_back({e.t, e.rho});
                    v = ctx.canonical(v);
                    if (!ctx.dimension_valid(v)) return;
                    comps.push_back(v);
                }
                RelGraph g = ctx.canonical(RelGraph{ctx.space_id(), comps});
                std::string k = ctx.key(g);
                auto it = acc.find(k);
                if (it == acc.end())
                    acc.emplace(k, ColumnTerm{g.comps, coef});
                else
                    it->second.coeff += coef;
                return;
            }
            for (long x = std::max(1L, b[i]); x <= left; ++x) {
                ai[i] = x;
                classes(i + 1, left - x);
            }
        };
        classes(0, a);
    });
    std::vector<ColumnTerm> out;
    for (auto& [k, t] : acc)
        if (!t.coeff.is_zero()) out.push_back(std::move(t));
    return out;
}

std::map<std::string, Rational> CorrespondenceEngine::expand_row(const RelGraph& row, std::vector<SplittingTerm>* terms) {
    std::vector<std::vector<ColumnTerm>> parts;
    for (const auto& v : row.comps) parts.push_back(expand_vertex(ctx_, v));
    std::map<std::string, Rational> out;
    std::vector<RelVertex> cur;
    std::function<void(size_t, Rational)> rec = [&](size_t i, Rational c) {
        if (i == parts.size()) {
            RelGraph g = ctx_.canonical(RelGraph{ctx_.space_id(), cur});
            std::string k = ctx_.key(g);
            out[k] += c;
            std::lock_guard<std::mutex> lk(mu_);
            known_.emplace(k, g);
            return;
        }
        for (const auto& t : parts[i]) {
            size_t n = cur.size();
            cur.insert(cur.end(), t.comps.begin(), t.comps.end());
            rec(i + 1, c * t.coeff);
            cur.resize(n);
        }
    };
    rec(0, Rational(1));
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero())
            it = out.erase(it);
        else
            ++it;
    }
    if (terms)
        for (const auto& [k, c] : out) {
            SplittingTerm t;
            t.minus = {k};
            t.coefficient = c;
            terms->push_back(t);
        }
    return out;
}

CorrespondenceMatrix CorrespondenceEngine::build_matrix(const Rational& bound, GraphFilter filter, const EnumConfig& cfg) {
    CorrespondenceMatrix m;
    m.bound = bound;
    m.filter = filter;
    std::vector<RelGraph> rows = ctx_.enumerate_below(bound, filter, cfg);
    std::vector<std::string> bad;
    for (const auto& g : rows)
        if (g.arithmetic_genus() > 0) bad.push_back(ctx_.key(g));
    if (!bad.empty()) {
        std::string msg = "unsupported entries (genus > 0):";
        for (const auto& b : bad) msg += " " + b;
        throw Error(msg);
    }
    for (const auto& g : rows) m.order.push_back(ctx_.key(g));
    m.graphs = rows;

    // distinct connected vertices are expanded once, in parallel
    std::map<std::string, RelVertex> verts;
    for (const auto& g : rows)
        for (const auto& v : g.comps) verts.emplace(ctx_.vertex_key(v), v);
    std::vector<std::pair<std::string, RelVertex>> work(verts.begin(), verts.end());
    std::vector<std::vector<ColumnTerm>> results(work.size());
    std::vector<std::string> errors(work.size());
    unsigned nt = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (size_t i = next++; i < work.size(); i = next++) {
                try {
                    results[i] = expand_vertex(ctx_, work[i].second);
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (!e.empty()) throw Error(e);
    std::map<std::string, const std::vector<ColumnTerm>*> by_key;
    for (size_t i = 0; i < work.size(); ++i) by_key[work[i].first] = &results[i];

    std::vector<std::string> outside;
    for (size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        std::vector<RelVertex> cur;
        std::function<void(size_t, Rational)> rec = [&](size_t i, Rational c) {
            if (i == row.comps.size()) {
                std::string k = ctx_.key(RelGraph{ctx_.space_id(), cur});
                auto col = m.index(k);
                if (!col) {
                    outside.push_back(m.order[r] + " -> " + k);
                    return;
                }
                m.entries[{r, *col}] += c;
                return;
            }
            for (const auto& t : *by_key.at(ctx_.vertex_key(row.comps[i]))) {
                size_t n = cur.size();
                cur.insert(cur.end(), t.comps.begin(), t.comps.end());
                rec(i + 1, c * t.coeff);
                cur.resize(n);
            }
        };
        rec(0, Rational(1));
    }
    if (!outside.empty()) {
        std::string msg = "column outside the truncated index set:";
        for (size_t i = 0; i < outside.size() && i < 10; ++i) msg += " [" + outside[i] + "]";
        throw Error(msg);
    }
    for (auto it = m.entries.begin(); it != m.entries.end();) {
        if (it->second.is_zero())
            it = m.entries.erase(it);
        else
            ++it;
    }
    return m;
}

TaggedVector CorrespondenceEngine::absolute_vector(const CorrespondenceMatrix& m) {
    if (m.graphs.size() != m.order.size()) throw Error("matrix has no graph data");
    TaggedVector v;
    v.tag = tag_for(m.filter);
    v.bound = m.bound;
    for (size_t i = 0; i < m.order.size(); ++i) v.entries[m.order[i]] = absolute_value(m.graphs[i]);
    return v;
}

DegenerationResult CorrespondenceEngine::degeneration_sum(const RelGraph& row, const InvariantVector& oracle) {
    DegenerationResult res;
    std::vector<SplittingTerm> terms;
    expand_row(row, &terms);
    for (auto& t : terms) {
        auto it = oracle.find(t.minus.front());
        if (it == oracle.end()) throw Error("missing oracle value for relative invariant " + t.minus.front());
        t.contribution = t.coefficient * it->second;
        res.value += t.contribution;
    }
    res.terms = std::move(terms);
    return res;
}

SolveDirection parse_direction(const std::string& s) {
    if (s == "rel2abs" || s == "rel-to-abs") return SolveDirection::RelToAbs;
    if (s == "abs2rel" || s == "abs-to-rel") return SolveDirection::AbsToRel;
    throw Error("unknown direction: " + s);
}

InvariantVector solve_lower(const CorrespondenceMatrix& m, const InvariantVector& v, SolveDirection dir) {
    for (const auto& [k, x] : v)
        if (!m.index(k)) throw Error("vector entry outside the index set: " + k);
    auto get = [&](const std::string& k) {
        auto it = v.find(k);
        return it == v.end() ? Rational(0) : it->second;
    };
    std::vector<std::vector<std::pair<size_t, Rational>>> rows(m.order.size());
    for (const auto& [rc, x] : m.entries) {
        if (rc.second > rc.first) throw Error("matrix is not lower triangular at " + m.order[rc.first]);
        rows[rc.first].push_back({rc.second, x});
    }
    InvariantVector out;
    if (dir == SolveDirection::RelToAbs) {
        for (size_t r = 0; r < m.order.size(); ++r) {
            Rational s;
            for (const auto& [c, x] : rows[r]) s += x * get(m.order[c]);
            out[m.order[r]] = s;
        }
        return out;
    }
    std::vector<Rational> sol(m.order.size());
    for (size_t r = 0; r < m.order.size(); ++r) {
        Rational s = get(m.order[r]);
        Rational d;
        for (const auto& [c, x] : rows[r]) {
            if (c == r)
                d = x;
            else
                s -= x * sol[c];
        }
        if (d.is_zero()) throw Error("non-invertible truncation at " + m.order[r]);
        sol[r] = s / d;
        out[m.order[r]] = sol[r];
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> triangularity_violations(const CorrespondenceMatrix& m) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [rc, x] : m.entries)
        if (rc.second > rc.first && !x.is_zero()) out.push_back({m.order[rc.first], m.order[rc.second]});
    return out;
}

DegenerationResult degeneration_sum_p1(long d, const std::vector<Insertion>& ins, const std::vector<int>& side) {
    if (ins.size() != side.size()) throw Error("one side per insertion required");
    if (d < 1) throw Error("degree must be positive");
    HyperplaneEngine& rel = hyperplane_engine(TargetKind::P1);
    const Target& t = rel.ambient();
    TypeList fixed[2], both;
    for (size_t i = 0; i < ins.size(); ++i) {
        if (ins[i].cls == t.unit())
            both.add(ins[i]);
        else if (side[i] == 0 || side[i] == 1)
            fixed[side[i]].add(ins[i]);
        else
            throw Error("side must be 0 or 1");
    }
    DegenerationResult res;
    // unit insertions restrict to both sides: choose how many of each type go to the minus side
    std::vector<int> k(both.types.size(), 0);
    std::function<void(size_t, mpz_class)> split_units = [&](size_t u, mpz_class choose) {
        if (u < both.types.size()) {
            for (int x = 0; x <= both.counts[u]; ++x) {
                k[u] = x;
                split_units(u + 1, choose * binomial(both.counts[u], x));
            }
            return;
        }
        TypeList lists[2] = {fixed[0], fixed[1]};
        for (size_t i = 0; i < both.types.size(); ++i) {
            for (int j = 0; j < k[i]; ++j) lists[0].add(both.types[i]);
            for (int j = k[i]; j < both.counts[i]; ++j) lists[1].add(both.types[i]);
        }
        CutItems items{lists[0].counts, lists[1].counts};
        for_each_splitting(items, 1, d, true, [&](const SplitShape& s) {
            Rational coef = s.weight * s.item_multiplicity * Rational(choose);
            SplittingTerm term;
            Rational value = coef;
            auto block = [&](int which, int b, const std::vector<std::vector<int>>& counts) {
                std::vector<RelPoint> pts;
                long c = 0;
                const auto& l = lists[which];
                for (size_t ty = 0; ty < l.types.size(); ++ty)
                    for (int i = 0; i < counts[b][ty]; ++i) pts.push_back({0, l.types[ty].cls, l.types[ty].d});
                for (const auto& e : s.edges)
                    if ((which == 0 ? e.minus : e.plus) == b) {
                        c += e.t;
                        pts.push_back({e.t, rel.lift(0), 0});
                    }
                std::ostringstream os;
                os << "<";
                bool first = true;
                for (const auto& p : pts)
                    if (!p.alpha) {
                        os << (first ? "" : ",") << (p.psi ? "tau" + std::to_string(p.psi) + "(" : "")
                           << t.basis().label(p.cls) << (p.psi ? ")" : "");
                        first = false;
                    }
                os << "|";
                first = true;
                for (const auto& p : pts)
                    if (p.alpha) {
                        os << (first ? "" : ",") << p.alpha;
                        first = false;
                    }
                os << ">_" << c;
                (which == 0 ? term.minus : term.plus).push_back(os.str());
                return rel.evaluate(c, pts);
            };
            for (int b = 0; b < s.p && !value.is_zero(); ++b) value *= block(0, b, s.minus_counts);
            for (int b = 0; b < s.q && !value.is_zero(); ++b) value *= block(1, b, s.plus_counts);
            if (value.is_zero()) return;
            for (const auto& e : s.edges) {
                term.eta.push_back({e.t, 0});
                term.eta_dual.push_back({e.t, 0});
            }
            term.delta = s.delta;
            term.coefficient = coef;
            term.contribution = value;
            res.value += value;
            res.terms.push_back(term);
        });
    };
    split_units(0, 1);
    return res;
}

namespace {

std::vector<std::vector<Insertion>> primary_extras(const Target& t, int count) {
    std::vector<int> cls;
    for (int i = 0; i < t.basis().size(); ++i)
        if (i != t.unit()) cls.push_back(i);
    std::vector<std::vector<Insertion>> out;
    std::vector<Insertion> cur;
    std::function<void(size_t, int)> rec = [&](size_t from, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (size_t i = from; i < cls.size(); ++i) {
            cur.push_back({0, cls[i]});
            rec(i, left - 1);
            cur.pop_back();
        }
    };
    rec(0, count);
    return out;
}

}  // namespace

UniruledWitness uniruled_search(TargetKind space, long degree_bound) {
    GwEngine& eng = engine_for(space);
    const Target& t = eng.target();
    UniruledWitness w;
    w.space = t.name();
    if (t.dim() < 1) throw Error("target has no curves");
    auto classes = t.effective_classes_up_to(Rational(degree_bound));
    if (classes.empty()) {
        w.trail.push_back("no effective classes of area at most " + std::to_string(degree_bound));
        return w;
    }
    for (const auto& A : classes) {
        long slack = t.c1(A) + t.dim() + 1;
        for (int r = 0; r <= slack; ++r)
            for (auto extra : primary_extras(t, r)) {
                std::vector<Insertion> ins{{0, t.point()}};
                ins.insert(ins.end(), extra.begin(), extra.end());
                if (!eng.dimension_ok(A, ins)) continue;
                Query q{A, ins};
                Rational v = eng.evaluate(q);
                w.trail.push_back(query_string(t, q) + " = " + v.str());
                if (!v.is_zero()) {
                    w.found = true;
                    w.query = q;
                    w.value = v;
                    return w;
                }
            }
    }
    return w;
}

namespace {

// Lower graphs of (Bl, E) with E treated as the divisor (k = 1): connected genus-zero graphs
// with a point insertion whose area is below, or equal with fewer tails or smaller partition data.
std::vector<std::string> divisor_pair_lower(const RelVertex& v) {
    const Target& bl = engine_for(TargetKind::BlP2).target();
    int E = bl.basis().index("E");
    int pt = bl.point();
    std::vector<std::string> out;
    long n = static_cast<long>(v.tails.size());
    long deg_v = 0;
    for (const auto& p : v.mu) deg_v += p.cls == 0 ? 0 : 1;
    for (const auto& C : bl.effective_classes_up_to(v.A.area)) {
        long b = bl.divisor_pairing(E, C);
        if (b < 0) continue;
        for (long nt = 1; nt <= n; ++nt)
            for (auto extra : primary_extras(bl, static_cast<int>(nt - 1))) {
                std::vector<Insertion> ins{{0, pt}};
                ins.insert(ins.end(), extra.begin(), extra.end());
                // partitions of b with parts weighted by 1_E (0) or pt_E (1)
                std::vector<int> ms;
                std::function<void(long, long, long)> parts = [&](long left, long maxm, long len) {
                    if (left == 0) {
                        for (long npe = 0; npe <= len; ++npe) {
                            long vdim = bl.c1(C) - 1 + nt + len - b;
                            long cons = npe;
                            for (const auto& x : ins) cons += bl.cdeg(x.cls);
                            if (vdim != cons) continue;
                            bool lower = C.area < v.A.area;
                            if (!lower && C.area == v.A.area) {
                                if (nt < n)
                                    lower = true;
                                else if (nt == n && npe > deg_v)
                                    lower = true;
                                else if (nt == n && npe == deg_v && ms != underlying(v.mu))
                                    lower = true;
                            }
                            if (lower)
                                out.push_back(query_string(bl, Query{C, ins}) + " with " + std::to_string(len) +
                                              " contact points");
                        }
                        return;
                    }
                    for (long m = std::min(left, maxm); m >= 1; --m) {
                        ms.push_back(static_cast<int>(m));
                        parts(left - m, m, len + 1);
                        ms.pop_back();
                    }
                };
                parts(b, b, 0);
            }
    }
    return out;
}

}  // namespace

TransferResult transfer_p2_to_blowup(CorrespondenceEngine& eng, const CorrespondenceMatrix& m) {
    TransferResult res;
    const GraphContext& ctx = eng.graphs();
    long B = mpz_class(m.bound.num() / m.bound.den()).get_si();
    res.source = uniruled_search(TargetKind::P2, B);
    if (!res.source.found) {
        res.trail.push_back("no P2 witness below the bound");
        return res;
    }
    res.trail.push_back("P2 witness " + query_string(engine_for(TargetKind::P2).target(), res.source.query) + " = " +
                        res.source.value.str());
    TaggedVector abs = eng.absolute_vector(m);
    InvariantVector rel = solve_lower(m, abs.entries, SolveDirection::AbsToRel);
    std::optional<size_t> hit;
    for (size_t i = 0; i < m.order.size(); ++i)
        if (!rel.at(m.order[i]).is_zero()) {
            hit = i;
            break;
        }
    if (!hit) {
        res.trail.push_back("all relative entries vanish");
        return res;
    }
    const RelGraph& g = m.graphs[*hit];
    res.relative_key = m.order[*hit];
    res.relative_value = rel.at(res.relative_key);
    res.trail.push_back("first nonzero relative entry " + res.relative_key + " = " + res.relative_value.str());
    if (g.comps.size() != 1) {
        res.trail.push_back("first nonzero entry is disconnected");
        return res;
    }
    const RelVertex& v = g.comps.front();
    auto lower = divisor_pair_lower(v);
    if (!lower.empty()) {
        res.trail.push_back("divisor correspondence needs lower terms: " + lower.front());
        return res;
    }
    GwEngine& ble = engine_for(TargetKind::BlP2);
    const Target& bl = ble.target();
    int E = bl.basis().index("E");
    PartitionContext pc1 = PartitionContext::synthetic(1, 2);
    WeightedPartition mu1;
    Query q{v.A, {}};
    for (const auto& t : v.tails) q.ins.push_back(t);
    for (const auto& p : v.mu) {
        int fiber = ctx.partitions().fiber[p.cls];
        mu1.push_back({p.m, pc1.class_of(fiber, 0)});
        q.ins.push_back({p.m - 1, fiber == 0 ? E : bl.point()});
    }
    Rational c0 = diagonal_coefficient(mu1, pc1, bl.divisor_pairing(E, v.A));
    Rational value = c0 * res.relative_value;
    res.trail.push_back("divisor correspondence: " + query_string(bl, q) + " = " + c0.str() + " * " +
                        res.relative_value.str() + " = " + value.str());
    Rational direct = ble.evaluate(q);
    res.trail.push_back("direct evaluation on Bl: " + direct.str());
    Reduction red = ble.reduce_to_primary(q);
    res.target.space = bl.name();
    res.target.found = !value.is_zero();
    res.target.query = red.has_witness ? red.witness : q;
    res.target.value = red.has_witness ? ble.evaluate(red.witness) : value;
    res.target.trail.push_back(query_string(bl, res.target.query) + " = " + res.target.value.str());
    res.ok = res.target.found && value == direct;
    return res;
}

TransferResult transfer_blowup_to_p2(CorrespondenceEngine& eng, const CorrespondenceMatrix& m) {
    TransferResult res;
    const GraphContext& ctx = eng.graphs();
    long B = mpz_class(m.bound.num() / m.bound.den()).get_si();
    res.source = uniruled_search(TargetKind::BlP2, B);
    if (!res.source.found) {
        res.trail.push_back("no Bl witness below the bound");
        return res;
    }
    GwEngine& ble = engine_for(TargetKind::BlP2);
    const Target& bl = ble.target();
    int E = bl.basis().index("E");
    const Query& w = res.source.query;
    res.trail.push_back("Bl witness " + query_string(bl, w) + " = " + res.source.value.str());
    long AE = bl.divisor_pairing(E, w.A);
    if (AE < 0) {
        res.trail.push_back("witness class meets E negatively");
        return res;
    }
    Query withE = w;
    RelVertex v;
    v.A = w.A;
    v.tails = w.ins;
    PartitionContext pc1 = PartitionContext::synthetic(1, 2);
    WeightedPartition mu1;
    for (long i = 0; i < AE; ++i) {
        withE.ins.push_back({0, E});
        v.mu.push_back({1, ctx.partitions().class_of(0, 0)});
        mu1.push_back({1, pc1.class_of(0, 0)});
    }
    for (const auto& t : v.tails)
        if (t.cls >= ctx.space().X.size() || bl.basis().label(t.cls) != ctx.space().X.label(t.cls)) {
            res.trail.push_back("witness insertion not pulled back from P2");
            return res;
        }
    v = ctx.canonical(v);
    Rational absE = ble.evaluate(withE);
    res.trail.push_back("divisor axiom: " + query_string(bl, withE) + " = " + absE.str());
    auto lower = divisor_pair_lower(v);
    if (!lower.empty()) {
        res.trail.push_back("divisor correspondence needs lower terms: " + lower.front());
        return res;
    }
    Rational c0 = diagonal_coefficient(mu1, pc1, AE);
    if (c0.is_zero()) throw Error("vanishing diagonal coefficient");
    res.relative_key = ctx.key(ctx.single(v));
    res.relative_value = absE / c0;
    res.trail.push_back("relative entry " + res.relative_key + " = " + res.relative_value.str());
    auto idx = m.index(res.relative_key);
    if (!idx) {
        res.trail.push_back("relative entry outside the index set");
        return res;
    }
    for (const auto& [rc, x] : m.entries)
        if (rc.first == *idx && rc.second != *idx && !x.is_zero()) {
            res.trail.push_back("row has lower terms: " + m.order[rc.second]);
            return res;
        }
    InvariantVector abs = solve_lower(m, {{res.relative_key, res.relative_value}}, SolveDirection::RelToAbs);
    Rational a = abs.at(res.relative_key);
    GwEngine& p2 = engine_for(TargetKind::P2);
    Query q = eng.absolute_query(m.graphs[*idx].comps.front());
    res.trail.push_back("rel->abs: " + query_string(p2.target(), q) + " = " + a.str());
    Reduction red = p2.reduce_to_primary(q);
    res.target.space = p2.target().name();
    res.target.found = !a.is_zero();
    res.target.query = red.has_witness ? red.witness : q;
    res.target.value = red.has_witness ? p2.evaluate(red.witness) : a;
    res.target.trail.push_back(query_string(p2.target(), res.target.query) + " = " + res.target.value.str());
    res.ok = res.target.found && a == p2.evaluate(q);
    return res;
}

nlohmann::json vector_to_json(const TaggedVector& v) {
    nlohmann::json j;
    j["index_set"] = to_string(v.tag);
    j["bound"] = v.bound;
    nlohmann::json e = nlohmann::json::object();
    for (const auto& [k, x] : v.entries) e[k] = x;
    j["entries"] = e;
    return j;
}

TaggedVector vector_from_json(const nlohmann::json& j) {
    TaggedVector v;
    if (j.contains("index_set")) v.tag = parse_tag(j.at("index_set").get<std::string>());
    if (j.contains("bound")) v.bound = j.at("bound").get<Rational>();
    for (const auto& [k, x] : j.at("entries").items()) v.entries[k] = x.get<Rational>();
    return v;
}

}  // namespace gwc
