#include "gwc/gw.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>
#include <tuple>

namespace gwc {

bool CurveClass::is_zero() const {
    for (long c : coeff)
        if (c != 0) return false;
    return true;
}

namespace {

GradedBasis basis_for(TargetKind k) {
    switch (k) {
        case TargetKind::Point: return build_projective_space(0);
        case TargetKind::P1: return build_projective_space(1);
        case TargetKind::P2: return build_projective_space(2);
        case TargetKind::BlP2: return build_space(2, SubmanifoldDescriptor{0}).Xt;
    }
    throw Error("unsupported space");
}

}  // namespace

Target::Target(TargetKind kind) : kind_(kind), basis_(basis_for(kind)) {}

Target Target::parse(const std::string& name) {
    if (name == "pt" || name == "point" || name == "P0") return Target(TargetKind::Point);
    if (name == "P1") return Target(TargetKind::P1);
    if (name == "P2") return Target(TargetKind::P2);
    if (name == "BlP2" || name == "Bl_pt P2" || name == "Bl_ptP2" || name == "Bl") return Target(TargetKind::BlP2);
    throw Error("unsupported space: " + name);
}

std::string Target::name() const {
    switch (kind_) {
        case TargetKind::Point: return "pt";
        case TargetKind::P1: return "P1";
        case TargetKind::P2: return "P2";
        case TargetKind::BlP2: return "BlP2";
    }
    return "?";
}

std::vector<int> Target::divisors() const {
    std::vector<int> out;
    for (int i = 0; i < basis_.size(); ++i)
        if (basis_.degree(i) == 2) out.push_back(i);
    return out;
}

CurveClass Target::make_class(std::vector<long> coeff) const {
    CurveClass c;
    size_t want = kind_ == TargetKind::BlP2 ? 2 : (kind_ == TargetKind::Point ? 0 : 1);
    if (coeff.size() != want) throw Error("curve class has wrong number of coordinates");
    c.coeff = std::move(coeff);
    if (kind_ == TargetKind::BlP2)
        c.area = Rational(c.coeff[0]) - rat(c.coeff[1], 3);
    else if (kind_ != TargetKind::Point)
        c.area = Rational(c.coeff[0]);
    return c;
}

CurveClass Target::zero_class() const {
    return make_class(std::vector<long>(kind_ == TargetKind::BlP2 ? 2 : (kind_ == TargetKind::Point ? 0 : 1), 0));
}

CurveClass Target::parse_class(const std::string& raw) const {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw Error("empty curve class");
    long a = 0, e = 0;
    static const std::regex term(R"(([+-]?)(\d*)([LEd]?))");
    size_t pos = 0;
    bool any = false;
    while (pos < s.size()) {
        std::smatch m;
        std::string rest = s.substr(pos);
        if (!std::regex_search(rest, m, term, std::regex_constants::match_continuous) || m.length(0) == 0)
            throw Error("cannot parse curve class: " + raw);
        long sign = m[1] == "-" ? -1 : 1;
        long v = m[2].length() ? std::stol(m[2]) : 1;
        if (m[3].length() == 0 && m[2].length() == 0) throw Error("cannot parse curve class: " + raw);
        if (m[3] == "E")
            e += sign * v;
        else
            a += sign * v;
        pos += m.length(0);
        any = true;
    }
    if (!any) throw Error("cannot parse curve class: " + raw);
    if (kind_ == TargetKind::Point) {
        if (a != 0 || e != 0) throw Error("the point has no nonzero curve classes");
        return zero_class();
    }
    if (kind_ != TargetKind::BlP2) {
        if (e != 0) throw Error("cannot parse curve class: " + raw);
        return make_class({a});
    }
    return make_class({a, -e});
}

std::string Target::class_string(const CurveClass& A) const {
    if (A.is_zero()) return "0";
    auto mono = [](long c, const char* sym) {
        if (c == 1) return std::string(sym);
        if (c == -1) return std::string("-") + sym;
        return std::to_string(c) + sym;
    };
    if (kind_ != TargetKind::BlP2) return mono(A.coeff[0], "L");
    long a = A.coeff[0], b = A.coeff[1];
    std::string out;
    if (a != 0) out = mono(a, "L");
    if (b != 0) {
        long e = -b;
        std::string t = mono(e, "E");
        if (!out.empty() && e > 0) out += "+";
        out += t;
    }
    return out;
}

CurveClass Target::add(const CurveClass& a, const CurveClass& b) const {
    std::vector<long> c(a.coeff.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff[i] + b.coeff[i];
    return make_class(c);
}

CurveClass Target::sub(const CurveClass& a, const CurveClass& b) const {
    std::vector<long> c(a.coeff.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff[i] - b.coeff[i];
    return make_class(c);
}

long Target::c1(const CurveClass& A) const {
    switch (kind_) {
        case TargetKind::Point: return 0;
        case TargetKind::P1: return 2 * A.coeff[0];
        case TargetKind::P2: return 3 * A.coeff[0];
        case TargetKind::BlP2: return 3 * A.coeff[0] - A.coeff[1];
    }
    return 0;
}

long Target::divisor_pairing(int cls, const CurveClass& A) const {
    if (basis_.degree(cls) != 2) throw Error("not a divisor class: " + basis_.label(cls));
    if (kind_ == TargetKind::BlP2) return basis_.label(cls) == "E" ? A.coeff[1] : A.coeff[0];
    return A.coeff[0];
}

long Target::intersection(const CurveClass& a, const CurveClass& b) const {
    switch (kind_) {
        case TargetKind::Point: return 0;
        case TargetKind::P1: return 0;
        case TargetKind::P2: return a.coeff[0] * b.coeff[0];
        case TargetKind::BlP2: return a.coeff[0] * b.coeff[0] - a.coeff[1] * b.coeff[1];
    }
    return 0;
}

bool Target::effective(const CurveClass& A) const {
    switch (kind_) {
        case TargetKind::Point: return false;
        case TargetKind::P1:
        case TargetKind::P2: return A.coeff[0] >= 1;
        case TargetKind::BlP2: {
            long a = A.coeff[0], b = A.coeff[1];
            if (a == 0) return b <= -1;
            return a >= 1 && b <= a;
        }
    }
    return false;
}

std::vector<std::pair<CurveClass, CurveClass>> Target::splittings(const CurveClass& A) const {
    std::vector<std::pair<CurveClass, CurveClass>> out;
    auto ok = [&](const CurveClass& c) { return c.is_zero() || effective(c); };
    if (kind_ == TargetKind::Point) {
        out.push_back({A, A});
        return out;
    }
    if (kind_ != TargetKind::BlP2) {
        for (long d1 = 0; d1 <= A.coeff[0]; ++d1) out.push_back({make_class({d1}), make_class({A.coeff[0] - d1})});
        return out;
    }
    long a = A.coeff[0], b = A.coeff[1];
    for (long a1 = 0; a1 <= a; ++a1) {
        long a2 = a - a1;
        for (long b1 = b - a2; b1 <= a1; ++b1) {
            CurveClass c1 = make_class({a1, b1}), c2 = make_class({a2, b - b1});
            if (ok(c1) && ok(c2)) out.push_back({c1, c2});
        }
    }
    return out;
}

std::vector<CurveClass> Target::effective_classes_up_to(const Rational& bound) const {
    std::vector<CurveClass> out;
    if (kind_ == TargetKind::Point) return out;
    if (kind_ != TargetKind::BlP2) {
        for (long d = 1; Rational(d) <= bound; ++d) out.push_back(make_class({d}));
        return out;
    }
    CurveClass e = make_class({0, -1});
    if (e.area <= bound) out.push_back(e);
    for (long a = 1; Rational(a) - Rational(a, 3) <= bound; ++a)
        for (long b = a; b >= 0; --b) {
            CurveClass c = make_class({a, b});
            if (c.area <= bound) out.push_back(c);
        }
    std::stable_sort(out.begin(), out.end(), [](const CurveClass& x, const CurveClass& y) { return x.area < y.area; });
    return out;
}

std::string query_string(const Target& t, const Query& q) {
    std::ostringstream os;
    os << "<";
    for (size_t i = 0; i < q.ins.size(); ++i) {
        if (i) os << ",";
        const auto& x = q.ins[i];
        if (x.d == 0)
            os << t.basis().label(x.cls);
        else
            os << "tau" << x.d << "(" << t.basis().label(x.cls) << ")";
    }
    os << ">_" << t.class_string(q.A);
    return os.str();
}

std::vector<Insertion> parse_insertions(const Target& t, const std::string& raw) {
    std::vector<Insertion> out;
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) return out;
    static const std::regex desc(R"(tau_?(\d+)\((.+)\))");
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::smatch m;
        Insertion x;
        std::string label = tok;
        if (std::regex_match(tok, m, desc)) {
            x.d = std::stoi(m[1]);
            label = m[2];
        }
        if (label == "[X]" || label == "X") label = "1";
        if (label == "[pt]") label = "pt";
        if (!t.basis().has(label)) throw Error("unknown class label: " + label);
        x.cls = t.basis().index(label);
        out.push_back(x);
    }
    return out;
}

Rational PointInvariants::get(const CurveClass& A) {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = memo_.find(A);
        if (it != memo_.end()) return it->second;
    }
    Rational v = compute(A);
    std::lock_guard<std::mutex> lk(mu_);
    memo_.emplace(A, v);
    return v;
}

Rational PointInvariants::compute(const CurveClass& A) {
    const Target& t = target_;
    if (!t.effective(A)) return 0;
    switch (t.kind()) {
        case TargetKind::Point: return 0;
        case TargetKind::P1: return A.coeff[0] == 1 ? 1 : 0;
        case TargetKind::P2:
            if (A.coeff[0] == 1) return 1;
            break;
        case TargetKind::BlP2: {
            long a = A.coeff[0], b = A.coeff[1];
            if (a == 0) return b == -1 ? 1 : 0;
            if (b < 0) return 0;
            if (a == 1) return 1;
            break;
        }
    }
    long n = t.c1(A) - 1;
    int D;
    Rational g;
    if (route_ == Route::EE) {
        if (t.kind() != TargetKind::BlP2) throw Error("the (E,E) specialization needs the blow-up");
        D = t.basis().index("E");
        g = -1;
    } else {
        D = t.basis().index("H");
        g = 1;
    }
    Rational sum;
    for (const auto& [A1, A2] : t.splittings(A)) {
        if (A1.is_zero() || A2.is_zero()) continue;
        long n1 = t.c1(A1) - 1;
        if (n1 < 0 || t.c1(A2) - 1 < 0) continue;
        long dot = t.intersection(A1, A2);
        if (dot == 0) continue;
        long d1 = t.divisor_pairing(D, A1), d2 = t.divisor_pairing(D, A2);
        mpz_class bracket = d1 * d2 * binomial(n - 3, n1 - 1) - d1 * d1 * binomial(n - 3, n1);
        if (bracket == 0) continue;
        Rational N1 = get(A1);
        if (N1.is_zero()) continue;
        Rational N2 = get(A2);
        sum += N1 * N2 * Rational(dot) * Rational(bracket);
    }
    return sum / g;
}

GwEngine::GwEngine(Target t) : target_(std::move(t)), points_(target_, PointInvariants::Route::HH) {}

bool GwEngine::dimension_ok(const CurveClass& A, const std::vector<Insertion>& ins) const {
    long lhs = 0;
    for (const auto& x : ins) lhs += x.d + target_.cdeg(x.cls);
    return lhs == target_.c1(A) + target_.dim() - 3 + static_cast<long>(ins.size());
}

Rational GwEngine::zero_class_exact(const std::vector<Insertion>& ins) const {
    long n = static_cast<long>(ins.size());
    if (n < 3) return 0;
    std::vector<long> ds;
    std::vector<int> cls;
    long sd = 0;
    for (const auto& x : ins) {
        ds.push_back(x.d);
        sd += x.d;
        cls.push_back(x.cls);
    }
    if (sd != n - 3) return 0;
    Rational integral = target_.basis().integral_of_product(cls);
    if (integral.is_zero()) return 0;
    return Rational(multinomial(ds)) * integral;
}

Rational GwEngine::zero_class(const std::vector<Insertion>& ins, std::string* note) const {
    auto say = [&](const std::string& s) {
        if (note) *note = s;
    };
    if (ins.size() < 3) {
        say("unstable");
        return 0;
    }
    bool descendent = false;
    int primary = 0, primary_deg = 0;
    for (const auto& x : ins) {
        if (x.d > 0)
            descendent = true;
        else {
            ++primary;
            primary_deg += target_.cdeg(x.cls);
        }
    }
    if (!descendent) {
        if (ins.size() != 3) {
            say("primary zero-class invariant with more than three points");
            return 0;
        }
        std::vector<int> cls;
        for (const auto& x : ins) cls.push_back(x.cls);
        say("triple cup-product integral");
        return target_.basis().integral_of_product(cls);
    }
    if (ins.size() < 4 || primary != 3 || primary_deg != target_.dim()) {
        say("descendent zero-class query outside the nonvanishing shape");
        return 0;
    }
    say("descendent zero-class query of the nonvanishing shape; evaluated as 0");
    if (verbose())
        std::clog << "zero_class: " << query_string(target_, Query{target_.zero_class(), ins})
                  << " has the nonvanishing shape; returning 0\n";
    return 0;
}

Rational GwEngine::point_invariant(const CurveClass& A) { return points_.get(A); }

namespace {

std::string memo_key(const CurveClass& A, const std::vector<Insertion>& ins) {
    std::string k;
    for (long c : A.coeff) k += std::to_string(c) + ",";
    k += "|";
    for (const auto& x : ins) k += std::to_string(x.d) + ":" + std::to_string(x.cls) + ";";
    return k;
}

}  // namespace

Rational GwEngine::evaluate(const CurveClass& A, std::vector<Insertion> ins) {
    std::sort(ins.begin(), ins.end());
    if (A.is_zero()) return zero_class_exact(ins);
    if (!target_.effective(A)) return 0;
    if (!dimension_ok(A, ins)) return 0;
    std::string key = memo_key(A, ins);
    {
        std::shared_lock lk(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    Rational v = compute(A, ins);
    std::unique_lock lk(mu_);
    memo_.emplace(key, v);
    return v;
}

Rational GwEngine::compute(const CurveClass& A, const std::vector<Insertion>& ins) {
    int one = target_.unit();
    for (size_t i = 0; i < ins.size(); ++i) {
        if (ins[i].cls != one || ins[i].d > 1) continue;
        std::vector<Insertion> rest = ins;
        rest.erase(rest.begin() + static_cast<long>(i));
        if (ins[i].d == 0) {
            Rational s;
            for (size_t j = 0; j < rest.size(); ++j) {
                if (rest[j].d == 0) continue;
                auto r = rest;
                r[j].d -= 1;
                s += evaluate(A, r);
            }
            return s;
        }
        return Rational(static_cast<long>(rest.size()) - 2) * evaluate(A, rest);
    }
    bool descendent = std::any_of(ins.begin(), ins.end(), [](const Insertion& x) { return x.d > 0; });
    if (!descendent) {
        for (size_t i = 0; i < ins.size(); ++i) {
            if (target_.cdeg(ins[i].cls) != 1) continue;
            long p = target_.divisor_pairing(ins[i].cls, A);
            if (p == 0) return 0;
            auto rest = ins;
            rest.erase(rest.begin() + static_cast<long>(i));
            return Rational(p) * evaluate(A, rest);
        }
        for (const auto& x : ins)
            if (x.cls != target_.point()) return 0;
        return point_invariant(A);
    }
    if (ins.size() >= 3) return trr(A, ins);
    return divisor_lift(A, ins);
}

Rational GwEngine::trr(const CurveClass& A, const std::vector<Insertion>& ins) {
    size_t i1 = 0;
    for (size_t i = 1; i < ins.size(); ++i)
        if (ins[i].d > ins[i1].d) i1 = i;
    std::vector<size_t> others;
    for (size_t i = 0; i < ins.size(); ++i)
        if (i != i1) others.push_back(i);
    Insertion x1 = ins[i1], x2 = ins[others[0]], x3 = ins[others[1]];
    std::vector<Insertion> R;
    for (size_t i = 2; i < others.size(); ++i) R.push_back(ins[others[i]]);
    x1.d -= 1;
    const auto& ginv = target_.basis().inverse_pairing();
    int nb = target_.basis().size();
    Rational total;
    size_t nr = R.size();
    for (unsigned long mask = 0; mask < (1UL << nr); ++mask) {
        std::vector<Insertion> left{x1}, right{x2, x3};
        for (size_t r = 0; r < nr; ++r) (mask >> r & 1 ? left : right).push_back(R[r]);
        for (const auto& [A1, A2] : target_.splittings(A)) {
            for (int e = 0; e < nb; ++e) {
                auto L = left;
                L.push_back({0, e});
                Rational lv = evaluate(A1, L);
                if (lv.is_zero()) continue;
                for (int f = 0; f < nb; ++f) {
                    if (ginv[e][f].is_zero()) continue;
                    auto Rr = right;
                    Rr.push_back({0, f});
                    Rational rv = evaluate(A2, Rr);
                    if (!rv.is_zero()) total += lv * ginv[e][f] * rv;
                }
            }
        }
    }
    return total;
}

Rational GwEngine::divisor_lift(const CurveClass& A, const std::vector<Insertion>& ins) {
    int D = -1;
    long p = 0;
    for (int c : target_.divisors()) {
        p = target_.divisor_pairing(c, A);
        if (p != 0) {
            D = c;
            break;
        }
    }
    if (D < 0) throw Error("no divisor pairs nonzero with " + target_.class_string(A));
    auto lifted = ins;
    lifted.push_back({0, D});
    Rational v = evaluate(A, lifted);
    for (size_t j = 0; j < ins.size(); ++j) {
        if (ins[j].d == 0) continue;
        const ClassVec& prod = target_.basis().product(ins[j].cls, D);
        for (size_t c = 0; c < prod.size(); ++c) {
            if (prod[c].is_zero()) continue;
            auto r = ins;
            r[j] = {ins[j].d - 1, static_cast<int>(c)};
            v -= prod[c] * evaluate(A, r);
        }
    }
    return v / Rational(p);
}

Rational GwEngine::evaluate_linear(const CurveClass& A, const std::vector<std::pair<int, ClassVec>>& ins) {
    Rational total;
    std::vector<Insertion> cur(ins.size());
    std::function<void(size_t, Rational)> rec = [&](size_t i, Rational coef) {
        if (i == ins.size()) {
            total += coef * evaluate(A, cur);
            return;
        }
        for (size_t c = 0; c < ins[i].second.size(); ++c) {
            if (ins[i].second[c].is_zero()) continue;
            cur[i] = {ins[i].first, static_cast<int>(c)};
            rec(i + 1, coef * ins[i].second[c]);
        }
    };
    rec(0, 1);
    return total;
}

Relation GwEngine::divisor_reduce(const Query& q, int alpha_pos) const {
    if (alpha_pos < 0 || alpha_pos >= static_cast<int>(q.ins.size())) throw Error("no such insertion");
    const Insertion& a = q.ins[alpha_pos];
    if (a.d != 0 || target_.cdeg(a.cls) != 1) throw Error("insertion is not a primary divisor");
    if (q.A.is_zero()) throw Error("divisor reduction needs a nonzero class");
    long p = target_.divisor_pairing(a.cls, q.A);
    if (p == 0) throw Error("divisor pairing vanishes");
    Query base{q.A, q.ins};
    base.ins.erase(base.ins.begin() + alpha_pos);
    Relation rel;
    rel.terms.push_back({Rational(p), base});
    rel.terms.push_back({Rational(-1), q});
    for (size_t j = 0; j < base.ins.size(); ++j) {
        if (base.ins[j].d == 0) continue;
        const ClassVec& prod = target_.basis().product(base.ins[j].cls, a.cls);
        for (size_t c = 0; c < prod.size(); ++c) {
            if (prod[c].is_zero()) continue;
            Query t = base;
            t.ins[j] = {base.ins[j].d - 1, static_cast<int>(c)};
            rel.terms.push_back({prod[c], t});
        }
    }
    return rel;
}

std::vector<ProductTerm> GwEngine::psi_boundary_split(const Query& q, int i1, int i3, int i2) {
    int n = static_cast<int>(q.ins.size());
    if (n < 3) throw Error("boundary split needs at least three marked points");
    if (i1 == i2 || i1 == i3 || i2 == i3 || std::min({i1, i2, i3}) < 0 || std::max({i1, i2, i3}) >= n)
        throw Error("invalid marked-point roles");
    if (q.ins[i2].d == 0) throw Error("nothing to reduce");
    std::vector<Insertion> R;
    for (int i = 0; i < n; ++i)
        if (i != i1 && i != i2 && i != i3) R.push_back(q.ins[i]);
    Insertion x2 = q.ins[i2];
    x2.d -= 1;
    const auto& ginv = target_.basis().inverse_pairing();
    int nb = target_.basis().size();
    std::vector<ProductTerm> out;
    size_t nr = R.size();
    for (const auto& [A1, A2] : target_.splittings(q.A)) {
        for (unsigned long mask = 0; mask < (1UL << nr); ++mask) {
            std::vector<Insertion> left{q.ins[i1], q.ins[i3]}, right;
            for (size_t r = 0; r < nr; ++r) (mask >> r & 1 ? left : right).push_back(R[r]);
            for (int e = 0; e < nb; ++e)
                for (int f = 0; f < nb; ++f) {
                    if (ginv[e][f].is_zero()) continue;
                    Query L{A1, left}, Rq{A2, {}};
                    L.ins.push_back({0, e});
                    Rq.ins.push_back({0, f});
                    Rq.ins.push_back(x2);
                    Rq.ins.insert(Rq.ins.end(), right.begin(), right.end());
                    if (evaluate(L).is_zero() || evaluate(Rq).is_zero()) continue;
                    out.push_back({ginv[e][f], {L, Rq}});
                }
        }
    }
    return out;
}

namespace {

std::tuple<Rational, size_t, long> measure(const Query& q) {
    long psi = 0;
    for (const auto& x : q.ins) psi += x.d;
    return {q.A.area, q.ins.size(), psi};
}

bool all_primary(const Query& q) {
    return std::all_of(q.ins.begin(), q.ins.end(), [](const Insertion& x) { return x.d == 0; });
}

}  // namespace

std::vector<ProductTerm> GwEngine::expand_primary(const Query& q, int& budget) {
    if (all_primary(q) || q.A.is_zero()) {
        if (q.A.is_zero() && !all_primary(q)) return {{zero_class_exact(q.ins), {}}};
        return {{Rational(1), {q}}};
    }
    if (--budget < 0) throw Error("rewriting budget exceeded");
    auto expand_product = [&](const std::vector<Query>& fs, const Rational& c, std::vector<ProductTerm>& out) {
        std::vector<ProductTerm> acc{{c, {}}};
        for (const auto& f : fs) {
            auto ex = expand_primary(f, budget);
            std::vector<ProductTerm> next;
            for (const auto& a : acc)
                for (const auto& b : ex) {
                    ProductTerm t{a.coeff * b.coeff, a.factors};
                    t.factors.insert(t.factors.end(), b.factors.begin(), b.factors.end());
                    next.push_back(t);
                }
            acc = std::move(next);
        }
        out.insert(out.end(), acc.begin(), acc.end());
    };
    std::vector<ProductTerm> out;
    int n = static_cast<int>(q.ins.size());
    if (n >= 3) {
        int i2 = 0;
        while (q.ins[i2].d == 0) ++i2;
        int i1 = i2 == 0 ? 1 : 0;
        int i3 = 0;
        while (i3 == i1 || i3 == i2) ++i3;
        for (const auto& t : psi_boundary_split(q, i1, i3, i2)) expand_product(t.factors, t.coeff, out);
        return out;
    }
    int D = -1;
    for (int c : target_.divisors())
        if (target_.divisor_pairing(c, q.A) != 0) {
            D = c;
            break;
        }
    if (D < 0) throw Error("no divisor pairs nonzero with " + target_.class_string(q.A));
    Query lifted = q;
    lifted.ins.push_back({0, D});
    Relation rel = divisor_reduce(lifted, static_cast<int>(lifted.ins.size()) - 1);
    Rational lead = rel.terms[0].first;
    for (size_t i = 1; i < rel.terms.size(); ++i)
        expand_product({rel.terms[i].second}, -rel.terms[i].first / lead, out);
    return out;
}

Reduction GwEngine::reduce_to_primary(const Query& q, int max_steps) {
    int pt = target_.point();
    auto pt_pos = [&](const Query& x) {
        for (size_t i = 0; i < x.ins.size(); ++i)
            if (x.ins[i].d == 0 && x.ins[i].cls == pt) return static_cast<int>(i);
        return -1;
    };
    if (pt_pos(q) < 0) throw Error("query has no primary point insertion");
    Reduction red;
    red.value = evaluate(q);
    if (red.value.is_zero()) {
        int budget = max_steps;
        red.primary_expansion = expand_primary(q, budget);
        return red;
    }
    Query cur = q;
    auto step = [&](const std::string& rule, const Query& next) {
        if (!(measure(next) < measure(cur)))
            throw Error("rewriting step does not decrease the measure: " + query_string(target_, cur));
        red.steps.push_back({rule, cur, next});
        cur = next;
    };
    auto follow = [&](const std::vector<ProductTerm>& terms) -> const Query* {
        for (const auto& t : terms) {
            const Query& f = t.factors[0].A.is_zero() ? t.factors[1] : t.factors[0];
            if (pt_pos(f) >= 0) return &f;
        }
        return nullptr;
    };
    while (!all_primary(cur)) {
        if (static_cast<int>(red.steps.size()) >= max_steps) throw Error("rewriting budget exceeded");
        int p = pt_pos(cur);
        int n = static_cast<int>(cur.ins.size());
        if (n >= 3) {
            int i2 = 0;
            while (cur.ins[i2].d == 0) ++i2;
            int i3 = -1;
            for (int i = 0; i < n; ++i)
                if (i != p && i != i2 && (i3 < 0 || cur.ins[i].d < cur.ins[i3].d)) i3 = i;
            auto terms = psi_boundary_split(cur, p, i3, i2);
            const Query* next = follow(terms);
            if (!next) throw Error("no nonzero boundary term carries the point insertion");
            step("psi_boundary_split", *next);
            continue;
        }
        int D = -1;
        for (int c : target_.divisors())
            if (target_.divisor_pairing(c, cur.A) != 0) {
                D = c;
                break;
            }
        if (D < 0) throw Error("no divisor pairs nonzero with " + target_.class_string(cur.A));
        Query lifted = cur;
        lifted.ins.push_back({0, D});
        Relation rel = divisor_reduce(lifted, static_cast<int>(lifted.ins.size()) - 1);
        const Query* lower = nullptr;
        for (size_t i = 2; i < rel.terms.size(); ++i)
            if (!evaluate(rel.terms[i].second).is_zero() && pt_pos(rel.terms[i].second) >= 0) {
                lower = &rel.terms[i].second;
                break;
            }
        if (lower) {
            step("divisor_reduce", *lower);
            continue;
        }
        int i2 = 0;
        while (lifted.ins[i2].d == 0) ++i2;
        auto terms = psi_boundary_split(lifted, pt_pos(lifted), static_cast<int>(lifted.ins.size()) - 1, i2);
        const Query* next = follow(terms);
        if (!next) throw Error("no nonzero boundary term carries the point insertion");
        step("divisor_reduce+psi_boundary_split", *next);
    }
    red.has_witness = true;
    red.witness = cur;
    return red;
}

size_t GwEngine::memo_size() const {
    std::shared_lock lk(mu_);
    return memo_.size();
}

GwEngine& engine_for(TargetKind kind) {
    static GwEngine pt(Target(TargetKind::Point));
    static GwEngine p1(Target(TargetKind::P1));
    static GwEngine p2(Target(TargetKind::P2));
    static GwEngine bl(Target(TargetKind::BlP2));
    switch (kind) {
        case TargetKind::Point: return pt;
        case TargetKind::P1: return p1;
        case TargetKind::P2: return p2;
        case TargetKind::BlP2: return bl;
    }
    throw Error("unsupported space");
}

Rational kontsevich(int d) {
    if (d < 1) throw Error("degree must be positive");
    GwEngine& e = engine_for(TargetKind::P2);
    return e.point_invariant(e.target().make_class({d}));
}

Rational kontsevich_via_blowup(int d) {
    if (d < 1) throw Error("degree must be positive");
    static Target bl(TargetKind::BlP2);
    static PointInvariants ee(bl, PointInvariants::Route::EE);
    return ee.get(bl.make_class({d, 1}));
}

}  // namespace gwc
