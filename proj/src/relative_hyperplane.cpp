#include "gwc/relative_hyperplane.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

namespace gwc {

namespace {

TargetKind hyperplane_of(TargetKind k) {
    if (k == TargetKind::P1) return TargetKind::Point;
    if (k == TargetKind::P2) return TargetKind::P1;
    throw Error("unsupported space");
}

}  // namespace

HyperplaneEngine::HyperplaneEngine(TargetKind ambient)
    : X_(engine_for(ambient)), Y_(engine_for(hyperplane_of(ambient))) {
    const GradedBasis& xb = X_.target().basis();
    const GradedBasis& yb = Y_.target().basis();
    // Both are projective spaces with basis H^0..H^n; H^a restricts to h^a.
    y_in_x_ = 1;
    for (int i = 0; i < xb.size(); ++i) restrict_.push_back(i < yb.size() ? i : -1);
    for (int i = 0; i < yb.size(); ++i) lift_.push_back(i);
}

bool HyperplaneEngine::dimension_ok(long e, const std::vector<RelPoint>& pts) const {
    const Target& t = X_.target();
    long lhs = 0, contact = 0;
    for (const auto& p : pts) {
        lhs += p.psi + t.cdeg(p.cls);
        contact += p.alpha;
    }
    long c1 = (t.dim() + 1) * e;
    return lhs == c1 + t.dim() - 3 + static_cast<long>(pts.size()) - contact;
}

Rational HyperplaneEngine::evaluate(long e, std::vector<RelPoint> pts) {
    if (e < 0) return 0;
    long contact = 0;
    for (const auto& p : pts) {
        if (p.alpha < 0) throw Error("negative contact order");
        contact += p.alpha;
    }
    if (contact > e) return 0;
    if (!dimension_ok(e, pts)) return 0;
    std::sort(pts.begin(), pts.end());
    if (contact == 0) {
        std::vector<Insertion> ins;
        for (const auto& p : pts) ins.push_back({p.psi, p.cls});
        return X_.evaluate(X_.target().make_class({e}), ins);
    }
    std::string key = std::to_string(e) + "|";
    for (const auto& p : pts)
        key += std::to_string(p.alpha) + "," + std::to_string(p.cls) + "," + std::to_string(p.psi) + ";";
    {
        std::shared_lock lk(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    Rational v = compute(e, pts);
    std::unique_lock lk(mu_);
    memo_.emplace(key, v);
    return v;
}

Rational HyperplaneEngine::compute(long e, const std::vector<RelPoint>& pts) {
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i)
        if (pts[i].alpha > pts[k].alpha) k = i;
    std::vector<RelPoint> lower = pts;
    lower[k].alpha -= 1;
    Rational v;
    if (lower[k].alpha > 0) {
        auto p = lower;
        p[k].psi += 1;
        v += Rational(lower[k].alpha) * evaluate(e, p);
    }
    const ClassVec& prod = X_.target().basis().product(lower[k].cls, y_in_x_);
    for (size_t c = 0; c < prod.size(); ++c) {
        if (prod[c].is_zero()) continue;
        auto p = lower;
        p[k].cls = static_cast<int>(c);
        v += prod[c] * evaluate(e, p);
    }
    v -= boundary(e, lower, k);
    return v;
}

// Comb loci: a component in the hyperplane carrying point k, with teeth meeting it.
Rational HyperplaneEngine::boundary(long e, const std::vector<RelPoint>& pts, size_t k) {
    const Target& yt = Y_.target();
    const auto& yinv = yt.basis().inverse_pairing();
    int ny = yt.basis().size();
    size_t n = pts.size();
    long max_e0 = yt.kind() == TargetKind::Point ? 0 : e - 1;
    Rational total;
    std::vector<size_t> others;
    for (size_t i = 0; i < n; ++i)
        if (i != k) others.push_back(i);
    size_t no = others.size();
    for (unsigned long mask = 0; mask < (1UL << no); ++mask) {
        std::vector<size_t> J0{k}, rest;
        for (size_t i = 0; i < no; ++i) (mask >> i & 1 ? J0 : rest).push_back(others[i]);
        long a0 = 0;
        std::vector<Insertion> yins;
        bool vanish = false;
        for (size_t j : J0) {
            a0 += pts[j].alpha;
            int r = restrict_[pts[j].cls];
            if (r < 0) {
                vanish = true;
                break;
            }
            yins.push_back({pts[j].psi, r});
        }
        if (vanish) continue;
        for (long e0 = 0; e0 <= max_e0; ++e0) {
            long need = a0 - e0;  // sum of tooth multiplicities
            if (need < 1) continue;
            // ordered teeth: (class, point subset, multiplicity)
            struct Tooth {
                long cls;
                std::vector<size_t> J;
                long m;
            };
            std::vector<Tooth> teeth;
            std::function<void(long, std::vector<size_t>, long)> rec = [&](long budget, std::vector<size_t> left,
                                                                            long mleft) {
                if (budget == 0) {
                    if (!left.empty() || mleft != 0) return;
                    long r = static_cast<long>(teeth.size());
                    if (e0 == 0 && static_cast<long>(J0.size()) + r < 3) return;
                    Rational w(1);
                    for (const auto& t : teeth) w *= Rational(t.m);
                    w /= Rational(mpz_class(factorial(r)));
                    // sum over node classes
                    std::vector<int> a(r, 0);
                    std::function<void(long, Rational)> nodes = [&](long i, Rational coef) {
                        if (i == r) {
                            auto yq = yins;
                            for (long t = 0; t < r; ++t) yq.push_back({0, a[t]});
                            Rational yv = Y_.evaluate(yt.make_class(yt.kind() == TargetKind::Point
                                                                        ? std::vector<long>{}
                                                                        : std::vector<long>{e0}),
                                                      yq);
                            if (!yv.is_zero()) total += w * coef * yv;
                            return;
                        }
                        for (int p = 0; p < ny; ++p)
                            for (int q = 0; q < ny; ++q) {
                                if (yinv[p][q].is_zero()) continue;
                                std::vector<RelPoint> tp;
                                for (size_t j : teeth[i].J) tp.push_back(pts[j]);
                                tp.push_back({static_cast<int>(teeth[i].m), lift_[q], 0});
                                Rational tv = evaluate(teeth[i].cls, tp);
                                if (tv.is_zero()) continue;
                                a[i] = p;
                                nodes(i + 1, coef * yinv[p][q] * tv);
                            }
                    };
                    nodes(0, Rational(1));
                    return;
                }
                size_t nl = left.size();
                for (long c = 1; c <= budget; ++c)
                    for (unsigned long sm = 0; sm < (1UL << nl); ++sm) {
                        std::vector<size_t> J, keep;
                        long sa = 0;
                        for (size_t i = 0; i < nl; ++i) {
                            if (sm >> i & 1) {
                                J.push_back(left[i]);
                                sa += pts[left[i]].alpha;
                            } else
                                keep.push_back(left[i]);
                        }
                        for (long m = 1; m <= std::min(c - sa, mleft); ++m) {
                            teeth.push_back({c, J, m});
                            rec(budget - c, keep, mleft - m);
                            teeth.pop_back();
                        }
                    }
            };
            rec(e - e0, rest, need);
        }
    }
    return total;
}

size_t HyperplaneEngine::memo_size() const {
    std::shared_lock lk(mu_);
    return memo_.size();
}

HyperplaneEngine& hyperplane_engine(TargetKind ambient) {
    static HyperplaneEngine p1(TargetKind::P1);
    static HyperplaneEngine p2(TargetKind::P2);
    if (ambient == TargetKind::P1) return p1;
    if (ambient == TargetKind::P2) return p2;
    throw Error("unsupported space");
}

}  // namespace gwc
