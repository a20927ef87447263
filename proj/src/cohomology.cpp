#include "gwc/cohomology.hpp"

#include <algorithm>

namespace gwc {

std::string to_string(SpaceTag t) {
    switch (t) {
        case SpaceTag::Base: return "Base";
        case SpaceTag::Submanifold: return "Submanifold";
        case SpaceTag::Exceptional: return "Exceptional";
        case SpaceTag::BlowUp: return "BlowUp";
    }
    return "?";
}

GradedBasis::GradedBasis(SpaceTag tag, int real_dim, std::vector<std::string> labels, std::vector<int> degrees)
    : tag_(tag), real_dim_(real_dim), labels_(std::move(labels)), degrees_(std::move(degrees)) {
    const int n = size();
    cup_.assign(n, std::vector<ClassVec>(n, ClassVec(n)));
    for (int i = 0; i < n; ++i) {
        if (degrees_[i] % 2 != 0) throw Error("odd degree class " + labels_[i]);
        if (degrees_[i] == real_dim_) {
            if (top_ >= 0) throw Error("top degree class is not unique");
            top_ = i;
        }
    }
}

int GradedBasis::index(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error("unknown class '" + label + "'");
    return static_cast<int>(it - labels_.begin());
}

bool GradedBasis::has(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

void GradedBasis::set_product(int i, int j, ClassVec v) {
    for (int k = 0; k < size(); ++k)
        if (!v[k].is_zero() && degrees_[k] != degrees_[i] + degrees_[j])
            throw Error("cup product " + labels_[i] + "*" + labels_[j] + " breaks grading");
    cup_[i][j] = std::move(v);
}

ClassVec GradedBasis::basis_vector(int i) const {
    ClassVec v(size());
    v.at(i) = 1;
    return v;
}

ClassVec GradedBasis::cup(const ClassVec& a, const ClassVec& b) const {
    ClassVec r(size());
    for (int i = 0; i < size(); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < size(); ++j) {
            if (b[j].is_zero()) continue;
            Rational c = a[i] * b[j];
            const ClassVec& p = cup_[i][j];
            for (int k = 0; k < size(); ++k)
                if (!p[k].is_zero()) r[k] += c * p[k];
        }
    }
    return r;
}

Rational GradedBasis::integral(const ClassVec& v) const {
    if (top_ < 0) throw Error("space has no top class");
    return v.at(top_);
}

Rational GradedBasis::integral_of_product(const std::vector<int>& idx) const {
    ClassVec acc = basis_vector(unit_);
    for (int i : idx) acc = cup(acc, basis_vector(i));
    return integral(acc);
}

std::map<int, std::map<int, Rational>> GradedBasis::sparse_table() const {
    std::map<int, std::map<int, Rational>> out;
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j)
            for (int k = 0; k < size(); ++k)
                if (!cup_[i][j][k].is_zero()) out[i * size() + j][k] = cup_[i][j][k];
    return out;
}

namespace {

// Gauss-Jordan inverse over Q.
std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!a[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) throw Error("intersection pairing is degenerate");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational p = a[col][col];
        for (int c = 0; c < n; ++c) {
            a[col][c] /= p;
            inv[col][c] /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rational f = a[r][col];
            for (int c = 0; c < n; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

}  // namespace

void GradedBasis::finalize() {
    const int n = size();
    unit_ = -1;
    for (int i = 0; i < n; ++i)
        if (degrees_[i] == 0) unit_ = i;
    if (unit_ < 0) throw Error("basis has no unit");
    pairing_.assign(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pairing_[i][j] = integral(cup_[i][j]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (pairing_[i][j] != pairing_[j][i]) throw Error("pairing is not symmetric");
    inverse_ = invert(pairing_);
    involution_.clear();
    std::vector<int> inv(n, -1);
    bool perm = true;
    for (int i = 0; i < n && perm; ++i) {
        int hit = -1;
        for (int j = 0; j < n; ++j) {
            if (pairing_[i][j].is_zero()) continue;
            if (pairing_[i][j] != 1 || hit >= 0) {
                perm = false;
                break;
            }
            hit = j;
        }
        if (hit < 0) perm = false;
        inv[i] = hit;
    }
    if (perm) involution_ = inv;
}

int GradedBasis::dual_class(int i) const {
    if (!self_dual()) throw Error("basis is not self-dual");
    return involution_.at(i);
}

ClassVec GradedBasis::dual_vector(int i) const {
    ClassVec v(size());
    for (int j = 0; j < size(); ++j) v[j] = inverse_.at(i).at(j);
    return v;
}

SubmanifoldDescriptor SubmanifoldDescriptor::parse(const std::string& s) {
    if (s == "point" || s == "pt") return {0};
    if (s == "line") return {1};
    if (s == "plane") return {2};
    if (s.size() >= 2 && (s[0] == 'P' || s[0] == 'p')) {
        try {
            return {std::stoi(s.substr(1))};
        } catch (const std::exception&) {
        }
    }
    throw Error("unsupported geometry");
}

std::string SubmanifoldDescriptor::name() const {
    if (dim == 0) return "point";
    if (dim == 1) return "line";
    if (dim == 2) return "plane";
    return "P" + std::to_string(dim);
}

GradedBasis build_projective_space(int n, SpaceTag tag, const std::string& suffix) {
    if (n < 0) throw Error("unsupported geometry");
    std::vector<std::string> labels;
    std::vector<int> degs;
    for (int a = 0; a <= n; ++a) {
        std::string l;
        if (a == 0)
            l = "1";
        else if (a == n)
            l = "pt";
        else if (a == 1)
            l = (suffix.empty() ? "H" : "h");
        else
            l = (suffix.empty() ? "H^" : "h^") + std::to_string(a);
        labels.push_back(l + suffix);
        degs.push_back(2 * a);
    }
    GradedBasis b(tag, 2 * n, labels, degs);
    for (int a = 0; a <= n; ++a)
        for (int c = 0; c <= n; ++c) {
            ClassVec v(n + 1);
            if (a + c <= n) v[a + c] = 1;
            b.set_product(a, c, v);
        }
    b.finalize();
    return b;
}

int SpaceModel::e_index(int theta, int fiber_power) const {
    for (size_t i = 0; i < e_classes.size(); ++i)
        if (e_classes[i].s_part_index == theta && e_classes[i].fiber_power == fiber_power) return static_cast<int>(i);
    throw Error("not a class of E");
}

int SpaceModel::deg_S(int e_idx) const { return 2 * e_classes.at(e_idx).s_part_index; }
int SpaceModel::deg_f(int e_idx) const { return 2 * e_classes.at(e_idx).fiber_power; }

int SpaceModel::restrict_to_S(int x_idx) const { return x_idx <= m ? x_idx : -1; }

namespace {

std::string e_label(const GradedBasis& S, int a, int j) {
    std::string theta = (a == 0) ? "" : S.label(a).substr(0, S.label(a).size() - 2);
    std::string fib = (j == 0) ? "" : (j == 1 ? "[E]" : "[E]^" + std::to_string(j));
    if (theta.empty() && fib.empty()) return "1_E";
    if (fib.empty()) return theta + "_E";
    if (theta.empty()) return fib;
    return theta + "_E." + fib;
}

// Element of H*(Xt) written as p^* P + j_* Sup, before reduction.
struct XtElt {
    ClassVec P;
    ClassVec Sup;
};

}  // namespace

SpaceModel build_space(int n, const SubmanifoldDescriptor& desc) {
    const int m = desc.dim;
    if (n < 1 || m < 0 || m > n - 1) throw Error("unsupported geometry");
    SpaceModel sp;
    sp.n = n;
    sp.m = m;
    sp.k = n - m;
    const int k = sp.k;
    sp.X = build_projective_space(n);
    sp.S = build_projective_space(m, SpaceTag::Submanifold, "_S");

    // E = S x P^{k-1}, ordered by total degree, then by S-part.
    std::vector<std::string> elabels;
    std::vector<int> edeg;
    for (int tot = 0; tot <= m + k - 1; ++tot)
        for (int a = 0; a <= m; ++a) {
            int j = tot - a;
            if (j < 0 || j > k - 1) continue;
            sp.e_classes.push_back({a, j});
            elabels.push_back(e_label(sp.S, a, j));
            edeg.push_back(2 * tot);
        }
    const int ne = static_cast<int>(sp.e_classes.size());
    sp.E = GradedBasis(SpaceTag::Exceptional, 2 * (n - 1), elabels, edeg);
    auto emul_idx = [&](int x, int y) -> int {
        int a = sp.e_classes[x].s_part_index + sp.e_classes[y].s_part_index;
        int j = sp.e_classes[x].fiber_power + sp.e_classes[y].fiber_power;
        if (a > m || j > k - 1) return -1;
        return sp.e_index(a, j);
    };
    for (int x = 0; x < ne; ++x)
        for (int y = 0; y < ne; ++y) {
            ClassVec v(ne);
            int z = emul_idx(x, y);
            if (z >= 0) v[z] = 1;
            sp.E.set_product(x, y, v);
        }
    sp.E.finalize();

    // Blow-up: basis p^*sigma (all) and j_*(theta xi^j) with j <= k-2.
    std::vector<int> sup_basis;  // E indices kept as supported basis elements
    for (int x = 0; x < ne; ++x)
        if (sp.e_classes[x].fiber_power <= k - 2) sup_basis.push_back(x);
    const int nx = n + 1;
    std::vector<std::string> xl;
    std::vector<int> xd;
    for (int c = 0; c <= n; ++c) {
        xl.push_back(sp.X.label(c));
        xd.push_back(2 * c);
        sp.xt_kinds.push_back({BlowUpClass::Kind::PulledBack, c});
    }
    for (int x : sup_basis) {
        xl.push_back(x == sp.e_index(0, 0) ? "E" : "j(" + elabels[x] + ")");
        xd.push_back(edeg[x] + 2);
        sp.xt_kinds.push_back({BlowUpClass::Kind::Supported, x});
    }
    const int nt = static_cast<int>(xl.size());
    sp.Xt = GradedBasis(SpaceTag::BlowUp, 2 * n, xl, xd);

    auto e_times = [&](const ClassVec& a, const ClassVec& b) { return sp.E.cup(a, b); };
    auto res = [&](const ClassVec& P) {
        ClassVec s(ne);
        for (int c = 0; c <= m; ++c)
            if (!P[c].is_zero()) s[sp.e_index(c, 0)] += P[c];
        return s;
    };
    ClassVec normal(ne);  // c_1 of the normal bundle of E: h - xi
    if (m >= 1) normal[sp.e_index(1, 0)] += 1;
    if (k >= 2) normal[sp.e_index(0, 1)] -= 1;

    auto reduce = [&](XtElt e) {
        for (int x = 0; x < ne; ++x) {
            if (sp.e_classes[x].fiber_power != k - 1 || e.Sup[x].is_zero()) continue;
            Rational c = e.Sup[x];
            e.Sup[x] = 0;
            int a = sp.e_classes[x].s_part_index;
            e.P[k + a] += c;
            for (int r = 0; r <= k - 2; ++r) {
                int ah = a + k - 1 - r;
                if (ah > m) continue;
                e.Sup[sp.e_index(ah, r)] -= c;
            }
        }
        ClassVec v(nt);
        for (int c = 0; c < nx; ++c) v[c] = e.P[c];
        for (size_t i = 0; i < sup_basis.size(); ++i) v[nx + i] = e.Sup[sup_basis[i]];
        return v;
    };
    auto elt_of = [&](int t) {
        XtElt e{ClassVec(nx), ClassVec(ne)};
        if (t < nx)
            e.P[t] = 1;
        else
            e.Sup[sup_basis[t - nx]] = 1;
        return e;
    };
    for (int s = 0; s < nt; ++s)
        for (int t = 0; t < nt; ++t) {
            XtElt a = elt_of(s), b = elt_of(t);
            XtElt r{sp.X.cup(a.P, b.P), ClassVec(ne)};
            ClassVec t1 = e_times(res(a.P), b.Sup), t2 = e_times(res(b.P), a.Sup),
                     t3 = e_times(e_times(a.Sup, b.Sup), normal);
            for (int x = 0; x < ne; ++x) r.Sup[x] = t1[x] + t2[x] + t3[x];
            sp.Xt.set_product(s, t, reduce(r));
        }
    sp.Xt.finalize();

    for (int c = 0; c <= n; ++c) sp.pullback.push_back(sp.Xt.basis_vector(c));
    for (int x = 0; x < ne; ++x) {
        XtElt e{ClassVec(nx), ClassVec(ne)};
        e.Sup[x] = 1;
        sp.supported.push_back(reduce(e));
    }
    for (int a = 0; a <= m; ++a) sp.theta_to_x.push_back(k + a);
    return sp;
}

}  // namespace gwc
