#pragma once

#include <map>
#include <string>
#include <vector>

#include "gwc/numeric.hpp"

namespace gwc {

enum class SpaceTag { Base, Submanifold, Exceptional, BlowUp };

std::string to_string(SpaceTag t);

using ClassVec = std::vector<Rational>;

// Finite graded basis with exact cup product and Poincare pairing.
// Degrees are real degrees; every class has even degree.
class GradedBasis {
public:
    GradedBasis() = default;
    GradedBasis(SpaceTag tag, int real_dim, std::vector<std::string> labels, std::vector<int> degrees);

    SpaceTag tag() const { return tag_; }
    int real_dim() const { return real_dim_; }
    int complex_dim() const { return real_dim_ / 2; }
    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_.at(i); }
    int degree(int i) const { return degrees_.at(i); }
    int index(const std::string& label) const;
    bool has(const std::string& label) const;
    int unit() const { return unit_; }
    int top() const { return top_; }

    // Structure constants: e_i * e_j = sum_k c^k_ij e_k.
    void set_product(int i, int j, ClassVec v);
    const ClassVec& product(int i, int j) const { return cup_.at(i).at(j); }
    ClassVec cup(const ClassVec& a, const ClassVec& b) const;
    ClassVec basis_vector(int i) const;
    Rational integral(const ClassVec& v) const;
    Rational integral_of_product(const std::vector<int>& idx) const;
    std::map<int, std::map<int, Rational>> sparse_table() const;

    // Derives the pairing from the cup table and checks invertibility.
    void finalize();

    const std::vector<std::vector<Rational>>& pairing() const { return pairing_; }
    const std::vector<std::vector<Rational>>& inverse_pairing() const { return inverse_; }
    bool self_dual() const { return involution_.size() == labels_.size(); }
    // Basis index whose pairing with i is 1 (self-dual bases only).
    int dual_class(int i) const;
    // Coefficients of the dual basis element e^i in the basis.
    ClassVec dual_vector(int i) const;

private:
    SpaceTag tag_ = SpaceTag::Base;
    int real_dim_ = 0;
    std::vector<std::string> labels_;
    std::vector<int> degrees_;
    std::vector<std::vector<ClassVec>> cup_;
    std::vector<std::vector<Rational>> pairing_;
    std::vector<std::vector<Rational>> inverse_;
    std::vector<int> involution_;
    int unit_ = 0;
    int top_ = -1;
};

// Class pi_S^* theta_s * [E]^j on the exceptional divisor.
struct ExceptionalClass {
    int s_part_index = 0;
    int fiber_power = 0;
    bool operator==(const ExceptionalClass&) const = default;
};

struct BlowUpClass {
    enum class Kind { PulledBack, Supported };
    Kind kind = Kind::PulledBack;
    int index = 0;  // sigma index in X, or delta index in E
};

struct SubmanifoldDescriptor {
    int dim = 0;  // complex dimension m of the linear P^m; 0 is a point
    static SubmanifoldDescriptor parse(const std::string& s);
    std::string name() const;
};

// X = P^n, S = linear P^m, E = P^{k-1}-bundle over S, Xt = blow-up of X along S.
struct SpaceModel {
    int n = 0;
    int m = 0;
    int k = 0;
    GradedBasis X, S, E, Xt;
    // E basis index -> (theta index, fiber power).
    std::vector<ExceptionalClass> e_classes;
    // X-tilde basis index -> kind.
    std::vector<BlowUpClass> xt_kinds;
    // X-tilde expansion of sigma pulled back / delta pushed forward, for every sigma and delta.
    std::vector<ClassVec> pullback;
    std::vector<ClassVec> supported;
    // X index of theta_i pushed into X, i.e. theta_i cup [S].
    std::vector<int> theta_to_x;

    int e_index(int theta, int fiber_power) const;
    int deg_S(int e_idx) const;  // real degree of theta
    int deg_f(int e_idx) const;  // 2 * fiber power
    // H^c restricted to S.
    int restrict_to_S(int x_idx) const;
};

GradedBasis build_projective_space(int n, SpaceTag tag = SpaceTag::Base, const std::string& suffix = "");
SpaceModel build_space(int n, const SubmanifoldDescriptor& s);

}  // namespace gwc
