#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "gwc/cohomology.hpp"
#include "gwc/numeric.hpp"

namespace gwc {

enum class TargetKind { Point, P1, P2, BlP2 };

struct CurveClass {
    std::vector<long> coeff;
    Rational area;
    bool is_zero() const;
    bool operator==(const CurveClass& o) const { return coeff == o.coeff; }
    bool operator<(const CurveClass& o) const { return coeff < o.coeff; }
};

// Genus-zero target: cohomology, curve classes and seeds.
class Target {
public:
    explicit Target(TargetKind kind);
    static Target parse(const std::string& name);

    TargetKind kind() const { return kind_; }
    std::string name() const;
    const GradedBasis& basis() const { return basis_; }
    int dim() const { return basis_.complex_dim(); }
    int cdeg(int cls) const { return basis_.degree(cls) / 2; }
    int unit() const { return basis_.unit(); }
    int point() const { return basis_.top(); }
    std::vector<int> divisors() const;

    CurveClass make_class(std::vector<long> coeff) const;
    CurveClass zero_class() const;
    CurveClass parse_class(const std::string& s) const;
    std::string class_string(const CurveClass& A) const;
    CurveClass add(const CurveClass& a, const CurveClass& b) const;
    CurveClass sub(const CurveClass& a, const CurveClass& b) const;

    long c1(const CurveClass& A) const;
    // D . A for a class of complex degree 1.
    long divisor_pairing(int cls, const CurveClass& A) const;
    long intersection(const CurveClass& a, const CurveClass& b) const;
    bool effective(const CurveClass& A) const;
    // Ordered pairs (A1, A2) with A1 + A2 = A, each zero or effective.
    std::vector<std::pair<CurveClass, CurveClass>> splittings(const CurveClass& A) const;
    // Classes of area at most the bound, sorted by area.
    std::vector<CurveClass> effective_classes_up_to(const Rational& area_bound) const;

private:
    TargetKind kind_;
    GradedBasis basis_;
};

struct Insertion {
    int d = 0;
    int cls = 0;
    auto operator<=>(const Insertion&) const = default;
};

struct Query {
    CurveClass A;
    std::vector<Insertion> ins;
};

std::string query_string(const Target& t, const Query& q);
std::vector<Insertion> parse_insertions(const Target& t, const std::string& s);

// Point-only primary invariants N_A of the surface targets via WDVV.
class PointInvariants {
public:
    enum class Route { HH, EE };
    PointInvariants(const Target& t, Route r) : target_(t), route_(r) {}
    Rational get(const CurveClass& A);

private:
    Rational compute(const CurveClass& A);
    const Target& target_;
    Route route_;
    std::mutex mu_;
    std::map<CurveClass, Rational> memo_;
};

struct Relation {
    // sum_i coeff_i * query_i = 0
    std::vector<std::pair<Rational, Query>> terms;
};

struct ProductTerm {
    Rational coeff;
    std::vector<Query> factors;
};

struct ReductionStep {
    std::string rule;
    Query from;
    Query to;
};

struct Reduction {
    Rational value;
    bool has_witness = false;
    Query witness;
    std::vector<ReductionStep> steps;
    // For vanishing queries: linear combination of primary products.
    std::vector<ProductTerm> primary_expansion;
};

class GwEngine {
public:
    explicit GwEngine(Target t);

    const Target& target() const { return target_; }
    bool dimension_ok(const CurveClass& A, const std::vector<Insertion>& ins) const;
    Rational evaluate(const CurveClass& A, std::vector<Insertion> ins);
    Rational evaluate(const Query& q) { return evaluate(q.A, q.ins); }
    // Multilinear extension: each insertion is (descendent power, class vector).
    Rational evaluate_linear(const CurveClass& A, const std::vector<std::pair<int, ClassVec>>& ins);

    // Zero-class invariants, exact (multinomial times the cup-product integral).
    Rational zero_class_exact(const std::vector<Insertion>& ins) const;
    // Zero-class rule: strictly descendent queries give 0.
    Rational zero_class(const std::vector<Insertion>& ins, std::string* note = nullptr) const;

    Rational point_invariant(const CurveClass& A);

    Relation divisor_reduce(const Query& q, int alpha) const;
    std::vector<ProductTerm> psi_boundary_split(const Query& q, int i1, int i3, int i2);
    Reduction reduce_to_primary(const Query& q, int max_steps = 1000);

    size_t memo_size() const;

private:
    Rational compute(const CurveClass& A, const std::vector<Insertion>& ins);
    Rational trr(const CurveClass& A, const std::vector<Insertion>& ins);
    Rational divisor_lift(const CurveClass& A, const std::vector<Insertion>& ins);
    std::vector<ProductTerm> expand_primary(const Query& q, int& budget);

    Target target_;
    PointInvariants points_;
    mutable std::shared_mutex mu_;
    std::map<std::string, Rational> memo_;
};

// N_d of P^2 by the (H,H) specialization on P^2.
Rational kontsevich(int d);
// N_d of P^2 read off Bl_pt P^2 with the (E,E) specialization only.
Rational kontsevich_via_blowup(int d);

GwEngine& engine_for(TargetKind kind);

}  // namespace gwc
