#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gwc/graph.hpp"
#include "gwc/gw.hpp"
#include "gwc/relative_hyperplane.hpp"

namespace gwc {

// One glued configuration in a degeneration: edges carry (tangency, class on the cut
// divisor as seen from the minus side) and join a minus block to a plus block.
struct SplitEdge {
    int t = 1;
    int rho = 0;
    int minus = 0;
    int plus = 0;
};

struct SplitShape {
    std::vector<SplitEdge> edges;
    int p = 0;  // minus blocks
    int q = 0;  // plus blocks
    // counts[block][type] of items placed on each block
    std::vector<std::vector<int>> minus_counts, plus_counts;
    Rational item_multiplicity{1};
    Rational weight;    // prod t / |Aut T|
    mpz_class delta;    // prod t * |Aut T|
};

struct CutItems {
    // Items grouped into types: counts[i] copies of type i on each side.
    std::vector<int> minus_types, plus_types;
};

// Enumerates splittings with tangencies sorted decreasingly (one term per unweighted
// partition T and class tuple) whose dual graph is a tree.
void for_each_splitting(const CutItems& items, int rho_count, long max_contact, bool exact_contact,
                        const std::function<void(const SplitShape&)>& f);

using InvariantVector = std::map<std::string, Rational>;

enum class IndexSetTag { I, I_pt, I_0pt };
std::string to_string(IndexSetTag t);
IndexSetTag tag_for(GraphFilter f);

struct TaggedVector {
    IndexSetTag tag = IndexSetTag::I_0pt;
    Rational bound;
    InvariantVector entries;
};

struct CorrespondenceMatrix {
    std::vector<std::string> order;
    std::vector<RelGraph> graphs;
    std::map<std::pair<size_t, size_t>, Rational> entries;
    Rational bound;
    GraphFilter filter = GraphFilter::Genus0Pt;

    Rational at(size_t r, size_t c) const;
    std::optional<size_t> index(const std::string& key) const;
    nlohmann::json to_json() const;
    static CorrespondenceMatrix from_json(const nlohmann::json& j);

private:
    mutable std::map<std::string, size_t> idx_;
};

struct SplittingTerm {
    std::vector<std::string> minus;  // keys of minus-side connected factors
    std::vector<std::string> plus;   // plus-side factors, rendered
    WeightedPartition eta;           // minus-side classes
    WeightedPartition eta_dual;
    mpz_class delta;
    Rational coefficient;             // weight times plus-side values
    Rational contribution;
};

struct DegenerationResult {
    Rational value;
    std::vector<SplittingTerm> terms;
};

class CorrespondenceEngine {
public:
    CorrespondenceEngine();

    const GraphContext& graphs() const { return ctx_; }

    // Degeneration of <pt, varpi, traded mu>^{P2}_{p_*A} along the sphere bundle of the point:
    // column key -> coefficient.
    std::map<std::string, Rational> expand_row(const RelGraph& row, std::vector<SplittingTerm>* terms = nullptr);

    CorrespondenceMatrix build_matrix(const Rational& bound, GraphFilter filter, const EnumConfig& cfg = {});

    // Colored absolute invariant of P^2 attached to a graph.
    Rational absolute_value(const RelGraph& g);
    Query absolute_query(const RelVertex& v) const;
    TaggedVector absolute_vector(const CorrespondenceMatrix& m);

    // Degeneration sum with a table of minus-side values.
    DegenerationResult degeneration_sum(const RelGraph& row, const InvariantVector& oracle);

    Rational diagonal_expected(const RelGraph& g) const;

private:
    GraphContext ctx_;
    std::map<std::string, std::map<std::string, Rational>> row_cache_;
    std::map<std::string, RelGraph> known_;
    std::mutex mu_;
};

enum class SolveDirection { RelToAbs, AbsToRel };
SolveDirection parse_direction(const std::string& s);
InvariantVector solve_lower(const CorrespondenceMatrix& m, const InvariantVector& v, SolveDirection dir);
// Nonzero entries above the diagonal, as (row, col) keys.
std::vector<std::pair<std::string, std::string>> triangularity_violations(const CorrespondenceMatrix& m);

// P^1 degenerated at a point into two copies of (P^1, pt). side[i] is 0 (minus) or 1 (plus);
// unit insertions restrict to both sides and are summed over both.
DegenerationResult degeneration_sum_p1(long d, const std::vector<Insertion>& ins, const std::vector<int>& side);

struct UniruledWitness {
    bool found = false;
    std::string space;
    Query query;
    Rational value;
    std::vector<std::string> trail;
};

UniruledWitness uniruled_search(TargetKind space, long degree_bound);

struct TransferResult {
    bool ok = false;
    UniruledWitness source;
    UniruledWitness target;
    std::string relative_key;
    Rational relative_value;
    std::vector<std::string> trail;
};

// P^2 witness -> Bl witness through abs->rel solve and the divisor correspondence of (Bl, E).
TransferResult transfer_p2_to_blowup(CorrespondenceEngine& eng, const CorrespondenceMatrix& m);
// Bl witness -> P^2 witness through the divisor correspondence and rel->abs.
TransferResult transfer_blowup_to_p2(CorrespondenceEngine& eng, const CorrespondenceMatrix& m);

nlohmann::json vector_to_json(const TaggedVector& v);
TaggedVector vector_from_json(const nlohmann::json& j);

}  // namespace gwc
