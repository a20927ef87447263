#pragma once

#include <string>
#include <vector>

#include "gwc/cohomology.hpp"
#include "gwc/gw.hpp"
#include "gwc/partition.hpp"

namespace gwc {

// One vertex of a standard relative graph of (X~, E). Tail classes index the X basis.
struct RelVertex {
    int genus = 0;
    CurveClass A;
    std::vector<Insertion> tails;
    WeightedPartition mu;
};

struct RelGraph {
    std::string space;
    std::vector<RelVertex> comps;
    int arithmetic_genus() const;
    bool empty() const { return comps.empty(); }
};

enum class GraphOrder { Lower, Higher, Equal, Incomparable };
enum class GraphFilter { All, PtFirst, Genus0Pt };

GraphFilter parse_filter(const std::string& s);
std::string to_string(GraphOrder o);

struct EnumConfig {
    int max_genus = 0;
    int max_divisor_tails = 1;
    size_t max_graphs = 20000;
};

// Relative graphs of the blow-up of P^2 at a point along E.
class GraphContext {
public:
    GraphContext();

    const Target& target() const { return target_; }
    const SpaceModel& space() const { return sp_; }
    const PartitionContext& partitions() const { return pc_; }
    const std::string& space_id() const { return id_; }

    RelVertex canonical(RelVertex v) const;
    RelGraph canonical(RelGraph g) const;
    std::string vertex_key(const RelVertex& v) const;
    std::string key(const RelGraph& g) const;
    // Colored absolute form <pt, ..., tau_d(theta.[S])>_{p_*A} of each component.
    std::string absolute_key(const RelGraph& g) const;

    long pushforward_degree(const RelGraph& g) const;
    long tail_count(const RelGraph& g) const;
    WeightedPartition merged_mu(const RelGraph& g) const;
    bool dimension_valid(const RelVertex& v) const;
    bool has_point(const RelGraph& g) const;

    // Relation of a to b: Lower means a is strictly below b.
    GraphOrder order_compare(const RelGraph& a, const RelGraph& b) const;
    // Canonical total order: clauses (1)-(5), then the key string.
    bool total_less(const RelGraph& a, const RelGraph& b) const;
    RelGraph disjoint_union(const RelGraph& a, const RelGraph& b) const;
    RelGraph single(RelVertex v) const;

    std::vector<RelVertex> connected_below(long degree_bound, const EnumConfig& cfg) const;
    std::vector<RelGraph> enumerate_below(const Rational& area_bound, GraphFilter f,
                                          const EnumConfig& cfg = {}) const;

private:
    Target target_;
    SpaceModel sp_;
    PartitionContext pc_;
    std::string id_;
};

}  // namespace gwc
