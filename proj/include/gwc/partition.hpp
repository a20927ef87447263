#pragma once

#include <string>
#include <vector>

#include "gwc/cohomology.hpp"
#include "gwc/numeric.hpp"

namespace gwc {

enum class Ordering { Less, Equal, Greater };

// Degree data of the classes that may weight a partition.
struct PartitionContext {
    int k = 1;
    std::vector<int> deg_S;   // real degrees
    std::vector<int> deg_f;   // real degrees, 2 * fiber power
    std::vector<int> theta;   // S-part index of each class
    std::vector<int> fiber;   // fiber power of each class
    std::vector<int> dual;    // self-dual involution
    std::vector<std::string> labels;

    static PartitionContext from_space(const SpaceModel& sp);
    // Product basis S x P^{k-1} with an S-part of the given size; used for exhaustive checks.
    static PartitionContext synthetic(int k, int s_size);
    int size() const { return static_cast<int>(deg_S.size()); }
    int class_of(int theta, int j) const;
};

struct Part {
    int m = 1;    // tangency
    int cls = 0;  // class index in the E basis
    bool operator==(const Part&) const = default;
};

using WeightedPartition = std::vector<Part>;

struct TradedInsertion {
    int d = 0;      // descendent power
    int theta = 0;  // S-class index; the insertion is theta cup [S]
    bool operator==(const TradedInsertion&) const = default;
    auto operator<=>(const TradedInsertion&) const = default;
};

Ordering size_compare(const Part& a, const Part& b, const PartitionContext& ctx);
// Size-descending order with class index ascending as a tie-break.
WeightedPartition canonical(WeightedPartition mu, const PartitionContext& ctx);
Ordering lex_compare(const WeightedPartition& a, const WeightedPartition& b, const PartitionContext& ctx);

long tangency_sum(const WeightedPartition& mu);
int deg_S(const WeightedPartition& mu, const PartitionContext& ctx);
std::vector<int> underlying(const WeightedPartition& mu);

mpz_class aut_order(const std::vector<int>& T);
mpz_class weighted_aut_order(const WeightedPartition& mu);
Rational delta_coeff(const WeightedPartition& mu);

WeightedPartition dual_partition(const WeightedPartition& mu, const PartitionContext& ctx);

std::vector<TradedInsertion> trade(const WeightedPartition& mu, const PartitionContext& ctx);
// Returns {m, class index}.
Part untrade(const TradedInsertion& t, const PartitionContext& ctx);

std::string to_string(const WeightedPartition& mu, const PartitionContext& ctx);
WeightedPartition parse_partition(const std::string& json_text, const PartitionContext& ctx);

}  // namespace gwc
