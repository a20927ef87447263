#pragma once

#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

#include "gwc/gw.hpp"

namespace gwc {

// Marked point of a relative invariant of (P^n, H): contact order alpha (0 for an
// interior point), a class of P^n and a psi power.
struct RelPoint {
    int alpha = 0;
    int cls = 0;
    int psi = 0;
    auto operator<=>(const RelPoint&) const = default;
};

// Genus-zero relative invariants of P^1 relative to a point and P^2 relative to a line,
// with labeled marked points, by Gathmann's recursion on contact orders.
class HyperplaneEngine {
public:
    explicit HyperplaneEngine(TargetKind ambient);

    const Target& ambient() const { return X_.target(); }
    const Target& hyperplane() const { return Y_.target(); }
    // Class of the hyperplane in the ambient basis.
    int hyperplane_class() const { return y_in_x_; }
    // Ambient lift of a hyperplane basis class.
    int lift(int y_cls) const { return lift_.at(y_cls); }
    // Restriction of an ambient class to the hyperplane, -1 if it vanishes.
    int restrict_class(int x_cls) const { return restrict_.at(x_cls); }

    bool dimension_ok(long e, const std::vector<RelPoint>& pts) const;
    Rational evaluate(long e, std::vector<RelPoint> pts);
    size_t memo_size() const;

private:
    Rational compute(long e, const std::vector<RelPoint>& pts);
    Rational boundary(long e, const std::vector<RelPoint>& pts, size_t k);

    GwEngine& X_;
    GwEngine& Y_;
    int y_in_x_ = 0;
    std::vector<int> restrict_;
    std::vector<int> lift_;
    mutable std::shared_mutex mu_;
    std::map<std::string, Rational> memo_;
};

HyperplaneEngine& hyperplane_engine(TargetKind ambient);

}  // namespace gwc
