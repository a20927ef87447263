#pragma once

#include "gwc/numeric.hpp"
#include "gwc/partition.hpp"

namespace gwc {

// <tau_{nd-1-j}[pt] | D^j>_{dL} of (P^n, P^{n-1}) with one relative point of full tangency d.
struct FiberQuery {
    int n = 1;
    int d = 1;
    int j = 0;
    void validate() const;
};

Rational closed_form(const FiberQuery& q);

// Fixed-point sum over the graphs Gamma^i, i = 1..n-j, times the 1/[(d-1)!]^n prefactor.
// lambda holds the n+1 torus weights lambda_0..lambda_n.
Rational localization_sum(const FiberQuery& q, const WeightVector& lambda);
// The inner integral over V_d alone (without the prefactor).
Rational localization_inner(const FiberQuery& q, const WeightVector& lambda);

Rational vandermonde_identity(const WeightVector& x);

struct PsiPowerCheck {
    Rational prefactor;  // 1/[(d-1)!]^n
    Rational inner;      // 1/d^{n-j}
    Rational closed;
    bool agrees = false;
};
PsiPowerCheck psi_power_class_check(int n, int d, int j = 0);

// Plus-side factor of one part (m, theta.[E]^j) for codimension k: the fiber invariant
// paired with the dual class, times the tangency m.
Rational part_diagonal_factor(int m, int j, int k);

// C_0 for a standard partition. k = 1 requires sum(mu) = A.E.
Rational diagonal_coefficient(const WeightedPartition& mu, const PartitionContext& ctx, long AE);

WeightVector random_weights(size_t count, unsigned long seed);

}  // namespace gwc
