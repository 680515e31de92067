#pragma once

// The truncated multiplicity series Q_m, conditional probabilities as ratios
// Q_m / Q_1, one-point densities and upper tails, the region-adapted deformed
// representation of the (1,1,1) term, and the deformation-identity verifier.

#include <string>
#include <utility>
#include <vector>

#include "lppcond/integrate.hpp"

namespace lppcond {

struct SeriesResult {
    double value = 0.0;
    int n_max = 0;
    std::vector<std::pair<std::vector<int>, double>> included_terms; // (n, term)
    double tail_estimate = 0.0;  // extrapolated size of the dropped shells
    double conv_estimate = 0.0;  // accumulated quadrature convergence estimate
    std::vector<std::string> warnings;

    double total_error() const { return tail_estimate + conv_estimate; }
};

// Sum of Q^(n)/(n!)^2 over n in N^m with |n| <= n_max (qs.n_max, or m+2).
// All terms carry the plan's Z_L normalization.
SeriesResult eval_Q(const ObservationPlan& plan, const QuadSettings& qs);

struct ConditionalResult {
    double probability = 0.0;
    double error_bar = 0.0;
    SeriesResult numerator, denominator;
};

// Q_m(M,N,T) / Q_1(M_m,N_m,T_m) for m in {2,3}; the normalization cancels.
ConditionalResult conditional_probability(const ObservationPlan& plan,
                                          const QuadSettings& qs);

struct DensityTail {
    double density = 0.0, density_err = 0.0;
    double tail = 0.0, tail_err = 0.0; // P(L(M,N) > T)
};

// One-point density Q_1(M,N,T) and upper tail. The tail integrates each
// series term in the threshold exactly (node-by-node in closed form), so it
// shares the density's truncation characteristics.
DensityTail density_and_tail(long long M, long long N, double T, const QuadSettings& qs);

// Q^(1,1,1) = -I^123_123 evaluated through the deformed representation suited
// to the region of the plan's point pair (well-conditioned at large L).
IntegralResult q111_deformed(const ObservationPlan& plan, const QuadSettings& qs);

// The large-L leading integral of the two-point term: I^(123)_123 in regions
// R1-R5, and the pair (I^(123)_(12)3, I^(123)2_(23)(12)) in R6-R7 combined
// into the same normalized bridge probability.
IntegralResult leading_integral(const ObservationPlan& plan, const QuadSettings& qs);

struct IdentityTerm {
    std::string label; // e.g. "I^3(12)_123"
    double coeff = 1.0;
    cplx value{0.0, 0.0};
    double conv_estimate = 0.0;
};

struct IdentityReport {
    std::string id;
    cplx lhs{0.0, 0.0}, rhs{0.0, 0.0};
    double residual = 0.0;      // |lhs-rhs| / max(|lhs|, |rhs|)
    double conv_estimate = 0.0; // summed quadrature estimates, relative
    std::vector<IdentityTerm> terms;
};

// identity_id in {QQ111-a, QQ111-b, QQ111-c, QQ111-d, QQ121}; evaluates both
// sides on the scaled three-point plan for (p, q, r1, r2, L).
IdentityReport verify_identity(const std::string& identity_id, const ModelParams& p,
                               const RegionQuery& q, double L, const QuadSettings& qs,
                               double r1 = 0.0, double r2 = 0.0);

// Identities applicable in a region: a (R1,R2), b (R3,R4), c (R5), d (R6,R7).
std::vector<std::string> identities_for_region(RegionTag tag);

} // namespace lppcond
