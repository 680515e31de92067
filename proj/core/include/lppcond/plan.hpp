#pragma once

// Observation plans: the lattice coordinates and thresholds (M_i, N_i, T_i)
// entering the finite-size distribution formulas, both raw and in the scaled
// form used for convergence studies, plus the exponential normalization Z_L.

#include <complex>
#include <optional>
#include <vector>

#include "lppcond/errors.hpp"
#include "lppcond/scaling.hpp"

namespace lppcond {

struct Normalization {
    double log_Z = 0.0;
};

// log Z_L = ceil(aL) log((ell+a-b+sqrt D)/(ell+a-b-sqrt D))
//         + ceil(bL) log((ell-a+b+sqrt D)/(ell-a+b-sqrt D)) - sqrt(D) L.
Normalization z_normalization(const ModelParams& p, double L);

struct ObservationPlan {
    int m = 0;
    std::vector<long long> M, N; // lattice coordinates, 1-based
    std::vector<double> T;       // thresholds
    double log_Z = 0.0;          // all integrals are computed divided by exp(log_Z)

    // Present for scaled plans (used for steepest-descent contour radii).
    std::optional<ModelParams> params;
    std::optional<RegionQuery> query;
    double L = 0.0;
    bool scaled = false;

    // Consecutive-ratio exponent differences for group i (1-based):
    // f_i = f_{M_i,N_i,T_i} / f_{M_{i-1},N_{i-1},T_{i-1}}.
    void group_delta(int i, double& dM, double& dN, double& dT) const;
    // Exponent differences for a merge symbol (m = 3 plans only).
    void sym_delta(Sym s, double& dM, double& dN, double& dT) const;

    // log f for exponents (dM, dN, dT): dN log z - dM log(1+z) + dT z.
    static std::complex<double> log_f(double dM, double dN, double dT, std::complex<double> z);
};

// Basic validation of the hypotheses of the conditional-probability formula:
// 0 < T_1 <= ... <= T_m and pairwise distinct (N_i, T_i).
void validate_plan(const ObservationPlan& plan);

ObservationPlan single_plan(long long M, long long N, double T);
ObservationPlan multi_plan(std::vector<long long> M, std::vector<long long> N,
                           std::vector<double> T);

// Scaled three-point plan: M_i = ceil(x_i a L), N_i = ceil(y_i b L),
// T_i = h(x_i, y_i) L + sqrt(2) sigma r_i sqrt(L) for i = 1, 2 and
// (M_3, N_3, T_3) = (ceil(aL), ceil(bL), ell L). Sets log_Z.
ObservationPlan scaled_plan(const ModelParams& p, const RegionQuery& q, double r1,
                            double r2, double L);

} // namespace lppcond
