#pragma once

// Brownian-bridge limit laws: crossing probabilities by closed form,
// Gaussian Monte Carlo, and the vertical-line contour identity; the diagonal
// two-bridge functional; and the off-diagonal two-point limit.

#include <cstdint>
#include <string>
#include <vector>

#include "lppcond/errors.hpp"
#include "lppcond/scaling.hpp"

namespace lppcond {

// Bridge on [0, A] pinned to 0 at both ends, with interior constraints
// B(times[i]) > thresholds[i].
struct BridgeSpec {
    double A = 1.0;
    std::vector<double> times;      // strictly increasing, in (0, A)
    std::vector<double> thresholds;
};
void validate_bridge_spec(const BridgeSpec& spec);

enum class BridgeMethod { ClosedForm, GaussianMC, Contour };

struct ProbResult {
    double probability = 0.0;
    double error = 0.0; // SE (MC) or truncation/quadrature diagnostic
    std::string method;
};

ProbResult bridge_crossing(const BridgeSpec& spec, BridgeMethod method,
                           std::uint64_t seed = 1, long long paths = 1000000);

// One diagonal constraint: fluctuation > h at time t with shift s.
struct DiagConstraint {
    double s = 0.0, t = 0.5, h = 0.0;
};
struct DiagSpec {
    ModelParams params;
    std::vector<DiagConstraint> points;
};

// Product of the two independent-bridge factors: the plus branch at scale
// sqrt(2) c_plus with thresholds s_i + h_i, the minus branch at scale
// sqrt(2) c_minus with thresholds -s_i + h_i.
double diag_limit(const DiagSpec& spec);

// Two-point off-diagonal limit P(c_plus B(u1) > r1, c_plus B(u2) > r2) with
// u_i = (m y_i - x_i)/(m - 1). Points above the diagonal are handled by
// reflecting coordinates and swapping (a, b).
double offdiag_two_point_limit(const ModelParams& p, const RegionQuery& q, double r1,
                               double r2);

// E[B1(t) B2(t)] = (a-b) sqrt(D) / ((a+b) ell - (a-b)^2) * t(1-t).
double bridge_covariance(const ModelParams& p, double t);

// P(X > h, Y > k) for standard bivariate normal with correlation rho.
double bivariate_normal_survival(double h, double k, double rho);

// 1 - Phi(x).
double normal_upper_tail(double x);

} // namespace lppcond
