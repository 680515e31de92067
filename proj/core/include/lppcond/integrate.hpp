#pragma once

// Generic nested-circle quadrature: tensor trapezoidal rule with a
// node-halving convergence estimate, and a randomized rank-1 lattice
// alternative for high dimensions; plus the concrete integrals built on it:
// I^sigma_tau, the bracketed multi-group integrals D^(n), and the series
// terms Q^(n).

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "lppcond/contour.hpp"
#include "lppcond/kernels.hpp"
#include "lppcond/lists.hpp"
#include "lppcond/plan.hpp"

namespace lppcond {

struct QuadSettings {
    int q_override = 0;   // > 0 forces this node count per circle
    int z_nodes = 48;     // nodes for the radius-2 moment circles
    RadiiMode radii_mode = RadiiMode::Default;
    bool doubling = true; // node-halving convergence estimate (dim <= 6)
    int rotations = 3;    // node-rotation replications for dim 7-8 trapezoid
    bool qmc_high_dim = true; // use the lattice rule for dim >= 7
    int qmc_points = 65521;   // prime lattice size
    int qmc_generator = 17797;
    int qmc_shifts = 3;
    std::uint64_t qmc_seed = 0x9e3779b97f4a7c15ull;
    int n_max = 0;   // series truncation; 0 means m + 2
    int threads = 1;
    // For scaled three-point plans, evaluate the leading multiplicity term
    // through its deformed steepest-circle representative and omit the
    // exponentially subleading deformation terms (which drown in quadrature
    // noise at large L). The one-point denominator is truncated at n = 1.
    bool asymptotic_leading = false;

    // Default trapezoid nodes per circle by total dimension.
    static int default_nodes(int dim);
    int nodes_for_dim(int dim) const {
        return q_override > 0 ? q_override : default_nodes(dim);
    }
};

// One integration variable: its circle and the exponent data of the f-factor
// it carries. sign = +1 puts f in the numerator, -1 in the denominator.
struct VarSpec {
    Contour contour;
    double dM = 0, dN = 0, dT = 0;
    double sign = 1.0;
};

struct IntegralResult {
    std::complex<double> mantissa{0.0, 0.0};
    double log_scale = 0.0;     // value = mantissa * exp(log_scale)
    double conv_estimate = 0.0; // absolute, in mantissa units
    bool cancellation = false;
    std::string method;

    std::complex<double> value() const { return mantissa * std::exp(log_scale); }
    double real() const { return mantissa.real() * std::exp(log_scale); }
};

// (1/(2 pi i)^d) times the nested contour integral of
// prod_k f(dM_k,dN_k,dT_k; z_k)^{sign_k} * kernel(z), divided by exp(log_offset).
IntegralResult integrate_nested(const std::vector<VarSpec>& vars,
                                const std::function<cplx(const cplx*)>& kernel,
                                double log_offset, const QuadSettings& qs);

// I^sigma_tau / Z_L for an observation plan (m = |distinct digits| of the lists).
IntegralResult eval_I(const IndexList& sigma, const IndexList& tau,
                      const ObservationPlan& plan, const QuadSettings& qs);
// Same with explicit circles (radii studies and error-path tests).
IntegralResult eval_I(const IndexList& sigma, const IndexList& tau,
                      const ObservationPlan& plan, const CirclePair& circles,
                      const QuadSettings& qs);

// D^(n)(z) / Z_L at a given point z in C^{m-1}: the bracketed in/out-circle
// sum expanded into binomially weighted tensor quadratures.
IntegralResult eval_D_n(const ObservationPlan& plan, const std::vector<int>& n,
                        const std::vector<cplx>& z, const QuadSettings& qs);

// Q^(n) / Z_L (real). The z-circle integrals reduce to exact moment weights
// of the Laurent factors on the radius-2 circles.
IntegralResult eval_Q_n(const ObservationPlan& plan, const std::vector<int>& n,
                        const QuadSettings& qs);

} // namespace lppcond
