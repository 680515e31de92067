#pragma once

// Circle contours with trapezoidal nodes, and radius-planning policies for
// the nested families around -1 (xi variables) and 0 (eta variables).

#include <complex>
#include <vector>

#include "lppcond/errors.hpp"
#include "lppcond/lists.hpp"
#include "lppcond/plan.hpp"

namespace lppcond {

struct Contour {
    std::complex<double> center{0.0, 0.0};
    double radius = 0.0;
    int nodes = 32;
    bool ccw = true;

    std::complex<double> point(double theta) const {
        return center + std::complex<double>(radius * std::cos(theta), radius * std::sin(theta));
    }
};

enum class RadiiMode {
    Default,  // |z - c| = 0.10 + 0.05 k in nesting order
    Spread,   // geometric spacing within [0.08, 0.32] for better quadrature margins
    Steepest  // radii through the relevant critical points (large-L plans)
};

// Radii for one nested family of `count` circles.
std::vector<double> plan_radii_default(int count);
std::vector<double> plan_radii_spread(int count);

// Circle layouts for a list-indexed integral I^sigma_tau. Circle k carries
// the k-th list entry, nested inside to outside.
struct CirclePair {
    std::vector<Contour> xi;  // centered at -1
    std::vector<Contour> eta; // centered at 0
};
CirclePair plan_circles(const IndexList& sigma, const IndexList& tau,
                        const ObservationPlan& plan, RadiiMode mode);

// Circle layout for the bracketed multi-group integral D^(n):
// nesting order [in_m, ..., in_2, base_1, out_2, ..., out_m] per family.
// xi_in[i-2]/xi_out[i-2] are the circles for group i >= 2, xi_base for group 1.
struct BracketCircles {
    std::vector<Contour> xi_in, eta_in;   // groups m..2, stored by group index 2..m
    Contour xi_base, eta_base;            // group 1
    std::vector<Contour> xi_out, eta_out; // groups 2..m
};
BracketCircles plan_bracket_circles(const ObservationPlan& plan, const std::vector<int>& n,
                                    RadiiMode mode);

// Validation: strictly increasing radii within each family, disjoint families.
void check_nesting(const std::vector<Contour>& xi, const std::vector<Contour>& eta);

} // namespace lppcond
