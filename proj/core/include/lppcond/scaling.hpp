#pragma once

// Closed-form scaling constants for exponential last-passage percolation
// conditioned on a one-point upper large deviation, the conditional
// law-of-large-numbers surface, region classification of two observation
// points, and critical points of the associated exponent functions.

#include <array>
#include <cstdint>
#include <utility>

#include "lppcond/errors.hpp"

namespace lppcond {

// Model triple (a, b, ell) with all derived constants. Valid only in the
// upper-deviation regime ell > (sqrt(a)+sqrt(b))^2.
struct ModelParams {
    double a = 0, b = 0, ell = 0;

    // Derived.
    double D = 0;        // discriminant ell^2 - 2(a+b)ell + (a-b)^2
    double sqrt_D = 0;
    double m_slope = 0;  // cone slope m = (ell-a-b+sqrt(D))/(ell-a-b-sqrt(D)) > 1
    double mu = 0;       // mu = (ell-a+b+sqrt(D))/(ell+a-b-sqrt(D)) > 0
    double sigma = 0;    // fluctuation scale
    double c_plus = 0, c_minus = 0;  // bridge scales, c+^2 + c-^2 = 2
    double j_rate = 0;   // large deviation rate J(ell)
};

ModelParams make_params(double a, double b, double ell);

// J(ell) = sqrt(D) + a log((ell+a-b-sqrt D)/(ell+a-b+sqrt D))
//        + b log((ell-a+b-sqrt D)/(ell-a+b+sqrt D)).
double rate_function(const ModelParams& p);

// Unconditional LLN limit (sqrt(x a) + sqrt(y b))^2.
double unconditional_lln(double a, double b, double x, double y);

// Which branch of the conditional LLN surface a point lies on.
enum class OmegaTag { Omega1, Omega2MinusOmega1, Outside, Boundary };
OmegaTag omega_classify(const ModelParams& p, double x, double y);

// Conditional LLN surface h(x, y). The Omega1 and Outside branches are
// conjectural (see README); the Omega2 branch is the proven cone.
double lln_surface(const ModelParams& p, double x, double y);

// Linear lower-branch form of the surface for y/x in (1/m, 1]:
// (1/2)[(ell+a-b-sqrt D) x + (ell-a+b+sqrt D) y]. Used by the scaled
// observation plans.
double h_linear(const ModelParams& p, double x, double y);

// Critical points of G(z) = -alpha1 log(z+1) + alpha2 log z + alpha3 z
// and the second derivatives there, by closed form.
struct CriticalPointResult {
    double z_minus = 0, z_plus = 0;   // z_minus <= z_plus
    double g2_minus = 0, g2_plus = 0; // G'' at z_minus / z_plus
    double discriminant_q = 0;        // alpha3^2 - 2(alpha1+alpha2)alpha3 + (alpha1-alpha2)^2
};
CriticalPointResult critical_points(double alpha1, double alpha2, double alpha3);

// Two observation points with 1/m < y_i/x_i < 1 (the lower branch; the
// upper branch is reached by swapping coordinates).
struct RegionQuery {
    double x1 = 0, y1 = 0, x2 = 0, y2 = 0;
};
void validate_query(const ModelParams& p, const RegionQuery& q);

enum class RegionTag { R1, R2, R3, R4, R5, R6, R7, Boundary };
struct RegionLabel {
    RegionTag tag = RegionTag::Boundary;
    int boundary_index = -1; // which threshold was hit exactly, when tag==Boundary
    bool swapped = false;    // true if points were relabeled 1<->2 to orient the pair
};
RegionLabel classify_region(const ModelParams& p, const RegionQuery& q);

// Symbols of the merge alphabet for three thresholds.
enum class Sym : std::uint8_t { S1 = 0, S2, S3, S12, S23, S123 };
constexpr int kNumSyms = 6;
const char* sym_name(Sym s);

// Exponent-family coefficients (alpha1, alpha2, alpha3) = (aX, bY, h-combination)
// for each symbol at a given point pair.
std::array<double, 3> sym_alphas(const ModelParams& p, const RegionQuery& q, Sym s);

struct GStarFamily {
    std::array<CriticalPointResult, kNumSyms> by_sym; // indexed by Sym
    double zc = 0;       // common larger critical point -(ell-a+b-sqrt D)/(2 ell)
    double zc_minus = 0; // -(ell-a+b+sqrt D)/(2 ell)
    const CriticalPointResult& of(Sym s) const { return by_sym[static_cast<int>(s)]; }
};
GStarFamily g_star_family(const ModelParams& p, const RegionQuery& q);

// Golden-section maximization of H(t) = t ell + (sqrt((x-t)a)+sqrt((y-t)b))^2
// over t in [0, min(x, y, 1)]; returns (t_c, H(t_c)).
std::pair<double, double> variational_tc(const ModelParams& p, double x, double y);

// Slope functional Q(u), strictly decreasing with Q(1/m) = 1, Q(m) = -1.
double slope_functional(const ModelParams& p, double u);

} // namespace lppcond
