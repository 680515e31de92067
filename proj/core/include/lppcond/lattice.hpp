#pragma once

// Exponential last-passage percolation at finite size: weight sampling,
// the last-passage dynamic program, geodesics, and conditional (rare-event)
// Monte Carlo with a window surrogate for point conditioning.

#include <cstdint>
#include <vector>

#include "lppcond/errors.hpp"
#include "lppcond/scaling.hpp"

namespace lppcond {

// Default cap on lattice cells (allocation guard).
inline constexpr std::uint64_t kDefaultCellCap = 100000000ULL;

struct LatticeField {
    int M = 0, N = 0;                 // rows x cols, 1-based indexing in the API
    std::vector<double> weights;      // size M*N, row-major
    std::vector<double> lp;           // last-passage values
    std::uint64_t seed = 0;

    double w(int i, int j) const { return weights[static_cast<std::size_t>(i - 1) * N + (j - 1)]; }
    double l(int i, int j) const { return lp[static_cast<std::size_t>(i - 1) * N + (j - 1)]; }
};

LatticeField sample_field(int M, int N, std::uint64_t seed,
                          std::uint64_t cell_cap = kDefaultCellCap);

// Fill lp from weights (used by sample_field; exposed for injected-weight tests).
void fill_lp(LatticeField& f);

// L(alpha, beta) = lp(ceil(alpha), ceil(beta)).
double lpp_at(const LatticeField& f, double alpha, double beta);

enum class Step : std::uint8_t { Up, Right };
struct Geodesic {
    std::vector<std::pair<int, int>> points; // from (1,1) to (M,N)
    std::vector<Step> steps;
};

// Backtrack from (M,N); ties prefer the Up predecessor.
Geodesic extract_geodesic(const LatticeField& f);

// Transverse coordinate trace of the geodesic in the (v1, v2) basis with
// v1 = (a, b) and v2 = (-mu, 1)/|(-mu, 1)| (the level-curve direction).
std::vector<std::pair<double, double>> geodesic_projection(const Geodesic& g,
                                                           const ModelParams& p,
                                                           double L);

struct ObservableStat {
    double x = 0, y = 0;          // observable location in units of (aL, bL)
    double mean_scaled = 0;       // mean of L(x aL, y bL)/L
    double se_scaled = 0;
    double mean_fluct = 0;        // mean of (L(..) - h(x,y) L)/(sqrt(2) sigma sqrt(L))
    double se_fluct = 0;
};

struct ConditionalMCResult {
    int n_accepted = 0;
    std::uint64_t n_draws = 0;
    double acceptance_rate = 0;
    double rate_reference = 0;    // exp(-J(ell) L) diagnostic
    double window_halfwidth = 0;
    double target = 0;            // ell * L
    std::vector<ObservableStat> observables;
    // Per-accepted-sample scaled observable values, one inner vector per
    // observable, in acceptance order (deterministic given the seed).
    std::vector<std::vector<double>> samples;
};

ConditionalMCResult conditional_mc(const ModelParams& p, double L, double delta,
                                   const std::vector<std::pair<double, double>>& observables,
                                   int n_target, std::uint64_t seed,
                                   std::uint64_t max_draws = 400000000ULL,
                                   std::uint64_t cell_cap = kDefaultCellCap);

} // namespace lppcond
