#include "lppcond/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "lppcond/rng.hpp"

namespace lppcond {

LatticeField sample_field(int M, int N, std::uint64_t seed, std::uint64_t cell_cap) {
    if (M < 1 || N < 1) throw DomainError("sample_field: M, N must be >= 1");
    const std::uint64_t cells = static_cast<std::uint64_t>(M) * static_cast<std::uint64_t>(N);
    if (cells > cell_cap) throw AllocationError("sample_field: lattice exceeds cell cap");
    LatticeField f;
    f.M = M;
    f.N = N;
    f.seed = seed;
    f.weights.resize(cells);
    for (int i = 1; i <= M; ++i)
        for (int j = 1; j <= N; ++j)
            f.weights[static_cast<std::size_t>(i - 1) * N + (j - 1)] =
                cell_exponential(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
    fill_lp(f);
    return f;
}

void fill_lp(LatticeField& f) {
    f.lp.assign(f.weights.size(), 0.0);
    for (int i = 1; i <= f.M; ++i) {
        for (int j = 1; j <= f.N; ++j) {
            const std::size_t k = static_cast<std::size_t>(i - 1) * f.N + (j - 1);
            double best = 0.0;
            if (i > 1) best = std::max(best, f.lp[k - f.N]);
            if (j > 1) best = std::max(best, f.lp[k - 1]);
            f.lp[k] = best + f.weights[k];
        }
    }
}

double lpp_at(const LatticeField& f, double alpha, double beta) {
    if (!(alpha > 0) || !(beta > 0)) throw RangeError("lpp_at: coordinates must be positive");
    const int i = static_cast<int>(std::ceil(alpha));
    const int j = static_cast<int>(std::ceil(beta));
    if (i > f.M || j > f.N) throw RangeError("lpp_at: coordinates outside the lattice");
    return f.l(i, j);
}

Geodesic extract_geodesic(const LatticeField& f) {
    Geodesic g;
    int i = f.M, j = f.N;
    g.points.emplace_back(i, j);
    while (i > 1 || j > 1) {
        bool go_up;
        if (i == 1) go_up = false;
        else if (j == 1) go_up = true;
        else go_up = f.l(i - 1, j) >= f.l(i, j - 1); // tie prefers Up
        if (go_up) {
            --i;
            g.steps.push_back(Step::Up);
        } else {
            --j;
            g.steps.push_back(Step::Right);
        }
        g.points.emplace_back(i, j);
    }
    std::reverse(g.points.begin(), g.points.end());
    std::reverse(g.steps.begin(), g.steps.end());
    return g;
}

std::vector<std::pair<double, double>> geodesic_projection(const Geodesic& g,
                                                           const ModelParams& p,
                                                           double /*L*/) {
    // Basis: v1 = (a, b); v2 = (a(ell-a+b)sigma/(ell sqrt D), -b(ell+a-b)sigma/(ell sqrt D)).
    const double v1x = p.a, v1y = p.b;
    const double c = p.sigma / (p.ell * p.sqrt_D);
    const double v2x = p.a * (p.ell - p.a + p.b) * c;
    const double v2y = -p.b * (p.ell + p.a - p.b) * c;
    const double det = v1x * v2y - v1y * v2x;
    if (det == 0.0) throw DomainError("geodesic_projection: singular basis");
    std::vector<std::pair<double, double>> out;
    out.reserve(g.points.size());
    for (const auto& [i, j] : g.points) {
        const double px = static_cast<double>(i), py = static_cast<double>(j);
        const double tau = (px * v2y - py * v2x) / det;
        const double pi = (v1x * py - v1y * px) / det;
        out.emplace_back(tau, pi);
    }
    return out;
}

ConditionalMCResult conditional_mc(const ModelParams& p, double L, double delta,
                                   const std::vector<std::pair<double, double>>& observables,
                                   int n_target, std::uint64_t seed,
                                   std::uint64_t max_draws, std::uint64_t cell_cap) {
    if (!(L > 0) || !(delta > 0)) throw DomainError("conditional_mc: L and delta must be positive");
    if (n_target < 1) throw DomainError("conditional_mc: n_target must be >= 1");
    const int M = static_cast<int>(std::ceil(p.a * L));
    const int N = static_cast<int>(std::ceil(p.b * L));
    if (static_cast<std::uint64_t>(M) * static_cast<std::uint64_t>(N) > cell_cap)
        throw AllocationError("conditional_mc: lattice exceeds cell cap");

    ConditionalMCResult res;
    res.target = p.ell * L;
    res.window_halfwidth = delta * p.sigma * std::sqrt(L);
    res.rate_reference = std::exp(-p.j_rate * L);
    res.samples.assign(observables.size(), {});

    // Observable lattice cells, recorded during the rolling-row pass.
    struct ObsCell {
        int i, j;
        std::size_t k;
    };
    std::vector<ObsCell> cells;
    for (std::size_t k = 0; k < observables.size(); ++k) {
        const auto& [x, y] = observables[k];
        if (!(x > 0) || !(y > 0)) throw RangeError("conditional_mc: observable coordinates must be positive");
        const int oi = static_cast<int>(std::ceil(x * p.a * L));
        const int oj = static_cast<int>(std::ceil(y * p.b * L));
        if (oi > M || oj > N) throw RangeError("conditional_mc: observable outside the lattice");
        cells.push_back({oi, oj, k});
    }

    const double sqrtL = std::sqrt(L);
    // Rolling-row last-passage recursion with weights generated on the fly;
    // draw-for-draw identical to filling a full field with sample_field.
    std::vector<double> row(static_cast<std::size_t>(N) + 1, 0.0);
    std::vector<double> obs_val(observables.size(), 0.0);
    std::uint64_t draws = 0;
    while (res.n_accepted < n_target) {
        if (draws >= max_draws)
            throw BudgetExceeded("conditional_mc: draw budget exhausted before n_target acceptances");
        const std::uint64_t replica_seed = mix64(seed + 0x1000 + draws);
        ++draws;
        std::fill(row.begin(), row.end(), 0.0);
        const std::uint64_t row_key = mix64(replica_seed ^ 0x6a09e667f3bcc908ULL);
        for (int i = 1; i <= M; ++i) {
            const std::uint64_t hi = mix64(row_key + static_cast<std::uint64_t>(i));
            double left = 0.0;
            for (int j = 1; j <= N; ++j) {
                const std::uint64_t h =
                    mix64(hi ^ (static_cast<std::uint64_t>(j) * 0x9e3779b97f4a7c15ULL));
                const double u = (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
                const double v = std::max(row[j], left) - std::log1p(-u);
                row[j] = v;
                left = v;
            }
            for (const ObsCell& c : cells)
                if (c.i == i) obs_val[c.k] = row[c.j];
        }
        const double corner = row[N];
        if (std::abs(corner - res.target) <= res.window_halfwidth) {
            ++res.n_accepted;
            for (std::size_t k = 0; k < observables.size(); ++k)
                res.samples[k].push_back(obs_val[k] / L);
        }
    }
    res.n_draws = draws;
    res.acceptance_rate = static_cast<double>(res.n_accepted) / static_cast<double>(draws);

    for (std::size_t k = 0; k < observables.size(); ++k) {
        const auto& [x, y] = observables[k];
        ObservableStat st;
        st.x = x;
        st.y = y;
        const auto& v = res.samples[k];
        const double n = static_cast<double>(v.size());
        double mean = 0;
        for (double t : v) mean += t;
        mean /= n;
        double var = 0;
        for (double t : v) var += (t - mean) * (t - mean);
        var = n > 1 ? var / (n - 1) : 0.0;
        st.mean_scaled = mean;
        st.se_scaled = std::sqrt(var / n);
        const double h = lln_surface(p, x, y);
        const double fluct_scale = std::sqrt(2.0) * p.sigma / sqrtL; // in units of L
        st.mean_fluct = (mean - h) / fluct_scale;
        st.se_fluct = st.se_scaled / fluct_scale;
        res.observables.push_back(st);
    }
    return res;
}

} // namespace lppcond
