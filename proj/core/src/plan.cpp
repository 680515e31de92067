#include "lppcond/plan.hpp"

#include <cmath>

namespace lppcond {

Normalization z_normalization(const ModelParams& p, double L) {
    if (!(L > 0)) throw DomainError("z_normalization: L must be positive");
    const double aL = std::ceil(p.a * L), bL = std::ceil(p.b * L);
    if (aL < 1 || bL < 1) throw DomainError("z_normalization: lattice too small");
    Normalization n;
    n.log_Z = aL * std::log((p.ell + p.a - p.b + p.sqrt_D) / (p.ell + p.a - p.b - p.sqrt_D)) +
              bL * std::log((p.ell - p.a + p.b + p.sqrt_D) / (p.ell - p.a + p.b - p.sqrt_D)) -
              p.sqrt_D * L;
    return n;
}

void ObservationPlan::group_delta(int i, double& dM, double& dN, double& dT) const {
    if (i < 1 || i > m) throw ShapeError("group_delta: group index out of range");
    const double M0 = i > 1 ? static_cast<double>(M[i - 2]) : 0.0;
    const double N0 = i > 1 ? static_cast<double>(N[i - 2]) : 0.0;
    const double T0 = i > 1 ? T[i - 2] : 0.0;
    dM = static_cast<double>(M[i - 1]) - M0;
    dN = static_cast<double>(N[i - 1]) - N0;
    dT = T[i - 1] - T0;
}

void ObservationPlan::sym_delta(Sym s, double& dM, double& dN, double& dT) const {
    if (m != 3) throw ShapeError("sym_delta: merge symbols require a three-point plan");
    switch (s) {
        case Sym::S1: dM = static_cast<double>(M[0]); dN = static_cast<double>(N[0]); dT = T[0]; return;
        case Sym::S2:
            dM = static_cast<double>(M[1] - M[0]);
            dN = static_cast<double>(N[1] - N[0]);
            dT = T[1] - T[0];
            return;
        case Sym::S3:
            dM = static_cast<double>(M[2] - M[1]);
            dN = static_cast<double>(N[2] - N[1]);
            dT = T[2] - T[1];
            return;
        case Sym::S12: dM = static_cast<double>(M[1]); dN = static_cast<double>(N[1]); dT = T[1]; return;
        case Sym::S23:
            dM = static_cast<double>(M[2] - M[0]);
            dN = static_cast<double>(N[2] - N[0]);
            dT = T[2] - T[0];
            return;
        case Sym::S123: dM = static_cast<double>(M[2]); dN = static_cast<double>(N[2]); dT = T[2]; return;
    }
    throw ShapeError("sym_delta: bad symbol");
}

std::complex<double> ObservationPlan::log_f(double dM, double dN, double dT,
                                            std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0) || z == std::complex<double>(-1.0, 0.0))
        throw PoleError("log_f: evaluation at a pole");
    return dN * std::log(z) - dM * std::log(z + 1.0) + dT * z;
}

void validate_plan(const ObservationPlan& plan) {
    if (plan.m < 1 || plan.m > 3) throw HypothesisError("plan: m must be in {1,2,3}");
    if (static_cast<int>(plan.M.size()) != plan.m || static_cast<int>(plan.N.size()) != plan.m ||
        static_cast<int>(plan.T.size()) != plan.m)
        throw ShapeError("plan: M, N, T must each have m entries");
    for (int i = 0; i < plan.m; ++i) {
        if (plan.M[i] < 1 || plan.N[i] < 1) throw HypothesisError("plan: M_i, N_i must be >= 1");
        if (!(plan.T[i] > 0)) throw HypothesisError("plan: thresholds must be positive");
        if (i > 0 && !(plan.T[i] >= plan.T[i - 1]))
            throw HypothesisError("plan: thresholds must be nondecreasing");
    }
    for (int i = 0; i < plan.m; ++i)
        for (int j = i + 1; j < plan.m; ++j)
            if (plan.N[i] == plan.N[j] && plan.T[i] == plan.T[j])
                throw HypothesisError("plan: the pairs (N_i, T_i) must be pairwise distinct");
}

ObservationPlan single_plan(long long M, long long N, double T) {
    ObservationPlan p;
    p.m = 1;
    p.M = {M};
    p.N = {N};
    p.T = {T};
    validate_plan(p);
    return p;
}

ObservationPlan multi_plan(std::vector<long long> M, std::vector<long long> N,
                           std::vector<double> T) {
    ObservationPlan p;
    p.m = static_cast<int>(M.size());
    p.M = std::move(M);
    p.N = std::move(N);
    p.T = std::move(T);
    validate_plan(p);
    return p;
}

ObservationPlan scaled_plan(const ModelParams& p, const RegionQuery& q0, double r1,
                            double r2, double L) {
    validate_query(p, q0);
    RegionQuery q = q0;
    double ra = r1, rb = r2;
    if ((q.x2 - q.x1) + p.mu * (q.y2 - q.y1) < 0.0) {
        std::swap(q.x1, q.x2);
        std::swap(q.y1, q.y2);
        std::swap(ra, rb);
    }
    ObservationPlan plan;
    plan.m = 3;
    const double sq = std::sqrt(2.0) * p.sigma * std::sqrt(L);
    plan.M = {static_cast<long long>(std::ceil(q.x1 * p.a * L)),
              static_cast<long long>(std::ceil(q.x2 * p.a * L)),
              static_cast<long long>(std::ceil(p.a * L))};
    plan.N = {static_cast<long long>(std::ceil(q.y1 * p.b * L)),
              static_cast<long long>(std::ceil(q.y2 * p.b * L)),
              static_cast<long long>(std::ceil(p.b * L))};
    plan.T = {h_linear(p, q.x1, q.y1) * L + sq * ra, h_linear(p, q.x2, q.y2) * L + sq * rb,
              p.ell * L};
    plan.params = p;
    plan.query = q;
    plan.L = L;
    plan.scaled = true;
    plan.log_Z = z_normalization(p, L).log_Z;
    validate_plan(plan);
    return plan;
}

} // namespace lppcond
