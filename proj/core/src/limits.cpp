#include "lppcond/limits.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "lppcond/rng.hpp"

namespace lppcond {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double bridge_variance(const BridgeSpec& spec, int i) {
    return spec.times[i] * (spec.A - spec.times[i]) / spec.A;
}

ProbResult closed_form(const BridgeSpec& spec) {
    const int k = static_cast<int>(spec.times.size());
    ProbResult out;
    out.method = "closed_form";
    if (k == 0) {
        out.probability = 1.0;
    } else if (k == 1) {
        out.probability = normal_upper_tail(spec.thresholds[0] / std::sqrt(bridge_variance(spec, 0)));
    } else if (k == 2) {
        const double v1 = bridge_variance(spec, 0), v2 = bridge_variance(spec, 1);
        const double cov = spec.times[0] * (spec.A - spec.times[1]) / spec.A;
        const double rho = cov / std::sqrt(v1 * v2);
        out.probability = bivariate_normal_survival(spec.thresholds[0] / std::sqrt(v1),
                                                    spec.thresholds[1] / std::sqrt(v2), rho);
    } else {
        throw MethodError("closed_form supports at most two interior constraints");
    }
    out.error = 1e-10;
    return out;
}

ProbResult gaussian_mc(const BridgeSpec& spec, std::uint64_t seed, long long paths) {
    const int K = 1 << 10; // discretization steps
    const int k = static_cast<int>(spec.times.size());
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
        idx[i] = std::clamp(static_cast<int>(std::lround(spec.times[i] / spec.A * K)), 1, K - 1);
    const double step_sd = std::sqrt(spec.A / K);

    long long hits = 0;
    std::vector<double> w(K + 1);
    for (long long p = 0; p < paths; ++p) {
        CounterStream rng(seed, static_cast<std::uint64_t>(p));
        w[0] = 0.0;
        for (int j = 1; j <= K; ++j) w[j] = w[j - 1] + step_sd * rng.normal();
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            const double bridge = w[idx[i]] - (static_cast<double>(idx[i]) / K) * w[K];
            ok = bridge > spec.thresholds[i];
        }
        if (ok) ++hits;
    }
    ProbResult out;
    out.method = "gaussian_mc";
    out.probability = static_cast<double>(hits) / static_cast<double>(paths);
    out.error = std::sqrt(std::max(out.probability * (1.0 - out.probability), 1e-12) /
                          static_cast<double>(paths));
    return out;
}

// Vertical-line evaluation of the contour identity: with m = k+1 lines at
// real abscissae 1..m,
//   P = sqrt(2 pi A) / (2 pi i)^m * int prod_i e^{g_i u_i^2/2 + d_i u_i} du_i
//       / prod_{i<m} (u_{i+1} - u_i),
// where g_i, d_i are the consecutive differences of the times (with 0 and A
// appended) and thresholds (with 0 at both ends).
ProbResult contour_eval(const BridgeSpec& spec) {
    const int k = static_cast<int>(spec.times.size());
    const int m = k + 1;
    std::vector<double> g(m), d(m);
    for (int i = 0; i < m; ++i) {
        const double a0 = i == 0 ? 0.0 : spec.times[i - 1];
        const double a1 = i == m - 1 ? spec.A : spec.times[i];
        const double b0 = i == 0 ? 0.0 : spec.thresholds[i - 1];
        const double b1 = i == m - 1 ? 0.0 : spec.thresholds[i];
        g[i] = a1 - a0;
        d[i] = b1 - b0;
    }

    // Per-line node tables with Gaussian-decay-adapted spacing/truncation.
    struct Line {
        std::vector<std::complex<double>> u, f; // node and weighted integrand factor
    };
    std::vector<Line> lines(m);
    for (int i = 0; i < m; ++i) {
        const double c = static_cast<double>(i + 1);
        const double omega = std::abs(g[i] * c + d[i]);
        // Spacing is limited both by the Gaussian bandwidth and by the unit
        // analyticity strip of the 1/(u_{i+1}-u_i) couplings.
        const double h = 2.0 * kPi / std::max(omega + 14.0 * std::sqrt(g[i]), 19.0);
        const double Y = 14.0 / std::sqrt(g[i]);
        const int half = static_cast<int>(std::ceil(Y / h));
        for (int j = -half; j <= half; ++j) {
            const std::complex<double> u(c, j * h);
            lines[i].u.push_back(u);
            lines[i].f.push_back(std::exp(0.5 * g[i] * u * u + d[i] * u) * (h / (2.0 * kPi)));
        }
    }

    // Tensor sum with the 1/(u_{i+1}-u_i) coupling.
    std::complex<double> total{0.0, 0.0};
    auto rec = [&](auto&& self, int i, std::complex<double> prefix,
                   std::complex<double> uprev) -> void {
        if (i == m) {
            total += prefix;
            return;
        }
        for (std::size_t j = 0; j < lines[i].u.size(); ++j) {
            std::complex<double> v = prefix * lines[i].f[j];
            if (i > 0) v /= lines[i].u[j] - uprev;
            self(self, i + 1, v, lines[i].u[j]);
        }
    };
    rec(rec, 0, {1.0, 0.0}, {0.0, 0.0});

    total *= std::sqrt(2.0 * kPi * spec.A);
    ProbResult out;
    out.method = "contour";
    out.probability = total.real();
    out.error = std::abs(total.imag());
    return out;
}

} // namespace

void validate_bridge_spec(const BridgeSpec& spec) {
    if (!(spec.A > 0)) throw DomainError("bridge: total time must be positive");
    if (spec.times.size() != spec.thresholds.size())
        throw ShapeError("bridge: times and thresholds must have equal length");
    double prev = 0.0;
    for (double t : spec.times) {
        if (!(t > prev) || !(t < spec.A))
            throw DomainError("bridge: times must be strictly increasing inside (0, A)");
        prev = t;
    }
}

ProbResult bridge_crossing(const BridgeSpec& spec, BridgeMethod method,
                           std::uint64_t seed, long long paths) {
    validate_bridge_spec(spec);
    switch (method) {
        case BridgeMethod::ClosedForm: return closed_form(spec);
        case BridgeMethod::GaussianMC: return gaussian_mc(spec, seed, paths);
        case BridgeMethod::Contour:
            if (spec.times.size() > 3)
                throw MethodError("contour method supports at most three constraints");
            return contour_eval(spec);
    }
    throw MethodError("unknown bridge method");
}

double diag_limit(const DiagSpec& spec) {
    if (spec.points.empty()) return 1.0;
    // Sort constraints by time; merge coincident times by the max threshold.
    auto branch = [&](double scale, double s_sign) {
        std::vector<std::pair<double, double>> cons; // (t, threshold on B)
        for (const auto& c : spec.points) {
            if (!(c.t > 0.0) || !(c.t < 1.0))
                throw DomainError("diag_limit: times must lie in (0,1)");
            cons.emplace_back(c.t, (s_sign * c.s + c.h) / scale);
        }
        std::sort(cons.begin(), cons.end());
        std::vector<std::pair<double, double>> merged;
        for (const auto& c : cons) {
            if (!merged.empty() && merged.back().first == c.first)
                merged.back().second = std::max(merged.back().second, c.second);
            else
                merged.push_back(c);
        }
        BridgeSpec bs;
        bs.A = 1.0;
        for (const auto& c : merged) {
            bs.times.push_back(c.first);
            bs.thresholds.push_back(c.second);
        }
        if (bs.times.size() > 2)
            throw MethodError("diag_limit: closed form supports at most two distinct times");
        return bridge_crossing(bs, BridgeMethod::ClosedForm).probability;
    };
    const double p_plus = branch(std::sqrt(2.0) * spec.params.c_plus, 1.0);
    const double p_minus = branch(std::sqrt(2.0) * spec.params.c_minus, -1.0);
    return p_plus * p_minus;
}

double offdiag_two_point_limit(const ModelParams& p0, const RegionQuery& q0, double r1,
                               double r2) {
    ModelParams p = p0;
    RegionQuery q = q0;
    const bool below1 = q.y1 / q.x1 < 1.0, below2 = q.y2 / q.x2 < 1.0;
    if (below1 != below2)
        throw DomainError("offdiag limit: points must lie on the same side of the diagonal");
    if (!below1) {
        // Reflect across the diagonal: swap coordinates and the weight rates.
        p = make_params(p0.b, p0.a, p0.ell);
        std::swap(q.x1, q.y1);
        std::swap(q.x2, q.y2);
    }
    const double m = p.m_slope;
    double u1 = (m * q.y1 - q.x1) / (m - 1.0);
    double u2 = (m * q.y2 - q.x2) / (m - 1.0);
    if (!(u1 > 0.0) || !(u1 < 1.0) || !(u2 > 0.0) || !(u2 < 1.0))
        throw DomainError("offdiag limit: bridge times u_i must lie in (0,1)");
    if (u1 > u2) {
        std::swap(u1, u2);
        std::swap(r1, r2);
    }
    const double v1 = u1 * (1.0 - u1), v2 = u2 * (1.0 - u2);
    const double h = r1 / (p.c_plus * std::sqrt(v1));
    const double k = r2 / (p.c_plus * std::sqrt(v2));
    if (u1 == u2) return normal_upper_tail(std::max(h, k));
    const double rho = u1 * (1.0 - u2) / std::sqrt(v1 * v2);
    return bivariate_normal_survival(h, k, rho);
}

double bridge_covariance(const ModelParams& p, double t) {
    if (!(t > 0.0) || !(t < 1.0)) throw DomainError("bridge_covariance: t must be in (0,1)");
    return (p.a - p.b) * p.sqrt_D / ((p.a + p.b) * p.ell - (p.a - p.b) * (p.a - p.b)) * t *
           (1.0 - t);
}

double normal_upper_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

namespace {

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

// Adaptive Simpson on [a,b] for the conditional-tail integrand.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

} // namespace

double bivariate_normal_survival(double h, double k, double rho) {
    if (!(rho > -1.0) || !(rho < 1.0))
        throw DomainError("bivariate survival: |rho| must be < 1");
    const double s = std::sqrt(1.0 - rho * rho);
    auto f = [&](double x) { return phi(x) * normal_upper_tail((k - rho * x) / s); };
    // Truncation at +-10 discards at most Phi(-10) ~ 7.6e-24 of mass, far
    // below the 1e-10 accuracy target.
    const double lo = std::max(h, -10.0);
    const double hi = std::max(lo + 1e-8, 10.0);
    const double mid = 0.5 * (lo + hi);
    const double v = adaptive_simpson(f, lo, mid, f(lo), f(0.5 * (lo + mid)), f(mid), 5e-12, 40) +
                     adaptive_simpson(f, mid, hi, f(mid), f(0.5 * (mid + hi)), f(hi), 5e-12, 40);
    return std::min(std::max(v, 0.0), 1.0);
}

} // namespace lppcond
