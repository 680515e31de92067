#include "lppcond/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "lppcond/logcx.hpp"
#include "lppcond/rng.hpp"

namespace lppcond {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Per-variable quadrature table: nodes on the circle and the attached
// weights exp(sign*log_f - off) * rho*e^{i theta} / q.
struct VarTable {
    std::vector<cplx> z;
    std::vector<cplx> w;
    double off = 0.0;
};

VarTable build_table(const VarSpec& v, int q, double rot) {
    VarTable t;
    t.z.resize(q);
    t.w.resize(q);
    std::vector<cplx> lf(q);
    double off = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < q; ++j) {
        const double th = 2.0 * kPi * (j + rot) / q;
        const cplx z = v.contour.point(th);
        t.z[j] = z;
        lf[j] = v.sign * ObservationPlan::log_f(v.dM, v.dN, v.dT, z);
        off = std::max(off, lf[j].real());
    }
    t.off = off;
    const double orient = v.contour.ccw ? 1.0 : -1.0;
    for (int j = 0; j < q; ++j) {
        const double th = 2.0 * kPi * (j + rot) / q;
        const cplx ring = v.contour.radius * cplx(std::cos(th), std::sin(th));
        t.w[j] = std::exp(lf[j] - off) * ring * (orient / q);
    }
    return t;
}

struct TensorSums {
    cplx full{0.0, 0.0};
    cplx coarse{0.0, 0.0}; // all-even-index subsum (half-node rule)
    double abs_sum = 0.0;
};

// Recursive tensor accumulation over variables k..d-1.
void tensor_rec(const std::vector<VarTable>& tab, int k, cplx prefix, bool even,
                cplx* zbuf, const std::function<cplx(const cplx*)>& kernel,
                TensorSums& s) {
    const int d = static_cast<int>(tab.size());
    if (k == d) {
        const cplx term = prefix * kernel(zbuf);
        s.full += term;
        s.abs_sum += std::abs(term);
        if (even) s.coarse += term;
        return;
    }
    const auto& t = tab[k];
    const int q = static_cast<int>(t.z.size());
    for (int j = 0; j < q; ++j) {
        zbuf[k] = t.z[j];
        tensor_rec(tab, k + 1, prefix * t.w[j], even && (j % 2 == 0), zbuf, kernel, s);
    }
}

IntegralResult trapezoid_pass(const std::vector<VarSpec>& vars,
                              const std::function<cplx(const cplx*)>& kernel,
                              double log_offset, const QuadSettings& qs, int q,
                              double rot) {
    const int d = static_cast<int>(vars.size());
    std::vector<VarTable> tab;
    tab.reserve(d);
    double off_sum = 0.0;
    for (const auto& v : vars) {
        tab.push_back(build_table(v, q, rot));
        off_sum += tab.back().off;
    }

    // Partition on the outermost variable; per-index partials are reduced in
    // index order so the result does not depend on the thread count.
    const int q0 = static_cast<int>(tab[0].z.size());
    std::vector<TensorSums> partial(q0);
    auto run_range = [&](int lo, int hi) {
        std::vector<cplx> zbuf(d);
        for (int j = lo; j < hi; ++j) {
            zbuf[0] = tab[0].z[j];
            tensor_rec(tab, 1, tab[0].w[j], j % 2 == 0, zbuf.data(), kernel, partial[j]);
        }
    };
    const int nth = std::max(1, std::min(qs.threads, q0));
    if (nth == 1) {
        run_range(0, q0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nth; ++t) {
            const int lo = q0 * t / nth, hi = q0 * (t + 1) / nth;
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    TensorSums s;
    for (const auto& p : partial) {
        s.full += p.full;
        s.coarse += p.coarse;
        s.abs_sum += p.abs_sum;
    }

    IntegralResult r;
    r.mantissa = s.full;
    r.log_scale = off_sum - log_offset;
    r.method = "trapezoid-q" + std::to_string(q);
    r.cancellation = std::abs(s.full) < 1e-12 * s.abs_sum;
    if (qs.doubling && d <= 6)
        r.conv_estimate = std::abs(s.full - s.coarse * std::pow(2.0, d));
    return r;
}

IntegralResult qmc_pass(const std::vector<VarSpec>& vars,
                        const std::function<cplx(const cplx*)>& kernel,
                        double log_offset, const QuadSettings& qs) {
    const int d = static_cast<int>(vars.size());
    const long long N = qs.qmc_points;
    // Korobov generating vector (1, a, a^2, ...) mod N.
    std::vector<long long> g(d);
    g[0] = 1;
    for (int k = 1; k < d; ++k) g[k] = (g[k - 1] * qs.qmc_generator) % N;

    std::vector<LogComplex> per_shift;
    for (int s = 0; s < qs.qmc_shifts; ++s) {
        std::vector<double> shift(d);
        for (int k = 0; k < d; ++k) shift[k] = cell_u01(qs.qmc_seed, s, k);
        LogAccumulator acc;
        std::vector<cplx> z(d);
        for (long long j = 0; j < N; ++j) {
            cplx lf_sum{0.0, 0.0};
            cplx ring{1.0, 0.0};
            for (int k = 0; k < d; ++k) {
                double u = static_cast<double>((j * g[k]) % N) / static_cast<double>(N) +
                           shift[k];
                if (u >= 1.0) u -= 1.0;
                const double th = 2.0 * kPi * u;
                const auto& c = vars[k].contour;
                z[k] = c.point(th);
                lf_sum += vars[k].sign *
                          ObservationPlan::log_f(vars[k].dM, vars[k].dN, vars[k].dT, z[k]);
                ring *= c.radius * cplx(std::cos(th), std::sin(th)) *
                        (c.ccw ? 1.0 : -1.0);
            }
            acc.add(LogComplex::from_log(lf_sum) * LogComplex::from(ring * kernel(z.data())));
        }
        LogComplex r = acc.result();
        if (!r.is_zero()) r.log_mag -= std::log(static_cast<double>(N));
        per_shift.push_back(r);
    }

    double pivot = -std::numeric_limits<double>::infinity();
    for (const auto& r : per_shift)
        if (!r.is_zero()) pivot = std::max(pivot, r.log_mag);
    IntegralResult out;
    out.method = "qmc-n" + std::to_string(N) + "-s" + std::to_string(qs.qmc_shifts);
    if (pivot == -std::numeric_limits<double>::infinity()) {
        out.log_scale = -log_offset;
        return out;
    }
    cplx mean{0.0, 0.0};
    std::vector<cplx> vals;
    for (const auto& r : per_shift) {
        vals.push_back(r.to_complex_shifted(pivot));
        mean += vals.back();
    }
    mean /= static_cast<double>(per_shift.size());
    double spread = 0.0;
    for (const auto& v : vals) spread = std::max(spread, std::abs(v - mean));
    out.mantissa = mean;
    out.log_scale = pivot - log_offset;
    out.conv_estimate = spread;
    return out;
}

// Deltas of the f-exponents attached to a symbol, for either plain groups
// (m-entry plans) or the merge alphabet (three-point plans).
void deltas_for(const ObservationPlan& plan, Sym s, double& dM, double& dN, double& dT) {
    if (plan.m == 3) {
        plan.sym_delta(s, dM, dN, dT);
        return;
    }
    const int idx = static_cast<int>(s);
    if (s != Sym::S1 && s != Sym::S2 && s != Sym::S3)
        throw ShapeError("merge symbols require a three-point plan");
    plan.group_delta(idx + 1, dM, dN, dT);
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Variables for one bracket-expansion term J(s,t): group 1 on the base
// circles, and for group i >= 2, s_i (resp. t_i) of the xi (resp. eta)
// variables on the out circle, the rest on the in circle.
std::vector<VarSpec> bracket_vars(const ObservationPlan& plan, const std::vector<int>& n,
                                  const BracketCircles& bc, const std::vector<int>& s,
                                  const std::vector<int>& t) {
    const int m = static_cast<int>(n.size());
    std::vector<VarSpec> vars;
    auto push_group = [&](int i, bool is_xi, int out_count) {
        double dM, dN, dT;
        plan.group_delta(i, dM, dN, dT);
        const double sign = is_xi ? 1.0 : -1.0;
        const Contour& base = is_xi ? bc.xi_base : bc.eta_base;
        for (int k = 0; k < n[i - 1]; ++k) {
            Contour c;
            if (i == 1) {
                c = base;
            } else {
                const bool out = k >= n[i - 1] - out_count;
                c = out ? (is_xi ? bc.xi_out[i - 2] : bc.eta_out[i - 2])
                        : (is_xi ? bc.xi_in[i - 2] : bc.eta_in[i - 2]);
            }
            vars.push_back({c, dM, dN, dT, sign});
        }
    };
    for (int i = 1; i <= m; ++i) push_group(i, true, i >= 2 ? s[i - 2] : 0);
    for (int i = 1; i <= m; ++i) push_group(i, false, i >= 2 ? t[i - 2] : 0);
    return vars;
}

// Moment weight w_j(c) = (1/2 pi i) \oint z^{c - n_{j+1} - 1} (z+1)^{n_j - n_{j+1} - 1} dz
// over the radius-2 circle, by trapezoid (spectrally exact at 48 nodes).
double moment_weight(int nj, int nj1, int c, int q) {
    cplx acc{0.0, 0.0};
    for (int k = 0; k < q; ++k) {
        const double th = 2.0 * kPi * k / q;
        const cplx z = 2.0 * cplx(std::cos(th), std::sin(th));
        acc += std::pow(z, static_cast<double>(c - nj1)) *
               std::pow(z + 1.0, static_cast<double>(nj - nj1 - 1));
    }
    return (acc / static_cast<double>(q)).real();
}

} // namespace

int QuadSettings::default_nodes(int dim) {
    if (dim <= 4) return 32;
    if (dim <= 6) return 16;
    return 10;
}

IntegralResult integrate_nested(const std::vector<VarSpec>& vars,
                                const std::function<cplx(const cplx*)>& kernel,
                                double log_offset, const QuadSettings& qs) {
    const int d = static_cast<int>(vars.size());
    if (d == 0) {
        IntegralResult r;
        r.mantissa = kernel(nullptr);
        r.log_scale = -log_offset;
        r.method = "empty";
        return r;
    }
    if (d >= 7 && qs.qmc_high_dim) return qmc_pass(vars, kernel, log_offset, qs);

    int q = qs.nodes_for_dim(d);
    if (q % 2) ++q;
    if (d <= 6 || qs.rotations <= 1) return trapezoid_pass(vars, kernel, log_offset, qs, q, 0.0);

    // High-dimensional trapezoid: replicate with rotated nodes, report spread.
    std::vector<IntegralResult> reps;
    for (int r = 0; r < qs.rotations; ++r)
        reps.push_back(trapezoid_pass(vars, kernel, log_offset, qs, q,
                                      static_cast<double>(r) / qs.rotations));
    IntegralResult out = reps[0];
    const cplx v0 = out.value();
    double spread = 0.0;
    for (const auto& r : reps) spread = std::max(spread, std::abs(r.value() - v0));
    out.conv_estimate = spread * std::exp(-out.log_scale);
    out.method += "-rot" + std::to_string(qs.rotations);
    return out;
}

IntegralResult eval_I(const IndexList& sigma, const IndexList& tau,
                      const ObservationPlan& plan, const QuadSettings& qs) {
    return eval_I(sigma, tau, plan, plan_circles(sigma, tau, plan, qs.radii_mode), qs);
}

IntegralResult eval_I(const IndexList& sigma, const IndexList& tau,
                      const ObservationPlan& plan, const CirclePair& circles,
                      const QuadSettings& qs) {
    if (static_cast<int>(circles.xi.size()) != sigma.size() ||
        static_cast<int>(circles.eta.size()) != tau.size())
        throw ShapeError("eval_I: one circle per list entry required");
    check_nesting(circles.xi, circles.eta);
    std::vector<VarSpec> vars;
    for (int k = 0; k < sigma.size(); ++k) {
        VarSpec v;
        v.contour = circles.xi[k];
        deltas_for(plan, sigma.entries[k], v.dM, v.dN, v.dT);
        v.sign = 1.0;
        vars.push_back(v);
    }
    for (int k = 0; k < tau.size(); ++k) {
        VarSpec v;
        v.contour = circles.eta[k];
        deltas_for(plan, tau.entries[k], v.dM, v.dN, v.dT);
        v.sign = -1.0;
        vars.push_back(v);
    }
    PiSigmaTau kernel(sigma, tau);
    return integrate_nested(vars, [&kernel](const cplx* z) { return kernel(z); },
                            plan.log_Z, qs);
}

IntegralResult eval_D_n(const ObservationPlan& plan, const std::vector<int>& n,
                        const std::vector<cplx>& z, const QuadSettings& qs) {
    const int m = static_cast<int>(n.size());
    if (m != plan.m) throw ShapeError("eval_D_n: |n| must equal the plan's m");
    if (static_cast<int>(z.size()) != m - 1)
        throw ShapeError("eval_D_n: z must have m-1 entries");
    const BracketCircles bc = plan_bracket_circles(plan, n, qs.radii_mode);
    PiN kernel(n);

    // Out-count enumerators for groups 2..m.
    std::vector<int> s(std::max(0, m - 1), 0), t(std::max(0, m - 1), 0);
    LogAccumulator acc;
    double conv = 0.0;
    bool cancel = false;
    auto term = [&]() {
        cplx coeff{1.0, 0.0};
        for (int i = 2; i <= m; ++i) {
            coeff *= static_cast<double>(binomial(n[i - 1], s[i - 2]) *
                                         binomial(n[i - 1], t[i - 2]));
            coeff *= std::pow(z[i - 2], static_cast<double>(s[i - 2] + t[i - 2]));
        }
        if (coeff == cplx(0.0, 0.0)) return;
        const auto vars = bracket_vars(plan, n, bc, s, t);
        const IntegralResult J =
            integrate_nested(vars, [&kernel](const cplx* zz) { return kernel(zz); },
                             plan.log_Z, qs);
        acc.add(LogComplex::from(coeff) *
                LogComplex::from(J.mantissa) *
                LogComplex::from_log(cplx(J.log_scale, 0.0)));
        conv += std::abs(coeff) * J.conv_estimate * std::exp(J.log_scale);
        cancel = cancel || J.cancellation;
    };
    // Odometer over all (s, t) choices.
    const int slots = 2 * std::max(0, m - 1);
    std::vector<int> idx(slots, 0);
    while (true) {
        for (int k = 0; k < m - 1; ++k) {
            s[k] = idx[k];
            t[k] = idx[m - 1 + k];
        }
        term();
        int k = 0;
        for (; k < slots; ++k) {
            const int cap = n[(k % (m - 1)) + 1];
            if (++idx[k] <= cap) break;
            idx[k] = 0;
        }
        if (k == slots) break;
        if (slots == 0) break;
    }

    IntegralResult out;
    const LogComplex r = acc.result();
    if (!r.is_zero()) {
        out.log_scale = r.log_mag;
        out.mantissa = r.to_complex_shifted(r.log_mag);
    }
    out.conv_estimate = conv * std::exp(-out.log_scale);
    out.cancellation = cancel || acc.cancellation_warning();
    out.method = "bracket-expansion";
    return out;
}

IntegralResult eval_Q_n(const ObservationPlan& plan, const std::vector<int>& n,
                        const QuadSettings& qs) {
    const int m = static_cast<int>(n.size());
    if (m != plan.m) throw ShapeError("eval_Q_n: |n| must equal the plan's m");
    IntegralResult out;
    for (int v : n) {
        if (v < 0) throw ShapeError("eval_Q_n: negative multiplicity");
        if (v == 0) {
            out.method = "vanishing";
            out.log_scale = 0.0;
            return out; // zero when any multiplicity vanishes
        }
    }
    const BracketCircles bc = plan_bracket_circles(plan, n, qs.radii_mode);
    PiN kernel(n);

    int abs_n = 0;
    for (int v : n) abs_n += v;
    const double sign = ((abs_n + m - 1) % 2 == 0) ? 1.0 : -1.0;

    // Precompute moment weights for each z-variable j = 1..m-1.
    std::vector<std::vector<double>> w(std::max(0, m - 1));
    for (int j = 1; j <= m - 1; ++j) {
        w[j - 1].resize(2 * n[j] + 1);
        for (int c = 0; c <= 2 * n[j]; ++c)
            w[j - 1][c] = moment_weight(n[j - 1], n[j], c, qs.z_nodes);
    }

    std::vector<int> s(std::max(0, m - 1), 0), t(std::max(0, m - 1), 0);
    double value = 0.0, conv = 0.0, abs_sum = 0.0;
    double imag = 0.0;
    bool cancel = false;
    auto term = [&]() {
        double coeff = 1.0;
        for (int i = 2; i <= m; ++i)
            coeff *= static_cast<double>(binomial(n[i - 1], s[i - 2]) *
                                         binomial(n[i - 1], t[i - 2])) *
                     w[i - 2][s[i - 2] + t[i - 2]];
        if (std::abs(coeff) < 1e-14) return;
        const auto vars = bracket_vars(plan, n, bc, s, t);
        const IntegralResult J =
            integrate_nested(vars, [&kernel](const cplx* zz) { return kernel(zz); },
                             plan.log_Z, qs);
        const cplx jv = J.value();
        value += coeff * jv.real();
        imag += coeff * jv.imag();
        abs_sum += std::abs(coeff * jv);
        conv += std::abs(coeff) * J.conv_estimate * std::exp(J.log_scale);
        cancel = cancel || J.cancellation;
    };
    const int slots = 2 * std::max(0, m - 1);
    std::vector<int> idx(slots, 0);
    while (true) {
        for (int k = 0; k < m - 1; ++k) {
            s[k] = idx[k];
            t[k] = idx[m - 1 + k];
        }
        term();
        if (slots == 0) break;
        int k = 0;
        for (; k < slots; ++k) {
            const int cap = n[(k % (m - 1)) + 1];
            if (++idx[k] <= cap) break;
            idx[k] = 0;
        }
        if (k == slots) break;
    }

    value *= sign;
    imag *= sign;
    if (std::abs(imag) > 1e-9 * std::max(std::abs(value), 1e-300) + 1e-14 + conv)
        throw NonRealResult("eval_Q_n: imaginary residue exceeds tolerance");
    out.mantissa = cplx(value, 0.0);
    out.log_scale = 0.0;
    out.conv_estimate = conv;
    out.cancellation = cancel || (abs_sum > 0 && std::abs(value) < 1e-12 * abs_sum);
    out.method = "bracket-moments";
    return out;
}

} // namespace lppcond
