#include "lppcond/contour.hpp"

#include <algorithm>
#include <cmath>

namespace lppcond {

namespace {

constexpr double kSeparationBudget = 0.96; // max_xi_radius + max_eta_radius must stay below
constexpr double kFan = 1.14;              // ratio used to separate coincident ideal radii

// Centered geometric fan for runs of equal ideal radii, then strict
// monotonization and range clamping.
std::vector<double> shape_radii(std::vector<double> ideal, double lo, double hi) {
    const int n = static_cast<int>(ideal.size());
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && ideal[j] == ideal[i]) ++j;
        const int len = j - i;
        for (int k = 0; k < len; ++k)
            ideal[i + k] *= std::pow(kFan, k - 0.5 * (len - 1));
        i = j;
    }
    for (double& r : ideal) r = std::clamp(r, lo, hi);
    for (int i = 1; i < n; ++i)
        if (ideal[i] <= ideal[i - 1] * 1.05) ideal[i] = ideal[i - 1] * 1.05;
    return ideal;
}

void cap_separation(std::vector<double>& xi, std::vector<double>& eta) {
    if (xi.empty() || eta.empty()) return;
    const double mx = xi.back(), me = eta.back();
    if (mx + me <= kSeparationBudget) return;
    // Shrink the eta family first (its radii are the more flexible ones),
    // then the xi family if needed.
    double avail = kSeparationBudget - mx;
    if (avail > 0.05) {
        const double f = avail / me;
        for (double& r : eta) r *= f;
        return;
    }
    const double f = 0.5 * kSeparationBudget / mx;
    for (double& r : xi) r *= f;
    const double g = 0.5 * kSeparationBudget / me;
    for (double& r : eta) r *= g;
}

std::vector<Contour> to_contours(const std::vector<double>& radii, std::complex<double> center) {
    std::vector<Contour> out;
    out.reserve(radii.size());
    for (double r : radii) out.push_back({center, r, 32, true});
    return out;
}

} // namespace

std::vector<double> plan_radii_default(int count) {
    std::vector<double> r(count);
    for (int k = 0; k < count; ++k) r[k] = 0.10 + 0.05 * k;
    return r;
}

std::vector<double> plan_radii_spread(int count) {
    // Geometric spacing in [0.08, 0.32]: maximizes the analyticity annulus
    // ratio between neighboring circles for a given count.
    std::vector<double> r(count);
    if (count == 1) {
        r[0] = 0.2;
        return r;
    }
    const double lo = 0.08, hi = 0.32;
    const double g = std::pow(hi / lo, 1.0 / (count - 1));
    double v = lo;
    for (int k = 0; k < count; ++k, v *= g) r[k] = v;
    return r;
}

void check_nesting(const std::vector<Contour>& xi, const std::vector<Contour>& eta) {
    auto chk_family = [](const std::vector<Contour>& fam, const char* name) {
        for (std::size_t k = 0; k < fam.size(); ++k) {
            if (!(fam[k].radius > 0) || !(fam[k].radius < 1.0))
                throw ContourNestingError(std::string("circle radius out of range in family ") + name);
            if (k > 0 && !(fam[k].radius > fam[k - 1].radius))
                throw ContourNestingError(std::string("circles not strictly nested in family ") + name);
        }
    };
    chk_family(xi, "xi");
    chk_family(eta, "eta");
    if (!xi.empty() && !eta.empty()) {
        if (!(xi.back().radius + eta.back().radius < 1.0))
            throw ContourNestingError("xi and eta circle families intersect");
    }
}

CirclePair plan_circles(const IndexList& sigma, const IndexList& tau,
                        const ObservationPlan& plan, RadiiMode mode) {
    const int ns = sigma.size(), nt = tau.size();
    std::vector<double> rx, re;
    if (mode == RadiiMode::Default) {
        rx = plan_radii_default(ns);
        re = plan_radii_default(nt);
    } else if (mode == RadiiMode::Spread) {
        rx = plan_radii_spread(ns);
        re = plan_radii_spread(nt);
    } else {
        if (!plan.scaled || !plan.params || !plan.query)
            throw ContourNestingError("steepest radii require a scaled plan");
        const GStarFamily fam = g_star_family(*plan.params, *plan.query);
        std::vector<double> ix, ie;
        for (Sym s : sigma.entries) ix.push_back(1.0 + fam.of(s).z_minus);
        for (Sym s : tau.entries) ie.push_back(std::abs(fam.of(s).z_plus));
        rx = shape_radii(std::move(ix), 0.04, 0.88);
        re = shape_radii(std::move(ie), 0.04, 0.88);
        cap_separation(rx, re);
    }
    CirclePair cp;
    cp.xi = to_contours(rx, {-1.0, 0.0});
    cp.eta = to_contours(re, {0.0, 0.0});
    check_nesting(cp.xi, cp.eta);
    return cp;
}

BracketCircles plan_bracket_circles(const ObservationPlan& plan, const std::vector<int>& n,
                                    RadiiMode mode) {
    const int m = static_cast<int>(n.size());
    if (m != plan.m) throw ShapeError("plan_bracket_circles: |n| != m");
    const int count = 2 * m - 1;

    // Radii in nesting order in_m .. in_2, base_1, out_2 .. out_m.
    std::vector<double> rx, re;
    if (mode == RadiiMode::Steepest) {
        std::vector<double> bx(m), be(m); // ideal per-group radii
        bool have = false;
        if (plan.scaled && plan.params && plan.query && m == 3) {
            const GStarFamily fam = g_star_family(*plan.params, *plan.query);
            const Sym order[3] = {Sym::S1, Sym::S2, Sym::S3};
            for (int i = 0; i < 3; ++i) {
                bx[i] = 1.0 + fam.of(order[i]).z_minus;
                be[i] = std::abs(fam.of(order[i]).z_plus);
            }
            have = true;
        } else {
            // Per-group critical points from the raw exponents, when real.
            try {
                for (int i = 1; i <= m; ++i) {
                    double dM, dN, dT;
                    plan.group_delta(i, dM, dN, dT);
                    const CriticalPointResult c = critical_points(dM, dN, dT);
                    bx[i - 1] = 1.0 + c.z_minus;
                    be[i - 1] = std::abs(c.z_plus);
                }
                have = true;
            } catch (const DomainError&) {
                have = false;
            }
        }
        if (have) {
            auto build = [&](const std::vector<double>& base) {
                std::vector<double> r;
                // inner circles for groups m..2
                for (int i = m; i >= 2; --i) r.push_back(base[i - 1] * 0.999);
                r.push_back(base[0]);
                for (int i = 2; i <= m; ++i) r.push_back(base[0] * std::pow(1.12, i - 1));
                // Monotonize from the base outward in both directions.
                const int ib = m - 1; // index of the group-1 circle
                for (int k = ib - 1; k >= 0; --k) r[k] = std::min(r[k], r[k + 1] / 1.08);
                for (int k = ib + 1; k < count; ++k) r[k] = std::max(r[k], r[k - 1] * 1.08);
                for (double& v : r) v = std::clamp(v, 1e-3, 0.88);
                for (int k = 1; k < count; ++k)
                    if (r[k] <= r[k - 1] * 1.02) r[k] = r[k - 1] * 1.02;
                return r;
            };
            rx = build(bx);
            re = build(be);
            cap_separation(rx, re);
        } else {
            rx = plan_radii_spread(count);
            re = plan_radii_spread(count);
        }
    } else if (mode == RadiiMode::Spread) {
        rx = plan_radii_spread(count);
        re = plan_radii_spread(count);
    } else {
        rx = plan_radii_default(count);
        re = plan_radii_default(count);
    }

    BracketCircles bc;
    auto fill = [&](const std::vector<double>& r, std::complex<double> center,
                    std::vector<Contour>& inner, Contour& base, std::vector<Contour>& outer) {
        // r is in nesting order in_m..in_2, base, out_2..out_m; store by group.
        inner.resize(m >= 2 ? m - 1 : 0);
        outer.resize(m >= 2 ? m - 1 : 0);
        for (int i = 2; i <= m; ++i) {
            inner[i - 2] = {center, r[m - i], 32, true};
            outer[i - 2] = {center, r[m - 1 + i - 1], 32, true};
        }
        base = {center, r[m - 1], 32, true};
    };
    fill(rx, {-1.0, 0.0}, bc.xi_in, bc.xi_base, bc.xi_out);
    fill(re, {0.0, 0.0}, bc.eta_in, bc.eta_base, bc.eta_out);

    // Validate nesting of the full ladders.
    std::vector<Contour> fx, fe;
    for (int k = 0; k < count; ++k) fx.push_back({{-1.0, 0.0}, rx[k], 32, true});
    for (int k = 0; k < count; ++k) fe.push_back({{0.0, 0.0}, re[k], 32, true});
    check_nesting(fx, fe);
    return bc;
}

} // namespace lppcond
