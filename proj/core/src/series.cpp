#include "lppcond/series.hpp"

#include <algorithm>
#include <cmath>

namespace lppcond {

namespace {

// All multiplicity vectors n in N^m (entries >= 1) with |n| <= n_max,
// ordered by shell |n|.
std::vector<std::vector<int>> multiplicity_vectors(int m, int n_max) {
    std::vector<std::vector<int>> out;
    std::vector<int> n(m, 1);
    while (true) {
        int total = 0;
        for (int v : n) total += v;
        if (total <= n_max) out.push_back(n);
        int k = 0;
        for (; k < m; ++k) {
            if (++n[k] <= n_max - m + 1) break;
            n[k] = 1;
        }
        if (k == m) break;
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        int sx = 0, sy = 0;
        for (int v : x) sx += v;
        for (int v : y) sy += v;
        if (sx != sy) return sx < sy;
        return x < y;
    });
    return out;
}

double inv_sq_factorial(const std::vector<int>& n) {
    double f = 1.0;
    for (int v : n)
        for (int i = 2; i <= v; ++i) f /= static_cast<double>(i) * i;
    return f;
}

// Exact threshold-integrated one-point term: the same contour integral as
// Q^(n) at m = 1 with the kernel divided by -(sum xi - sum eta), which is
// the node-by-node closed form of int_T^infty e^{T' S} dT' (Re S < 0 on the
// nested circles).
IntegralResult q_n_tail_one_point(const ObservationPlan& plan, int n,
                                  const QuadSettings& qs) {
    const BracketCircles bc = plan_bracket_circles(plan, {n}, qs.radii_mode);
    double dM, dN, dT;
    plan.group_delta(1, dM, dN, dT);
    std::vector<VarSpec> vars;
    for (int k = 0; k < n; ++k) vars.push_back({bc.xi_base, dM, dN, dT, 1.0});
    for (int k = 0; k < n; ++k) vars.push_back({bc.eta_base, dM, dN, dT, -1.0});
    PiN pin({n});
    auto kernel = [&pin, n](const cplx* z) {
        cplx s{0.0, 0.0};
        for (int k = 0; k < n; ++k) s += z[k] - z[n + k];
        return pin(z) / (-s);
    };
    IntegralResult r = integrate_nested(vars, kernel, plan.log_Z, qs);
    if (n % 2 != 0) {
        r.mantissa = -r.mantissa; // sign (-1)^{|n|+m-1} at m = 1
    }
    return r;
}

struct TermSpec {
    double coeff;
    const char* sigma;
    const char* tau;
};

const std::vector<TermSpec>& identity_rhs(const std::string& id) {
    static const std::vector<TermSpec> a = {
        {1, "231", "123"}, {1, "3(12)", "123"}, {1, "(123)", "123"}};
    static const std::vector<TermSpec> b = {
        {1, "321", "123"}, {1, "(23)1", "123"}, {1, "3(12)", "123"}, {1, "(123)", "123"}};
    static const std::vector<TermSpec> c = {
        {1, "312", "123"}, {1, "(23)1", "123"}, {1, "(123)", "123"}};
    static const std::vector<TermSpec> d = {
        {1, "312", "213"},   {1, "(23)1", "213"},   {1, "(123)", "213"},
        {-1, "312", "(12)3"}, {-1, "(23)1", "(12)3"}, {1, "(123)", "(12)3"}};
    static const std::vector<TermSpec> q121 = {
        {2, "3122", "2231"},    {2, "3122", "2(12)3"},  {-2, "(23)12", "2231"},
        {-2, "(123)2", "2231"}, {-2, "3122", "23(12)"}, {4, "(23)12", "23(12)"},
        {-4, "(123)2", "23(12)"}, {-2, "3122", "2(23)1"}, {-4, "(23)12", "2(23)1"},
        {-4, "(123)2", "2(23)1"}, {-2, "3122", "(23)(12)"}, {-4, "(23)12", "(23)(12)"},
        {4, "(123)2", "(23)(12)"}};
    if (id == "QQ111-a") return a;
    if (id == "QQ111-b") return b;
    if (id == "QQ111-c") return c;
    if (id == "QQ111-d") return d;
    if (id == "QQ121") return q121;
    throw ConfigError("unknown identity id: " + id);
}

const std::vector<TermSpec>& identity_lhs(const std::string& id) {
    static const std::vector<TermSpec> q111 = {{1, "123", "123"}};
    static const std::vector<TermSpec> q121 = {{1, "3122", "1223"}, {1, "1223", "3122"}};
    if (id == "QQ121") return q121;
    identity_rhs(id); // validates the id
    return q111;
}

IdentityTerm eval_term(const TermSpec& ts, const ObservationPlan& plan,
                       const QuadSettings& qs) {
    const IndexList sigma = IndexList::parse(ts.sigma);
    const IndexList tau = IndexList::parse(ts.tau);
    const IntegralResult r = eval_I(sigma, tau, plan, qs);
    IdentityTerm t;
    t.label = std::string("I^") + ts.sigma + "_" + ts.tau;
    t.coeff = ts.coeff;
    t.value = r.value();
    t.conv_estimate = r.conv_estimate * std::exp(r.log_scale);
    return t;
}

RegionTag plan_region(const ObservationPlan& plan) {
    if (!plan.scaled || !plan.params || !plan.query)
        throw HypothesisError("a scaled three-point plan is required");
    const RegionLabel lbl = classify_region(*plan.params, *plan.query);
    if (lbl.tag == RegionTag::Boundary)
        throw MethodError("point pair lies exactly on a region boundary");
    return lbl.tag;
}

} // namespace

SeriesResult eval_Q(const ObservationPlan& plan, const QuadSettings& qs) {
    validate_plan(plan);
    SeriesResult out;
    if (qs.asymptotic_leading && plan.scaled && plan.m == 3) {
        const IntegralResult lead = leading_integral(plan, qs);
        out.n_max = plan.m;
        const double term = -lead.real();
        out.value = term;
        out.conv_estimate = lead.conv_estimate * std::exp(lead.log_scale);
        out.included_terms.emplace_back(std::vector<int>(plan.m, 1), term);
        out.warnings.push_back(
            "AsymptoticLeading: exponentially subleading deformation terms omitted");
        return out;
    }
    out.n_max = qs.n_max > 0 ? qs.n_max : plan.m + 2;
    if (out.n_max < plan.m) throw HypothesisError("eval_Q: n_max must be at least m");

    std::vector<double> shell_sum; // indexed by |n| - m
    shell_sum.resize(out.n_max - plan.m + 1, 0.0);
    for (const auto& n : multiplicity_vectors(plan.m, out.n_max)) {
        const IntegralResult qn = eval_Q_n(plan, n, qs);
        const double term = inv_sq_factorial(n) * qn.real();
        out.value += term;
        out.conv_estimate += inv_sq_factorial(n) * qn.conv_estimate * std::exp(qn.log_scale);
        int total = 0;
        for (int v : n) total += v;
        shell_sum[total - plan.m] += term;
        out.included_terms.emplace_back(n, term);
        if (qn.cancellation) out.warnings.push_back("CancellationWarning: n-term quadrature");
    }

    const int shells = static_cast<int>(shell_sum.size());
    const double last = std::abs(shell_sum[shells - 1]);
    if (shells >= 2 && std::abs(shell_sum[shells - 2]) > 0.0) {
        double r = last / std::abs(shell_sum[shells - 2]);
        r = std::clamp(r, 0.0, 0.9);
        out.tail_estimate = last * r / (1.0 - r);
    } else if (qs.asymptotic_leading) {
        // Deliberate asymptotic truncation: the omitted shells are
        // exponentially small in L and are not folded into the error.
        out.tail_estimate = 0.0;
        out.warnings.push_back(
            "AsymptoticLeading: exponentially subleading shells omitted");
    } else {
        out.tail_estimate = last > 0.0 ? last : 0.0;
    }
    if (out.tail_estimate > 1e-3 * std::abs(out.value))
        out.warnings.push_back("TruncationWarning: shell tail above 1e-3 of the value");
    return out;
}

ConditionalResult conditional_probability(const ObservationPlan& plan,
                                          const QuadSettings& qs) {
    if (plan.m != 2 && plan.m != 3)
        throw HypothesisError("conditional_probability: m must be 2 or 3");
    validate_plan(plan);
    ConditionalResult out;
    out.numerator = eval_Q(plan, qs);
    ObservationPlan den = single_plan(plan.M[plan.m - 1], plan.N[plan.m - 1],
                                      plan.T[plan.m - 1]);
    den.log_Z = plan.log_Z; // shared normalization cancels in the ratio
    QuadSettings den_qs = qs;
    if (qs.asymptotic_leading) den_qs.n_max = 1;
    out.denominator = eval_Q(den, den_qs);
    const double dv = out.denominator.value;
    if (!(std::abs(dv) > out.denominator.total_error()))
        throw DivisionError("conditional_probability: denominator consistent with zero");
    out.probability = out.numerator.value / dv;
    out.error_bar = std::abs(out.probability) *
                        (out.denominator.total_error() / std::abs(dv)) +
                    out.numerator.total_error() / std::abs(dv);
    return out;
}

DensityTail density_and_tail(long long M, long long N, double T, const QuadSettings& qs) {
    ObservationPlan plan = single_plan(M, N, T);
    DensityTail out;
    const SeriesResult dens = eval_Q(plan, qs);
    out.density = dens.value;
    out.density_err = dens.total_error();

    const int n_max = qs.n_max > 0 ? qs.n_max : 3;
    std::vector<double> shell(n_max, 0.0);
    for (int n = 1; n <= n_max; ++n) {
        const IntegralResult t = q_n_tail_one_point(plan, n, qs);
        const double term = inv_sq_factorial({n}) * t.real();
        out.tail += term;
        out.tail_err += inv_sq_factorial({n}) * t.conv_estimate * std::exp(t.log_scale);
        shell[n - 1] = term;
    }
    const double last = std::abs(shell[n_max - 1]);
    if (n_max >= 2 && std::abs(shell[n_max - 2]) > 0.0) {
        double r = std::clamp(last / std::abs(shell[n_max - 2]), 0.0, 0.9);
        out.tail_err += last * r / (1.0 - r);
    } else {
        out.tail_err += last;
    }
    return out;
}

std::vector<std::string> identities_for_region(RegionTag tag) {
    switch (tag) {
        case RegionTag::R1:
        case RegionTag::R2: return {"QQ111-a"};
        case RegionTag::R3:
        case RegionTag::R4: return {"QQ111-b"};
        case RegionTag::R5: return {"QQ111-c"};
        case RegionTag::R6:
        case RegionTag::R7: return {"QQ111-d", "QQ121"};
        default: return {};
    }
}

IntegralResult q111_deformed(const ObservationPlan& plan, const QuadSettings& qs) {
    const RegionTag tag = plan_region(plan);
    const std::string id = identities_for_region(tag).front();
    QuadSettings steep = qs;
    steep.radii_mode = RadiiMode::Steepest;
    cplx sum{0.0, 0.0};
    double conv = 0.0;
    for (const auto& ts : identity_rhs(id)) {
        const IdentityTerm t = eval_term(ts, plan, steep);
        sum += t.coeff * t.value;
        conv += std::abs(t.coeff) * t.conv_estimate;
    }
    IntegralResult out;
    out.mantissa = -sum; // Q^(1,1,1) = -I^123_123
    out.conv_estimate = conv;
    out.method = "deformed-" + id;
    return out;
}

IntegralResult leading_integral(const ObservationPlan& plan, const QuadSettings& qs) {
    const RegionTag tag = plan_region(plan);
    QuadSettings steep = qs;
    steep.radii_mode = RadiiMode::Steepest;
    IntegralResult out;
    if (tag == RegionTag::R6 || tag == RegionTag::R7) {
        // P(B(u1) > r1, B(u2) > r2) = P(B(u2) > r2) - P(B(u1) <= r1, B(u2) > r2):
        // the two leading integrals combine with a relative minus sign.
        const IntegralResult i1 = eval_I(IndexList::parse("(123)"), IndexList::parse("(12)3"),
                                         plan, steep);
        const IntegralResult i2 = eval_I(IndexList::parse("(123)2"),
                                         IndexList::parse("(23)(12)"), plan, steep);
        out.mantissa = i1.value() - i2.value();
        out.conv_estimate = i1.conv_estimate * std::exp(i1.log_scale) +
                            i2.conv_estimate * std::exp(i2.log_scale);
        out.method = "leading-r6r7";
    } else {
        const IntegralResult i1 = eval_I(IndexList::parse("(123)"), IndexList::parse("123"),
                                         plan, steep);
        out.mantissa = i1.value();
        out.conv_estimate = i1.conv_estimate * std::exp(i1.log_scale);
        out.method = "leading-r1r5";
    }
    return out;
}

IdentityReport verify_identity(const std::string& identity_id, const ModelParams& p,
                               const RegionQuery& q, double L, const QuadSettings& qs,
                               double r1, double r2) {
    const ObservationPlan plan = scaled_plan(p, q, r1, r2, L);
    IdentityReport rep;
    rep.id = identity_id;
    double conv = 0.0;
    for (const auto& ts : identity_lhs(identity_id)) {
        IdentityTerm t = eval_term(ts, plan, qs);
        rep.lhs += t.coeff * t.value;
        conv += std::abs(t.coeff) * t.conv_estimate;
        t.label = "LHS " + t.label;
        rep.terms.push_back(std::move(t));
    }
    for (const auto& ts : identity_rhs(identity_id)) {
        IdentityTerm t = eval_term(ts, plan, qs);
        rep.rhs += t.coeff * t.value;
        conv += std::abs(t.coeff) * t.conv_estimate;
        t.label = "RHS " + t.label;
        rep.terms.push_back(std::move(t));
    }
    const double scale = std::max(std::abs(rep.lhs), std::abs(rep.rhs));
    rep.residual = scale > 0.0 ? std::abs(rep.lhs - rep.rhs) / scale : 0.0;
    rep.conv_estimate = scale > 0.0 ? conv / scale : conv;
    return rep;
}

} // namespace lppcond
