#include "lppcond/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lppcond {

ModelParams make_params(double a, double b, double ell) {
    if (!(a > 0) || !(b > 0) || !(ell > 0))
        throw DomainError("make_params: a, b, ell must be positive");
    const double lln = unconditional_lln(a, b, 1.0, 1.0);
    if (!(ell > lln))
        throw DomainError("make_params: require ell > (sqrt(a)+sqrt(b))^2 (upper-deviation regime)");

    ModelParams p;
    p.a = a;
    p.b = b;
    p.ell = ell;
    p.D = ell * ell - 2.0 * (a + b) * ell + (a - b) * (a - b);
    // D = (ell - a - b)^2 - 4ab > 0 strictly in the valid regime.
    p.sqrt_D = std::sqrt(p.D);
    p.m_slope = (ell - a - b + p.sqrt_D) / (ell - a - b - p.sqrt_D);
    p.mu = (ell - a + b + p.sqrt_D) / (ell + a - b - p.sqrt_D);
    const double s = (a + b) * ell - (a - b) * (a - b); // > 0 in the valid regime
    p.sigma = std::sqrt(s) * std::pow(p.D, 0.25) / (2.0 * std::sqrt(a * b));
    const double skew = (a - b) * p.sqrt_D / s;
    p.c_plus = std::sqrt(1.0 + skew);
    p.c_minus = std::sqrt(1.0 - skew);
    p.j_rate = rate_function(p);
    return p;
}

double rate_function(const ModelParams& p) {
    const double a = p.a, b = p.b, ell = p.ell, r = p.sqrt_D;
    return r + a * std::log((ell + a - b - r) / (ell + a - b + r)) +
           b * std::log((ell - a + b - r) / (ell - a + b + r));
}

double unconditional_lln(double a, double b, double x, double y) {
    if (!(a > 0) || !(b > 0) || !(x > 0) || !(y > 0))
        throw DomainError("unconditional_lln: all arguments must be positive");
    const double t = std::sqrt(x * a) + std::sqrt(y * b);
    return t * t;
}

OmegaTag omega_classify(const ModelParams& p, double x, double y) {
    if (!(x > 0) || !(y > 0)) throw DomainError("omega_classify: coordinates must be positive");
    const double m = p.m_slope;
    // Omega1: x,y > 1 and 1/m < (y-1)/(x-1) < m.
    if (x > 1.0 && y > 1.0) {
        const double s = (y - 1.0) / (x - 1.0);
        if (s > 1.0 / m && s < m) return OmegaTag::Omega1;
        if (s == 1.0 / m || s == m) return OmegaTag::Boundary;
    }
    if ((x == 1.0 && y >= 1.0) || (y == 1.0 && x >= 1.0)) {
        // Cone tip boundary rays fall in the closure of Omega2 \ Omega1.
        if (x == 1.0 && y == 1.0) return OmegaTag::Boundary;
    }
    const double s = y / x;
    if (s > 1.0 / m && s < m) return OmegaTag::Omega2MinusOmega1;
    if (s == 1.0 / m || s == m) return OmegaTag::Boundary;
    return OmegaTag::Outside;
}

double lln_surface(const ModelParams& p, double x, double y) {
    if (!(x > 0) || !(y > 0)) throw DomainError("lln_surface: coordinates must be positive");
    switch (omega_classify(p, x, y)) {
        case OmegaTag::Omega1:
            return p.ell + unconditional_lln(p.a, p.b, x - 1.0, y - 1.0);
        case OmegaTag::Omega2MinusOmega1:
        case OmegaTag::Boundary: {
            // Piecewise-linear cone value; on the boundary it agrees with the
            // neighboring branch (C^1 matching), so use it there too.
            const double m = p.m_slope;
            const double s = y / x;
            if (!(s > 1.0 / m && s < m)) // on the outer boundary of Omega2
                return unconditional_lln(p.a, p.b, x, y);
            if (x > 1.0 && y > 1.0) {
                const double sr = (y - 1.0) / (x - 1.0);
                if (sr >= 1.0 / m && sr <= m) // Omega1 boundary
                    return p.ell + unconditional_lln(p.a, p.b, x - 1.0, y - 1.0);
            }
            return 0.5 * ((p.ell + p.a - p.b) * x + (p.ell - p.a + p.b) * y -
                          std::abs(x - y) * p.sqrt_D);
        }
        case OmegaTag::Outside:
        default:
            return unconditional_lln(p.a, p.b, x, y);
    }
}

double h_linear(const ModelParams& p, double x, double y) {
    return 0.5 * ((p.ell + p.a - p.b - p.sqrt_D) * x + (p.ell - p.a + p.b + p.sqrt_D) * y);
}

CriticalPointResult critical_points(double alpha1, double alpha2, double alpha3) {
    if (alpha1 == 0.0 || alpha2 == 0.0 || alpha3 == 0.0)
        throw DomainError("critical_points: alpha coefficients must be nonzero");
    const double q = alpha3 * alpha3 - 2.0 * (alpha1 + alpha2) * alpha3 +
                     (alpha1 - alpha2) * (alpha1 - alpha2);
    if (q < 0.0)
        throw DomainError("critical_points: negative discriminant (complex critical points)");
    const double rq = std::sqrt(q);
    CriticalPointResult r;
    r.discriminant_q = q;
    double za = (-alpha3 + alpha1 - alpha2 + rq) / (2.0 * alpha3);
    double zb = (-alpha3 + alpha1 - alpha2 - rq) / (2.0 * alpha3);
    r.z_minus = std::min(za, zb);
    r.z_plus = std::max(za, zb);
    // G''(z) = alpha1/(z+1)^2 - alpha2/z^2, evaluated directly for robustness
    // against the sign bookkeeping of the closed form.
    auto g2 = [&](double z) {
        return alpha1 / ((z + 1.0) * (z + 1.0)) - alpha2 / (z * z);
    };
    r.g2_minus = g2(r.z_minus);
    r.g2_plus = g2(r.z_plus);
    return r;
}

void validate_query(const ModelParams& p, const RegionQuery& q) {
    auto chk = [&](double x, double y) {
        if (!(x > 0 && x < 1 && y > 0 && y < 1))
            throw DomainError("RegionQuery: coordinates must lie in (0,1)");
        const double s = y / x;
        if (!(s > 1.0 / p.m_slope && s < 1.0))
            throw DomainError("RegionQuery: require 1/m < y/x < 1 for each point");
    };
    chk(q.x1, q.y1);
    chk(q.x2, q.y2);
    if (q.x1 == q.x2 && q.y1 == q.y2)
        throw DomainError("RegionQuery: the two points must be distinct");
}

RegionLabel classify_region(const ModelParams& p, const RegionQuery& q0) {
    validate_query(p, q0);
    RegionQuery q = q0;
    RegionLabel lab;
    // Orient the pair so that (x2-x1) + mu (y2-y1) > 0; otherwise swap labels.
    const double orient = (q.x2 - q.x1) + p.mu * (q.y2 - q.y1);
    if (orient == 0.0) {
        lab.tag = RegionTag::Boundary;
        lab.boundary_index = 0; // slope exactly -1/mu
        return lab;
    }
    if (orient < 0.0) {
        std::swap(q.x1, q.x2);
        std::swap(q.y1, q.y2);
        lab.swapped = true;
    }
    const double dx = q.x2 - q.x1, dy = q.y2 - q.y1;
    // Thresholds, in increasing order:
    //   -1/mu < 0 < 1/m < y1/x1 < 1 < (1-y1)/(1-x1)
    const double th[5] = {-1.0 / p.mu, 0.0, 1.0 / p.m_slope, q.y1 / q.x1, 1.0};
    const double th_top = (1.0 - q.y1) / (1.0 - q.x1);
    if (dx == 0.0) {
        // Vertical segment: slope +inf (dy > 0 after orientation) -> R2.
        lab.tag = RegionTag::R2;
        return lab;
    }
    const double s = dy / dx;
    if (dx < 0.0) {
        // After orientation dx<0 forces dy>0 and slope < -1/mu: region R1.
        if (s == th[0]) { lab.tag = RegionTag::Boundary; lab.boundary_index = 0; return lab; }
        lab.tag = RegionTag::R1;
        return lab;
    }
    for (int k = 0; k < 5; ++k) {
        if (s == th[k]) {
            lab.tag = RegionTag::Boundary;
            lab.boundary_index = k;
            return lab;
        }
    }
    if (s == th_top) {
        lab.tag = RegionTag::Boundary;
        lab.boundary_index = 5;
        return lab;
    }
    if (s < th[0]) lab.tag = RegionTag::R1;        // unreachable with dx>0, kept for clarity
    else if (s < th[1]) lab.tag = RegionTag::R7;
    else if (s < th[2]) lab.tag = RegionTag::R6;
    else if (s < th[3]) lab.tag = RegionTag::R5;
    else if (s < th[4]) lab.tag = RegionTag::R4;
    else if (s < th_top) lab.tag = RegionTag::R3;
    else lab.tag = RegionTag::R2;
    return lab;
}

const char* sym_name(Sym s) {
    switch (s) {
        case Sym::S1: return "1";
        case Sym::S2: return "2";
        case Sym::S3: return "3";
        case Sym::S12: return "12";
        case Sym::S23: return "23";
        case Sym::S123: return "123";
    }
    return "?";
}

std::array<double, 3> sym_alphas(const ModelParams& p, const RegionQuery& q, Sym s) {
    const double h1 = h_linear(p, q.x1, q.y1);
    const double h2 = h_linear(p, q.x2, q.y2);
    switch (s) {
        case Sym::S1: return {p.a * q.x1, p.b * q.y1, h1};
        case Sym::S2: return {p.a * (q.x2 - q.x1), p.b * (q.y2 - q.y1), h2 - h1};
        case Sym::S3: return {p.a * (1.0 - q.x2), p.b * (1.0 - q.y2), p.ell - h2};
        case Sym::S12: return {p.a * q.x2, p.b * q.y2, h2};
        case Sym::S23: return {p.a * (1.0 - q.x1), p.b * (1.0 - q.y1), p.ell - h1};
        case Sym::S123: return {p.a, p.b, p.ell};
    }
    throw DomainError("sym_alphas: bad symbol");
}

GStarFamily g_star_family(const ModelParams& p, const RegionQuery& q) {
    // Orient the pair the same way as classify_region so the exponent for
    // symbol 2 has a positive linear coefficient.
    RegionQuery qq = q;
    if ((q.x2 - q.x1) + p.mu * (q.y2 - q.y1) < 0.0) {
        std::swap(qq.x1, qq.x2);
        std::swap(qq.y1, qq.y2);
    }
    GStarFamily fam;
    for (int i = 0; i < kNumSyms; ++i) {
        const auto al = sym_alphas(p, qq, static_cast<Sym>(i));
        fam.by_sym[i] = critical_points(al[0], al[1], al[2]);
    }
    fam.zc = -(p.ell - p.a + p.b - p.sqrt_D) / (2.0 * p.ell);
    fam.zc_minus = -(p.ell - p.a + p.b + p.sqrt_D) / (2.0 * p.ell);
    return fam;
}

std::pair<double, double> variational_tc(const ModelParams& p, double x, double y) {
    if (!(x > 0) || !(y > 0)) throw DomainError("variational_tc: coordinates must be positive");
    const double hi = std::min({x, y, 1.0});
    auto H = [&](double t) {
        const double u = std::sqrt(std::max(0.0, (x - t) * p.a)) +
                         std::sqrt(std::max(0.0, (y - t) * p.b));
        return t * p.ell + u * u;
    };
    // Golden-section search for the maximizer on [0, hi].
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, up = hi;
    double c = up - gr * (up - lo);
    double d = lo + gr * (up - lo);
    double fc = H(c), fd = H(d);
    while (up - lo > 1e-10) {
        if (fc > fd) {
            up = d;
            d = c;
            fd = fc;
            c = up - gr * (up - lo);
            fc = H(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (up - lo);
            fd = H(d);
        }
    }
    // Also compare against the endpoints (the maximizer can sit at 0 or hi).
    double tc = 0.5 * (lo + up), val = H(tc);
    if (H(0.0) >= val) { tc = 0.0; val = H(0.0); }
    if (H(hi) >= val) { tc = hi; val = H(hi); }
    return {tc, val};
}

double slope_functional(const ModelParams& p, double u) {
    if (!(u > 0)) throw DomainError("slope_functional: u must be positive");
    const double a = p.a, b = p.b, ell = p.ell;
    const double su = std::sqrt(u);
    return std::sqrt(a * b) / (ell * p.sqrt_D) *
           ((ell + a - b) / su - (ell - a + b) * su -
            (a - b) * (ell - a - b) / std::sqrt(a * b));
}

} // namespace lppcond
