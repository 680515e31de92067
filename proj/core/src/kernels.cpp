#include "lppcond/kernels.hpp"

#include <numeric>

namespace lppcond {

cplx cauchy_det(const cplx* r, const cplx* s, int n) {
    if (n == 0) return {1.0, 0.0};
    cplx num{1.0, 0.0}, den{1.0, 0.0};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) num *= (r[i] - r[j]) * (s[j] - s[i]);
        for (int j = 0; j < n; ++j) den *= r[i] - s[j];
    }
    if (den == cplx(0.0, 0.0)) throw PoleError("cauchy_det: coincident r_i = s_j");
    return num / den;
}

cplx sum_diff(const cplx* r, const cplx* s, int n) {
    cplx acc{0.0, 0.0};
    for (int i = 0; i < n; ++i) acc += r[i] - s[i];
    return acc;
}

PiN::PiN(std::vector<int> n) : n_(std::move(n)) {
    m_ = static_cast<int>(n_.size());
    if (m_ < 1) throw ShapeError("PiN: empty multiplicity vector");
    off_.resize(m_);
    int o = 0;
    for (int i = 0; i < m_; ++i) {
        if (n_[i] < 0) throw ShapeError("PiN: negative multiplicity");
        off_[i] = o;
        o += n_[i];
    }
    total_ = o;
}

cplx PiN::operator()(const cplx* z) const {
    const cplx* xi = z;
    const cplx* eta = z + total_;
    // Working buffers sized for the largest middle factor.
    cplx r[16], s[16];
    // K(eta^1 | xi^1)
    cplx acc = cauchy_det(eta + off_[0], xi + off_[0], n_[0]);
    // Middle factors K(xi^i, eta^{i+1} | eta^i, xi^{i+1}).
    for (int i = 0; i + 1 < m_; ++i) {
        const int a = n_[i], b = n_[i + 1];
        for (int k = 0; k < a; ++k) {
            r[k] = xi[off_[i] + k];
            s[k] = eta[off_[i] + k];
        }
        for (int k = 0; k < b; ++k) {
            r[a + k] = eta[off_[i + 1] + k];
            s[a + k] = xi[off_[i + 1] + k];
        }
        acc *= cauchy_det(r, s, a + b);
    }
    // Last group: K(xi^m | eta^m) S(xi^m | eta^m).
    const int last = m_ - 1;
    acc *= cauchy_det(xi + off_[last], eta + off_[last], n_[last]);
    acc *= sum_diff(xi + off_[last], eta + off_[last], n_[last]);
    return acc;
}

PiSigmaTau::PiSigmaTau(const IndexList& sigma, const IndexList& tau) {
    if (sigma.n() != tau.n())
        throw ShapeError("PiSigmaTau: sigma and tau have different multiplicities");
    dim_ = sigma.size() + tau.size();

    // Flat positions of each symbol's variables.
    std::array<std::vector<int>, kNumSyms> xi_pos, eta_pos;
    for (int k = 0; k < sigma.size(); ++k)
        xi_pos[static_cast<int>(sigma.entries[k])].push_back(k);
    for (int k = 0; k < tau.size(); ++k)
        eta_pos[static_cast<int>(tau.entries[k])].push_back(sigma.size() + k);

    auto X = [&](Sym s) -> const std::vector<int>& { return xi_pos[static_cast<int>(s)]; };
    auto E = [&](Sym s) -> const std::vector<int>& { return eta_pos[static_cast<int>(s)]; };
    auto cat = [](std::initializer_list<const std::vector<int>*> parts) {
        std::vector<int> out;
        for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
        return out;
    };

    // The four Cauchy factors.
    K_[0].r = cat({&E(Sym::S123), &E(Sym::S12), &E(Sym::S1)});
    K_[0].s = cat({&X(Sym::S123), &X(Sym::S12), &X(Sym::S1)});
    K_[1].r = cat({&X(Sym::S1), &E(Sym::S23), &E(Sym::S2)});
    K_[1].s = cat({&E(Sym::S1), &X(Sym::S23), &X(Sym::S2)});
    K_[2].r = cat({&X(Sym::S12), &X(Sym::S2), &E(Sym::S3)});
    K_[2].s = cat({&E(Sym::S12), &E(Sym::S2), &X(Sym::S3)});
    K_[3].r = cat({&X(Sym::S123), &X(Sym::S23), &X(Sym::S3)});
    K_[3].s = cat({&E(Sym::S123), &E(Sym::S23), &E(Sym::S3)});
    S_.r = K_[3].r;
    S_.s = K_[3].s;

    std::size_t mx = 0;
    for (const auto& f : K_) {
        if (f.r.size() != f.s.size())
            throw ShapeError("PiSigmaTau: mismatched Cauchy factor block sizes");
        mx = std::max(mx, f.r.size());
    }
    buf_r_.resize(mx);
    buf_s_.resize(mx);
}

cplx PiSigmaTau::operator()(const cplx* z) const {
    cplx acc{1.0, 0.0};
    for (const auto& f : K_) {
        const int n = static_cast<int>(f.r.size());
        for (int k = 0; k < n; ++k) {
            buf_r_[k] = z[f.r[k]];
            buf_s_[k] = z[f.s[k]];
        }
        acc *= cauchy_det(buf_r_.data(), buf_s_.data(), n);
    }
    cplx s{0.0, 0.0};
    for (std::size_t k = 0; k < S_.r.size(); ++k) s += z[S_.r[k]] - z[S_.s[k]];
    return acc * s;
}

} // namespace lppcond
