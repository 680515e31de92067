#pragma once

// Cauchy-determinant kernels: the closed product formula for
// det[1/(r_i - s_j)], the linear statistic S, the multi-group kernel Pi_n,
// and the list-indexed kernel Pi^sigma_tau.

#include <array>
#include <complex>
#include <vector>

#include "lppcond/errors.hpp"
#include "lppcond/lists.hpp"

namespace lppcond {

using cplx = std::complex<double>;

// det[1/(r_i - s_j)] via the product formula (never a generic determinant).
cplx cauchy_det(const cplx* r, const cplx* s, int n);
inline cplx cauchy_det(const std::vector<cplx>& r, const std::vector<cplx>& s) {
    if (r.size() != s.size()) throw ShapeError("cauchy_det: size mismatch");
    return cauchy_det(r.data(), s.data(), static_cast<int>(r.size()));
}

// S(r|s) = sum_i (r_i - s_i).
cplx sum_diff(const cplx* r, const cplx* s, int n);

// Kernel for the bracketed multi-group integrals. Flat variable layout:
// xi groups 1..m contiguous, then eta groups 1..m contiguous.
class PiN {
public:
    explicit PiN(std::vector<int> n);
    cplx operator()(const cplx* z) const;
    int dim() const { return 2 * total_; }

private:
    std::vector<int> n_;
    std::vector<int> off_; // offsets of xi groups; eta group i at total_+off_[i]
    int m_ = 0, total_ = 0;
};

// Kernel Pi^sigma_tau: four Cauchy factors and one linear statistic, acting
// on the flat layout [xi in list order, eta in list order]. Depends only on
// the types of sigma and tau.
class PiSigmaTau {
public:
    PiSigmaTau(const IndexList& sigma, const IndexList& tau);
    cplx operator()(const cplx* z) const;
    int dim() const { return dim_; }

private:
    struct Factor {
        std::vector<int> r, s;
    };
    std::array<Factor, 4> K_;
    Factor S_;
    int dim_ = 0;
    mutable std::vector<cplx> buf_r_, buf_s_;
};

} // namespace lppcond
