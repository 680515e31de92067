#pragma once

// Log-scale complex arithmetic. Values are represented as (log-magnitude,
// phase) so that factors like exp(c L) with c L of order hundreds never
// overflow. Sums use a running pivot (largest magnitude seen) and report
// catastrophic cancellation.

#include <cmath>
#include <complex>
#include <limits>

namespace lppcond {

struct LogComplex {
    double log_mag = -std::numeric_limits<double>::infinity(); // -inf encodes zero
    double phase = 0.0;

    static LogComplex zero() { return {}; }

    static LogComplex from(std::complex<double> v) {
        LogComplex r;
        const double m = std::abs(v);
        if (m == 0.0) return r;
        r.log_mag = std::log(m);
        r.phase = std::arg(v);
        return r;
    }

    // exp(e) interpreted with Re = log-magnitude, Im = phase.
    static LogComplex from_log(std::complex<double> e) {
        LogComplex r;
        r.log_mag = e.real();
        r.phase = wrap(e.imag());
        return r;
    }

    bool is_zero() const { return log_mag == -std::numeric_limits<double>::infinity(); }

    std::complex<double> to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        const double m = std::exp(log_mag);
        return {m * std::cos(phase), m * std::sin(phase)};
    }

    // Value divided by exp(shift) (for extracting hugely scaled results).
    std::complex<double> to_complex_shifted(double shift) const {
        if (is_zero()) return {0.0, 0.0};
        const double m = std::exp(log_mag - shift);
        return {m * std::cos(phase), m * std::sin(phase)};
    }

    friend LogComplex operator*(const LogComplex& x, const LogComplex& y) {
        if (x.is_zero() || y.is_zero()) return zero();
        LogComplex r;
        r.log_mag = x.log_mag + y.log_mag;
        r.phase = wrap(x.phase + y.phase);
        return r;
    }
    friend LogComplex operator/(const LogComplex& x, const LogComplex& y) {
        LogComplex r;
        if (x.is_zero()) return zero();
        r.log_mag = x.log_mag - y.log_mag;
        r.phase = wrap(x.phase - y.phase);
        return r;
    }

    static double wrap(double ph) {
        // Wrap into (-pi, pi].
        constexpr double pi = 3.14159265358979323846264338327950288;
        constexpr double two_pi = 2.0 * pi;
        ph = std::fmod(ph, two_pi);
        if (ph <= -pi) ph += two_pi;
        else if (ph > pi) ph -= two_pi;
        return ph;
    }
};

// Sum accumulator with pivot rescaling and cancellation diagnostics.
class LogAccumulator {
public:
    void add(const LogComplex& t) { add(t.log_mag, t.to_complex_shifted(t.log_mag)); }

    // term = exp(log_scale) * unit, with |unit| of order one.
    void add(double log_scale, std::complex<double> unit) {
        if (unit == std::complex<double>(0.0, 0.0) ||
            log_scale == -std::numeric_limits<double>::infinity())
            return;
        if (empty_) {
            pivot_ = log_scale;
            empty_ = false;
        } else if (log_scale > pivot_ + 40.0) {
            // Rescale to keep the accumulator near order one.
            const double f = std::exp(pivot_ - log_scale);
            acc_ *= f;
            abs_acc_ *= f;
            pivot_ = log_scale;
        }
        const double f = std::exp(log_scale - pivot_);
        acc_ += f * unit;
        abs_acc_ += f * std::abs(unit);
        if (log_scale > max_term_) max_term_ = log_scale;
    }

    bool empty() const { return empty_; }
    LogComplex result() const {
        if (empty_) return LogComplex::zero();
        LogComplex r = LogComplex::from(acc_);
        if (!r.is_zero()) r.log_mag += pivot_;
        return r;
    }
    // True if the sum lost more than ~12 digits to cancellation.
    bool cancellation_warning(double threshold = 1e-12) const {
        if (empty_) return false;
        return std::abs(acc_) < threshold * abs_acc_;
    }
    double max_term_log() const { return max_term_; }

private:
    std::complex<double> acc_{0.0, 0.0};
    double abs_acc_ = 0.0;
    double pivot_ = 0.0;
    double max_term_ = -std::numeric_limits<double>::infinity();
    bool empty_ = true;
};

} // namespace lppcond
