// numeric.hpp
// Small numerical helpers: compensated summation, iterated logarithms and
// the handful of constants used across modules.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace zrl {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

// Neumaier's variant of Kahan summation. Adding terms in a fixed order
// gives bit-stable results independent of magnitude ordering.
template <class T>
class CompensatedSum {
public:
    CompensatedSum() = default;
    CompensatedSum(T sum, T compensation) : sum_(sum), comp_(compensation) {}

    void add(T x) {
        const T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    CompensatedSum& operator+=(T x) {
        add(x);
        return *this;
    }

    T value() const { return sum_ + comp_; }
    T raw_sum() const { return sum_; }
    T compensation() const { return comp_; }

private:
    T sum_{};
    T comp_{};
};

// Complex accumulator: independent compensation of real and imaginary parts.
template <class T>
class CompensatedComplexSum {
public:
    void add(std::complex<T> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    CompensatedComplexSum& operator+=(std::complex<T> z) {
        add(z);
        return *this;
    }
    std::complex<T> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<T> re_;
    CompensatedSum<T> im_;
};

// log_k x with log_1 = log. Returns NaN when an intermediate log is <= 0.
inline double iterated_log(double x, int k) {
    double v = x;
    for (int i = 0; i < k; ++i) {
        if (!(v > 0.0)) return std::nan("");
        v = std::log(v);
    }
    return v;
}

inline double exp_euler_gamma() { return std::exp(kEulerGamma); }

}  // namespace zrl
