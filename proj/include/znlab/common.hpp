#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace znlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Neumaier-compensated accumulator. All ensemble averages in this library
// run through it so that O(N^2) sums stay accurate to ~eps regardless of
// term count, and so that parallel reductions can combine per-block
// partials in a fixed order.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class KahanSumC {
public:
    void add(const cplx& z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_, im_;
};

// Thrown when a provably-nonnegative quantity comes out negative beyond
// tolerance, i.e. the computation itself is broken.
class NumericalFault : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace znlab
