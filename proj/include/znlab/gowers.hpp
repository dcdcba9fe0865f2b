#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "znlab/cyclic.hpp"

namespace znlab {

// Shift vector h = (h_1, ..., h_s). Order capped at 6 (desk scale).
struct ShiftVector {
    std::vector<std::uint64_t> components;

    ShiftVector() = default;
    explicit ShiftVector(std::vector<std::uint64_t> h);
    int order() const { return static_cast<int>(components.size()); }
};

inline constexpr int kMaxGowersOrder = 6;

// Corners of {0,1}^s are encoded as bitmasks: bit (i-1) carries omega_i,
// so mask & 1 is the coefficient of h_1. |omega| = popcount(mask).
using Corner = std::uint32_t;
using CornerFamily = std::map<Corner, CyclicFunction>;

enum class GowersPath { direct, recursive_fft };

struct GowersReport {
    int s;
    double value;
    GowersPath path;
    std::uint64_t n;
};

std::string to_string(GowersPath path);

// Delta_h f(x) = conj(f(x + h)) * f(x).
CyclicFunction diff_op(const CyclicFunction& f, std::uint64_t h);

// Delta_{h_1} ... Delta_{h_s} f, applied in the listed order (the result
// is order-independent).
CyclicFunction diff_multi(const CyclicFunction& f, const ShiftVector& h);

// ||f||_{U^s} = (E_{x,h} Delta_h f(x))^{1/2^s}. The recursive path uses
// ||f||_{U^s}^{2^s} = E_h ||Delta_h f||_{U^{s-1}}^{2^{s-1}} with the U^2
// base computed spectrally; the direct path runs the full 2^s-fold sum.
// The averaged quantity is provably nonnegative; a real part below -1e-9
// signals a numerical fault and throws.
GowersReport gowers_norm(const CyclicFunction& f, int s,
                         GowersPath path = GowersPath::recursive_fft);

// ||f||_{U^2} through ||f_hat||_{l^4}.
double u2_via_spectrum(const CyclicFunction& f);

// Box inner product E_{x,h} prod_omega C^{|omega|} f_omega(x + omega.h)
// over all 2^s corners.
cplx gowers_inner(const CornerFamily& family, int s);

// Dual U^s function of the starred family (all corners except 0^s):
//   D(x) = E_h prod_{omega != 0} C^{|omega|-1} f_omega(x + omega.h),
// so that inner(f, D) with every f_omega = f equals ||f||_{U^s}^{2^s}.
CyclicFunction dual_us(const CornerFamily& family, int s);

// u^3 norm: sup over quadratic phases of |E_x p(x) e_N(alpha x^2 + beta x)|,
// exact over the full N x N grid; ties broken by smallest (alpha, beta).
struct U3Result {
    double value;
    std::uint64_t alpha;
    std::uint64_t beta;
};
U3Result u3_small(const CyclicFunction& p);

}  // namespace znlab
