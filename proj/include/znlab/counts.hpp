#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "znlab/cyclic.hpp"
#include "znlab/gowers.hpp"
#include "znlab/zmod.hpp"

namespace znlab {

// A polynomial pattern (P_1, ..., P_s) with level t: the counting operator
// averages prod_{|omega| <= t} f_omega(x + omega.P(y)). Polynomials must be
// pairwise distinct and linearly independent over Q.
struct ProgressionFamily {
    std::vector<IntPolynomial> polys;
    int level;
    Modulus mod;

    ProgressionFamily(std::vector<IntPolynomial> p, int t, Modulus m);
    int s() const { return static_cast<int>(polys.size()); }
};

struct GapReport {
    std::uint64_t n;
    cplx lambda_value;
    cplx lambda1_value;
    double seconds_lambda;
    double seconds_lambda1;

    double gap() const;  // recomputed from the two counts
};

// Lambda(f,g,k,p) = E_{x,y} f(x) g(x+P(y)) k(x+Q(y)) p(x+P(y)+Q(y)).
cplx lambda(const CyclicFunction& f, const CyclicFunction& g, const CyclicFunction& k,
            const CyclicFunction& p, const IntPolynomial& P, const IntPolynomial& Q);

// Lambda^1(f,g,k,p) = E_{x,y,z} f(x) g(x+y) k(x+z) p(x+y+z), computed
// spectrally as sum_xi p_hat(xi) f_hat(xi) g_hat(-xi) k_hat(-xi).
cplx lambda1(const CyclicFunction& f, const CyclicFunction& g, const CyclicFunction& k,
             const CyclicFunction& p);

// Lambda^2(f,g,k,p) = E_{x,y} f(x) g(x+P(y)) k(x+Q(y)) p(y).
cplx lambda2(const CyclicFunction& f, const CyclicFunction& g, const CyclicFunction& k,
             const CyclicFunction& p, const IntPolynomial& P, const IntPolynomial& Q);

// Lambda_{s,t}((f_omega)) = E_{x,y} prod_{|omega| <= t} f_omega(x + omega.P(y)).
cplx lambda_st(const ProgressionFamily& family, const CornerFamily& functions);

// Lambda^1_{s,t}((f_omega)) = E_{x,h_1..h_s} prod_{|omega| <= t} f_omega(x + omega.h),
// with omega running over {0,1}^s.
cplx lambda1_st(const ProgressionFamily& family, const CornerFamily& functions);

struct ThreeTermReport {
    cplx value;            // E_{x,y} f(x) g(x+P(y)) k(x+Q(y))
    cplx product_of_means;
    double gap;
};
ThreeTermReport three_term(const CyclicFunction& f, const CyclicFunction& g,
                           const CyclicFunction& k, const IntPolynomial& P,
                           const IntPolynomial& Q);

// D(f,g,k)(x) = E_y f(x-P(y)-Q(y)) g(x-Q(y)) k(x-P(y));
// Lambda(f,g,k,p) = E_x D(f,g,k)(x) p(x).
CyclicFunction dual_fgk(const CyclicFunction& f, const CyclicFunction& g,
                        const CyclicFunction& k, const IntPolynomial& P,
                        const IntPolynomial& Q);

// D(g,k,p)(x) = E_y g(x+P(y)) k(x+Q(y)) p(x+P(y)+Q(y));
// Lambda(f,g,k,p) = E_x f(x) D(g,k,p)(x).
CyclicFunction dual_gkp(const CyclicFunction& g, const CyclicFunction& k,
                        const CyclicFunction& p, const IntPolynomial& P,
                        const IntPolynomial& Q);

// D_h(f,g,k)(x) = E_y Delta_h f(x-P(y)-Q(y)) Delta_h g(x-Q(y)) Delta_h k(x-P(y)).
CyclicFunction dual_h_fgk(const CyclicFunction& f, const CyclicFunction& g,
                          const CyclicFunction& k, const ShiftVector& h,
                          const IntPolynomial& P, const IntPolynomial& Q);

GapReport gap_report(const CyclicFunction& f, const CyclicFunction& g, const CyclicFunction& k,
                     const CyclicFunction& p, const IntPolynomial& P, const IntPolynomial& Q);

}  // namespace znlab
