#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "znlab/cyclic.hpp"
#include "znlab/zmod.hpp"

namespace znlab {

struct QuadraticPhase {
    std::uint64_t alpha;
    std::uint64_t beta;
};

// x -> e_N(alpha x^2 + beta x), unit modulus everywhere.
CyclicFunction quad_phase(const QuadraticPhase& q, const Modulus& mod);

// {x} = x - [x] where [x] is the nearest integer rounded half up
// ([1.5] = 2), so {x} lies in [-1/2, 1/2).
double bracket_part(double x);

// Bracket-quadratic phase B(n, m) = sum_i a_i {alpha_i n} {beta_i m}.
struct BracketQuadratic {
    struct Term {
        double a;
        double alpha;
        double beta;
    };
    std::vector<Term> terms;

    double coefficient_mass() const;  // sum |a_i|; |B| <= mass / 4
};

// n -> e(B(n, n)) on representatives 0..N-1, with alpha_i n, beta_i n taken
// as reals in extended precision (the fractional part magnifies rounding
// near half-integers).
CyclicFunction bracket_function(const BracketQuadratic& b, const Modulus& mod);

// Residuals mod N of the two telescoping identities
//   (x+P+Q)^2 = (x+P)^2 + (x+Q)^2 - x^2 + 2 P Q
//   x+P+Q     = (x+P) + (x+Q) - x
// evaluated at (x, y); both are identically zero.
std::pair<std::uint64_t, std::uint64_t> quad_identity_check(const Residue& x, const Residue& y,
                                                            const IntPolynomial& P,
                                                            const IntPolynomial& Q);

// Uniform samples of a function on T^d (d = 1 or 2), m points per axis,
// row-major: value at (j1/m, j2/m) sits at index j1 * m + j2.
struct GridFunction {
    int d;
    std::uint64_t m;
    std::vector<cplx> values;

    GridFunction(int d_, std::uint64_t m_, std::vector<cplx> v);
};

// Fejer smoothing plan: frequencies |k_j| < R weighted by
// m_R(k) = prod_j (1 - |k_j|/R)_+.
struct FejerPlan {
    int d;
    std::uint64_t r;

    double weight(const std::array<long long, 2>& k) const;
};

struct FejerCoefficient {
    cplx a;
    std::array<long long, 2> freq;  // freq[1] = 0 when d = 1
};

struct FejerApprox {
    FejerPlan plan;
    std::vector<FejerCoefficient> coefficients;
    double sup_error_grid;  // measured over the sample grid, <= requested eps

    cplx evaluate(double x1, double x2 = 0.0) const;
};

// Trigonometric approximation of a Lipschitz function from its grid
// samples: R starts at the rule 2 (L+1)^{1/d} / eps^{1/d} and doubles until
// the measured grid sup-error is at most eps. Throws if the grid is too
// coarse for the requested eps.
FejerApprox fejer_approx(const GridFunction& samples, double lipschitz, double eps);

// One (alpha, beta) cell of the exponential-sum scan.
struct FrequencyHit {
    std::uint64_t alpha;
    std::uint64_t beta;
    double correlation;  // |E_y e_N(alpha Q(y) + beta P(y)) K(y)|
};

// Exact scan of |E_y e_N(alpha Q(y) + beta P(y)) K(y)| over the full
// N x N frequency grid; returns the top_k hits in descending correlation,
// ties broken by smallest (alpha, beta).
std::vector<FrequencyHit> major_arc_scan(const CyclicFunction& K, const IntPolynomial& P,
                                         const IntPolynomial& Q, int top_k);

}  // namespace znlab
