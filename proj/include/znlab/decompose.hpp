#pragma once

#include <optional>
#include <vector>

#include "znlab/cyclic.hpp"
#include "znlab/gowers.hpp"

namespace znlab {

// Which norm the structured/uniform split certifies against:
//  - fourier_linf: ||.|| = max_xi |f_hat(xi)|, dual ||.||* = ||f_hat||_{l^1}
//  - gowers_us:    ||.|| = U^s, dual norm certified through atom weights
struct NormKind {
    enum Kind { fourier_linf, gowers_us } kind;
    int s = 0;  // Gowers order, used by gowers_us only

    static NormKind fourier() { return {fourier_linf, 0}; }
    static NormKind gowers(int s) { return {gowers_us, s}; }
    std::string name() const;
};

struct Thresholds {
    double eps1, eps2, eps3, eps4;

    // eps2^{-1} eps3 + eps4^{-1} eps1 <= 1/2
    bool admissible() const;
    void require_admissible() const;
};

struct DualAtom {
    double weight;
    CornerFamily constituents;  // one-bounded, starred corners of {0,1}^s
};

struct DualAtomCombination {
    std::vector<DualAtom> atoms;
    int s;
    double eta;

    double weight_total() const;
    // sum_j |a_j| <= eta (eps1 eta)^{-2^s}
    static double weight_budget(double eps1, double eta, int s);
};

struct DecompositionCertificate {
    CyclicFunction f_a, f_b, f_c;
    Thresholds thresholds;
    NormKind norm_kind;
    // achieved norms, in bound order:
    double dual_norm_fa;   // <= eps1^{-1}
    double l1_fb;          // <= eps2
    double linf_fc;        // <= eps3^{-1}
    double small_norm_fc;  // <= eps4
    // atoms backing f_a when norm_kind = gowers_us (f_a = sum a_j D_j)
    std::optional<DualAtomCombination> atoms;
    // residual ||.||-norm after each greedy step (gowers_us kinds)
    std::vector<double> residual_norms;
    // The dual-function split certifies against eta-relaxed bounds:
    // sum |a_j| <= eta (eps1 eta)^{-2^s} instead of eps1^{-1}, and
    // ||f_2||_{L^1} <= eps2 + eta.
    double dual_bound_override = -1.0;
    double l1_bound_extra = 0.0;

    double dual_bound() const {
        return dual_bound_override >= 0 ? dual_bound_override : 1.0 / thresholds.eps1;
    }
    double l1_bound() const { return thresholds.eps2 + l1_bound_extra; }

    // Recomputes every bound from the raw pieces; throws NumericalFault if
    // any certified field does not re-verify.
    void verify(const CyclicFunction& f) const;
};

// Constructive instance of the three-piece split f = f_a + f_b + f_c with
//   ||f_a||* <= eps1^{-1}, ||f_b||_{L^1} <= eps2,
//   ||f_c||_{L^inf} <= eps3^{-1}, ||f_c|| <= eps4.
// Requires ||f||_{L^2} <= 1 and admissible thresholds. Throws a diagnostic
// error if no certificate is reached within the iteration cap; never
// returns an unverified certificate.
DecompositionCertificate regularity_decompose(const CyclicFunction& f, NormKind kind,
                                              const Thresholds& eps);

struct DualDecomposition {
    DualAtomCombination combination;  // f1 = sum_j a_j dual_us(constituents_j)
    CyclicFunction f1, f2, f3;
    DecompositionCertificate certificate;
};

// Dual-function decomposition f = f1 + f2 + f3 with
//   f1 a weight-bounded combination of dual U^s functions,
//   ||f2||_{L^1} <= eps2 + eta, ||f3||_{L^inf} <= eps3^{-1}, ||f3||_{U^s} <= eps4.
DualDecomposition dual_regularity_decompose(const CyclicFunction& f, int s,
                                            const Thresholds& eps, double eta);

}  // namespace znlab
