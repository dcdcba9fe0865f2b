#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "znlab/common.hpp"
#include "znlab/zmod.hpp"

namespace znlab {

// e_N(t) = exp(2*pi*i*t/N), served from a table computed once per N so
// repeated calls never drift.
const std::vector<cplx>& unity_table(std::uint64_t n);
cplx e_mod(std::uint64_t t, std::uint64_t n);  // table[t % n]

// A complex-valued function on Z/NZ. Values are indexed by residue.
struct CyclicFunction {
    Modulus mod;
    std::vector<cplx> values;
    bool one_bounded = false;  // asserted by constructors that guarantee it

    CyclicFunction(Modulus m, std::vector<cplx> v, bool bounded = false);

    std::uint64_t n() const { return mod.n(); }
    cplx mean() const;
    double sup_norm() const;
    double l2_norm() const;  // (E_x |f(x)|^2)^{1/2}
    void check_one_bounded() const;  // throws if the flag is asserted but violated
};

// Fourier coefficients under the normalization
//   analysis:   f_hat(xi) = E_x f(x) e_N(+x*xi)
//   synthesis:  f(x)      = sum_xi f_hat(xi) e_N(-xi*x)
struct Spectrum {
    Modulus mod;
    std::vector<cplx> coefficients;

    Spectrum(Modulus m, std::vector<cplx> c);
    std::uint64_t n() const { return mod.n(); }
};

enum class TransformPath { automatic, naive, bluestein };

// Prime N rules out a radix-2 FFT directly; N >= kBluesteinThreshold uses
// Bluestein's chirp-z reduction to a power-of-two convolution, below that
// the naive O(N^2) sum (which doubles as the oracle for the fast path).
inline constexpr std::uint64_t kBluesteinThreshold = 512;

Spectrum dft(const CyclicFunction& f, TransformPath path = TransformPath::automatic);
CyclicFunction idft(const Spectrum& s, TransformPath path = TransformPath::automatic);

// Builds a function from the spec mini-language:
//   const:<c> | char:xi=<k> | quad:alpha=<a>,beta=<b> |
//   indicator:<comma-separated residues> | indicator-file:<path> |
//   random:pm1,seed=<s> | random:unit,seed=<s>
// Deterministic for a given (spec, N, seed).
CyclicFunction make_function(const std::string& spec, const Modulus& mod, std::uint64_t seed);

// Pointwise helpers shared across the analysis modules.
CyclicFunction conj(const CyclicFunction& f);
CyclicFunction pointwise_mul(const CyclicFunction& a, const CyclicFunction& b);
CyclicFunction shift(const CyclicFunction& f, std::uint64_t h);  // x -> f(x + h)

// E_x a(x) * conj(b(x)) — the Hermitian pairing.
cplx inner(const CyclicFunction& a, const CyclicFunction& b);
// E_x a(x) * b(x) — the bilinear pairing used by the counting duals.
cplx inner_plain(const CyclicFunction& a, const CyclicFunction& b);

}  // namespace znlab
