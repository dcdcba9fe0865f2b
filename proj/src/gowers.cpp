#include "znlab/gowers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "znlab/parallel.hpp"

namespace znlab {

ShiftVector::ShiftVector(std::vector<std::uint64_t> h) : components(std::move(h)) {
    if (components.size() > static_cast<std::size_t>(kMaxGowersOrder))
        throw std::invalid_argument("ShiftVector: order capped at 6");
}

std::string to_string(GowersPath path) {
    return path == GowersPath::direct ? "direct" : "recursive-fft";
}

CyclicFunction diff_op(const CyclicFunction& f, std::uint64_t h) {
    const std::uint64_t n = f.n();
    h %= n;
    std::vector<cplx> v(n);
    for (std::uint64_t x = 0; x < n; ++x)
        v[x] = std::conj(f.values[add_mod(x, h, n)]) * f.values[x];
    return CyclicFunction(f.mod, std::move(v), f.one_bounded);
}

CyclicFunction diff_multi(const CyclicFunction& f, const ShiftVector& h) {
    CyclicFunction out = f;
    // Delta_{h_1} ... Delta_{h_s} f: the innermost operator acts first.
    for (std::size_t i = h.components.size(); i-- > 0;) out = diff_op(out, h.components[i]);
    return out;
}

namespace {

void check_order(int s) {
    if (s < 1 || s > kMaxGowersOrder)
        throw std::invalid_argument("Gowers order s must lie in [1, 6], got " + std::to_string(s));
}

double root_of_nonneg(double pow_value, int s, const char* what) {
    if (pow_value < -1e-9)
        throw NumericalFault(std::string(what) + ": provably nonnegative average came out " +
                             std::to_string(pow_value));
    if (pow_value <= 0.0) return 0.0;
    return std::pow(pow_value, 1.0 / static_cast<double>(1u << s));
}

// ||f||_{U^2}^4 = sum_xi |f_hat(xi)|^4.
double u2_pow4(const CyclicFunction& f) {
    Spectrum s = dft(f);
    KahanSum acc;
    for (const cplx& c : s.coefficients) {
        double m2 = std::norm(c);
        acc.add(m2 * m2);
    }
    return acc.value();
}

// ||f||_{U^s}^{2^s} by the recursion E_h ||Delta_h f||_{U^{s-1}}^{2^{s-1}}.
double gowers_pow_recursive(const CyclicFunction& f, int s) {
    if (s == 1) {
        cplx m = f.mean();
        return std::norm(m);
    }
    if (s == 2) return u2_pow4(f);
    const std::uint64_t n = f.n();
    std::vector<double> block_part(block_count(n), 0.0);
    parallel_blocks(n, [&](std::size_t lo, std::size_t hi, std::size_t b) {
        KahanSum acc;
        for (std::size_t h = lo; h < hi; ++h)
            acc.add(gowers_pow_recursive(diff_op(f, h), s - 1));
        block_part[b] = acc.value();
    });
    KahanSum total;
    for (double p : block_part) total.add(p);
    return total.value() / static_cast<double>(n);
}

// Direct 2^s-fold sum E_{x, h_1..h_s} Delta_h f(x); prefix differences are
// shared across the nested loops.
cplx gowers_direct_sum(const CyclicFunction& f, int depth) {
    if (depth == 0) {
        KahanSumC acc;
        for (const cplx& v : f.values) acc.add(v);
        return acc.value() / static_cast<double>(f.n());
    }
    KahanSumC acc;
    for (std::uint64_t h = 0; h < f.n(); ++h)
        acc.add(gowers_direct_sum(diff_op(f, h), depth - 1));
    return acc.value() / static_cast<double>(f.n());
}

}  // namespace

GowersReport gowers_norm(const CyclicFunction& f, int s, GowersPath path) {
    check_order(s);
    double pow_value;
    if (path == GowersPath::direct) {
        cplx total = gowers_direct_sum(f, s);
        pow_value = total.real();
    } else {
        pow_value = gowers_pow_recursive(f, s);
    }
    return GowersReport{s, root_of_nonneg(pow_value, s, "gowers_norm"), path, f.n()};
}

double u2_via_spectrum(const CyclicFunction& f) {
    return std::pow(u2_pow4(f), 0.25);
}

namespace {

void require_corners(const CornerFamily& family, int s, bool starred) {
    const Corner total = Corner{1} << s;
    for (Corner w = starred ? 1 : 0; w < total; ++w) {
        auto it = family.find(w);
        if (it == family.end())
            throw std::invalid_argument("corner family is missing omega = " + std::to_string(w));
    }
}

// Multiplies buf by C^{extra_conj + |omega'|} f(x + omega'.h') pointwise.
void fold_corner(std::vector<cplx>& buf, const CyclicFunction& f, Corner wprime,
                 const std::vector<std::uint64_t>& hprime, int extra_conj) {
    const std::uint64_t n = f.n();
    std::uint64_t off = 0;
    for (std::size_t i = 0; i < hprime.size(); ++i)
        if (wprime & (Corner{1} << i)) off = add_mod(off, hprime[i] % n, n);
    const bool take_conj = ((std::popcount(wprime) + extra_conj) & 1) != 0;
    for (std::uint64_t x = 0; x < n; ++x) {
        cplx v = f.values[add_mod(x, off, n)];
        buf[x] *= take_conj ? std::conj(v) : v;
    }
}

void decode_tuple(std::uint64_t flat, std::uint64_t n, std::vector<std::uint64_t>& h) {
    for (std::size_t i = 0; i < h.size(); ++i) {
        h[i] = flat % n;
        flat /= n;
    }
}

double pow_u64(std::uint64_t base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= static_cast<double>(base);
    return r;
}

}  // namespace

cplx gowers_inner(const CornerFamily& family, int s) {
    check_order(s);
    require_corners(family, s, false);
    const CyclicFunction& f0 = family.begin()->second;
    const std::uint64_t n = f0.n();
    for (const auto& [w, f] : family)
        if (f.mod != f0.mod) throw std::invalid_argument("gowers_inner: modulus mismatch");

    // Averaging the last shift variable out splits the box into two
    // (s-1)-dimensional products:
    //   E_{x,h} prod = E_{h'} (E g0) * conj(E g1).
    const int sp = s - 1;
    const std::uint64_t tuples = static_cast<std::uint64_t>(pow_u64(n, sp));
    const Corner half = Corner{1} << sp;

    std::vector<cplx> block_part(block_count(tuples), cplx(0, 0));
    parallel_blocks(tuples, [&](std::size_t lo, std::size_t hi, std::size_t b) {
        std::vector<std::uint64_t> hp(static_cast<std::size_t>(sp));
        std::vector<cplx> g0(n), g1(n);
        KahanSumC acc;
        for (std::size_t t = lo; t < hi; ++t) {
            decode_tuple(t, n, hp);
            std::fill(g0.begin(), g0.end(), cplx(1, 0));
            std::fill(g1.begin(), g1.end(), cplx(1, 0));
            for (Corner w = 0; w < half; ++w) {
                fold_corner(g0, family.at(w), w, hp, 0);
                fold_corner(g1, family.at(w | half), w, hp, 0);
            }
            KahanSumC m0, m1;
            for (std::uint64_t x = 0; x < n; ++x) {
                m0.add(g0[x]);
                m1.add(g1[x]);
            }
            acc.add(m0.value() * std::conj(m1.value()) /
                    static_cast<double>(n) / static_cast<double>(n));
        }
        block_part[b] = acc.value();
    });
    KahanSumC total;
    for (const cplx& p : block_part) total.add(p);
    return total.value() / static_cast<double>(tuples);
}

CyclicFunction dual_us(const CornerFamily& family, int s) {
    check_order(s);
    require_corners(family, s, true);
    const CyclicFunction& f0 = family.begin()->second;
    const std::uint64_t n = f0.n();
    for (const auto& [w, f] : family)
        if (f.mod != f0.mod) throw std::invalid_argument("dual_us: modulus mismatch");

    // D(x) = E_{h'} A(h') B_{h'}(x): averaging out the last shift turns the
    // corners with omega_s = 1 into the x-independent factor A(h').
    const int sp = s - 1;
    const std::uint64_t tuples = static_cast<std::uint64_t>(pow_u64(n, sp));
    const Corner half = Corner{1} << sp;

    const std::size_t nblocks = block_count(tuples);
    std::vector<std::vector<cplx>> block_part(nblocks);
    parallel_blocks(tuples, [&](std::size_t lo, std::size_t hi, std::size_t b) {
        std::vector<std::uint64_t> hp(static_cast<std::size_t>(sp));
        std::vector<cplx> top(n), bottom(n), sum(n, cplx(0, 0));
        for (std::size_t t = lo; t < hi; ++t) {
            decode_tuple(t, n, hp);
            std::fill(top.begin(), top.end(), cplx(1, 0));
            std::fill(bottom.begin(), bottom.end(), cplx(1, 0));
            for (Corner w = 0; w < half; ++w) {
                fold_corner(top, family.at(w | half), w, hp, 0);
                if (w != 0) fold_corner(bottom, family.at(w), w, hp, 1);
            }
            KahanSumC a;
            for (std::uint64_t u = 0; u < n; ++u) a.add(top[u]);
            cplx A = a.value() / static_cast<double>(n);
            for (std::uint64_t x = 0; x < n; ++x) sum[x] += A * bottom[x];
        }
        block_part[b] = std::move(sum);
    });
    std::vector<cplx> out(n, cplx(0, 0));
    std::vector<KahanSumC> acc(n);
    for (std::size_t b = 0; b < nblocks; ++b)
        if (!block_part[b].empty())
            for (std::uint64_t x = 0; x < n; ++x) acc[x].add(block_part[b][x]);
    for (std::uint64_t x = 0; x < n; ++x)
        out[x] = acc[x].value() / static_cast<double>(tuples);
    return CyclicFunction(f0.mod, std::move(out));
}

U3Result u3_small(const CyclicFunction& p) {
    const std::uint64_t n = p.n();
    // correlation(alpha, beta) = |<p, x -> e_N(alpha x^2 + beta x)>|; one
    // transform per alpha covers all beta.
    std::vector<U3Result> per_alpha(n);
    parallel_blocks(n, [&](std::size_t lo, std::size_t hi, std::size_t) {
        for (std::size_t a = lo; a < hi; ++a) {
            std::vector<cplx> q(n);
            for (std::uint64_t x = 0; x < n; ++x) {
                std::uint64_t t = mul_mod(static_cast<std::uint64_t>(a), mul_mod(x, x, n), n);
                q[x] = p.values[x] * std::conj(e_mod(t, n));
            }
            Spectrum spec = dft(CyclicFunction(p.mod, std::move(q)));
            U3Result best{-1.0, 0, 0};
            for (std::uint64_t beta = 0; beta < n; ++beta) {
                double c = std::abs(spec.coefficients[(n - beta) % n]);
                if (c > best.value) best = U3Result{c, static_cast<std::uint64_t>(a), beta};
            }
            per_alpha[a] = best;
        }
    });
    U3Result best{-1.0, 0, 0};
    for (std::uint64_t a = 0; a < n; ++a)
        if (per_alpha[a].value > best.value) best = per_alpha[a];
    return best;
}

}  // namespace znlab
