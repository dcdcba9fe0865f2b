#include "znlab/phase.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "znlab/parallel.hpp"

namespace znlab {

CyclicFunction quad_phase(const QuadraticPhase& q, const Modulus& mod) {
    const std::uint64_t n = mod.n();
    const std::uint64_t a = q.alpha % n, b = q.beta % n;
    std::vector<cplx> v(n);
    for (std::uint64_t x = 0; x < n; ++x) {
        std::uint64_t t = add_mod(mul_mod(a, mul_mod(x, x, n), n), mul_mod(b, x, n), n);
        v[x] = e_mod(t, n);
    }
    return CyclicFunction(mod, std::move(v), true);
}

double bracket_part(double x) {
    return x - std::floor(x + 0.5);
}

double BracketQuadratic::coefficient_mass() const {
    double m = 0.0;
    for (const Term& t : terms) m += std::abs(t.a);
    return m;
}

namespace {

long double bracket_part_ld(long double x) {
    return x - std::floor(x + 0.5L);
}

}  // namespace

CyclicFunction bracket_function(const BracketQuadratic& b, const Modulus& mod) {
    const std::uint64_t n = mod.n();
    std::vector<cplx> v(n);
    for (std::uint64_t x = 0; x < n; ++x) {
        long double phase = 0.0L;
        for (const auto& t : b.terms) {
            long double fa = bracket_part_ld(static_cast<long double>(t.alpha) * x);
            long double fb = bracket_part_ld(static_cast<long double>(t.beta) * x);
            phase += static_cast<long double>(t.a) * fa * fb;
        }
        long double angle = 2.0L * static_cast<long double>(kPi) * phase;
        v[x] = cplx(static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle)));
    }
    return CyclicFunction(mod, std::move(v), true);
}

std::pair<std::uint64_t, std::uint64_t> quad_identity_check(const Residue& x, const Residue& y,
                                                            const IntPolynomial& P,
                                                            const IntPolynomial& Q) {
    const std::uint64_t n = x.mod.n();
    const std::uint64_t p = eval_poly(P, y).value;
    const std::uint64_t q = eval_poly(Q, y).value;
    const std::uint64_t xv = x.value;
    const std::uint64_t s3 = add_mod(add_mod(xv, p, n), q, n);   // x+P+Q
    const std::uint64_t s1 = add_mod(xv, p, n);                  // x+P
    const std::uint64_t s2 = add_mod(xv, q, n);                  // x+Q

    std::uint64_t lhs_sq = mul_mod(s3, s3, n);
    std::uint64_t rhs_sq = add_mod(mul_mod(s1, s1, n), mul_mod(s2, s2, n), n);
    rhs_sq = sub_mod(rhs_sq, mul_mod(xv, xv, n), n);
    rhs_sq = add_mod(rhs_sq, mul_mod(2 % n, mul_mod(p, q, n), n), n);
    std::uint64_t r1 = sub_mod(lhs_sq, rhs_sq, n);

    std::uint64_t rhs_lin = sub_mod(add_mod(s1, s2, n), xv, n);
    std::uint64_t r2 = sub_mod(s3, rhs_lin, n);
    return {r1, r2};
}

GridFunction::GridFunction(int d_, std::uint64_t m_, std::vector<cplx> v)
    : d(d_), m(m_), values(std::move(v)) {
    if (d != 1 && d != 2) throw std::invalid_argument("GridFunction: d must be 1 or 2");
    std::uint64_t expect = d == 1 ? m : m * m;
    if (values.size() != expect)
        throw std::invalid_argument("GridFunction: expected " + std::to_string(expect) +
                                    " samples, got " + std::to_string(values.size()));
    if (m < 4) throw std::invalid_argument("GridFunction: grid too small");
}

double FejerPlan::weight(const std::array<long long, 2>& k) const {
    double w = 1.0;
    for (int j = 0; j < d; ++j) {
        double t = 1.0 - static_cast<double>(std::llabs(k[static_cast<std::size_t>(j)])) /
                             static_cast<double>(r);
        w *= std::max(0.0, t);
    }
    return w;
}

cplx FejerApprox::evaluate(double x1, double x2) const {
    cplx out(0, 0);
    for (const auto& c : coefficients) {
        double phase = 2.0 * kPi * (static_cast<double>(c.freq[0]) * x1 +
                                    static_cast<double>(c.freq[1]) * x2);
        out += c.a * cplx(std::cos(phase), std::sin(phase));
    }
    return out;
}

namespace {

// Grid DFT coefficient c(k) = (1/m^d) sum_j f(x_j) e(-k . x_j).
cplx grid_coefficient(const GridFunction& f, long long k1, long long k2) {
    const std::uint64_t m = f.m;
    const auto& tab = unity_table(m);
    auto red = [&](long long k, std::uint64_t j) -> std::uint64_t {
        long long r = (-k * static_cast<long long>(j)) % static_cast<long long>(m);
        if (r < 0) r += static_cast<long long>(m);
        return static_cast<std::uint64_t>(r);
    };
    KahanSumC acc;
    if (f.d == 1) {
        for (std::uint64_t j = 0; j < m; ++j) acc.add(f.values[j] * tab[red(k1, j)]);
        return acc.value() / static_cast<double>(m);
    }
    for (std::uint64_t j1 = 0; j1 < m; ++j1)
        for (std::uint64_t j2 = 0; j2 < m; ++j2)
            acc.add(f.values[j1 * m + j2] * tab[(red(k1, j1) + red(k2, j2)) % m]);
    return acc.value() / (static_cast<double>(m) * static_cast<double>(m));
}

double grid_sup_error(const GridFunction& f, const FejerApprox& approx) {
    const std::uint64_t m = f.m;
    double worst = 0.0;
    if (f.d == 1) {
        for (std::uint64_t j = 0; j < m; ++j) {
            double x = static_cast<double>(j) / static_cast<double>(m);
            worst = std::max(worst, std::abs(approx.evaluate(x) - f.values[j]));
        }
        return worst;
    }
    for (std::uint64_t j1 = 0; j1 < m; ++j1)
        for (std::uint64_t j2 = 0; j2 < m; ++j2) {
            double x1 = static_cast<double>(j1) / static_cast<double>(m);
            double x2 = static_cast<double>(j2) / static_cast<double>(m);
            worst = std::max(worst, std::abs(approx.evaluate(x1, x2) - f.values[j1 * m + j2]));
        }
    return worst;
}

FejerApprox build_approx(const GridFunction& f, std::uint64_t r) {
    FejerPlan plan{f.d, r};
    std::vector<FejerCoefficient> coeffs;
    const long long rr = static_cast<long long>(r);
    if (f.d == 1) {
        for (long long k = -(rr - 1); k <= rr - 1; ++k) {
            cplx a = grid_coefficient(f, k, 0) * plan.weight({k, 0});
            if (std::abs(a) > 1e-13) coeffs.push_back({a, {k, 0}});
        }
    } else {
        for (long long k1 = -(rr - 1); k1 <= rr - 1; ++k1)
            for (long long k2 = -(rr - 1); k2 <= rr - 1; ++k2) {
                cplx a = grid_coefficient(f, k1, k2) * plan.weight({k1, k2});
                if (std::abs(a) > 1e-13) coeffs.push_back({a, {k1, k2}});
            }
    }
    FejerApprox out{plan, std::move(coeffs), 0.0};
    out.sup_error_grid = grid_sup_error(f, out);
    return out;
}

}  // namespace

FejerApprox fejer_approx(const GridFunction& samples, double lipschitz, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("fejer_approx: eps must be positive");
    if (lipschitz < 0) throw std::invalid_argument("fejer_approx: negative Lipschitz constant");
    const double pitch = 1.0 / static_cast<double>(samples.m);
    if (lipschitz > 0 && pitch > eps / (10.0 * lipschitz))
        throw std::invalid_argument("fejer_approx: grid too coarse for requested eps (pitch " +
                                    std::to_string(pitch) + " > eps/(10 L))");

    const double inv_d = 1.0 / static_cast<double>(samples.d);
    std::uint64_t r = static_cast<std::uint64_t>(
        std::ceil(2.0 * std::pow((lipschitz + 1.0) / eps, inv_d)));
    r = std::max<std::uint64_t>(r, 2);
    const std::uint64_t r_cap = samples.m / 2;
    if (r > r_cap)
        throw std::invalid_argument("fejer_approx: grid too coarse for requested eps (need R = " +
                                    std::to_string(r) + " > m/2)");
    for (;;) {
        FejerApprox approx = build_approx(samples, r);
        if (approx.sup_error_grid <= eps) return approx;
        if (r >= r_cap)
            throw std::invalid_argument(
                "fejer_approx: grid too coarse for requested eps (sup error " +
                std::to_string(approx.sup_error_grid) + " at R = " + std::to_string(r) + ")");
        r = std::min(r_cap, r * 2);
    }
}

std::vector<FrequencyHit> major_arc_scan(const CyclicFunction& K, const IntPolynomial& P,
                                         const IntPolynomial& Q, int top_k) {
    if (top_k < 1) throw std::invalid_argument("major_arc_scan: top_k must be at least 1");
    const std::uint64_t n = K.n();
    const auto tp = eval_poly_table(P, K.mod);
    const auto tq = eval_poly_table(Q, K.mod);

    // For fixed alpha, bucket K(y) e_N(alpha Q(y)) by the value of P(y);
    // one transform then covers every beta at once.
    std::vector<std::vector<FrequencyHit>> per_alpha(n);
    parallel_blocks(n, [&](std::size_t lo, std::size_t hi, std::size_t) {
        for (std::size_t a = lo; a < hi; ++a) {
            std::vector<cplx> bucket(n, cplx(0, 0));
            for (std::uint64_t y = 0; y < n; ++y)
                bucket[tp[y]] += K.values[y] * e_mod(mul_mod(static_cast<std::uint64_t>(a), tq[y], n), n);
            Spectrum spec = dft(CyclicFunction(K.mod, std::move(bucket)));
            std::vector<FrequencyHit> hits;
            hits.reserve(n);
            for (std::uint64_t beta = 0; beta < n; ++beta)
                hits.push_back(FrequencyHit{static_cast<std::uint64_t>(a), beta,
                                            std::abs(spec.coefficients[beta])});
            std::sort(hits.begin(), hits.end(), [](const FrequencyHit& u, const FrequencyHit& v) {
                if (u.correlation != v.correlation) return u.correlation > v.correlation;
                return u.beta < v.beta;
            });
            hits.resize(std::min<std::size_t>(hits.size(), static_cast<std::size_t>(top_k)));
            per_alpha[a] = std::move(hits);
        }
    });
    std::vector<FrequencyHit> all;
    for (std::uint64_t a = 0; a < n; ++a)
        all.insert(all.end(), per_alpha[a].begin(), per_alpha[a].end());
    std::sort(all.begin(), all.end(), [](const FrequencyHit& u, const FrequencyHit& v) {
        if (u.correlation != v.correlation) return u.correlation > v.correlation;
        if (u.alpha != v.alpha) return u.alpha < v.alpha;
        return u.beta < v.beta;
    });
    all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(top_k)));
    return all;
}

}  // namespace znlab
