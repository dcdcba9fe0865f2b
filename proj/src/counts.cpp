#include "znlab/counts.hpp"

#include <bit>
#include <chrono>
#include <set>
#include <stdexcept>

#include "znlab/parallel.hpp"

namespace znlab {

namespace {

void check_same_modulus(std::initializer_list<const CyclicFunction*> fs) {
    const Modulus& m = (*fs.begin())->mod;
    for (const CyclicFunction* f : fs)
        if (f->mod != m) throw std::invalid_argument("counting operator: modulus mismatch");
}

// Fixed-block parallel sum of term(y) over y in [0, N); each term is an
// O(N) inner average. Blocks combine in index order.
template <typename TermFn>
cplx average_over_y(std::uint64_t n, TermFn term) {
    std::vector<cplx> block_part(block_count(n), cplx(0, 0));
    parallel_blocks(n, [&](std::size_t lo, std::size_t hi, std::size_t b) {
        KahanSumC acc;
        for (std::size_t y = lo; y < hi; ++y) acc.add(term(static_cast<std::uint64_t>(y)));
        block_part[b] = acc.value();
    });
    KahanSumC total;
    for (const cplx& p : block_part) total.add(p);
    return total.value() / static_cast<double>(n);
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

ProgressionFamily::ProgressionFamily(std::vector<IntPolynomial> p, int t, Modulus m)
    : polys(std::move(p)), level(t), mod(m) {
    if (polys.empty()) throw std::invalid_argument("ProgressionFamily: at least one polynomial");
    if (level < 0 || level > s())
        throw std::invalid_argument("ProgressionFamily: level t must satisfy 0 <= t <= s");
    std::set<std::vector<long long>> seen;
    for (const auto& q : polys)
        if (!seen.insert(q.coeffs()).second)
            throw std::invalid_argument("ProgressionFamily: polynomials must be pairwise distinct");
    if (!linearly_independent(polys))
        throw std::invalid_argument("ProgressionFamily: polynomials must be linearly independent");
}

double GapReport::gap() const { return std::abs(lambda_value - lambda1_value); }

cplx lambda(const CyclicFunction& f, const CyclicFunction& g, const CyclicFunction& k,
            const CyclicFunction& p, const IntPolynomial& P, const IntPolynomial& Q) {
    check_same_modulus({&f, &g, &k, &p});
    const std::uint64_t n = f.n();
    const auto tp = eval_poly_table(P, f.mod);
    const auto tq = eval_poly_table(Q, f.mod);
    return average_over_y(n, [&](std::uint64_t y) {
        const std::uint64_t a = tp[y], b = tq[y], c = add_mod(tp[y], tq[y], n);
        KahanSumC row;
        for (std::uint64_t x = 0; x < n; ++x)
            row.add(f.values[x] * g.values[add_mod(x, a, n)] * k.values[add_mod(x, b, n)] *
                    p.values[add_mod(x, c, n)]);
        return row.value() / static_cast<double>(n);
    });
}

cplx lambda1(const CyclicFunction& f, const CyclicFunction& g, const CyclicFunction& k,
             const CyclicFunction& p) {
    check_same_modulus({&f, &g, &k, &p});
    const std::uint64_t n = f.n();
    Spectrum fh = dft(f), gh = dft(g), kh = dft(k), ph = dft(p);
    KahanSumC acc;
    for (std::uint64_t xi = 0; xi < n; ++xi) {
        const std::uint64_t neg = (n - xi) % n;
        acc.add(ph.coefficients[xi] * fh.coefficients[xi] * gh.coefficients[neg] *
                kh.coefficients[neg]);
    }
    return acc.value();
}

cplx lambda2(const CyclicFunction& f, const CyclicFunction& g, const CyclicFunction& k,
             const CyclicFunction& p, const IntPolynomial& P, const IntPolynomial& Q) {
    check_same_modulus({&f, &g, &k, &p});
    const std::uint64_t n = f.n();
    const auto tp = eval_poly_table(P, f.mod);
    const auto tq = eval_poly_table(Q, f.mod);
    return average_over_y(n, [&](std::uint64_t y) {
        KahanSumC row;
        for (std::uint64_t x = 0; x < n; ++x)
            row.add(f.values[x] * g.values[add_mod(x, tp[y], n)] * k.values[add_mod(x, tq[y], n)]);
        return row.value() * p.values[y] / static_cast<double>(n);
    });
}

namespace {

std::vector<Corner> level_corners(int s, int t) {
    std::vector<Corner> out;
    for (Corner w = 0; w < (Corner{1} << s); ++w)
        if (std::popcount(w) <= t) out.push_back(w);
    return out;
}

void require_level_corners(const CornerFamily& functions, const std::vector<Corner>& corners,
                           const Modulus& mod) {
    for (Corner w : corners) {
        auto it = functions.find(w);
        if (it == functions.end())
            throw std::invalid_argument("corner family is missing omega = " + std::to_string(w));
        if (it->second.mod != mod)
            throw std::invalid_argument("corner family: modulus mismatch at omega = " +
                                        std::to_string(w));
    }
}

}  // namespace

cplx lambda_st(const ProgressionFamily& family, const CornerFamily& functions) {
    const std::uint64_t n = family.mod.n();
    const auto corners = level_corners(family.s(), family.level);
    require_level_corners(functions, corners, family.mod);

    std::vector<std::vector<std::uint64_t>> tables;
    for (const auto& q : family.polys) tables.push_back(eval_poly_table(q, family.mod));

    return average_over_y(n, [&](std::uint64_t y) {
        KahanSumC row;
        std::vector<std::uint64_t> offs(corners.size());
        for (std::size_t c = 0; c < corners.size(); ++c) {
            std::uint64_t o = 0;
            for (int i = 0; i < family.s(); ++i)
                if (corners[c] & (Corner{1} << i)) o = add_mod(o, tables[static_cast<std::size_t>(i)][y], n);
            offs[c] = o;
        }
        for (std::uint64_t x = 0; x < n; ++x) {
            cplx prod(1, 0);
            for (std::size_t c = 0; c < corners.size(); ++c)
                prod *= functions.at(corners[c]).values[add_mod(x, offs[c], n)];
            row.add(prod);
        }
        return row.value() / static_cast<double>(n);
    });
}

cplx lambda1_st(const ProgressionFamily& family, const CornerFamily& functions) {
    const int s = family.s();
    const std::uint64_t n = family.mod.n();
    const auto corners = level_corners(s, family.level);
    require_level_corners(functions, corners, family.mod);

    // Average the last shift out: the box splits into the product of the
    // means of the omega_s = 0 and omega_s = 1 sub-products (missing
    // corners act as the constant 1).
    const int sp = s - 1;
    std::uint64_t tuples = 1;
    for (int i = 0; i < sp; ++i) tuples *= n;
    const Corner half = Corner{1} << sp;

    std::vector<cplx> block_part(block_count(tuples), cplx(0, 0));
    parallel_blocks(tuples, [&](std::size_t lo, std::size_t hi, std::size_t b) {
        std::vector<std::uint64_t> hp(static_cast<std::size_t>(sp));
        std::vector<cplx> g0(n), g1(n);
        KahanSumC acc;
        for (std::size_t t = lo; t < hi; ++t) {
            std::uint64_t flat = t;
            for (std::size_t i = 0; i < hp.size(); ++i) {
                hp[i] = flat % n;
                flat /= n;
            }
            std::fill(g0.begin(), g0.end(), cplx(1, 0));
            std::fill(g1.begin(), g1.end(), cplx(1, 0));
            bool any1 = false;
            for (Corner w : corners) {
                const bool upper = (w & half) != 0;
                const Corner wp = w & (half - 1);
                std::uint64_t off = 0;
                for (int i = 0; i < sp; ++i)
                    if (wp & (Corner{1} << i)) off = add_mod(off, hp[static_cast<std::size_t>(i)], n);
                const auto& vals = functions.at(w).values;
                auto& buf = upper ? (any1 = true, g1) : g0;
                for (std::uint64_t x = 0; x < n; ++x) buf[x] *= vals[add_mod(x, off, n)];
            }
            KahanSumC m0, m1;
            for (std::uint64_t x = 0; x < n; ++x) {
                m0.add(g0[x]);
                m1.add(g1[x]);
            }
            cplx e0 = m0.value() / static_cast<double>(n);
            cplx e1 = any1 ? m1.value() / static_cast<double>(n) : cplx(1, 0);
            acc.add(e0 * e1);
        }
        block_part[b] = acc.value();
    });
    KahanSumC total;
    for (const cplx& p : block_part) total.add(p);
    return total.value() / static_cast<double>(tuples);
}

ThreeTermReport three_term(const CyclicFunction& f, const CyclicFunction& g,
                           const CyclicFunction& k, const IntPolynomial& P,
                           const IntPolynomial& Q) {
    check_same_modulus({&f, &g, &k});
    const std::uint64_t n = f.n();
    const auto tp = eval_poly_table(P, f.mod);
    const auto tq = eval_poly_table(Q, f.mod);
    cplx value = average_over_y(n, [&](std::uint64_t y) {
        KahanSumC row;
        for (std::uint64_t x = 0; x < n; ++x)
            row.add(f.values[x] * g.values[add_mod(x, tp[y], n)] * k.values[add_mod(x, tq[y], n)]);
        return row.value() / static_cast<double>(n);
    });
    cplx prod = f.mean() * g.mean() * k.mean();
    return ThreeTermReport{value, prod, std::abs(value - prod)};
}

namespace {

// Shared kernel for the two counting duals: out(x) = E_y a(x + sa(y)) b(x + sb(y)) c(x + sc(y)).
CyclicFunction dual_kernel(const CyclicFunction& a, const CyclicFunction& b,
                           const CyclicFunction& c, const std::vector<std::uint64_t>& sa,
                           const std::vector<std::uint64_t>& sb,
                           const std::vector<std::uint64_t>& sc) {
    const std::uint64_t n = a.n();
    const std::size_t nblocks = block_count(n);
    std::vector<std::vector<cplx>> block_part(nblocks);
    parallel_blocks(n, [&](std::size_t lo, std::size_t hi, std::size_t blk) {
        std::vector<cplx> sum(n, cplx(0, 0));
        for (std::size_t y = lo; y < hi; ++y) {
            const std::uint64_t oa = sa[y], ob = sb[y], oc = sc[y];
            for (std::uint64_t x = 0; x < n; ++x)
                sum[x] += a.values[add_mod(x, oa, n)] * b.values[add_mod(x, ob, n)] *
                          c.values[add_mod(x, oc, n)];
        }
        block_part[blk] = std::move(sum);
    });
    std::vector<KahanSumC> acc(n);
    for (std::size_t blk = 0; blk < nblocks; ++blk)
        for (std::uint64_t x = 0; x < n; ++x) acc[x].add(block_part[blk][x]);
    std::vector<cplx> out(n);
    for (std::uint64_t x = 0; x < n; ++x) out[x] = acc[x].value() / static_cast<double>(n);
    return CyclicFunction(a.mod, std::move(out));
}

}  // namespace

CyclicFunction dual_fgk(const CyclicFunction& f, const CyclicFunction& g,
                        const CyclicFunction& k, const IntPolynomial& P,
                        const IntPolynomial& Q) {
    check_same_modulus({&f, &g, &k});
    const std::uint64_t n = f.n();
    const auto tp = eval_poly_table(P, f.mod);
    const auto tq = eval_poly_table(Q, f.mod);
    std::vector<std::uint64_t> sa(n), sb(n), sc(n);
    for (std::uint64_t y = 0; y < n; ++y) {
        sa[y] = (2 * n - tp[y] - tq[y]) % n;  // -P(y)-Q(y)
        sb[y] = (n - tq[y]) % n;
        sc[y] = (n - tp[y]) % n;
    }
    return dual_kernel(f, g, k, sa, sb, sc);
}

CyclicFunction dual_gkp(const CyclicFunction& g, const CyclicFunction& k,
                        const CyclicFunction& p, const IntPolynomial& P,
                        const IntPolynomial& Q) {
    check_same_modulus({&g, &k, &p});
    const std::uint64_t n = g.n();
    const auto tp = eval_poly_table(P, g.mod);
    const auto tq = eval_poly_table(Q, g.mod);
    std::vector<std::uint64_t> sa(n), sb(n), sc(n);
    for (std::uint64_t y = 0; y < n; ++y) {
        sa[y] = tp[y];
        sb[y] = tq[y];
        sc[y] = add_mod(tp[y], tq[y], n);
    }
    return dual_kernel(g, k, p, sa, sb, sc);
}

CyclicFunction dual_h_fgk(const CyclicFunction& f, const CyclicFunction& g,
                          const CyclicFunction& k, const ShiftVector& h,
                          const IntPolynomial& P, const IntPolynomial& Q) {
    return dual_fgk(diff_multi(f, h), diff_multi(g, h), diff_multi(k, h), P, Q);
}

GapReport gap_report(const CyclicFunction& f, const CyclicFunction& g, const CyclicFunction& k,
                     const CyclicFunction& p, const IntPolynomial& P, const IntPolynomial& Q) {
    double t0 = now_seconds();
    cplx lv = lambda(f, g, k, p, P, Q);
    double t1 = now_seconds();
    cplx l1 = lambda1(f, g, k, p);
    double t2 = now_seconds();
    return GapReport{f.n(), lv, l1, t1 - t0, t2 - t1};
}

}  // namespace znlab
