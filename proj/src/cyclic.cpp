#include "znlab/cyclic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "znlab/parallel.hpp"
#include "znlab/rng.hpp"

namespace znlab {

namespace {

std::mutex g_table_mutex;
std::map<std::uint64_t, std::shared_ptr<const std::vector<cplx>>> g_tables;

std::shared_ptr<const std::vector<cplx>> table_ptr(std::uint64_t n) {
    std::lock_guard<std::mutex> lock(g_table_mutex);
    auto it = g_tables.find(n);
    if (it != g_tables.end()) return it->second;
    auto t = std::make_shared<std::vector<cplx>>(n);
    for (std::uint64_t k = 0; k < n; ++k) {
        long double a = 2.0L * static_cast<long double>(kPi) * static_cast<long double>(k) /
                        static_cast<long double>(n);
        (*t)[k] = cplx(static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a)));
    }
    g_tables.emplace(n, t);
    return g_tables[n];
}

}  // namespace

const std::vector<cplx>& unity_table(std::uint64_t n) { return *table_ptr(n); }

cplx e_mod(std::uint64_t t, std::uint64_t n) { return unity_table(n)[t % n]; }

CyclicFunction::CyclicFunction(Modulus m, std::vector<cplx> v, bool bounded)
    : mod(m), values(std::move(v)), one_bounded(bounded) {
    if (values.size() != mod.n())
        throw std::invalid_argument("CyclicFunction: value count must equal N");
    if (one_bounded) check_one_bounded();
}

cplx CyclicFunction::mean() const {
    KahanSumC acc;
    for (const cplx& v : values) acc.add(v);
    return acc.value() / static_cast<double>(n());
}

double CyclicFunction::sup_norm() const {
    double m = 0.0;
    for (const cplx& v : values) m = std::max(m, std::abs(v));
    return m;
}

double CyclicFunction::l2_norm() const {
    KahanSum acc;
    for (const cplx& v : values) acc.add(std::norm(v));
    return std::sqrt(std::max(0.0, acc.value() / static_cast<double>(n())));
}

void CyclicFunction::check_one_bounded() const {
    for (const cplx& v : values)
        if (std::abs(v) > 1.0 + 1e-9)
            throw std::invalid_argument("CyclicFunction: one_bounded asserted but |f| = " +
                                        std::to_string(std::abs(v)));
}

Spectrum::Spectrum(Modulus m, std::vector<cplx> c) : mod(m), coefficients(std::move(c)) {
    if (coefficients.size() != mod.n())
        throw std::invalid_argument("Spectrum: coefficient count must equal N");
}

// ---------------------------------------------------------------------------
// Transforms. core_transform computes the unnormalized sum
//   out[j] = sum_k v[k] e_N(sign * j * k),  sign = +1 analysis, -1 synthesis.
// ---------------------------------------------------------------------------

namespace {

std::vector<cplx> naive_transform(const std::vector<cplx>& v, std::uint64_t n, int sign) {
    const auto& tab = unity_table(n);
    std::vector<cplx> out(n);
    parallel_blocks(n, [&](std::size_t lo, std::size_t hi, std::size_t) {
        for (std::size_t j = lo; j < hi; ++j) {
            KahanSumC acc;
            std::uint64_t idx = 0, step = static_cast<std::uint64_t>(j);
            for (std::uint64_t k = 0; k < n; ++k) {
                cplx w = tab[idx];
                if (sign < 0) w = std::conj(w);
                acc.add(v[k] * w);
                idx += step;
                if (idx >= n) idx -= n;
            }
            out[j] = acc.value();
        }
    });
    return out;
}

// In-place iterative radix-2 FFT on power-of-two length. Twiddles come
// from tables so repeated plans are bit-identical.
struct Pow2Plan {
    std::size_t m;
    std::vector<std::size_t> rev;
    std::vector<std::vector<cplx>> stage_tw;  // per stage, half-size twiddles

    explicit Pow2Plan(std::size_t m_) : m(m_) {
        unsigned lg = 0;
        while ((std::size_t{1} << lg) < m) ++lg;
        rev.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t r = 0;
            for (unsigned b = 0; b < lg; ++b)
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (lg - 1 - b);
            rev[i] = r;
        }
        for (std::size_t len = 2; len <= m; len <<= 1) {
            std::vector<cplx> tw(len / 2);
            for (std::size_t k = 0; k < len / 2; ++k) {
                long double a = -2.0L * static_cast<long double>(kPi) * static_cast<long double>(k) /
                                static_cast<long double>(len);
                tw[k] = cplx(static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a)));
            }
            stage_tw.push_back(std::move(tw));
        }
    }

    void forward(std::vector<cplx>& a, bool inverse) const {
        for (std::size_t i = 0; i < m; ++i)
            if (i < rev[i]) std::swap(a[i], a[rev[i]]);
        std::size_t stage = 0;
        for (std::size_t len = 2; len <= m; len <<= 1, ++stage) {
            const auto& tw = stage_tw[stage];
            for (std::size_t i = 0; i < m; i += len) {
                for (std::size_t k = 0; k < len / 2; ++k) {
                    cplx w = inverse ? std::conj(tw[k]) : tw[k];
                    cplx u = a[i + k];
                    cplx v = a[i + k + len / 2] * w;
                    a[i + k] = u + v;
                    a[i + k + len / 2] = u - v;
                }
            }
        }
        if (inverse) {
            double inv = 1.0 / static_cast<double>(m);
            for (auto& z : a) z *= inv;
        }
    }
};

// Bluestein chirp-z plan for prime N: j*k = (j^2 + k^2 - (j-k)^2)/2 turns
// the transform into a linear convolution with the chirp c(k) = e(k^2/2N),
// evaluated by a power-of-two FFT. chirp exponents are reduced mod 2N so
// the table stays exact.
struct BluesteinPlan {
    std::uint64_t n;
    std::size_t m;
    Pow2Plan fft;
    std::vector<cplx> chirp;      // c(k) = exp(pi*i*k^2/n), k in [0, n)
    std::vector<cplx> kernel_ft;  // FFT of the wrapped conjugate chirp

    explicit BluesteinPlan(std::uint64_t n_)
        : n(n_), m(pick_m(n_)), fft(m), chirp(n_) {
        const std::uint64_t two_n = 2 * n;
        std::vector<cplx> tab2(two_n);
        for (std::uint64_t k = 0; k < two_n; ++k) {
            long double a = static_cast<long double>(kPi) * static_cast<long double>(k) /
                            static_cast<long double>(n);
            tab2[k] = cplx(static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a)));
        }
        for (std::uint64_t k = 0; k < n; ++k) {
            std::uint64_t k2 = static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(k) * k) % two_n);
            chirp[k] = tab2[k2];
        }
        std::vector<cplx> b(m, cplx(0, 0));
        b[0] = std::conj(chirp[0]);
        for (std::uint64_t k = 1; k < n; ++k) {
            b[k] = std::conj(chirp[k]);
            b[m - k] = std::conj(chirp[k]);
        }
        fft.forward(b, false);
        kernel_ft = std::move(b);
    }

    static std::size_t pick_m(std::uint64_t n) {
        std::size_t m = 1;
        while (m < 2 * n - 1) m <<= 1;
        return m;
    }

    // Unnormalized analysis transform (sign = +1). Synthesis is taken as
    // the conjugate of the analysis of the conjugate input.
    std::vector<cplx> run_plus(const std::vector<cplx>& v) const {
        std::vector<cplx> a(m, cplx(0, 0));
        for (std::uint64_t k = 0; k < n; ++k) a[k] = v[k] * chirp[k];
        fft.forward(a, false);
        for (std::size_t i = 0; i < m; ++i) a[i] *= kernel_ft[i];
        fft.forward(a, true);
        std::vector<cplx> out(n);
        for (std::uint64_t j = 0; j < n; ++j) out[j] = a[j] * chirp[j];
        return out;
    }
};

std::mutex g_plan_mutex;
std::map<std::uint64_t, std::shared_ptr<const BluesteinPlan>> g_plans;

std::shared_ptr<const BluesteinPlan> bluestein_plan(std::uint64_t n) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = g_plans.find(n);
    if (it != g_plans.end()) return it->second;
    auto p = std::make_shared<BluesteinPlan>(n);
    g_plans.emplace(n, p);
    return g_plans[n];
}

std::vector<cplx> core_transform(const std::vector<cplx>& v, std::uint64_t n, int sign,
                                 TransformPath path) {
    bool fast = path == TransformPath::bluestein ||
                (path == TransformPath::automatic && n >= kBluesteinThreshold);
    if (!fast) return naive_transform(v, n, sign);
    auto plan = bluestein_plan(n);
    if (sign > 0) return plan->run_plus(v);
    std::vector<cplx> cv(n);
    for (std::uint64_t k = 0; k < n; ++k) cv[k] = std::conj(v[k]);
    std::vector<cplx> out = plan->run_plus(cv);
    for (auto& z : out) z = std::conj(z);
    return out;
}

}  // namespace

Spectrum dft(const CyclicFunction& f, TransformPath path) {
    std::vector<cplx> out = core_transform(f.values, f.n(), +1, path);
    double inv = 1.0 / static_cast<double>(f.n());
    for (auto& z : out) z *= inv;
    return Spectrum(f.mod, std::move(out));
}

CyclicFunction idft(const Spectrum& s, TransformPath path) {
    std::vector<cplx> out = core_transform(s.coefficients, s.n(), -1, path);
    return CyclicFunction(s.mod, std::move(out));
}

// ---------------------------------------------------------------------------
// Function-spec mini-language
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void spec_fail(const std::string& spec, std::size_t pos, const std::string& what) {
    throw std::invalid_argument("function spec error at position " + std::to_string(pos) + ": " +
                                what + " in \"" + spec + "\"");
}

std::map<std::string, std::string> parse_kv(const std::string& spec, const std::string& body,
                                            std::size_t offset) {
    std::map<std::string, std::string> kv;
    std::size_t i = 0;
    while (i < body.size()) {
        std::size_t comma = body.find(',', i);
        std::string item = body.substr(i, comma == std::string::npos ? std::string::npos : comma - i);
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) spec_fail(spec, offset + i, "expected key=value, got '" + item + "'");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
        if (comma == std::string::npos) break;
        i = comma + 1;
    }
    return kv;
}

long long parse_int(const std::string& spec, const std::string& tok, std::size_t pos) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) spec_fail(spec, pos, "trailing characters in integer '" + tok + "'");
        return v;
    } catch (const std::invalid_argument&) {
        spec_fail(spec, pos, "expected integer, got '" + tok + "'");
    } catch (const std::out_of_range&) {
        spec_fail(spec, pos, "integer out of range: '" + tok + "'");
    }
}

std::uint64_t residue_of(long long v, std::uint64_t n) {
    long long r = v % static_cast<long long>(n);
    if (r < 0) r += static_cast<long long>(n);
    return static_cast<std::uint64_t>(r);
}

}  // namespace

CyclicFunction make_function(const std::string& spec, const Modulus& mod, std::uint64_t seed) {
    const std::uint64_t n = mod.n();
    std::size_t colon = spec.find(':');
    if (colon == std::string::npos) spec_fail(spec, 0, "expected '<kind>:<args>'");
    std::string kind = spec.substr(0, colon);
    std::string body = spec.substr(colon + 1);
    std::size_t boff = colon + 1;

    if (kind == "const") {
        double c = 0.0;
        std::size_t used = 0;
        try {
            c = std::stod(body, &used);
        } catch (const std::exception&) {
            spec_fail(spec, boff, "expected numeric constant, got '" + body + "'");
        }
        if (used != body.size()) spec_fail(spec, boff + used, "trailing characters after constant");
        return CyclicFunction(mod, std::vector<cplx>(n, cplx(c, 0)), std::abs(c) <= 1.0);
    }
    if (kind == "char") {
        auto kv = parse_kv(spec, body, boff);
        if (!kv.count("xi")) spec_fail(spec, boff, "char requires xi=<k>");
        std::uint64_t k = residue_of(parse_int(spec, kv["xi"], boff), n);
        std::vector<cplx> v(n);
        for (std::uint64_t x = 0; x < n; ++x) v[x] = e_mod(mul_mod(k, x, n), n);
        return CyclicFunction(mod, std::move(v), true);
    }
    if (kind == "quad") {
        auto kv = parse_kv(spec, body, boff);
        if (!kv.count("alpha") || !kv.count("beta"))
            spec_fail(spec, boff, "quad requires alpha=<a>,beta=<b>");
        std::uint64_t a = residue_of(parse_int(spec, kv["alpha"], boff), n);
        std::uint64_t b = residue_of(parse_int(spec, kv["beta"], boff), n);
        std::vector<cplx> v(n);
        for (std::uint64_t x = 0; x < n; ++x) {
            std::uint64_t t = add_mod(mul_mod(a, mul_mod(x, x, n), n), mul_mod(b, x, n), n);
            v[x] = e_mod(t, n);
        }
        return CyclicFunction(mod, std::move(v), true);
    }
    if (kind == "indicator") {
        std::vector<cplx> v(n, cplx(0, 0));
        std::size_t i = 0;
        while (i < body.size()) {
            std::size_t comma = body.find(',', i);
            std::string tok = body.substr(i, comma == std::string::npos ? std::string::npos : comma - i);
            v[residue_of(parse_int(spec, tok, boff + i), n)] = cplx(1, 0);
            if (comma == std::string::npos) break;
            i = comma + 1;
        }
        return CyclicFunction(mod, std::move(v), true);
    }
    if (kind == "indicator-file") {
        std::ifstream in(body);
        if (!in) spec_fail(spec, boff, "cannot open residue file '" + body + "'");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            spec_fail(spec, boff, std::string("bad JSON residue file: ") + e.what());
        }
        if (!j.is_array()) spec_fail(spec, boff, "residue file must hold a JSON array");
        std::vector<cplx> v(n, cplx(0, 0));
        for (const auto& item : j) {
            if (!item.is_number_integer()) spec_fail(spec, boff, "residue file entries must be integers");
            v[residue_of(item.get<long long>(), n)] = cplx(1, 0);
        }
        return CyclicFunction(mod, std::move(v), true);
    }
    if (kind == "random") {
        std::size_t comma = body.find(',');
        std::string flavor = body.substr(0, comma == std::string::npos ? std::string::npos : comma);
        std::uint64_t spec_seed = 0;
        if (comma != std::string::npos) {
            auto kv = parse_kv(spec, body.substr(comma + 1), boff + comma + 1);
            if (!kv.count("seed")) spec_fail(spec, boff + comma + 1, "random requires seed=<s>");
            spec_seed = static_cast<std::uint64_t>(parse_int(spec, kv["seed"], boff + comma + 1));
        } else {
            spec_fail(spec, boff, "random requires '<flavor>,seed=<s>'");
        }
        SplitMix64 rng(mix_seed(n, spec_seed, seed));
        std::vector<cplx> v(n);
        if (flavor == "pm1") {
            for (auto& z : v) z = cplx((rng.next() & 1) ? 1.0 : -1.0, 0.0);
        } else if (flavor == "unit") {
            for (auto& z : v) {
                double theta = 2.0 * kPi * rng.next_unit();
                z = cplx(std::cos(theta), std::sin(theta));
            }
        } else {
            spec_fail(spec, boff, "unknown random flavor '" + flavor + "' (want pm1 or unit)");
        }
        return CyclicFunction(mod, std::move(v), true);
    }
    spec_fail(spec, 0, "unknown function kind '" + kind + "'");
}

CyclicFunction conj(const CyclicFunction& f) {
    std::vector<cplx> v(f.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(f.values[i]);
    return CyclicFunction(f.mod, std::move(v), f.one_bounded);
}

CyclicFunction pointwise_mul(const CyclicFunction& a, const CyclicFunction& b) {
    if (a.mod != b.mod) throw std::invalid_argument("pointwise_mul: modulus mismatch");
    std::vector<cplx> v(a.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values[i] * b.values[i];
    return CyclicFunction(a.mod, std::move(v), a.one_bounded && b.one_bounded);
}

CyclicFunction shift(const CyclicFunction& f, std::uint64_t h) {
    const std::uint64_t n = f.n();
    h %= n;
    std::vector<cplx> v(n);
    for (std::uint64_t x = 0; x < n; ++x) v[x] = f.values[add_mod(x, h, n)];
    return CyclicFunction(f.mod, std::move(v), f.one_bounded);
}

cplx inner(const CyclicFunction& a, const CyclicFunction& b) {
    if (a.mod != b.mod) throw std::invalid_argument("inner: modulus mismatch");
    KahanSumC acc;
    for (std::size_t i = 0; i < a.values.size(); ++i) acc.add(a.values[i] * std::conj(b.values[i]));
    return acc.value() / static_cast<double>(a.n());
}

cplx inner_plain(const CyclicFunction& a, const CyclicFunction& b) {
    if (a.mod != b.mod) throw std::invalid_argument("inner_plain: modulus mismatch");
    KahanSumC acc;
    for (std::size_t i = 0; i < a.values.size(); ++i) acc.add(a.values[i] * b.values[i]);
    return acc.value() / static_cast<double>(a.n());
}

}  // namespace znlab
