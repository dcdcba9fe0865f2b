#include "znlab/zmod.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace znlab {

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t n) {
    std::uint64_t r = 1;
    b %= n;
    while (e) {
        if (e & 1) r = mul_mod(r, b, n);
        b = mul_mod(b, b, n);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // Deterministic witness set for the full 64-bit range.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Modulus::Modulus(std::uint64_t n) : n_(n) {
    if (n < 5) throw std::invalid_argument("Modulus: N must be at least 5, got " + std::to_string(n));
    if (!is_prime_u64(n)) throw std::invalid_argument("Modulus: N must be prime, got " + std::to_string(n));
}

IntPolynomial::IntPolynomial(std::vector<long long> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.size() < 2)
        throw std::invalid_argument("IntPolynomial: degree must be at least 1");
    if (coeffs_[0] != 0)
        throw std::invalid_argument("IntPolynomial: constant term must be 0 (P(0) = 0)");
}

std::string IntPolynomial::to_string() const {
    std::string out;
    for (int d = degree(); d >= 1; --d) {
        long long c = coeffs_[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        if (!out.empty())
            out += c > 0 ? "+" : "-";
        else if (c < 0)
            out += "-";
        long long a = std::llabs(c);
        if (a != 1) out += std::to_string(a) + "*";
        out += "y";
        if (d > 1) out += "^" + std::to_string(d);
    }
    return out;
}

Residue eval_poly(const IntPolynomial& p, const Residue& y) {
    const std::uint64_t n = y.mod.n();
    std::uint64_t acc = 0;
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = mul_mod(acc, y.value, n);
        long long ci = c[i];
        std::uint64_t cm = ci >= 0 ? static_cast<std::uint64_t>(ci) % n
                                   : n - (static_cast<std::uint64_t>(-ci) % n);
        acc = add_mod(acc, cm % n, n);
    }
    return Residue(acc, y.mod);
}

std::vector<std::uint64_t> eval_poly_table(const IntPolynomial& p, const Modulus& mod) {
    std::vector<std::uint64_t> out(mod.n());
    for (std::uint64_t y = 0; y < mod.n(); ++y)
        out[y] = eval_poly(p, Residue(y, mod)).value;
    return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string& text, std::size_t pos, const std::string& what) {
    throw std::invalid_argument("polynomial parse error at position " + std::to_string(pos) +
                                " ('" + (pos < text.size() ? std::string(1, text[pos]) : std::string("<end>")) +
                                "'): " + what + " in \"" + text + "\"");
}

}  // namespace

IntPolynomial parse_polynomial(const std::string& text) {
    std::string s;
    std::vector<std::size_t> src_pos;  // map back to original positions for errors
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!std::isspace(static_cast<unsigned char>(text[i]))) {
            s += text[i];
            src_pos.push_back(i);
        }
    }
    if (s.empty()) parse_fail(text, 0, "empty polynomial");

    std::vector<long long> coeffs(1, 0);
    std::size_t i = 0;
    while (i < s.size()) {
        long long sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            if (i >= s.size()) parse_fail(text, src_pos.back(), "dangling sign");
        }
        long long coef = 1;
        bool saw_digits = false;
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            coef = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                coef = coef * 10 + (s[i] - '0');
                ++i;
            }
            saw_digits = true;
            if (i < s.size() && s[i] == '*') ++i;
        }
        if (i >= s.size() || s[i] != 'y') {
            if (saw_digits)
                parse_fail(text, i < src_pos.size() ? src_pos[i] : text.size(),
                           "constant terms are not allowed (P(0) = 0 is required)");
            parse_fail(text, i < src_pos.size() ? src_pos[i] : text.size(), "expected 'y'");
        }
        ++i;  // consume 'y'
        long long d = 1;
        if (i < s.size() && s[i] == '^') {
            ++i;
            if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
                parse_fail(text, i < src_pos.size() ? src_pos[i] : text.size(), "expected exponent digits");
            d = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                d = d * 10 + (s[i] - '0');
                ++i;
            }
            if (d < 1 || d > 64)
                parse_fail(text, src_pos[i - 1], "exponent out of range");
        }
        if (coeffs.size() <= static_cast<std::size_t>(d)) coeffs.resize(static_cast<std::size_t>(d) + 1, 0);
        coeffs[static_cast<std::size_t>(d)] += sign * coef;
        if (i < s.size() && s[i] != '+' && s[i] != '-')
            parse_fail(text, src_pos[i], "expected '+' or '-' between terms");
    }
    return IntPolynomial(coeffs);
}

bool linearly_independent(const std::vector<IntPolynomial>& polys) {
    // Gaussian elimination over Q on the coefficient matrix (rows = polys).
    std::size_t cols = 0;
    for (const auto& p : polys) cols = std::max(cols, p.coeffs().size());
    std::vector<std::vector<double>> m;
    for (const auto& p : polys) {
        std::vector<double> row(cols, 0.0);
        for (std::size_t i = 0; i < p.coeffs().size(); ++i)
            row[i] = static_cast<double>(p.coeffs()[i]);
        m.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
        std::size_t piv = rank;
        for (std::size_t r = rank + 1; r < m.size(); ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (std::abs(m[piv][c]) < 1e-12) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank) continue;
            double f = m[r][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank == polys.size();
}

}  // namespace znlab
