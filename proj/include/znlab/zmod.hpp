#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace znlab {

bool is_prime_u64(std::uint64_t n);

// Group order N. Constructed only from primes >= 5 (deterministic
// Miller-Rabin check); everything downstream may assume primality.
class Modulus {
public:
    explicit Modulus(std::uint64_t n);
    std::uint64_t n() const { return n_; }

    friend bool operator==(const Modulus& a, const Modulus& b) { return a.n_ == b.n_; }
    friend bool operator!=(const Modulus& a, const Modulus& b) { return a.n_ != b.n_; }

private:
    std::uint64_t n_;
};

// An element of Z/NZ, value kept in [0, N).
struct Residue {
    std::uint64_t value;
    Modulus mod;

    Residue(std::uint64_t v, Modulus m) : value(v % m.n()), mod(m) {}
};

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    std::uint64_t s = a + b;
    return s >= n ? s - n : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return a >= b ? a - b : a + n - b;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

// Integer polynomial with zero constant term (the patterns require
// P(0) = 0) and degree >= 1. Coefficients are stored constant-term first.
class IntPolynomial {
public:
    explicit IntPolynomial(std::vector<long long> coeffs);

    const std::vector<long long>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    std::string to_string() const;  // e.g. "y^3-2*y"

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<long long> coeffs_;
};

// Horner evaluation of P(y) mod N.
Residue eval_poly(const IntPolynomial& p, const Residue& y);

// Table of P(y) for all y in [0, N); counting kernels index into this.
std::vector<std::uint64_t> eval_poly_table(const IntPolynomial& p, const Modulus& mod);

// Parses the polynomial mini-grammar: integer-coefficient expressions in
// y such as "y", "y^2", "3*y^2-2*y". Constant terms are rejected.
IntPolynomial parse_polynomial(const std::string& text);

// Rank over Q of the coefficient matrix; used to verify linear
// independence of a progression family.
bool linearly_independent(const std::vector<IntPolynomial>& polys);

}  // namespace znlab
