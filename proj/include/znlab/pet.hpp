#pragma once

#include <map>
#include <string>
#include <vector>

#include "znlab/zmod.hpp"

namespace znlab {

// Polynomial in the shift parameters h_1, h_2, ...: monomial exponent
// vector -> integer coefficient. Shift parameters stay symbolic throughout
// the induction; only degrees and leading-coefficient classes are compared.
class ShiftPoly {
public:
    ShiftPoly() = default;
    static ShiftPoly constant(long long c);
    static ShiftPoly variable(int var_index);  // h_{var_index+1}

    bool is_zero() const { return terms_.empty(); }
    ShiftPoly operator+(const ShiftPoly& o) const;
    ShiftPoly operator-(const ShiftPoly& o) const;
    ShiftPoly operator*(const ShiftPoly& o) const;
    ShiftPoly scaled(long long c) const;

    bool operator==(const ShiftPoly& o) const { return terms_ == o.terms_; }
    bool operator<(const ShiftPoly& o) const { return terms_ < o.terms_; }

    std::string to_string() const;

private:
    // exponent vector (trailing zeros trimmed) -> coefficient
    std::map<std::vector<int>, long long> terms_;
    void prune();
};

// A form in y whose coefficients are shift polynomials.
struct PetForm {
    std::vector<ShiftPoly> coef;  // index = power of y

    int degree() const;
    const ShiftPoly& leading() const;
    PetForm shifted(int var_index) const;          // y -> y + h_{var+1}
    PetForm minus(const PetForm& o) const;
    std::string to_string() const;
    bool operator<(const PetForm& o) const { return coef_key() < o.coef_key(); }

private:
    std::vector<std::pair<int, ShiftPoly>> coef_key() const;
};

// Bergelson-Leibman weight: per degree d >= 1, the number of distinct
// leading-coefficient classes among degree-d forms. Ordered
// lexicographically from the top degree down.
using PetWeight = std::vector<std::size_t>;  // index d-1 holds w_d

std::string weight_to_string(const PetWeight& w);
bool weight_less(const PetWeight& a, const PetWeight& b);

struct PetStep {
    std::string pivot;
    PetWeight weight_before;
    PetWeight weight_after;
    std::size_t forms_before;
    std::size_t forms_after;
};

struct PETTrace {
    std::vector<PetStep> steps;
    int cs_count;      // one Cauchy-Schwarz per van der Corput step
    int final_degree;  // s = cs_count + 1
    std::vector<std::string> final_forms;

    std::string pretty() const;
};

inline constexpr int kPetDegreeCap = 8;
inline constexpr int kPetStepCap = 64;

// Runs the induction on the family (all forms linear in y is the exit),
// recording pivot choices and weight decreases. Deterministic: the pivot
// is the lexicographically-smallest member of the largest class among the
// minimal-degree forms.
PETTrace pet_trace(const std::vector<IntPolynomial>& polys);

}  // namespace znlab
