#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "addsurf/error.hpp"

namespace addsurf {

using Scalar = mpq_class;
using Integer = mpz_class;

// Deterministic variable order: x, y, u, v, a, b first, then plain
// lexicographic order for everything else (parameters).
bool var_less(const std::string& lhs, const std::string& rhs);

// Sparse multivariate polynomial over Q.
//
// Each value carries the sorted list of variables it actually uses, so two
// equal polynomials always have identical storage. Terms are kept in
// descending graded-lex order (leading term first).
class Poly {
public:
    using Exps = std::vector<int32_t>;
    struct Term {
        Exps exps;
        Scalar coef;
    };

    Poly() = default;
    Poly(long value);  // NOLINT: implicit constants read naturally in formulas
    Poly(const Scalar& value);  // NOLINT

    static Poly variable(const std::string& name, int32_t exponent = 1);
    // Builds from raw terms over `vars` (any order of terms, duplicates merged).
    static Poly from_terms(std::vector<std::string> vars, std::vector<Term> terms);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return vars_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    Scalar constant_value() const;  // requires is_constant()
    const Term& leading() const { return terms_.front(); }
    const Scalar& leading_coef() const { return terms_.front().coef; }
    size_t size() const { return terms_.size(); }

    bool uses(const std::string& var) const;
    int var_index(const std::string& var) const;  // -1 if absent
    int32_t degree(const std::string& var) const;
    int32_t total_degree() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly& operator*=(const Poly& rhs);
    Poly& operator*=(const Scalar& rhs);

    friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
    friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
    friend Poly operator*(const Poly& lhs, const Poly& rhs);
    friend Poly operator*(Poly lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend bool operator==(const Poly& lhs, const Poly& rhs);
    friend bool operator!=(const Poly& lhs, const Poly& rhs) { return !(lhs == rhs); }

    Poly pow(uint32_t exponent) const;
    Poly derivative(const std::string& var) const;

    // Coefficients of `var`: result[i] is the coefficient of var^i.
    std::vector<Poly> coefficients(const std::string& var) const;
    static Poly from_coefficients(const std::string& var, const std::vector<Poly>& coeffs);

    // Substitutes scalar values for some variables; others pass through.
    Poly partial_eval(const std::map<std::string, Scalar>& values) const;
    // Requires every variable to be bound.
    Scalar eval(const std::map<std::string, Scalar>& values) const;

    // Largest monomial dividing every term (coefficient 1).
    Poly monomial_content() const;
    // Scales to integer coefficients with gcd 1 and a positive leading coefficient.
    // `scale` receives the factor applied (result = scale * *this).
    Poly integer_primitive(Scalar* scale = nullptr) const;

    std::string str() const;

    // Stable structural ordering for use as a map key.
    friend bool operator<(const Poly& lhs, const Poly& rhs);

private:
    std::vector<std::string> vars_;
    std::vector<Term> terms_;

    void normalize();
    Poly remapped(const std::vector<std::string>& target) const;
    friend std::vector<std::string> merge_vars(const Poly& lhs, const Poly& rhs);
};

std::vector<std::string> merge_vars(const Poly& lhs, const Poly& rhs);

// Exact quotient when divisor divides dividend, otherwise false.
bool divide_exact(const Poly& dividend, const Poly& divisor, Poly* quotient);
Poly exact_quotient(const Poly& dividend, const Poly& divisor);

// Gcd normalized by integer_primitive (positive leading coefficient).
Poly gcd(const Poly& lhs, const Poly& rhs);

}  // namespace addsurf
