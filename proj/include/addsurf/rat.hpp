#pragma once

#include <map>
#include <string>
#include <utility>

#include "addsurf/poly.hpp"

namespace addsurf {

// Rational function num/den over Q.
//
// Values are always kept reduced: gcd(num, den) = 1, den has coprime integer
// coefficients and a positive leading coefficient. Equality is therefore a
// representation check.
class Rat {
public:
    Rat() : den_(1L) {}
    Rat(long value) : num_(value), den_(1L) {}  // NOLINT
    Rat(const Scalar& value) : num_(value), den_(1L) {}  // NOLINT
    Rat(const Poly& num) : num_(num), den_(1L) {}  // NOLINT
    Rat(const Poly& num, const Poly& den);  // reduces; throws DivisionByZero

    static Rat variable(const std::string& name) { return Rat(Poly::variable(name)); }
    // Skips reduction; both parts must already satisfy the invariants.
    static Rat from_reduced(Poly num, Poly den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Scalar constant_value() const;
    bool uses(const std::string& var) const { return num_.uses(var) || den_.uses(var); }

    Rat operator-() const { return from_reduced(-num_, den_); }
    friend Rat operator+(const Rat& lhs, const Rat& rhs);
    friend Rat operator-(const Rat& lhs, const Rat& rhs) { return lhs + (-rhs); }
    friend Rat operator*(const Rat& lhs, const Rat& rhs);
    friend Rat operator/(const Rat& lhs, const Rat& rhs);
    Rat& operator+=(const Rat& rhs) { return *this = *this + rhs; }
    Rat& operator-=(const Rat& rhs) { return *this = *this - rhs; }
    Rat& operator*=(const Rat& rhs) { return *this = *this * rhs; }
    Rat& operator/=(const Rat& rhs) { return *this = *this / rhs; }
    friend bool operator==(const Rat& lhs, const Rat& rhs) { return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_; }
    friend bool operator!=(const Rat& lhs, const Rat& rhs) { return !(lhs == rhs); }
    friend bool operator<(const Rat& lhs, const Rat& rhs) {
        return lhs.num_ < rhs.num_ || (lhs.num_ == rhs.num_ && lhs.den_ < rhs.den_);
    }

    Rat pow(int exponent) const;

    std::string str() const;

private:
    Poly num_;
    Poly den_;
};

enum class ArithOp { Add, Sub, Mul, Div };
Rat arith(const Rat& lhs, const Rat& rhs, ArithOp op);

using Bindings = std::map<std::string, Rat>;

// Simultaneous substitution. Throws DenominatorVanishes when the substituted
// denominator is identically zero.
Rat substitute(const Rat& f, const Bindings& bindings);
// The same substitution left unreduced, as (numerator, denominator).
std::pair<Poly, Poly> substitute_fraction(const Rat& f, const Bindings& bindings);
// Equality of two unreduced fractions by cross-multiplication.
bool same_fraction(const std::pair<Poly, Poly>& lhs, const std::pair<Poly, Poly>& rhs);
Rat differentiate(const Rat& f, const std::string& var);
// Recomputes the canonical form of an arbitrary num/den pair.
Rat reduce(const Poly& num, const Poly& den);
inline bool is_zero(const Rat& f) { return f.is_zero(); }
// Throws EvalPole when the denominator vanishes.
Scalar eval(const Rat& f, const std::map<std::string, Scalar>& point);
// Partial evaluation at scalars (e.g. v = 0); throws DenominatorVanishes.
Rat specialize(const Rat& f, const std::map<std::string, Scalar>& point);

// Expression grammar: integers, identifiers, + - * / ^, parentheses.
Rat parse_expr(const std::string& text);

}  // namespace addsurf
