#include "addsurf/rat.hpp"

#include <cctype>
#include <vector>

namespace addsurf {

namespace {

// num/den -> canonical form, assuming den != 0.
void canonicalize(Poly& num, Poly& den) {
    if (num.is_zero()) {
        den = Poly(1L);
        return;
    }
    if (den.is_constant()) {
        num *= Scalar(1) / den.constant_value();
        den = Poly(1L);
        return;
    }
    Poly g = gcd(num, den);
    if (!g.is_constant()) {
        num = exact_quotient(num, g);
        den = exact_quotient(den, g);
    }
    Scalar s;
    den = den.integer_primitive(&s);
    if (s != 1) num *= s;
}

}  // namespace

Rat::Rat(const Poly& num, const Poly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw Error("DivisionByZero", "zero denominator");
    canonicalize(num_, den_);
}

Rat Rat::from_reduced(Poly num, Poly den) {
    Rat r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

Scalar Rat::constant_value() const {
    if (!is_constant()) throw Error("NotConstant", str());
    return num_.constant_value() / den_.constant_value();
}

Rat operator+(const Rat& lhs, const Rat& rhs) {
    if (lhs.is_zero()) return rhs;
    if (rhs.is_zero()) return lhs;
    if (lhs.den_ == rhs.den_) {
        if (lhs.den_.is_constant()) return Rat::from_reduced(lhs.num_ + rhs.num_, lhs.den_);
        return Rat(lhs.num_ + rhs.num_, lhs.den_);
    }
    if (lhs.is_polynomial()) return Rat::from_reduced(lhs.num_ * rhs.den_ + rhs.num_, rhs.den_);
    if (rhs.is_polynomial()) return Rat::from_reduced(rhs.num_ * lhs.den_ + lhs.num_, lhs.den_);
    // p/q + r/s with g = gcd(q, s): (p*(s/g) + r*(q/g)) / (q*s/g)
    Poly g = gcd(lhs.den_, rhs.den_);
    Poly sq = exact_quotient(rhs.den_, g), qq = exact_quotient(lhs.den_, g);
    return Rat(lhs.num_ * sq + rhs.num_ * qq, lhs.den_ * sq);
}

Rat operator*(const Rat& lhs, const Rat& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return Rat();
    if (lhs.is_polynomial() && rhs.is_polynomial()) return Rat::from_reduced(lhs.num_ * rhs.num_, Poly(1L));
    // cross-cancel: gcd(p, s) and gcd(r, q) suffice since inputs are reduced
    Poly g1 = gcd(lhs.num_, rhs.den_), g2 = gcd(rhs.num_, lhs.den_);
    Poly n = exact_quotient(lhs.num_, g1) * exact_quotient(rhs.num_, g2);
    Poly d = exact_quotient(rhs.den_, g1) * exact_quotient(lhs.den_, g2);
    Scalar s;
    d = d.integer_primitive(&s);
    if (s != 1) n *= s;
    return Rat::from_reduced(std::move(n), std::move(d));
}

Rat operator/(const Rat& lhs, const Rat& rhs) {
    if (rhs.is_zero()) throw Error("DivisionByZero", "division by the zero rational function");
    Poly d = rhs.num_;
    Scalar s;
    d = d.integer_primitive(&s);
    Rat inv = Rat::from_reduced(rhs.den_ * s, d);
    return lhs * inv;
}

Rat Rat::pow(int exponent) const {
    if (exponent < 0) return Rat(1L) / pow(-exponent);
    // gcd(num^k, den^k) = 1 already; the leading coefficient of den^k stays positive
    Poly n = num_.pow(uint32_t(exponent)), d = den_.pow(uint32_t(exponent));
    Scalar s;
    d = d.integer_primitive(&s);
    if (s != 1) n *= s;
    return from_reduced(std::move(n), std::move(d));
}

std::string Rat::str() const {
    if (den_.is_constant()) return num_.str();
    std::string n = num_.str(), d = den_.str();
    if (num_.size() > 1) n = "(" + n + ")";
    if (den_.size() > 1 || d.find('*') != std::string::npos) d = "(" + d + ")";
    return n + "/" + d;
}

Rat arith(const Rat& lhs, const Rat& rhs, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return lhs + rhs;
        case ArithOp::Sub: return lhs - rhs;
        case ArithOp::Mul: return lhs * rhs;
        case ArithOp::Div: return lhs / rhs;
    }
    return Rat();
}

Rat reduce(const Poly& num, const Poly& den) { return Rat(num, den); }

namespace {

// P(bindings) as a fraction over the common denominator prod d_i^{deg_i P}.
struct Expanded {
    Poly num;
    std::map<std::string, int32_t> den_pows;  // per bound variable
};

struct PowCache {
    std::vector<Poly> pows{Poly(1L)};
    const Poly* base;
    const Poly& get(int32_t k) {
        while (int32_t(pows.size()) <= k) pows.push_back(pows.back() * *base);
        return pows[k];
    }
};

Expanded expand(const Poly& p, const Bindings& bindings, std::map<std::string, PowCache>& ncache,
                std::map<std::string, PowCache>& dcache) {
    Expanded out;
    std::vector<int> bound;
    const auto& vars = p.vars();
    for (size_t i = 0; i < vars.size(); ++i)
        if (bindings.count(vars[i])) {
            bound.push_back(int(i));
            out.den_pows[vars[i]] = p.degree(vars[i]);
        }
    if (bound.empty()) {
        out.num = p;
        return out;
    }
    // Group terms by bound exponent pattern to share the product of powers.
    std::map<std::vector<int32_t>, std::vector<Poly::Term>> groups;
    std::vector<std::string> free_vars;
    std::vector<int> free_idx;
    for (size_t i = 0; i < vars.size(); ++i)
        if (!bindings.count(vars[i])) free_vars.push_back(vars[i]), free_idx.push_back(int(i));
    for (auto& t : p.terms()) {
        std::vector<int32_t> key;
        for (int i : bound) key.push_back(t.exps[i]);
        Poly::Term ft;
        for (int i : free_idx) ft.exps.push_back(t.exps[i]);
        ft.coef = t.coef;
        groups[key].push_back(std::move(ft));
    }
    Poly acc;
    for (auto& [key, terms] : groups) {
        Poly prod = Poly::from_terms(free_vars, terms);
        for (size_t j = 0; j < bound.size(); ++j) {
            const std::string& name = vars[bound[j]];
            int32_t e = key[j], total = out.den_pows[name];
            if (e) prod *= ncache[name].get(e);
            if (total - e) {
                const Poly& dp = dcache[name].get(total - e);
                if (!(dp.is_constant() && dp.constant_value() == 1)) prod *= dp;
            }
        }
        acc += prod;
    }
    out.num = std::move(acc);
    return out;
}

}  // namespace

std::pair<Poly, Poly> substitute_fraction(const Rat& f, const Bindings& bindings) {
    std::map<std::string, PowCache> ncache, dcache;
    for (auto& [name, val] : bindings) {
        ncache[name].base = &val.num();
        dcache[name].base = &val.den();
    }
    Expanded n = expand(f.num(), bindings, ncache, dcache);
    Expanded d = expand(f.den(), bindings, ncache, dcache);
    Poly num = n.num, den = d.num;
    if (den.is_zero()) throw Error("DenominatorVanishes", "substituted denominator of " + f.str() + " is zero");
    // multiply through by d_i^{max(...)}: num gets d_i^{dd - dn} when positive, den the opposite
    for (auto& [name, val] : bindings) {
        int32_t en = n.den_pows.count(name) ? n.den_pows[name] : 0;
        int32_t ed = d.den_pows.count(name) ? d.den_pows[name] : 0;
        if (ed > en) num *= dcache[name].get(ed - en);
        if (en > ed) den *= dcache[name].get(en - ed);
    }
    return {num, den};
}

Rat substitute(const Rat& f, const Bindings& bindings) {
    auto [num, den] = substitute_fraction(f, bindings);
    return Rat(num, den);
}

bool same_fraction(const std::pair<Poly, Poly>& lhs, const std::pair<Poly, Poly>& rhs) {
    return lhs.first * rhs.second == rhs.first * lhs.second;
}

Rat differentiate(const Rat& f, const std::string& var) {
    Poly dn = f.num().derivative(var), dd = f.den().derivative(var);
    if (dd.is_zero()) return Rat(dn, f.den());
    return Rat(dn * f.den() - f.num() * dd, f.den() * f.den());
}

Scalar eval(const Rat& f, const std::map<std::string, Scalar>& point) {
    Scalar d = f.den().eval(point);
    if (d == 0) throw Error("EvalPole", "denominator of " + f.str() + " vanishes");
    return f.num().eval(point) / d;
}

Rat specialize(const Rat& f, const std::map<std::string, Scalar>& point) {
    Poly d = f.den().partial_eval(point);
    if (d.is_zero()) throw Error("DenominatorVanishes", "denominator of " + f.str() + " vanishes on specialization");
    return Rat(f.num().partial_eval(point), d);
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    Rat parse() {
        Rat r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) {
        throw Error("ParseError", msg + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    // accepts both ASCII '-' and the unicode minus sign
    bool accept_minus() {
        if (accept('-')) return true;
        skip();
        if (s_.compare(pos_, 3, "\xE2\x88\x92") == 0) {
            pos_ += 3;
            return true;
        }
        return false;
    }

    Rat expr() {
        Rat r = term();
        while (true) {
            if (accept('+'))
                r += term();
            else if (accept_minus())
                r -= term();
            else
                return r;
        }
    }
    Rat term() {
        Rat r = unary();
        while (true) {
            if (accept('*'))
                r *= unary();
            else if (accept('/'))
                r /= unary();
            else
                return r;
        }
    }
    Rat unary() {
        if (accept_minus()) return -unary();
        if (accept('+')) return unary();
        return power();
    }
    Rat power() {
        Rat base = atom();
        if (accept('^')) {
            bool neg = accept_minus();
            skip();
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            long e = std::stol(s_.substr(start, pos_ - start));
            if (e > 100000) fail("exponent too large");
            return base.pow(int(neg ? -e : e));
        }
        return base;
    }
    Rat atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Rat r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Rat(Scalar(mpz_class(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Rat::variable(s_.substr(start, pos_ - start));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

}  // namespace

Rat parse_expr(const std::string& text) { return Parser(text).parse(); }

}  // namespace addsurf
