#include "addsurf/poly.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <unordered_map>

namespace addsurf {

namespace {

int priority(const std::string& name) {
    static const char* const kFirst[] = {"x", "y", "u", "v", "a", "b"};
    for (int i = 0; i < 6; ++i)
        if (name == kFirst[i]) return i;
    return 6;
}

int32_t checked_add(int32_t lhs, int32_t rhs) {
    int64_t sum = int64_t(lhs) + int64_t(rhs);
    if (sum > INT32_MAX / 2 || sum < 0) throw Error("ExponentOverflow", "exponent " + std::to_string(sum));
    return int32_t(sum);
}

int64_t degree_of(const Poly::Exps& e) {
    int64_t d = 0;
    for (auto x : e) d += x;
    return d;
}

// Graded lex, returns >0 if lhs is bigger.
int grlex_cmp(const Poly::Exps& lhs, const Poly::Exps& rhs) {
    int64_t dl = degree_of(lhs), dr = degree_of(rhs);
    if (dl != dr) return dl > dr ? 1 : -1;
    for (size_t i = 0; i < lhs.size(); ++i)
        if (lhs[i] != rhs[i]) return lhs[i] > rhs[i] ? 1 : -1;
    return 0;
}

bool is_integer(const Scalar& q) { return mpz_cmp_ui(mpq_denref(q.get_mpq_t()), 1) == 0; }

// integer fast paths skip the canonicalizing gcd inside mpq arithmetic
void mul_into(Scalar& out, const Scalar& lhs, const Scalar& rhs) {
    if (is_integer(lhs) && is_integer(rhs)) {
        mpz_mul(mpq_numref(out.get_mpq_t()), mpq_numref(lhs.get_mpq_t()), mpq_numref(rhs.get_mpq_t()));
        mpz_set_ui(mpq_denref(out.get_mpq_t()), 1);
    } else {
        mpq_mul(out.get_mpq_t(), lhs.get_mpq_t(), rhs.get_mpq_t());
    }
}

void add_into(Scalar& acc, const Scalar& rhs) {
    if (is_integer(acc) && is_integer(rhs))
        mpz_add(mpq_numref(acc.get_mpq_t()), mpq_numref(acc.get_mpq_t()), mpq_numref(rhs.get_mpq_t()));
    else
        acc += rhs;
}

struct ExpsHash {
    size_t operator()(const Poly::Exps& e) const {
        size_t h = 1469598103934665603ull;
        for (auto x : e) h = (h ^ uint32_t(x)) * 1099511628211ull;
        return h;
    }
};

bool term_greater(const Poly::Term& lhs, const Poly::Term& rhs) { return grlex_cmp(lhs.exps, rhs.exps) > 0; }

}  // namespace

bool var_less(const std::string& lhs, const std::string& rhs) {
    int pl = priority(lhs), pr = priority(rhs);
    if (pl != pr) return pl < pr;
    return lhs < rhs;
}

Poly::Poly(long value) : Poly(Scalar(value)) {}

Poly::Poly(const Scalar& value) {
    if (value != 0) terms_.push_back({{}, value});
}

Poly Poly::variable(const std::string& name, int32_t exponent) {
    Poly p;
    if (exponent < 0) throw Error("ExponentOverflow", "negative exponent");
    if (exponent == 0) return Poly(1L);
    p.vars_ = {name};
    p.terms_.push_back({{exponent}, Scalar(1)});
    return p;
}

Poly Poly::from_terms(std::vector<std::string> vars, std::vector<Term> terms) {
    Poly p;
    // sort vars and permute exponent vectors accordingly
    std::vector<size_t> idx(vars.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t l, size_t r) { return var_less(vars[l], vars[r]); });
    for (size_t i = 0; i + 1 < idx.size(); ++i)
        if (vars[idx[i]] == vars[idx[i + 1]]) throw Error("DuplicateVariable", vars[idx[i]]);
    for (auto i : idx) p.vars_.push_back(vars[i]);
    for (auto& t : terms) {
        Exps e(idx.size());
        for (size_t i = 0; i < idx.size(); ++i) e[i] = t.exps[idx[i]];
        p.terms_.push_back({std::move(e), std::move(t.coef)});
    }
    p.normalize();
    return p;
}

void Poly::normalize() {
    std::sort(terms_.begin(), terms_.end(), term_greater);
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exps == t.exps)
            merged.back().coef += t.coef;
        else
            merged.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : merged)
        if (t.coef != 0) terms_.push_back(std::move(t));
    // drop unused variables
    std::vector<bool> used(vars_.size(), false);
    for (auto& t : terms_)
        for (size_t i = 0; i < vars_.size(); ++i)
            if (t.exps[i] != 0) used[i] = true;
    if (std::find(used.begin(), used.end(), false) == used.end()) return;
    std::vector<std::string> nv;
    for (size_t i = 0; i < vars_.size(); ++i)
        if (used[i]) nv.push_back(vars_[i]);
    for (auto& t : terms_) {
        Exps e;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (used[i]) e.push_back(t.exps[i]);
        t.exps = std::move(e);
    }
    vars_ = std::move(nv);
    // order is unaffected by dropping all-zero columns
}

std::vector<std::string> merge_vars(const Poly& lhs, const Poly& rhs) {
    if (lhs.vars_ == rhs.vars_) return lhs.vars_;
    std::vector<std::string> out;
    std::set_union(lhs.vars_.begin(), lhs.vars_.end(), rhs.vars_.begin(), rhs.vars_.end(),
                   std::back_inserter(out), var_less);
    return out;
}

Poly Poly::remapped(const std::vector<std::string>& target) const {
    if (target == vars_) return *this;
    Poly p;
    p.vars_ = target;
    std::vector<size_t> pos(vars_.size());
    size_t j = 0;
    for (size_t i = 0; i < vars_.size(); ++i) {
        while (target[j] != vars_[i]) ++j;
        pos[i] = j;
    }
    p.terms_.reserve(terms_.size());
    for (auto& t : terms_) {
        Exps e(target.size(), 0);
        for (size_t i = 0; i < vars_.size(); ++i) e[pos[i]] = t.exps[i];
        p.terms_.push_back({std::move(e), t.coef});
    }
    // grlex order is preserved under inserting zero columns
    return p;
}

Scalar Poly::constant_value() const {
    if (!is_constant()) throw Error("NotConstant", str());
    return terms_.empty() ? Scalar(0) : terms_[0].coef;
}

bool Poly::uses(const std::string& var) const { return var_index(var) >= 0; }

int Poly::var_index(const std::string& var) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == var) return int(i);
    return -1;
}

int32_t Poly::degree(const std::string& var) const {
    int i = var_index(var);
    if (i < 0) return 0;
    int32_t d = 0;
    for (auto& t : terms_) d = std::max(d, t.exps[i]);
    return d;
}

int32_t Poly::total_degree() const { return terms_.empty() ? 0 : int32_t(degree_of(terms_[0].exps)); }

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& t : p.terms_) t.coef = -t.coef;
    return p;
}

Poly& Poly::operator+=(const Poly& rhs) {
    if (rhs.is_zero()) return *this;
    if (is_zero()) return *this = rhs;
    auto vars = merge_vars(*this, rhs);
    Poly l = remapped(vars), r = rhs.remapped(vars);
    std::vector<Term> out;
    out.reserve(l.terms_.size() + r.terms_.size());
    size_t i = 0, j = 0;
    while (i < l.terms_.size() || j < r.terms_.size()) {
        int c = i == l.terms_.size() ? -1 : j == r.terms_.size() ? 1 : grlex_cmp(l.terms_[i].exps, r.terms_[j].exps);
        if (c > 0) {
            out.push_back(std::move(l.terms_[i++]));
        } else if (c < 0) {
            out.push_back(std::move(r.terms_[j++]));
        } else {
            Scalar s = l.terms_[i].coef + r.terms_[j].coef;
            if (s != 0) out.push_back({std::move(l.terms_[i].exps), s});
            ++i, ++j;
        }
    }
    vars_ = std::move(vars);
    terms_ = std::move(out);
    {
        // cancellation may leave unused variables
        bool any_drop = false;
        for (size_t k = 0; k < vars_.size() && !any_drop; ++k) {
            bool used = false;
            for (auto& t : terms_)
                if (t.exps[k]) { used = true; break; }
            if (!used) any_drop = true;
        }
        if (any_drop) normalize();
    }
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) { return *this += -rhs; }

Poly operator*(const Poly& lhs, const Poly& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return Poly();
    if (lhs.is_constant()) return rhs * lhs.terms_[0].coef;
    if (rhs.is_constant()) return lhs * rhs.terms_[0].coef;
    auto vars = merge_vars(lhs, rhs);
    Poly l = lhs.remapped(vars), r = rhs.remapped(vars);
    // accumulate like monomials in place, then sort the distinct ones
    std::unordered_map<Poly::Exps, Scalar, ExpsHash> acc;
    acc.reserve(l.terms_.size() * 2);
    Poly::Exps e(vars.size());
    Scalar prod;
    for (auto& a : l.terms_)
        for (auto& b : r.terms_) {
            for (size_t k = 0; k < e.size(); ++k) e[k] = checked_add(a.exps[k], b.exps[k]);
            mul_into(prod, a.coef, b.coef);
            auto [it, fresh] = acc.try_emplace(e, prod);
            if (!fresh) add_into(it->second, prod);
        }
    Poly p;
    p.vars_ = vars;
    p.terms_.reserve(acc.size());
    for (auto& [exps, coef] : acc)
        if (coef != 0) p.terms_.push_back({exps, std::move(coef)});
    p.normalize();
    return p;
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly& Poly::operator*=(const Scalar& rhs) {
    if (rhs == 0) {
        terms_.clear();
        vars_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coef *= rhs;
    return *this;
}

bool operator==(const Poly& lhs, const Poly& rhs) {
    if (lhs.vars_ != rhs.vars_ || lhs.terms_.size() != rhs.terms_.size()) return false;
    for (size_t i = 0; i < lhs.terms_.size(); ++i)
        if (lhs.terms_[i].exps != rhs.terms_[i].exps || lhs.terms_[i].coef != rhs.terms_[i].coef) return false;
    return true;
}

bool operator<(const Poly& lhs, const Poly& rhs) {
    if (lhs.vars_ != rhs.vars_) return lhs.vars_ < rhs.vars_;
    if (lhs.terms_.size() != rhs.terms_.size()) return lhs.terms_.size() < rhs.terms_.size();
    for (size_t i = 0; i < lhs.terms_.size(); ++i) {
        if (lhs.terms_[i].exps != rhs.terms_[i].exps) return lhs.terms_[i].exps < rhs.terms_[i].exps;
        if (lhs.terms_[i].coef != rhs.terms_[i].coef) return lhs.terms_[i].coef < rhs.terms_[i].coef;
    }
    return false;
}

Poly Poly::pow(uint32_t exponent) const {
    Poly result(1L), base = *this;
    while (exponent) {
        if (exponent & 1) result *= base;
        exponent >>= 1;
        if (exponent) base = base * base;
    }
    return result;
}

Poly Poly::derivative(const std::string& var) const {
    int i = var_index(var);
    if (i < 0) return Poly();
    Poly p;
    p.vars_ = vars_;
    for (auto& t : terms_) {
        if (t.exps[i] == 0) continue;
        Term nt = t;
        nt.coef *= t.exps[i];
        nt.exps[i] -= 1;
        p.terms_.push_back(std::move(nt));
    }
    p.normalize();
    return p;
}

std::vector<Poly> Poly::coefficients(const std::string& var) const {
    int i = var_index(var);
    if (i < 0) return {*this};
    std::vector<std::vector<Term>> buckets(degree(var) + 1);
    for (auto& t : terms_) {
        Term nt = t;
        nt.exps[i] = 0;
        buckets[t.exps[i]].push_back(std::move(nt));
    }
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) {
        Poly p;
        p.vars_ = vars_;
        p.terms_ = std::move(b);
        p.normalize();
        out.push_back(std::move(p));
    }
    return out;
}

Poly Poly::from_coefficients(const std::string& var, const std::vector<Poly>& coeffs) {
    Poly out;
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (!coeffs[i].is_zero()) out += coeffs[i] * Poly::variable(var, int32_t(i));
    return out;
}

Poly Poly::partial_eval(const std::map<std::string, Scalar>& values) const {
    std::vector<int> bound;
    for (size_t i = 0; i < vars_.size(); ++i)
        if (values.count(vars_[i])) bound.push_back(int(i));
    if (bound.empty()) return *this;
    Poly p;
    p.vars_ = vars_;
    for (auto& t : terms_) {
        Term nt = t;
        for (int i : bound) {
            const Scalar& val = values.at(vars_[i]);
            if (t.exps[i]) {
                mpz_class num, den;
                mpz_pow_ui(num.get_mpz_t(), val.get_num_mpz_t(), t.exps[i]);
                mpz_pow_ui(den.get_mpz_t(), val.get_den_mpz_t(), t.exps[i]);
                nt.coef *= Scalar(num, den);
            }
            nt.exps[i] = 0;
        }
        if (nt.coef != 0) p.terms_.push_back(std::move(nt));
    }
    p.normalize();
    return p;
}

Scalar Poly::eval(const std::map<std::string, Scalar>& values) const {
    for (auto& v : vars_)
        if (!values.count(v)) throw Error("UnboundVariable", v);
    return partial_eval(values).constant_value();
}

Poly Poly::monomial_content() const {
    if (terms_.empty()) return Poly();
    Exps m = terms_[0].exps;
    for (auto& t : terms_)
        for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], t.exps[i]);
    Poly p;
    p.vars_ = vars_;
    p.terms_.push_back({m, Scalar(1)});
    p.normalize();
    return p;
}

Poly Poly::integer_primitive(Scalar* scale) const {
    if (terms_.empty()) {
        if (scale) *scale = 1;
        return *this;
    }
    mpz_class l = 1, g = 0;
    for (auto& t : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
    for (auto& t : terms_) {
        mpz_class n = t.coef.get_num() * (l / t.coef.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    Scalar s(l, g);
    s.canonicalize();
    if (terms_[0].coef < 0) s = -s;
    if (scale) *scale = s;
    Poly p = *this;
    if (s != 1) p *= s;
    return p;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (size_t k = 0; k < terms_.size(); ++k) {
        const auto& t = terms_[k];
        Scalar c = t.coef;
        if (k == 0) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (c < 0) c = -c;
        std::string mono;
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (!t.exps[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[i];
            if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
        }
        if (mono.empty())
            os << c.get_str();
        else if (c == 1)
            os << mono;
        else
            os << c.get_str() << "*" << mono;
    }
    return os.str();
}

bool divide_exact(const Poly& dividend, const Poly& divisor, Poly* quotient) {
    if (divisor.is_zero()) throw Error("DivisionByZero", "polynomial division by zero");
    if (dividend.is_zero()) {
        if (quotient) *quotient = Poly();
        return true;
    }
    if (divisor.is_constant()) {
        if (quotient) *quotient = dividend * (Scalar(1) / divisor.constant_value());
        return true;
    }
    for (auto& v : divisor.vars())
        if (dividend.degree(v) < divisor.degree(v)) return false;
    if (dividend.total_degree() < divisor.total_degree()) return false;

    auto vars = merge_vars(dividend, divisor);
    if (vars != dividend.vars()) return false;  // divisor uses a variable the dividend lacks
    std::vector<Poly::Term> rem = dividend.terms();
    std::vector<Poly::Term> dterms;
    {
        // place divisor exponents in the dividend's columns
        std::vector<size_t> pos(divisor.vars().size());
        size_t j = 0;
        for (size_t i = 0; i < divisor.vars().size(); ++i) {
            while (vars[j] != divisor.vars()[i]) ++j;
            pos[i] = j;
        }
        for (auto& t : divisor.terms()) {
            Poly::Exps e(vars.size(), 0);
            for (size_t i = 0; i < pos.size(); ++i) e[pos[i]] = t.exps[i];
            dterms.push_back({std::move(e), t.coef});
        }
    }
    const auto& lead = dterms[0];
    Scalar inv_lead = Scalar(1) / lead.coef;
    std::vector<Poly::Term> quot;
    while (!rem.empty()) {
        const auto& lt = rem[0];
        Poly::Exps qe(vars.size());
        for (size_t i = 0; i < vars.size(); ++i) {
            qe[i] = lt.exps[i] - lead.exps[i];
            if (qe[i] < 0) return false;
        }
        Scalar qc = lt.coef * inv_lead;
        // rem -= qc * x^qe * divisor, merged in grlex order
        std::vector<Poly::Term> sub;
        sub.reserve(dterms.size());
        for (auto& t : dterms) {
            Poly::Exps e(vars.size());
            for (size_t i = 0; i < vars.size(); ++i) e[i] = t.exps[i] + qe[i];
            sub.push_back({std::move(e), t.coef * qc});
        }
        std::vector<Poly::Term> out;
        out.reserve(rem.size() + sub.size());
        size_t i = 0, j = 0;
        while (i < rem.size() || j < sub.size()) {
            int c = i == rem.size() ? -1 : j == sub.size() ? 1 : grlex_cmp(rem[i].exps, sub[j].exps);
            if (c > 0) {
                out.push_back(std::move(rem[i++]));
            } else if (c < 0) {
                out.push_back({std::move(sub[j].exps), -sub[j].coef});
                ++j;
            } else {
                Scalar s = rem[i].coef - sub[j].coef;
                if (s != 0) out.push_back({std::move(rem[i].exps), s});
                ++i, ++j;
            }
        }
        rem = std::move(out);
        quot.push_back({std::move(qe), qc});
    }
    if (quotient) *quotient = Poly::from_terms(vars, std::move(quot));
    return true;
}

Poly exact_quotient(const Poly& dividend, const Poly& divisor) {
    Poly q;
    if (!divide_exact(dividend, divisor, &q))
        throw Error("InexactDivision", "(" + dividend.str() + ") / (" + divisor.str() + ")");
    return q;
}

}  // namespace addsurf
