// Multivariate gcd over Q: recursive content / primitive part with a
// subresultant remainder sequence in one main variable.
#include <algorithm>
#include <random>

#include "addsurf/poly.hpp"

namespace addsurf {

namespace {

using UPoly = std::vector<Poly>;  // coefficients in the main variable, low degree first

int udeg(const UPoly& p) { return int(p.size()) - 1; }

void utrim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
UPoly prem(UPoly a, const UPoly& b) {
    int db = udeg(b);
    int e = udeg(a) - db + 1;
    const Poly& lb = b.back();
    while (!a.empty() && udeg(a) >= db) {
        Poly la = a.back();
        int shift = udeg(a) - db;
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
        utrim(a);
        --e;
    }
    if (e > 0) {
        Poly f = lb.pow(uint32_t(e));
        for (auto& c : a) c *= f;
    }
    return a;
}

Poly content_of(const UPoly& p);

Poly gcd_core(const Poly& f, const Poly& g);

Poly content_of(const UPoly& p) {
    Poly c;
    for (auto& coef : p) {
        if (coef.is_zero()) continue;
        c = c.is_zero() ? coef.integer_primitive() : gcd_core(c, coef);
        if (c.is_constant()) return Poly(1L);
    }
    return c;
}

std::string pick_main_var(const Poly& f, const Poly& g) {
    std::string best;
    int32_t best_deg = INT32_MAX;
    for (auto& v : f.vars()) {
        if (!g.uses(v)) continue;
        int32_t d = std::max(f.degree(v), g.degree(v));
        if (d < best_deg) best_deg = d, best = v;
    }
    return best;
}

Poly primitive_in(const Poly& f, const std::string& var, Poly* content = nullptr) {
    auto coeffs = f.coefficients(var);
    Poly c = content_of(coeffs);
    if (content) *content = c;
    if (c.is_constant()) return f.integer_primitive();
    return exact_quotient(f, c).integer_primitive();
}

Poly subresultant_gcd(const Poly& f, const Poly& g, const std::string& var) {
    UPoly a = f.coefficients(var), b = g.coefficients(var);
    if (udeg(a) < udeg(b)) std::swap(a, b);
    Poly gg(1L), h(1L);
    while (true) {
        int delta = udeg(a) - udeg(b);
        UPoly r = prem(a, b);
        if (r.empty()) break;
        if (udeg(r) == 0) return Poly(1L);
        Poly div = gg * h.pow(uint32_t(delta));
        for (auto& c : r) c = exact_quotient(c, div);
        a = std::move(b);
        b = std::move(r);
        gg = a.back();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = gg;
        } else {
            h = exact_quotient(gg.pow(uint32_t(delta)), h.pow(uint32_t(delta - 1)));
        }
    }
    return primitive_in(Poly::from_coefficients(var, b), var);
}

using QPoly = std::vector<Scalar>;  // dense univariate, low degree first

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qrem(QPoly a, const QPoly& b) {
    while (a.size() >= b.size()) {
        Scalar f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        qtrim(a);
    }
    return a;
}

// Degree of gcd(a, b) over Q.
int qgcd_degree(QPoly a, QPoly b) {
    while (!b.empty()) {
        QPoly r = qrem(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return int(a.size()) - 1;
}

// Image of p at the point, as a univariate polynomial in var; empty if the
// leading coefficient in var vanishes there.
QPoly univariate_image(const Poly& p, const std::string& var, const std::map<std::string, Scalar>& point) {
    QPoly out;
    for (auto& c : p.coefficients(var)) out.push_back(c.partial_eval(point).constant_value());
    if (out.empty() || out.back() == 0) return {};
    return out;
}

// True when some shared variable has a trivial gcd image for every variable,
// which certifies that the gcd of f and g is a constant. A nontrivial image
// proves nothing, so false only means "unknown".
bool certainly_coprime(const Poly& f, const Poly& g) {
    static thread_local std::mt19937 rng(0x5eed);
    std::vector<std::string> all = f.vars();
    for (auto& v : g.vars())
        if (!f.uses(v)) all.push_back(v);
    for (auto& var : f.vars()) {
        if (!g.uses(var)) continue;
        bool settled = false;
        for (int attempt = 0; attempt < 3 && !settled; ++attempt) {
            std::map<std::string, Scalar> point;
            for (auto& v : all)
                if (v != var) point[v] = Scalar(long(rng() % 199) - 99);
            QPoly fi = univariate_image(f, var, point), gi = univariate_image(g, var, point);
            if (fi.empty() || gi.empty()) continue;
            if (qgcd_degree(fi, gi) > 0) return false;
            settled = true;
        }
        if (!settled) return false;
    }
    return true;
}

// Heuristic gcd for integer polynomials: evaluate one variable at a large
// integer, recurse, rebuild the gcd from its balanced base-xi digits and
// keep it only if it divides both inputs.
struct HeuFailed {};

const size_t kHeuMaxVars = 3;
// bits of xi^degree beyond which evaluation costs more than the fallback
const size_t kHeuMaxBits = 20000;

mpz_class max_norm(const Poly& p) {
    mpz_class m = 0;
    for (auto& t : p.terms()) {
        mpz_class a = abs(t.coef.get_num());
        if (a > m) m = a;
    }
    return m;
}

mpz_class integer_content(const Poly& p) {
    mpz_class c = 0;
    for (auto& t : p.terms()) c = gcd(c, t.coef.get_num());
    return c;
}

Poly interpolate(const Poly& h, const mpz_class& xi, const std::string& var) {
    std::vector<std::string> vars = h.vars();
    vars.push_back(var);
    std::vector<Poly::Term> terms;
    mpz_class half = xi / 2;
    for (auto& t : h.terms()) {
        mpz_class c = t.coef.get_num();
        for (int32_t i = 0; c != 0; ++i) {
            mpz_class d;
            mpz_fdiv_r(d.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
            if (d > half) d -= xi;
            if (d != 0) {
                Poly::Exps e = t.exps;
                e.push_back(i);
                terms.push_back({std::move(e), Scalar(d)});
            }
            c = (c - d) / xi;
        }
    }
    return Poly::from_terms(vars, terms);
}

// Full gcd including the integer content; inputs have integer coefficients.
Poly heu_gcd(const Poly& f, const Poly& g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    if (f.is_constant() || g.is_constant()) {
        mpz_class c = gcd(integer_content(f), integer_content(g));
        return Poly(Scalar(c));
    }
    mpz_class common = gcd(integer_content(f), integer_content(g));
    Poly fp = f * Scalar(mpz_class(1), common), gp = g * Scalar(mpz_class(1), common);
    std::vector<std::string> all = f.vars();
    for (auto& v : g.vars())
        if (!f.uses(v)) all.push_back(v);
    std::sort(all.begin(), all.end(), var_less);
    const std::string var = all.back();
    mpz_class fn = max_norm(fp), gn = max_norm(gp);
    mpz_class b = 2 * std::min(fn, gn) + 29;
    mpz_class lf = abs(fp.leading_coef().get_num()), lg = abs(gp.leading_coef().get_num());
    mpz_class xi = std::max(mpz_class(std::min(b, mpz_class(99 * sqrt(b)))), mpz_class(2 * std::min(fn / lf, gn / lg) + 4));
    const size_t degree = size_t(std::max(fp.degree(var), gp.degree(var))) + 1;
    for (int attempt = 0; attempt < 6; ++attempt) {
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) * degree > kHeuMaxBits) break;
        std::map<std::string, Scalar> at{{var, Scalar(xi)}};
        Poly fe = fp.partial_eval(at), ge = gp.partial_eval(at);
        if (!fe.is_zero() && !ge.is_zero()) {
            Poly h = interpolate(heu_gcd(fe, ge), xi, var);
            if (!h.is_zero()) {
                h = h.integer_primitive();
                if (divide_exact(fp, h, nullptr) && divide_exact(gp, h, nullptr)) return h * Scalar(common);
            }
        }
        xi = 73794 * xi * sqrt(mpz_class(sqrt(xi))) / 27011;
    }
    throw HeuFailed{};
}

// Both inputs nonzero. Result is integer-primitive with positive leading coefficient.
Poly gcd_core(const Poly& f0, const Poly& g0) {
    if (f0.is_constant() || g0.is_constant()) return Poly(1L);
    Poly f = f0.integer_primitive(), g = g0.integer_primitive();
    if (f == g) return f;

    Poly mf = f.monomial_content(), mg = g.monomial_content();
    Poly mono = Poly(1L);
    if (!mf.is_constant() || !mg.is_constant()) {
        // gcd of two monomials: componentwise minimum
        std::vector<std::string> vars;
        std::vector<Poly::Term> t(1);
        for (auto& v : mf.vars())
            if (mg.uses(v)) {
                vars.push_back(v);
                t[0].exps.push_back(std::min(mf.degree(v), mg.degree(v)));
            }
        t[0].coef = 1;
        mono = Poly::from_terms(vars, t);
        if (!mf.is_constant()) f = exact_quotient(f, mf);
        if (!mg.is_constant()) g = exact_quotient(g, mg);
        if (f.is_constant() || g.is_constant()) return mono;
    }
    if (f.is_monomial() || g.is_monomial()) return mono;  // monomial content already removed
    if (certainly_coprime(f, g)) return mono;
    std::vector<std::string> joint = f.vars();
    for (auto& v : g.vars())
        if (!f.uses(v)) joint.push_back(v);
    // evaluation sizes grow geometrically with the number of variables
    if (joint.size() <= kHeuMaxVars) try {
        return (mono * heu_gcd(f, g)).integer_primitive();
    } catch (const HeuFailed&) {
    }

    // trial division by the smaller one
    const Poly& small = f.size() <= g.size() ? f : g;
    const Poly& large = f.size() <= g.size() ? g : f;
    if (divide_exact(large, small, nullptr)) return (mono * small).integer_primitive();

    std::string var = pick_main_var(f, g);
    if (var.empty()) {
        // no shared variable: gcd must be constant
        return mono;
    }
    // a variable present in only one argument only contributes through content
    for (auto& v : f.vars())
        if (!g.uses(v)) return (mono * gcd_core(content_of(f.coefficients(v)), g)).integer_primitive();
    for (auto& v : g.vars())
        if (!f.uses(v)) return (mono * gcd_core(f, content_of(g.coefficients(v)))).integer_primitive();

    Poly cf, cg;
    Poly pf = primitive_in(f, var, &cf);
    Poly pg = primitive_in(g, var, &cg);
    Poly c = gcd_core(cf, cg);
    Poly h = subresultant_gcd(pf, pg, var);
    return (mono * c * h).integer_primitive();
}

}  // namespace

Poly gcd(const Poly& lhs, const Poly& rhs) {
    if (lhs.is_zero()) return rhs.integer_primitive();
    if (rhs.is_zero()) return lhs.integer_primitive();
    return gcd_core(lhs, rhs);
}

}  // namespace addsurf
