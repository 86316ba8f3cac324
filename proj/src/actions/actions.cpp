#include "addsurf/actions.hpp"

#include <algorithm>
#include <cstdlib>

namespace addsurf {

namespace {

Rat var(const char* name) { return Rat::variable(name); }

int max_r() {
    // degree cap, optionally raised through the environment
    if (const char* env = std::getenv("ADDSURF_MAX_R")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 12;
}

RatPair apply(const RatPair& outer, const RatPair& inner, const char* sx, const char* sy) {
    Bindings b{{sx, inner.first}, {sy, inner.second}};
    return {substitute(outer.first, b), substitute(outer.second, b)};
}

// One conjugation step: forward o m o inverse.
RatPair conjugate(const RatPair& m, const ChartStep& step, bool m_on_open_orbit) {
    const char* sx = m_on_open_orbit ? "x" : "u";
    const char* sy = m_on_open_orbit ? "y" : "v";
    RatPair inner = apply(m, step.inverse, sx, sy);
    return apply(step.forward, inner, sx, sy);
}

std::pair<bool, Rat> at_origin(const Rat& f) {
    try {
        return {true, specialize(f, {{"u", 0}, {"v", 0}})};
    } catch (const Error& e) {
        if (e.kind() != "DenominatorVanishes") throw;
        return {false, Rat()};
    }
}

// Coefficients of p viewed as a polynomial in `vars` (each a polynomial in the rest).
void split_coefficients(const Poly& p, const std::vector<std::string>& vars, size_t i, std::vector<Poly>& out) {
    if (p.is_zero()) return;
    if (i == vars.size()) {
        out.push_back(p);
        return;
    }
    for (auto& c : p.coefficients(vars[i])) split_coefficients(c, vars, i + 1, out);
}

Rat restrict_to_curve(const Rat& f, const std::string& what) {
    try {
        return specialize(f, {{"v", 0}});
    } catch (const Error& e) {
        if (e.kind() != "DenominatorVanishes") throw;
        throw Error("RestrictionPole", what + " has a pole along {v = 0}");
    }
}

}  // namespace

std::string ActionTag::str() const { return std::string(kind == ActionKind::Phi ? "phi_" : "psi_") + std::to_string(r); }

ActionTag make_tag(ActionKind kind, int r) {
    if (r < 0) throw Error("InvalidR", "r must be nonnegative");
    if (kind == ActionKind::Phi && r < 1) throw Error("InvalidR", "phi_r needs r >= 1");
    if (r > max_r()) throw Error("InvalidR", "r = " + std::to_string(r) + " exceeds the degree cap " + std::to_string(max_r()));
    return {kind, r};
}

std::string VectorField::str() const {
    return "\xE2\x88\x82_a = (" + d_a.first.str() + ", " + d_a.second.str() + "); \xE2\x88\x82_b = (" +
           d_b.first.str() + ", " + d_b.second.str() + ")";
}

ActionMap action_on_open_orbit(const ActionTag& t) {
    Rat x = var("x"), y = var("y"), a = var("a"), b = var("b");
    if (t.kind == ActionKind::Phi) return {{x + a, y + b}, true};
    return {{x + a + (y + b).pow(t.r + 1) - y.pow(t.r + 1), y + b}, true};
}

ActionMap transport(const ActionTag& t, const ChartMap& chart) {
    ActionMap m = action_on_open_orbit(t);
    RatPair inner = apply(m.comp, chart.inverse, "x", "y");
    return {apply(chart.forward, inner, "x", "y"), false};
}

ActionMap transport_steps(const ActionTag& t, const std::vector<ChartStep>& steps) {
    ActionMap m = action_on_open_orbit(t);
    for (auto& s : steps) {
        m.comp = conjugate(m.comp, s, m.on_open_orbit);
        m.on_open_orbit = false;
    }
    return m;
}

ActionMap transport_to_point(const ActionTag& t, const BubblePoint& p) { return transport_steps(t, chart_steps(p)); }

VectorField vector_fields(const ActionMap& m) {
    std::map<std::string, Scalar> id{{"a", 0}, {"b", 0}};
    // quotient rule with every factor specialized first, so no large gcd is formed
    auto d = [&](const Rat& f, const char* g) {
        Poly n0 = f.num().partial_eval(id), d0 = f.den().partial_eval(id);
        if (d0.is_zero()) throw Error("DenominatorVanishes", "action has a pole at the identity");
        Poly dn = f.num().derivative(g).partial_eval(id), dd = f.den().derivative(g).partial_eval(id);
        return Rat(dn * d0 - n0 * dd, d0 * d0);
    };
    return {{d(m.comp.first, "a"), d(m.comp.second, "a")}, {d(m.comp.first, "b"), d(m.comp.second, "b")}};
}

VectorField push_fields(const ActionTag& t, const std::vector<ChartStep>& steps) {
    VectorField f;
    if (t.kind == ActionKind::Phi)
        f = {{Rat(1L), Rat(0L)}, {Rat(0L), Rat(1L)}};
    else
        f = {{Rat(1L), Rat(0L)}, {Rat(long(t.r + 1)) * var("y").pow(t.r), Rat(1L)}};
    for (auto& s : steps) {
        const char* sx = s.from_open_orbit ? "x" : "u";
        const char* sy = s.from_open_orbit ? "y" : "v";
        Rat j11 = differentiate(s.forward.first, sx), j12 = differentiate(s.forward.first, sy);
        Rat j21 = differentiate(s.forward.second, sx), j22 = differentiate(s.forward.second, sy);
        Bindings at_inv{{sx, s.inverse.first}, {sy, s.inverse.second}};
        auto push = [&](const RatPair& xi) -> RatPair {
            Rat c1 = j11 * xi.first + j12 * xi.second;
            Rat c2 = j21 * xi.first + j22 * xi.second;
            return {substitute(c1, at_inv), substitute(c2, at_inv)};
        };
        f = {push(f.d_a), push(f.d_b)};
    }
    return f;
}

VectorField fields_at_point(const ActionTag& t, const BubblePoint& p) { return push_fields(t, chart_steps(p)); }

bool origin_fixed(const ActionMap& m) {
    auto [ok1, c1] = at_origin(m.comp.first);
    if (!ok1 || !c1.is_zero()) return false;
    auto [ok2, c2] = at_origin(m.comp.second);
    return ok2 && c2.is_zero();
}

bool is_point_fixed(const ActionTag& t, const BubblePoint& p) {
    ActionMap m = action_on_open_orbit(t);
    for (auto& s : chart_steps(p)) {
        m.comp = conjugate(m.comp, s, m.on_open_orbit);
        m.on_open_orbit = false;
        if (!origin_fixed(m)) return false;
    }
    return true;
}

bool FixednessCondition::holds(const std::map<std::string, Scalar>& values) const {
    if (never) return false;
    for (auto& g : generators)
        if (!g.partial_eval(values).is_zero()) return false;
    return true;
}

std::string FixednessCondition::str() const {
    if (never) return "never fixed";
    if (generators.empty()) return "always fixed";
    std::string out = "fixed iff ";
    for (size_t i = 0; i < generators.size(); ++i) {
        if (i) out += " and ";
        out += generators[i].str() + " = 0";
    }
    return out;
}

FixednessCondition normalize_condition(const std::vector<Poly>& raw, const std::set<std::string>& nonzero) {
    FixednessCondition out;
    std::vector<Poly> gens;
    for (auto g : raw) {
        if (g.is_zero()) continue;
        g = g.integer_primitive();
        Poly mono = g.monomial_content();
        // drop factors that cannot vanish under the constraints
        std::vector<std::string> keep_vars;
        Poly::Term strip{{}, Scalar(1)};
        for (auto& v : mono.vars())
            if (nonzero.count(v)) {
                keep_vars.push_back(v);
                strip.exps.push_back(mono.degree(v));
            }
        if (!keep_vars.empty()) g = exact_quotient(g, Poly::from_terms(keep_vars, {strip}));
        if (g.is_constant()) {
            out.never = true;
            out.generators.clear();
            return out;
        }
        if (g.is_monomial()) {
            Poly rad(1L);
            for (auto& v : g.vars()) rad *= Poly::variable(v);
            g = rad;
        }
        gens.push_back(g.integer_primitive());
    }
    std::sort(gens.begin(), gens.end(), [](const Poly& l, const Poly& r) {
        return l.total_degree() != r.total_degree() ? l.total_degree() < r.total_degree() : l.str() < r.str();
    });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    for (size_t i = 0; i < gens.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < gens.size() && !redundant; ++j)
            if (i != j && !(gens[j] == gens[i]) && divide_exact(gens[i], gens[j], nullptr)) redundant = true;
        if (!redundant) out.generators.push_back(gens[i]);
    }
    // a single-variable generator forces that variable to zero in the others
    std::map<std::string, Scalar> forced;
    for (auto& g : out.generators)
        if (g.is_monomial() && g.vars().size() == 1) forced[g.vars()[0]] = 0;
    if (!forced.empty())
        for (auto& g : out.generators) {
            Poly s = g.partial_eval(forced);
            if (s.is_constant() && !s.is_zero()) {
                out.never = true;
                out.generators.clear();
                return out;
            }
        }
    return out;
}

FixednessCondition curve_fixedness(const ActionTag& t, const CurveId& c, const std::set<std::string>& nonzero) {
    VectorField f = push_fields(t, curve_chart_steps(c, t.r, nonzero));
    std::vector<Poly> raw;
    for (const Rat* comp : {&f.d_a.first, &f.d_a.second, &f.d_b.first, &f.d_b.second}) {
        Rat restricted = restrict_to_curve(*comp, "vector field on " + c.str());
        split_coefficients(restricted.num(), {"u"}, 0, raw);
    }
    return normalize_condition(raw, nonzero);
}

FixednessCondition curve_fixedness_by_map(const ActionTag& t, const CurveId& c, const std::set<std::string>& nonzero) {
    ActionMap m = transport_steps(t, curve_chart_steps(c, t.r, nonzero));
    Rat d1 = restrict_to_curve(m.comp.first, "action on " + c.str()) - var("u");
    Rat d2 = restrict_to_curve(m.comp.second, "action on " + c.str());
    std::vector<Poly> raw;
    split_coefficients(d1.num(), {"u", "a", "b"}, 0, raw);
    split_coefficients(d2.num(), {"u", "a", "b"}, 0, raw);
    return normalize_condition(raw, nonzero);
}

RatPair AutFElement::as_map() const {
    Rat x = var("x"), y = var("y");
    Rat first = b1 * x;
    for (size_t i = 0; i < a.size(); ++i) first += a[i] * y.pow(int(i));
    return {first, b2 * y + c};
}

std::string AutFElement::str() const {
    RatPair m = as_map();
    return "(x, y) -> (" + m.first.str() + ", " + m.second.str() + ")";
}

bool verify_point_map(const AutFElement& g, const BubblePoint& src, const BubblePoint& dst) {
    if (src.depth() != dst.depth() || src.head_is_infinity() != dst.head_is_infinity() || src.r != dst.r) return false;
    auto ss = chart_steps(src), ds = chart_steps(dst);
    RatPair h = g.as_map();
    bool open = true;
    for (size_t i = 0; i < ss.size(); ++i) {
        const char* sx = open ? "x" : "u";
        const char* sy = open ? "y" : "v";
        RatPair inner = apply(h, ss[i].inverse, sx, sy);
        h = apply(ds[i].forward, inner, sx, sy);
        open = false;
        if (!origin_fixed({h, false})) return false;
    }
    return true;
}

}  // namespace addsurf
