#include "addsurf/bubble.hpp"

#include <cctype>

namespace addsurf {

namespace {

bool reserved_name(const std::string& s) {
    return s == "x" || s == "y" || s == "u" || s == "v" || s == "a" || s == "b" || s == "inf";
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

CoordEntry parse_entry(const std::string& raw) {
    std::string t = trim(raw);
    if (t.empty()) throw Error("ParseError", "empty sequence entry");
    if (t == "inf" || t == "\xE2\x88\x9E") return CoordEntry::infinity();
    Rat value = parse_expr(t);
    for (const Poly* part : {&value.num(), &value.den()})
        for (auto& v : part->vars())
            if (reserved_name(v)) throw Error("ParseError", "'" + v + "' is reserved and cannot name a parameter");
    return CoordEntry::finite(value);
}

}  // namespace

CoordEntry CoordEntry::constant(const Scalar& value) {
    if (value == 0) return zero();
    return {Kind::Const, {}, value, {}};
}

CoordEntry CoordEntry::finite(const Rat& value) {
    if (value.num().is_constant() && value.den().is_constant()) return constant(value.num().constant_value() / value.den().constant_value());
    if (value.den().is_constant() && value.num().is_monomial() && value.num().total_degree() == 1 &&
        value.num().leading_coef() == value.den().constant_value())
        return param(value.num().vars()[0]);
    return {Kind::Expr, {}, {}, value};
}

Rat CoordEntry::as_rat() const {
    switch (kind) {
        case Kind::Zero: return Rat(0L);
        case Kind::Const: return Rat(value);
        case Kind::Param: return Rat::variable(name);
        case Kind::Expr: return expr;
        case Kind::Infinity: break;
    }
    throw Error("InfiniteEntry", "infinity has no finite value");
}

std::string CoordEntry::str() const {
    switch (kind) {
        case Kind::Zero: return "0";
        case Kind::Infinity: return "inf";
        case Kind::Param: return name;
        case Kind::Const: return value.get_str();
        case Kind::Expr: return expr.str();
    }
    return "?";
}

bool operator<(const CoordEntry& l, const CoordEntry& r) {
    if (l.kind != r.kind) return l.kind < r.kind;
    if (l.name != r.name) return l.name < r.name;
    if (l.value != r.value) return l.value < r.value;
    return l.expr.str() < r.expr.str();
}

std::string sequence_str(const Sequence& seq) {
    std::string out = "[";
    for (size_t i = 0; i < seq.size();) {
        size_t j = i;
        while (j < seq.size() && seq[j] == seq[i]) ++j;
        if (i) out += ",";
        out += seq[i].str();
        if (j - i > 1) out += "_(" + std::to_string(j - i) + ")";
        i = j;
    }
    return out + "]";
}

Sequence parse_sequence(const std::string& text) {
    std::string t = trim(text);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw Error("ParseError", "sequence must be written as [e1,e2,...], got \"" + text + "\"");
    std::string body = trim(t.substr(1, t.size() - 2));
    Sequence seq;
    if (body.empty()) return seq;
    size_t start = 0;
    while (start <= body.size()) {
        size_t comma = body.find(',', start);
        // a comma inside "_(k)" never occurs, so plain splitting is enough
        std::string item = trim(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        size_t rep = item.find("_(");
        if (rep != std::string::npos) {
            if (item.back() != ')') throw Error("ParseError", "bad repetition '" + item + "'");
            std::string cnt = item.substr(rep + 2, item.size() - rep - 3);
            if (cnt.empty() || cnt.find_first_not_of("0123456789") != std::string::npos)
                throw Error("ParseError", "bad repetition count in '" + item + "'");
            long k = std::stol(cnt);
            if (k > 64) throw Error("ParseError", "repetition count too large in '" + item + "'");
            CoordEntry e = parse_entry(item.substr(0, rep));
            for (long i = 0; i < k; ++i) seq.push_back(e);
        } else {
            seq.push_back(parse_entry(item));
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return seq;
}

BubblePoint BubblePoint::prefix(size_t len) const {
    BubblePoint p = *this;
    p.entries.resize(len);
    return p;
}

BubblePoint BubblePoint::child(const CoordEntry& entry) const {
    BubblePoint p = *this;
    p.entries.push_back(entry);
    return p;
}

std::set<std::string> BubblePoint::params() const {
    std::set<std::string> out;
    for (auto& e : entries) {
        if (e.kind == CoordEntry::Kind::Param) out.insert(e.name);
        if (e.kind == CoordEntry::Kind::Expr)
            for (const Poly* part : {&e.expr.num(), &e.expr.den()}) out.insert(part->vars().begin(), part->vars().end());
    }
    return out;
}

BubblePoint validate_sequence(const Sequence& seq, int r, std::set<std::string> nonzero) {
    if (seq.empty()) throw Error("EmptySequence", "a point needs at least one entry");
    if (r < 0) throw Error("InvalidR", "r must be nonnegative");
    if (seq[0].is_infinity()) {
        if (seq.size() < 2 || !seq[1].is_infinity())
            throw Error("HeadInfinityThenFinite", sequence_str(seq) + " lies on the section and is never used");
    }
    BubblePoint p{r, seq, std::move(nonzero)};
    return p;
}

BubblePoint parse_point(const std::string& text, int r, std::set<std::string> nonzero) {
    return validate_sequence(parse_sequence(text), r, std::move(nonzero));
}

namespace {

Rat U() { return Rat::variable("u"); }
Rat V() { return Rat::variable("v"); }
Rat X() { return Rat::variable("x"); }
Rat Y() { return Rat::variable("y"); }

ChartStep finite_head(int r, const Rat& q) {
    // (u, v) = (x / y^r - q, 1 / y)
    return {{X() / Y().pow(r) - q, Rat(1L) / Y()}, {(U() + q) / V().pow(r), Rat(1L) / V()}, true};
}

ChartStep infinite_head(int r) {
    // (u, v) = (y^r / x, 1 / y)
    return {{Y().pow(r) / X(), Rat(1L) / Y()}, {Rat(1L) / (U() * V().pow(r)), Rat(1L) / V()}, true};
}

ChartStep step_for(const CoordEntry& e) {
    if (e.is_infinity()) return {{U(), V() / U()}, {U(), U() * V()}, false};
    Rat q = e.as_rat();
    return {{U() / V() - q, V()}, {(U() + q) * V(), V()}, false};
}

RatPair compose(const RatPair& outer, const RatPair& inner, const char* ox, const char* oy) {
    Bindings b{{ox, inner.first}, {oy, inner.second}};
    return {substitute(outer.first, b), substitute(outer.second, b)};
}

}  // namespace

std::vector<ChartStep> chart_steps(const BubblePoint& p) {
    std::vector<ChartStep> steps;
    size_t i;
    if (p.head_is_infinity()) {
        steps.push_back(infinite_head(p.r));
        i = 2;
    } else {
        steps.push_back(finite_head(p.r, p.entries[0].as_rat()));
        i = 1;
    }
    for (; i < p.entries.size(); ++i) steps.push_back(step_for(p.entries[i]));
    return steps;
}

ChartMap compose_steps(const std::vector<ChartStep>& steps) {
    ChartMap m{steps[0].forward, steps[0].inverse};
    for (size_t i = 1; i < steps.size(); ++i) {
        // forward: step after the previous forward; inverse: previous inverse after the step inverse
        m.forward = compose(steps[i].forward, m.forward, "u", "v");
        m.inverse = compose(m.inverse, steps[i].inverse, "u", "v");
    }
    return m;
}

bool round_trip_ok(const ChartMap& chart) {
    RatPair fi = compose(chart.forward, chart.inverse, "x", "y");
    RatPair if_ = compose(chart.inverse, chart.forward, "u", "v");
    return fi.first == U() && fi.second == V() && if_.first == X() && if_.second == Y();
}

ChartMap chart_to_point(const BubblePoint& p) {
    ChartMap m = compose_steps(chart_steps(p));
    if (!round_trip_ok(m)) throw Error("ChartRoundTrip", "chart of " + p.str() + " fails the round trip");
    return m;
}

std::string CurveId::str() const {
    switch (kind) {
        case Kind::Fiber: return "[ ]";
        case Kind::Section: return "[inf]";
        case Kind::Exceptional: return sequence_str(seq);
    }
    return "?";
}

CurveId parse_curve(const std::string& text) {
    Sequence s = parse_sequence(text);
    if (s.empty()) return CurveId::fiber();
    if (s.size() == 1 && s[0].is_infinity()) return CurveId::section();
    validate_sequence(s, 0);
    return CurveId::exceptional(s);
}

std::vector<ChartStep> curve_chart_steps(const CurveId& c, int r, const std::set<std::string>& nonzero) {
    switch (c.kind) {
        case CurveId::Kind::Fiber:
            return chart_steps(validate_sequence({CoordEntry::zero()}, r));
        case CurveId::Kind::Section: {
            // the [inf,inf] chart with coordinates swapped, so the section is {v = 0}
            ChartStep s = infinite_head(r);
            std::swap(s.forward.first, s.forward.second);
            Bindings swap{{"u", V()}, {"v", U()}};
            s.inverse = {substitute(s.inverse.first, swap), substitute(s.inverse.second, swap)};
            return {s};
        }
        case CurveId::Kind::Exceptional: {
            Sequence s = c.seq;
            s.push_back(CoordEntry::zero());
            return chart_steps(validate_sequence(s, r, nonzero));
        }
    }
    return {};
}

ChartMap curve_chart(const CurveId& c, int r, const std::set<std::string>& nonzero) {
    ChartMap m = compose_steps(curve_chart_steps(c, r, nonzero));
    if (!round_trip_ok(m)) throw Error("ChartRoundTrip", "chart of curve " + c.str() + " fails the round trip");
    return m;
}

Axes incidence_axes(const BubblePoint& p) {
    const auto& e = p.entries;
    if (e.size() == 1) return {CurveId::fiber(), std::nullopt};
    if (e.size() == 2 && e[0].is_infinity()) return {CurveId::fiber(), CurveId::section()};
    BubblePoint pre = p.prefix(e.size() - 1);
    CurveId carrier = CurveId::exceptional(pre.entries);
    const CoordEntry& last = e.back();
    if (last.is_zero()) return {carrier, incidence_axes(pre).v_axis};
    if (last.is_infinity()) return {incidence_axes(pre).u_axis, carrier};
    return {carrier, std::nullopt};
}

}  // namespace addsurf
