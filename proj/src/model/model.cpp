#include "addsurf/model.hpp"

#include <algorithm>
#include <mutex>
#include <regex>

#include "json.hpp"

namespace addsurf {

namespace {

std::string curve_key(const CurveId& c) {
    switch (c.kind) {
        case CurveId::Kind::Fiber: return "F";
        case CurveId::Kind::Section: return "S";
        case CurveId::Kind::Exceptional: return "E" + sequence_str(c.seq);
    }
    return "?";
}

bool has_expr(const Sequence& s) {
    return std::any_of(s.begin(), s.end(), [](const CoordEntry& e) { return e.kind == CoordEntry::Kind::Expr; });
}

std::set<std::string> seq_params(const Sequence& s) {
    std::set<std::string> out;
    for (auto& e : s) {
        if (e.kind == CoordEntry::Kind::Param) out.insert(e.name);
        if (e.kind == CoordEntry::Kind::Expr)
            for (const Poly* part : {&e.expr.num(), &e.expr.den()}) out.insert(part->vars().begin(), part->vars().end());
    }
    return out;
}

CoordEntry substitute_entry(const CoordEntry& e, const std::map<std::string, Scalar>& values) {
    if (e.kind == CoordEntry::Kind::Param) {
        auto it = values.find(e.name);
        return it == values.end() ? e : CoordEntry::constant(it->second);
    }
    if (e.kind == CoordEntry::Kind::Expr) {
        Bindings b;
        for (auto& [k, v] : values) b[k] = Rat(v);
        return CoordEntry::finite(substitute(e.expr, b));
    }
    return e;
}

// Shortest valid prefix length: [inf] alone is not a point.
size_t first_prefix(const Sequence& s) { return s[0].is_infinity() ? 2 : 1; }

bool is_prefix(const Sequence& pre, const Sequence& s) {
    return pre.size() < s.size() && std::equal(pre.begin(), pre.end(), s.begin());
}

std::mutex cache_mutex;
std::map<std::string, bool> curve_cache, point_cache;

}  // namespace

Sequence rename_params(const Sequence& s, std::map<std::string, std::string>& names) {
    Sequence out;
    for (auto& e : s) {
        if (e.kind == CoordEntry::Kind::Param) {
            auto it = names.find(e.name);
            if (it == names.end()) it = names.emplace(e.name, "p" + std::to_string(names.size())).first;
            out.push_back(CoordEntry::param(it->second));
        } else if (e.kind == CoordEntry::Kind::Expr) {
            Bindings b;
            for (auto& v : seq_params({e})) {
                auto it = names.find(v);
                if (it == names.end()) it = names.emplace(v, "p" + std::to_string(names.size())).first;
                b[v] = Rat::variable(it->second);
            }
            out.push_back(CoordEntry::finite(substitute(e.expr, b)));
        } else {
            out.push_back(e);
        }
    }
    return out;
}

bool curve_is_fixed(const ActionTag& t, const CurveId& c) {
    CurveId id = c;
    std::map<std::string, std::string> names;
    if (id.is_exceptional() && !has_expr(id.seq)) id.seq = rename_params(id.seq, names);
    std::string key = t.str() + "|" + curve_key(id);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = curve_cache.find(key);
        if (it != curve_cache.end()) return it->second;
    }
    std::set<std::string> nonzero = id.is_exceptional() ? seq_params(id.seq) : std::set<std::string>{};
    bool fixed = curve_fixedness(t, id, nonzero).always();
    std::lock_guard<std::mutex> lock(cache_mutex);
    curve_cache[key] = fixed;
    return fixed;
}

bool point_is_fixed(const ActionTag& t, const BubblePoint& p) {
    Sequence s = p.entries;
    std::map<std::string, std::string> names;
    if (!has_expr(s)) s = rename_params(s, names);
    std::string key = t.str() + "|" + sequence_str(s);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = point_cache.find(key);
        if (it != point_cache.end()) return it->second;
    }
    bool fixed = is_point_fixed(t, validate_sequence(s, p.r, seq_params(s)));
    std::lock_guard<std::mutex> lock(cache_mutex);
    point_cache[key] = fixed;
    return fixed;
}

std::vector<BubblePoint> BlowupModel::leaves() const {
    std::vector<BubblePoint> out;
    for (auto& p : points)
        if (std::none_of(points.begin(), points.end(), [&](const BubblePoint& q) { return is_prefix(p.entries, q.entries); }))
            out.push_back(p);
    return out;
}

std::set<std::string> BlowupModel::params() const {
    std::set<std::string> out;
    for (auto& p : points) {
        auto s = seq_params(p.entries);
        out.insert(s.begin(), s.end());
    }
    return out;
}

std::string BlowupModel::str() const {
    std::string out = "Bl(F" + std::to_string(r);
    for (auto& p : leaves()) out += "," + p.str();
    return out + ")";
}

BlowupModel build_model(int r, const ActionTag& action, std::vector<Sequence> points, bool close_prefixes,
                        const std::map<std::string, Scalar>& constraints) {
    if (action.r != r) throw Error("InvalidR", "action " + action.str() + " does not live on F_" + std::to_string(r));
    for (auto& s : points)
        for (auto& e : s) e = substitute_entry(e, constraints);
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (points[i] == points[j]) throw Error("DuplicatePoint", sequence_str(points[i]) + " is listed twice");

    std::vector<Sequence> all;
    auto present = [&](const Sequence& s) { return std::find(all.begin(), all.end(), s) != all.end(); };
    for (auto& s : points) {
        validate_sequence(s, r);
        for (size_t len = first_prefix(s); len < s.size(); ++len) {
            Sequence pre(s.begin(), s.begin() + len);
            if (present(pre) || std::find(points.begin(), points.end(), pre) != points.end()) continue;
            if (!close_prefixes)
                throw Error("MissingPrefix", sequence_str(s) + " needs " + sequence_str(pre) + " to be blown up first");
            all.push_back(pre);
        }
        if (!present(s)) all.push_back(s);
    }
    std::stable_sort(all.begin(), all.end(), [](const Sequence& l, const Sequence& r) { return l.size() < r.size(); });

    BlowupModel m{r, action, {}, constraints};
    for (auto& s : all) {
        BubblePoint p = validate_sequence(s, r, seq_params(s));
        if (!point_is_fixed(action, p))
            throw Error("NonFixedPoint", p.str() + " is not fixed by " + action.str());
        m.points.push_back(std::move(p));
    }
    return m;
}

BlowupModel build_model(int r, const std::vector<Sequence>& points) {
    return build_model(r, make_tag(ActionKind::Phi, r), points);
}

BlowupModel parse_model(const std::string& text, const std::map<std::string, Scalar>& constraints) {
    static const std::regex shape(R"(^\s*(?:Bl\s*\(\s*)?F_?\{?(\d+)\}?\s*(.*?)\)?\s*$)");
    std::smatch mt;
    if (!std::regex_match(text, mt, shape)) throw Error("ParseError", "expected Bl(F<r>,[...],...), got \"" + text + "\"");
    int r = std::stoi(mt[1]);
    std::string rest = mt[2];
    std::vector<Sequence> pts;
    size_t pos = 0;
    while ((pos = rest.find('[', pos)) != std::string::npos) {
        size_t end = rest.find(']', pos);
        if (end == std::string::npos) throw Error("ParseError", "unbalanced '[' in \"" + text + "\"");
        pts.push_back(parse_sequence(rest.substr(pos, end - pos + 1)));
        pos = end + 1;
    }
    if (r < 1) throw Error("InvalidR", "models are built over (F_r, phi_r) with r >= 1");
    return build_model(r, make_tag(ActionKind::Phi, r), pts, true, constraints);
}

const BoundaryCurve* BoundaryGraph::find(const CurveId& id) const {
    for (auto& c : curves)
        if (c.id == id) return &c;
    return nullptr;
}

bool BoundaryGraph::adjacent(const CurveId& a, const CurveId& b) const {
    return std::any_of(edges.begin(), edges.end(),
                       [&](const BoundaryEdge& e) { return (e.a == a && e.b == b) || (e.a == b && e.b == a); });
}

std::vector<CurveId> BoundaryGraph::neighbors(const CurveId& id) const {
    std::vector<CurveId> out;
    for (auto& e : edges) {
        if (e.a == id) out.push_back(e.b);
        if (e.b == id) out.push_back(e.a);
    }
    return out;
}

bool BoundaryGraph::is_tree() const {
    if (curves.empty() || edges.size() + 1 != curves.size()) return false;
    std::set<CurveId> seen{curves[0].id};
    std::vector<CurveId> stack{curves[0].id};
    while (!stack.empty()) {
        CurveId c = stack.back();
        stack.pop_back();
        for (auto& n : neighbors(c))
            if (seen.insert(n).second) stack.push_back(n);
    }
    return seen.size() == curves.size();
}

std::string BoundaryGraph::to_text() const {
    std::vector<std::string> lines;
    for (auto& c : curves)
        lines.push_back("curve " + c.id.str() + " " + std::to_string(c.self_int) + (c.fixed ? " fixed" : " moving"));
    for (auto& e : edges) {
        std::string a = e.a.str(), b = e.b.str();
        if (b < a) std::swap(a, b);
        lines.push_back("edge " + a + " " + b);
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (auto& l : lines) out += l + "\n";
    return out;
}

std::string BoundaryGraph::to_dot() const {
    std::string out = "graph boundary {\n";
    for (size_t i = 0; i < curves.size(); ++i)
        out += "  n" + std::to_string(i) + " [label=\"" + curves[i].id.str() + "\\n" + std::to_string(curves[i].self_int) +
               "\", shape=" + (curves[i].fixed ? "circle" : "box") + "];\n";
    auto index = [&](const CurveId& id) {
        for (size_t i = 0; i < curves.size(); ++i)
            if (curves[i].id == id) return i;
        return curves.size();
    };
    for (auto& e : edges) out += "  n" + std::to_string(index(e.a)) + " -- n" + std::to_string(index(e.b)) + ";\n";
    return out + "}\n";
}

std::string BoundaryGraph::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "addsurf.boundary-graph/1";
    j["r"] = r;
    j["curves"] = nlohmann::ordered_json::array();
    for (auto& c : curves) j["curves"].push_back({{"id", c.id.str()}, {"self_int", c.self_int}, {"fixed", c.fixed}});
    j["edges"] = nlohmann::ordered_json::array();
    for (auto& e : edges) j["edges"].push_back({{"a", e.a.str()}, {"b", e.b.str()}, {"at", sequence_str(e.witness)}});
    return j.dump(2) + "\n";
}

BoundaryGraph boundary_graph(const BlowupModel& m) {
    BoundaryGraph g;
    g.r = m.r;
    g.curves.push_back({CurveId::fiber(), 0, false});
    g.curves.push_back({CurveId::section(), -m.r, false});
    g.edges.push_back({CurveId::fiber(), CurveId::section(), {CoordEntry::infinity(), CoordEntry::infinity()}});
    auto curve = [&](const CurveId& id) -> BoundaryCurve& {
        for (auto& c : g.curves)
            if (c.id == id) return c;
        throw Error("MissingPrefix", "curve " + id.str() + " is not on the surface");
    };
    for (auto& p : m.points) {
        Axes ax = incidence_axes(p);
        curve(ax.u_axis).self_int -= 1;
        if (ax.v_axis) {
            curve(*ax.v_axis).self_int -= 1;
            // the two axis curves stop meeting once their common point is blown up
            auto it = std::find_if(g.edges.begin(), g.edges.end(), [&](const BoundaryEdge& e) {
                bool pair = (e.a == ax.u_axis && e.b == *ax.v_axis) || (e.b == ax.u_axis && e.a == *ax.v_axis);
                return pair && e.witness == p.entries;
            });
            if (it != g.edges.end()) g.edges.erase(it);
        }
        CurveId e = CurveId::exceptional(p.entries);
        g.curves.push_back({e, -1, false});
        g.edges.push_back({ax.u_axis, e, p.child(CoordEntry::infinity()).entries});
        if (ax.v_axis) g.edges.push_back({*ax.v_axis, e, p.child(CoordEntry::zero()).entries});
    }
    for (auto& c : g.curves) c.fixed = curve_is_fixed(m.action, c.id);
    return g;
}

BlowupModel figure_model(char which, int r, int k) {
    auto zeros = [](int n) { return Sequence(size_t(n), CoordEntry::zero()); };
    auto join = [](Sequence a, const Sequence& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    auto p = [](const char* name) { return CoordEntry::param(name); };
    const CoordEntry inf = CoordEntry::infinity();
    if (r < 1) throw Error("InvalidR", "r must be at least 1");
    switch (which) {
        case 'A':
        case 'B':
            if (k < 0 || k > r - 1) throw Error("InvalidK", "k must lie in 0.." + std::to_string(r - 1));
            if (which == 'A') return build_model(r, {join(zeros(k), {p("q1")}), {p("q2")}});
            return build_model(r, {join(zeros(k), {p("q")}), join(join({inf, inf}, zeros(k)), {p("w")})});
        case 'C':
            if (r < 2) throw Error("InvalidR", "case C needs r >= 2");
            return build_model(r, {{CoordEntry::zero(), inf, p("w"), p("q")}});
        case 'D': return build_model(r, {{inf, inf, inf, p("w"), p("q")}});
        case 'E': return build_model(r, {{p("q"), inf, p("w")}});
        case 'F':
            if (r != 1) throw Error("InvalidR", "case F needs r = 1");
            return build_model(r, {{CoordEntry::zero(), inf, p("w")}});
    }
    throw Error("InvalidCase", std::string("no case ") + which);
}

bool check_minus2_hypothesis(const BoundaryGraph& g) {
    return std::all_of(g.curves.begin(), g.curves.end(), [](const BoundaryCurve& c) { return !c.fixed || c.self_int == -2; });
}

SingularityType singularity_type(const BoundaryGraph& g, const std::vector<CurveId>& curves) {
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < curves.size(); ++i) {
        const BoundaryCurve* c = g.find(curves[i]);
        if (!c) throw Error("NotADE", curves[i].str() + " is not a boundary curve");
        if (c->self_int != -2) throw Error("NotADE", curves[i].str() + " has self-intersection " + std::to_string(c->self_int));
        for (size_t j = 0; j < i; ++j)
            if (g.adjacent(curves[i], curves[j])) edges.push_back({int(j), int(i)});
    }
    return dynkin_type(int(curves.size()), edges);
}

Contraction contract(const BoundaryGraph& g, ContractionMode mode) {
    Contraction out;
    for (auto& c : g.curves) {
        bool pick = false;
        switch (mode) {
            case ContractionMode::FixedMinus2: pick = c.fixed; break;
            case ContractionMode::FixedMinus2PlusNonFixedMinus2: pick = c.fixed || c.self_int == -2; break;
            case ContractionMode::AllMinus2ExceptSection:
                pick = c.fixed || (c.self_int == -2 && c.id != CurveId::section());
                break;
            case ContractionMode::SectionOnly: pick = c.id == CurveId::section(); break;
        }
        if (mode != ContractionMode::SectionOnly && c.fixed && c.self_int != -2)
            throw Error("NotMinus2", "fixed curve " + c.id.str() + " has self-intersection " + std::to_string(c.self_int));
        if (!pick) {
            out.survivors.push_back(c.id);
            continue;
        }
        if (c.self_int != -2)
            throw Error("NotMinus2", c.id.str() + " has self-intersection " + std::to_string(c.self_int));
        out.contracted.push_back(c.id);
    }
    std::set<CurveId> picked(out.contracted.begin(), out.contracted.end()), done;
    for (auto& c : out.contracted) {
        if (done.count(c)) continue;
        std::vector<CurveId> comp{c}, stack{c};
        done.insert(c);
        while (!stack.empty()) {
            CurveId x = stack.back();
            stack.pop_back();
            for (auto& n : g.neighbors(x))
                if (picked.count(n) && done.insert(n).second) comp.push_back(n), stack.push_back(n);
        }
        out.singularities.push_back(singularity_type(g, comp));
        out.components.push_back(std::move(comp));
    }
    auto add_edge = [&](const CurveId& a, const CurveId& b) {
        for (auto& e : out.survivor_edges)
            if ((e.first == a && e.second == b) || (e.first == b && e.second == a)) return;
        out.survivor_edges.push_back({a, b});
    };
    for (auto& e : g.edges)
        if (!picked.count(e.a) && !picked.count(e.b)) add_edge(e.a, e.b);
    for (auto& comp : out.components) {
        std::vector<CurveId> touching;
        for (auto& c : comp)
            for (auto& n : g.neighbors(c))
                if (!picked.count(n) && std::find(touching.begin(), touching.end(), n) == touching.end()) touching.push_back(n);
        for (size_t i = 0; i < touching.size(); ++i)
            for (size_t j = 0; j < i; ++j) add_edge(touching[j], touching[i]);
    }
    return out;
}

std::vector<CurveId> one_dim_orbits(const BoundaryGraph& g, const std::vector<CurveId>& contracted) {
    std::vector<CurveId> out;
    for (auto& c : g.curves)
        if (!c.fixed && std::find(contracted.begin(), contracted.end(), c.id) == contracted.end()) out.push_back(c.id);
    return out;
}

std::optional<int> fixed_point_count(const BoundaryGraph& g, const std::vector<CurveId>& contracted) {
    std::set<CurveId> gone(contracted.begin(), contracted.end());
    for (auto& c : g.curves)
        if (c.fixed && !gone.count(c.id)) return std::nullopt;
    // union-find over nodes (edges of the graph) and contracted curves
    size_t n_nodes = g.edges.size();
    std::vector<size_t> parent(n_nodes + contracted.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto root = [&](size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (size_t e = 0; e < n_nodes; ++e)
        for (size_t c = 0; c < contracted.size(); ++c)
            if (g.edges[e].a == contracted[c] || g.edges[e].b == contracted[c]) parent[root(e)] = root(n_nodes + c);
    std::set<size_t> roots;
    for (size_t i = 0; i < parent.size(); ++i) roots.insert(root(i));
    return int(roots.size());
}

std::string family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
        case Family::D: return "D";
        case Family::E: return "E";
        case Family::F: return "F";
        case Family::Unclassified: return "Unclassified";
    }
    return "?";
}

namespace {

bool nonzero_finite(const CoordEntry& e) { return e.is_finite() && !e.is_zero(); }

// [0_(k),q] with q != 0 and k <= r-1, or [0_(r)]; k is returned through the pointer.
bool fiber_chain(const Sequence& s, int r, int* k) {
    size_t zeros = 0;
    while (zeros < s.size() && s[zeros].is_zero()) ++zeros;
    if (zeros == s.size()) {
        *k = r - 1;
        return int(s.size()) == r;
    }
    if (zeros + 1 != s.size() || !nonzero_finite(s.back()) || int(zeros) > r - 1) return false;
    *k = int(zeros);
    return true;
}

// [inf,inf,0_(k),w] with w != 0.
bool section_chain(const Sequence& s) {
    if (s.size() < 3 || !s[0].is_infinity() || !s[1].is_infinity() || !nonzero_finite(s.back())) return false;
    for (size_t i = 2; i + 1 < s.size(); ++i)
        if (!s[i].is_zero()) return false;
    return true;
}

// Image on F_r: the head entry, or inf for chains over [inf,inf].
CoordEntry image_on_fiber(const Sequence& s, int k) {
    if (s[0].is_infinity()) return CoordEntry::infinity();
    return k > 0 || s.size() > 1 ? CoordEntry::zero() : s[0];
}

}  // namespace

FamilyInfo classify_family(const BlowupModel& m) {
    FamilyInfo info;
    if (m.action.kind != ActionKind::Phi) return info;
    auto leaves = m.leaves();
    int r = m.r;
    if (leaves.size() == 2) {
        const Sequence &s1 = leaves[0].entries, &s2 = leaves[1].entries;
        int k1 = 0, k2 = 0;
        bool a1 = fiber_chain(s1, r, &k1), a2 = fiber_chain(s2, r, &k2);
        bool b1 = section_chain(s1), b2 = section_chain(s2);
        CoordEntry i1 = image_on_fiber(s1, a1 ? k1 : 0), i2 = image_on_fiber(s2, a2 ? k2 : 0);
        if (i1 == i2) return info;
        if (a1 && a2) info.family = Family::A;
        if ((a1 && b2) || (b1 && a2)) info.family = Family::B, info.reducible = true, info.reduces_to = Family::A;
        return info;
    }
    if (leaves.size() != 1) return info;
    const Sequence& s = leaves[0].entries;
    if (r > 1 && s.size() == 4 && s[0].is_zero() && s[1].is_infinity() && nonzero_finite(s[2]) && s[3].is_finite())
        info.family = Family::C;
    if (s.size() == 5 && s[0].is_infinity() && s[1].is_infinity() && s[2].is_infinity() && nonzero_finite(s[3]) &&
        s[4].is_finite())
        info.family = Family::D, info.reducible = true, info.reduces_to = Family::C;
    if (s.size() == 3 && nonzero_finite(s[0]) && s[1].is_infinity() && nonzero_finite(s[2])) info.family = Family::E;
    if (r == 1 && s.size() == 3 && s[0].is_zero() && s[1].is_infinity() && nonzero_finite(s[2]))
        info.family = Family::F, info.reducible = true, info.reduces_to = Family::A;
    return info;
}

}  // namespace addsurf
