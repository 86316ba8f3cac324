#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "addsurf/classify.hpp"
#include "json.hpp"

using namespace addsurf;

namespace {

ActionKind action_kind(const std::string& name) {
    if (name == "phi") return ActionKind::Phi;
    if (name == "psi") return ActionKind::Psi;
    throw CLI::ValidationError("--action", "expected phi or psi, got " + name);
}

// "q=0,w=2/3"
std::map<std::string, Scalar> parse_where(const std::vector<std::string>& items) {
    std::map<std::string, Scalar> out;
    for (auto& item : items) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ',')) {
            auto eq = part.find('=');
            if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--where", "expected name=value, got " + part);
            Scalar v;
            try {
                v = Scalar(part.substr(eq + 1));
                v.canonicalize();
            } catch (const std::invalid_argument&) {
                throw CLI::ValidationError("--where", "not a rational number: " + part.substr(eq + 1));
            }
            out[part.substr(0, eq)] = v;
        }
    }
    return out;
}

std::string family_line(const EnumeratedModel& m) {
    std::string out = m.model.str() + "  " + family_name(m.family.family);
    if (m.family.reducible && m.family.reduces_to) out += " (reducible to " + family_name(*m.family.reduces_to) + ")";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Additive actions on Hirzebruch surfaces: blowup models, dual graphs and classification"};
    app.require_subcommand(1);

    std::vector<std::string> where;

    std::string action = "phi", at, curve_text, model_text, model2_text, case_name, format = "text", suite = "fixed-curves";
    int r = 1, k = 0, r_max = 8, max_points = 2, max_depth = 6;
    bool dot = false, json = false, no_inf = false;
    std::vector<std::string> nonzero;

    auto* field = app.add_subcommand("field", "action vector fields at a bubble point");
    field->add_option("--action", action, "phi or psi")->capture_default_str();
    field->add_option("--r", r, "Hirzebruch index")->required();
    field->add_option("--at", at, "coordinate sequence")->required();

    auto* fixed = app.add_subcommand("fixed", "fixedness condition of an exceptional curve");
    fixed->add_option("--action", action, "phi or psi")->capture_default_str();
    fixed->add_option("--r", r, "Hirzebruch index")->required();
    fixed->add_option("--curve", curve_text, "coordinate sequence of the curve")->required();
    fixed->add_option("--nonzero", nonzero, "parameters constrained nonzero");

    auto* graph = app.add_subcommand("graph", "boundary dual graph");
    auto* graph_case = graph->add_option("--case", case_name, "A..F")->check(CLI::IsMember({"A", "B", "C", "D", "E", "F"}));
    graph->add_option("--model", model_text, "Bl(F<r>,[...],...)")->excludes(graph_case);
    graph->add_option("--r", r, "Hirzebruch index");
    graph->add_option("--k", k, "chain length for cases A and B");
    graph->add_flag("--dot", dot, "Graphviz output");
    graph->add_flag("--json", json, "JSON output")->excludes("--dot");

    auto* classify = app.add_subcommand("classify", "canonical form of a blowup model");
    classify->add_option("--model", model_text, "Bl(F<r>,[...],...)")->required();

    auto* equiv = app.add_subcommand("equiv", "equivariant and abstract equivalence of two models");
    equiv->add_option("model1", model_text, "first model")->required();
    equiv->add_option("model2", model2_text, "second model")->required();

    auto* table = app.add_subcommand("table", "the classification table, recomputed");
    table->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    table->add_option("--r-max", r_max, "largest r instantiated")->check(CLI::Range(1, 8));

    auto* verify = app.add_subcommand("verify", "verification sweeps");
    verify->add_option("--suite", suite, "fixed-curves or infinite-orbits")
        ->check(CLI::IsMember({"fixed-curves", "infinite-orbits"}))
        ->capture_default_str();
    verify->add_option("--r-max", r_max, "largest r")->check(CLI::Range(1, 12))->capture_default_str();

    for (auto* sub : {fixed, graph, classify, equiv}) sub->add_option("--where", where, "parameter values, e.g. q=0,w=2");

    auto* enumerate = app.add_subcommand("enumerate", "blowup models satisfying the (-2)-hypothesis");
    enumerate->add_option("--r", r, "Hirzebruch index")->required()->check(CLI::Range(1, 6));
    enumerate->add_option("--max-points", max_points, "blown chains")->check(CLI::Range(1, 3))->capture_default_str();
    enumerate->add_option("--max-depth", max_depth, "longest coordinate sequence")->check(CLI::Range(1, 8))->capture_default_str();
    enumerate->add_flag("--no-inf", no_inf, "forbid inf entries");
    enumerate->add_flag("--json", json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, std::cout, std::cerr);
        return code == 0 ? 0 : 2;
    }

    try {
        auto constraints = parse_where(where);
        if (*field) {
            auto tag = make_tag(action_kind(action), r);
            std::cout << fields_at_point(tag, parse_point(at, r)).str() << "\n";
        } else if (*fixed) {
            auto tag = make_tag(action_kind(action), r);
            auto cond = curve_fixedness(tag, parse_curve(curve_text), {nonzero.begin(), nonzero.end()});
            if (!constraints.empty()) {
                std::cout << (cond.holds(constraints) ? "fixed" : "not fixed") << "\n";
            } else {
                std::cout << cond.str() << "\n";
            }
        } else if (*graph) {
            BlowupModel m;
            if (!model_text.empty()) {
                m = parse_model(model_text, constraints);
            } else if (case_name.size() == 1) {
                m = figure_model(case_name[0], r, k);
            } else {
                throw CLI::ValidationError("--case", "give --case A..F or --model");
            }
            auto g = boundary_graph(m);
            std::cout << (dot ? g.to_dot() : json ? g.to_json() : g.to_text());
        } else if (*classify) {
            auto m = parse_model(model_text, constraints);
            auto cf = canonical_form(m);
            std::cout << cf.str() << "\n";
            if (cf.to_canonical) std::cout << "normalizer " << cf.to_canonical->str() << "\n";
        } else if (*equiv) {
            auto m1 = parse_model(model_text, constraints), m2 = parse_model(model2_text, constraints);
            auto e = equivalent_models(m1, m2);
            std::cout << "equivariant: " << (e.equivalent ? "yes" : "no") << "\n";
            if (e.witness) std::cout << "witness " << e.witness->str() << "\n";
            std::cout << "abstract: " << (abstract_isomorphic(m1, m2) ? "yes" : "no") << "\n";
        } else if (*table) {
            auto rows = emit_table(table->count("--r-max") ? r_max : 5);
            std::cout << (format == "json" ? table_json(rows) : table_text(rows));
        } else if (*verify) {
            bool all_ok = true;
            if (suite == "fixed-curves") {
                for (auto& c : fixed_curve_sweep(r_max)) {
                    std::cout << "(" << c.clause << ") r=" << c.r;
                    if (c.k >= 0) std::cout << " k=" << c.k;
                    std::cout << " " << c.curve << ": " << c.computed << (c.ok ? "  ok" : "  MISMATCH, expected " + c.expected)
                              << "\n";
                    all_ok = all_ok && c.ok;
                }
            } else {
                for (auto& f : infinite_orbit_sweep(r_max)) {
                    std::cout << "row " << f.row << " r=" << f.r;
                    if (f.k >= 0) std::cout << " k=" << f.k;
                    std::cout << ": case " << f.found.corollary_case << ", " << f.found.alternative.str() << " fixes "
                              << f.found.fixed_curve.str() << " via " << f.found.witness.str() << "\n";
                }
            }
            std::cout << (all_ok ? "all checks passed" : "some checks failed") << "\n";
            return all_ok ? 0 : 1;
        } else if (*enumerate) {
            EnumerationOptions opt;
            opt.max_points = max_points;
            opt.max_depth = max_depth;
            opt.allow_infinity = !no_inf;
            auto ms = enumerate_models(r, opt);
            if (json) {
                nlohmann::ordered_json j;
                j["schema"] = "addsurf.enumeration/1";
                j["r"] = r;
                j["models"] = nlohmann::ordered_json::array();
                for (auto& m : ms) {
                    nlohmann::ordered_json item{{"model", m.model.str()}, {"family", family_name(m.family.family)},
                                                {"reducible", m.family.reducible}};
                    if (m.family.reduces_to) item["reduces_to"] = family_name(*m.family.reduces_to);
                    j["models"].push_back(item);
                }
                std::cout << j.dump(2) << "\n";
            } else {
                for (auto& m : ms) std::cout << family_line(m) << "\n";
            }
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
