#include <algorithm>
#include <functional>
#include <random>

#include "addsurf/classify.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support/samplers.hpp"

using namespace addsurf;
using support::Sampler;

namespace {

BlowupModel M(const std::string& text) { return parse_model(text); }
BubblePoint pt(const char* s, int r) { return parse_point(s, r); }
Rat Q(long n, long d = 1) {
    Scalar s(n, d);
    s.canonicalize();
    return Rat(s);
}
NormalizerElement N(Rat b1, Rat b2, Rat a0 = Rat(0L), Rat a1 = Rat(0L), Rat c = Rat(0L)) { return {b1, b2, a0, a1, c}; }

std::string error_kind(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

std::vector<std::string> leaf_strs(const BlowupModel& m) {
    std::vector<std::string> out;
    for (auto& l : m.leaves()) out.push_back(l.str());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE("classify") {
    TEST_CASE("normalizer rules") {
        // [q] -> [b1 q / b2^r] for r > 1
        CHECK(normalizer_act(N(Q(3), Q(2)), pt("[5]", 2)).str() == "[15/4]");
        CHECK(normalizer_act(N(Rat::variable("b1"), Rat::variable("b2")), pt("[q]", 3)).str() == "[b1*q/b2^3]");
        // [0_(k),q] -> [0_(k), b1 q / b2^(r-k)] for k < r-1, and the affine rule at k = r-1
        CHECK(normalizer_act(N(Q(3), Q(2)), pt("[0,5]", 3)).str() == "[0,15/4]");
        CHECK(normalizer_act(N(Q(3), Q(2), Q(0), Q(1)), pt("[0,0,5]", 3)).str() == "[0_(2),8]");
        CHECK(normalizer_act(N(Q(3), Q(2), Q(0), Q(4)), pt("[0,0,0]", 3)).str() == "[0_(2),2]");
        // [0,inf,w] -> [0,inf, b1^2 w / b2^(2r-1)]
        CHECK(normalizer_act(N(Q(2), Q(3)), pt("[0,inf,1]", 2)).str() == "[0,inf,4/27]");
        // [0,inf,w,q] -> [0,inf,w,b q], b = b2^r / b1, on the stabilizer b1^2 = b2^(2r-1)
        CHECK(normalizer_act(N(Q(32), Q(4)), pt("[0,inf,3,5]", 3)).str() == "[0,inf,3,10]");
        CHECK(normalizer_act(N(Q(8), Q(4), Q(0), Q(2)), pt("[0,inf,3,5]", 2)).str() == "[0,inf,3,13]");
        CHECK(error_kind([] { normalizer_act(N(Q(2), Q(4)), pt("[0,inf,3,5]", 3)); }) == "StabilizerViolated");
        CHECK(error_kind([] { normalizer_act(N(Q(2), Q(4)), pt("[inf,inf]", 3)); }) == "RuleShapeMismatch");
        CHECK(error_kind([] { normalizer_act(N(Q(0), Q(4)), pt("[1]", 3)); }) == "StabilizerViolated");
    }

    TEST_CASE("stabilizer of [q] at r = 1") {
        // b1 q + a1 = b2 q
        auto p = pt("[5,inf,1]", 1);
        CHECK(normalizer_act(N(Q(2), Q(3), Q(0), Q(5)), p).str() == "[5,inf,4/3]");
        CHECK(error_kind([&] { normalizer_act(N(Q(2), Q(3), Q(0), Q(3 - 5 * 2)), p); }) == "StabilizerViolated");
        // the two readings agree at q = 1
        CHECK(normalizer_act(N(Q(2), Q(3), Q(0), Q(1)), pt("[1,inf,1]", 1)).str() == "[1,inf,4/3]");
    }

    TEST_CASE("general images agree with the rules on the stabilizers") {
        Sampler s;
        for (int i = 0; i < 20; ++i) {
            int r = 2 + int(s.rng() % 3);
            Rat w = s.nonzero(), q = s.any(), b2 = s.nonzero();
            // b1 = b2^r / b with b^2 = b2: pick b2 as a square
            Rat b = s.nonzero();
            b2 = b.pow(2);
            Rat b1 = b2.pow(r) / b;
            NormalizerElement n = N(b1, b2, s.any(), s.any(), s.any());
            auto p = validate_sequence({CoordEntry::zero(), CoordEntry::infinity(), CoordEntry::finite(w), CoordEntry::finite(q)}, r);
            CHECK(normalizer_image(n, p) == normalizer_act(n, p));
        }
    }

    TEST_CASE("compose and inverse") {
        Sampler s;
        for (int i = 0; i < 10; ++i) {
            auto g = s.element(), h = s.element();
            auto p = pt("[0,inf,2,3]", 3);
            CHECK(normalizer_image(compose(g, h), p) == normalizer_image(g, normalizer_image(h, p)));
            CHECK(normalizer_image(compose(inverse(g), g), p) == p);
        }
    }

    TEST_CASE("canonical forms") {
        auto ii = canonical_form(M("Bl(F2,[3],[6])"));
        CHECK(ii.tag == "ii");
        CHECK(ii.q == Q(1, 2));
        CHECK(ii.str() == "(ii) Bl(F2,[1],[1/2])");
        CHECK(canonical_form(M("Bl(F2,[6],[3])")) == ii);

        auto iv = canonical_form(M("Bl(F2,[0,inf,5,q0])"));
        CHECK(iv.tag == "iv");
        CHECK(iv.str() == "(iv) Bl(F2,[0,inf,1,0])");
        CHECK(canonical_form(M("Bl(F3,[0,inf,5,0])")).tag == "iv");
        CHECK(canonical_form(M("Bl(F3,[0,inf,5,7])")).tag == "v");

        auto i = canonical_form(M("Bl(F1,[2],[7])"));
        CHECK(i.str() == "(i) Bl(F1,[0],[1])");

        auto iii = canonical_form(M("Bl(F4,[0,0,2],[18])"));
        CHECK(iii.tag == "iii");
        CHECK(iii.k == 2);
        CHECK(iii.to_canonical.has_value());
        // b2^2 = 3 has no rational solution
        auto irr = canonical_form(M("Bl(F4,[0,0,2],[6])"));
        CHECK(irr == iii);
        CHECK_FALSE(irr.to_canonical.has_value());
        CHECK(canonical_form(M("Bl(F3,[0,0,0],[4])")).str() == "(iii) Bl(F3,[0_(2),1],[1])");

        CHECK(canonical_form(M("Bl(F3,[2,inf,7])")).str() == "(vi) Bl(F3,[1,inf,1])");
        CHECK(canonical_form(M("Bl(F1,[2,inf,7])")).str() == "(vi) Bl(F1,[1,inf,1])");

        CHECK(error_kind([] { canonical_form(M("Bl(F2,[0],[1])")); }) == "NotClassifiable");
        CHECK(error_kind([] { canonical_form(M("Bl(F2,[inf,inf,inf,w,q])")); }) == "NotClassifiable");
    }

    TEST_CASE("the recorded element reaches the representative") {
        for (const char* text : {"Bl(F2,[3],[6])", "Bl(F3,[0,inf,5,7])", "Bl(F2,[0,inf,5,3])", "Bl(F1,[2],[7])",
                                 "Bl(F4,[0,0,2],[18])", "Bl(F3,[0,0,5],[2])", "Bl(F3,[2,inf,7])", "Bl(F1,[2,inf,7])",
                                 "Bl(F3,[0,3],[12])"}) {
            CAPTURE(text);
            auto m = M(text);
            auto cf = canonical_form(m);
            REQUIRE(cf.to_canonical);
            CHECK(leaf_strs(apply_normalizer(*cf.to_canonical, m)) == leaf_strs(cf.representative()));
            CHECK(canonical_form(cf.representative()) == cf);
        }
    }

    TEST_CASE("canonical_form is constant on normalizer orbits") {
        Sampler s;
        for (int i = 0; i < 100; ++i) {
            int r = 1 + int(s.rng() % 4);
            auto m = s.model(r);
            auto n = s.element();
            CAPTURE(m.str());
            CAPTURE(n.str());
            auto moved = apply_normalizer(n, m);
            CHECK(canonical_form(moved) == canonical_form(m));
        }
    }

    TEST_CASE("equivalence examples") {
        CHECK(equivalent_models(M("Bl(F3,[1],[5])"), M("Bl(F3,[1],[1/5])")).equivalent);
        CHECK_FALSE(equivalent_models(M("Bl(F3,[1],[5])"), M("Bl(F3,[1],[7])")).equivalent);
        auto self = equivalent_models(M("Bl(F3,[1],[5])"), M("Bl(F3,[1],[5])"));
        CHECK(self.equivalent);
        REQUIRE(self.witness);
        CHECK(self.witness->b1 == Rat(1L));
        CHECK(self.witness->b2 == Rat(1L));
        CHECK(self.witness->a1 == Rat(0L));
        CHECK_FALSE(equivalent_models(M("Bl(F3,[1],[5])"), M("Bl(F2,[1],[5])")).equivalent);
    }

    TEST_CASE("two-point models are told apart by q up to inversion") {
        Sampler s;
        for (int r = 2; r <= 4; ++r)
            for (int i = 0; i < 20; ++i) {
                Rat q = s.nonzero(), other = s.nonzero();
                if (q == Rat(1L) || other == Rat(1L)) continue;
                auto base = M("Bl(F" + std::to_string(r) + ",[1],[" + q.str() + "])");
                CHECK(equivalent_models(base, M("Bl(F" + std::to_string(r) + ",[1],[" + (Rat(1L) / q).str() + "])")).equivalent);
                bool related = other == q || other == Rat(1L) / q;
                CHECK(equivalent_models(base, M("Bl(F" + std::to_string(r) + ",[1],[" + other.str() + "])")).equivalent == related);
            }
    }

    TEST_CASE("equivalent_models is an equivalence relation") {
        Sampler s;
        std::vector<BlowupModel> ms;
        for (int i = 0; i < 30; ++i) ms.push_back(s.model(2 + int(s.rng() % 2)));
        // seed a few guaranteed equivalences
        for (int i = 0; i < 6; ++i) ms.push_back(apply_normalizer(s.element(), ms[size_t(i)]));
        const size_t n = ms.size();
        std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) eq[i][j] = equivalent_models(ms[i], ms[j]).equivalent;
        for (size_t i = 0; i < n; ++i) {
            CHECK(eq[i][i]);
            for (size_t j = 0; j < n; ++j) {
                CHECK(eq[i][j] == eq[j][i]);
                for (size_t k = 0; k < n; ++k)
                    if (eq[i][j] && eq[j][k]) CHECK(eq[i][k]);
            }
        }
    }

    TEST_CASE("abstract isomorphisms") {
        CHECK(abstract_isomorphic(M("Bl(F3,[1],[q])"), M("Bl(F3,[0],[1])")));
        CHECK(abstract_isomorphic(M("Bl(F3,[0,inf,1,0])"), M("Bl(F3,[0,inf,1,1])")));
        CHECK_FALSE(abstract_isomorphic(M("Bl(F3,[0,1],[1])"), M("Bl(F3,[1,inf,1])")));
        CHECK_FALSE(equivalent_models(M("Bl(F3,[0,inf,1,0])"), M("Bl(F3,[0,inf,1,1])")).equivalent);

        for (int r = 2; r <= 4; ++r) {
            AutFElement g = two_point_witness(r, Rat::variable("q"));
            CHECK(verify_point_map(g, pt("[1]", r), pt("[0]", r)));
            CHECK(verify_point_map(g, pt("[q]", r), pt("[1]", r)));
            CHECK(witness_matches(g, M("Bl(F" + std::to_string(r) + ",[1],[q])"), M("Bl(F" + std::to_string(r) + ",[0],[1])")));
            AutFElement h = c_family_witness(r);
            CHECK(verify_point_map(h, pt("[0,inf,1,0]", r), pt("[0,inf,1,1]", r)));
        }
    }

    TEST_CASE("classification table") {
        auto rows = emit_table(5);
        REQUIRE(rows.size() == 12);
        std::set<std::string> types;
        for (auto& row : rows) {
            CAPTURE(row.no);
            CHECK_FALSE(row.instances.empty());
            for (auto& inst : row.instances) {
                types.insert(inst.singularity);
                if (row.no >= 3 && row.no != 5) {
                    CHECK(inst.fixed_points == 1);
                    CHECK(inst.orbits.size() <= 3);
                }
            }
        }
        CHECK(types == std::set<std::string>{"smooth", "A1", "A2", "A3", "A4", "A5", "D4", "D5"});
        CHECK(rows[3].singularity == "A4");
        CHECK(rows[11].instances.size() == 1 + 2 + 3 + 4);
        for (auto& inst : rows[11].instances) CHECK(inst.singularity == "A" + std::to_string(inst.k + 1));

        auto j = nlohmann::json::parse(table_json(rows));
        CHECK(j["schema"] == "addsurf.table/1");
        CHECK(j["rows"][3]["singularity"] == "A4");
        CHECK(j["rows"][5]["orbits"] == nlohmann::json::array({"[0]", "[1]"}));
        CHECK(table_text(rows).find("Bl(F_r,[0_(k),1],[1])") != std::string::npos);
    }

    TEST_CASE("rows with several actions") {
        for (int r = 3; r <= 5; ++r) {
            auto iv = table_row_model(8, r, 0), v = table_row_model(8, r, 1);
            REQUIRE(iv);
            REQUIRE(v);
            CHECK(canonical_form(iv->model).tag == "iv");
            CHECK(canonical_form(v->model).tag == "v");
            CHECK(abstract_isomorphic(iv->model, v->model));
        }
        CHECK_FALSE(table_row_model(12, 3, 3));
        CHECK_FALSE(table_row_model(1, 1));
    }

    TEST_CASE("infinite-orbit actions") {
        auto k1 = infinite_orbit_actions(M("Bl(F3,[0,1],[1])"), ContractionMode::AllMinus2ExceptSection);
        REQUIRE(k1.size() == 1);
        CHECK(k1[0].corollary_case == 1);
        CHECK(k1[0].alternative.str() == "Bl(F3,[1],[0_(2)])");
        CHECK(k1[0].fixed_curve.str() == "[0_(2)]");
        CHECK(curve_fixedness(k1[0].alternative.action, k1[0].fixed_curve).always());

        auto e = infinite_orbit_actions(M("Bl(F2,[1,inf,1])"), ContractionMode::AllMinus2ExceptSection);
        REQUIRE(e.size() == 1);
        CHECK(e[0].corollary_case == 2);
        CHECK(e[0].alternative.str() == "Bl(F2,[0,inf,1])");
        CHECK(e[0].fixed_curve.str() == "[0,inf,1]");
        CHECK(witness_matches(e[0].witness, e[0].alternative, M("Bl(F2,[1,inf,1])")));

        auto section = infinite_orbit_actions(M("Bl(F2,[1,inf,1])"), ContractionMode::SectionOnly);
        REQUIRE(section.size() == 1);
        CHECK(section[0].corollary_case == 3);

        CHECK(infinite_orbit_actions(M("Bl(F1,[0],[1])"), ContractionMode::AllMinus2ExceptSection).empty());
        // E[0_(2),0] is never fixed on F_3, so k = r - 1 gives nothing
        CHECK(infinite_orbit_actions(M("Bl(F3,[0,0,1],[1])"), ContractionMode::AllMinus2ExceptSection).empty());
        CHECK_FALSE(curve_fixedness(make_tag(ActionKind::Phi, 3), parse_curve("[0,0,0]")).always());
    }
}
