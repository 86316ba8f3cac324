#include "addsurf/bubble.hpp"
#include "doctest.h"

using namespace addsurf;

namespace {

Rat P(const char* s) { return parse_expr(s); }
BubblePoint pt(const char* s, int r) { return parse_point(s, r); }

}  // namespace

TEST_SUITE("charts") {

TEST_CASE("sequence grammar") {
    auto s = parse_sequence("[0_(3), inf, w, 3/2, -1]");
    REQUIRE(s.size() == 7);
    CHECK(s[0].is_zero());
    CHECK(s[2].is_zero());
    CHECK(s[3].is_infinity());
    CHECK(s[4].kind == CoordEntry::Kind::Param);
    CHECK(s[5].value == Scalar(3, 2));
    CHECK(sequence_str(s) == "[0_(3),inf,w,3/2,-1]");
    CHECK(sequence_str(parse_sequence("[inf,inf,0,0,w]")) == "[inf_(2),0_(2),w]");
    CHECK(parse_sequence("[ ]").empty());
    CHECK(parse_sequence("[0/5]")[0].is_zero());
    CHECK_THROWS_AS(parse_sequence("0,1"), Error);
    CHECK_THROWS_AS(parse_sequence("[u]"), Error);
    CHECK_THROWS_AS(parse_sequence("[1/0]"), Error);
    CHECK_THROWS_AS(parse_sequence("[0_(x)]"), Error);
}

TEST_CASE("validate_sequence examples") {
    auto p = pt("[0,inf,w,q]", 2);
    CHECK(p.depth() == 4);
    CHECK_THROWS_WITH_AS(pt("[inf,5]", 2), doctest::Contains("HeadInfinityThenFinite"), Error);
    CHECK_THROWS_WITH_AS(pt("[inf]", 2), doctest::Contains("HeadInfinityThenFinite"), Error);
    CHECK_THROWS_WITH_AS(validate_sequence({}, 2), doctest::Contains("EmptySequence"), Error);
    auto z = pt("[0_(3)]", 3);
    CHECK(z.entries == Sequence(3, CoordEntry::zero()));
    CHECK(z.str() == "[0_(3)]");
}

TEST_CASE("chart_to_point examples") {
    auto c0 = chart_to_point(pt("[0]", 2));
    CHECK(c0.forward.first == P("x/y^2"));
    CHECK(c0.forward.second == P("1/y"));
    for (int r = 0; r <= 4; ++r) {
        auto c = chart_to_point(pt("[inf,inf]", r));
        CHECK(c.forward.first == parse_expr("y^" + std::to_string(r) + "/x"));
        CHECK(c.forward.second == P("1/y"));
    }
    auto cq = chart_to_point(pt("[q,inf]", 1));
    CHECK(cq.forward.first == P("x/y - q"));
    CHECK(cq.forward.second == P("1/(x - q*y)"));
    CHECK(round_trip_ok(cq));
}

TEST_CASE("curve charts") {
    auto e0 = curve_chart(CurveId::exceptional(parse_sequence("[0]")), 2);
    auto p00 = chart_to_point(pt("[0,0]", 2));
    CHECK(e0.forward == p00.forward);
    auto f = curve_chart(CurveId::fiber(), 3);
    CHECK(f.forward == chart_to_point(pt("[0]", 3)).forward);
    auto e = curve_chart(CurveId::exceptional(parse_sequence("[inf,inf]")), 2);
    CHECK(e.forward == chart_to_point(pt("[inf,inf,0]", 2)).forward);
    auto s = curve_chart(CurveId::section(), 2);
    CHECK(s.forward.first == P("1/y"));
    CHECK(s.forward.second == P("y^2/x"));
    CHECK(round_trip_ok(s));
}

TEST_CASE("incidence_axes examples") {
    auto a = incidence_axes(pt("[q]", 2));
    CHECK(a.u_axis == CurveId::fiber());
    CHECK(!a.v_axis);
    auto b = incidence_axes(pt("[inf,inf]", 2));
    CHECK(b.u_axis == CurveId::fiber());
    CHECK(b.v_axis == CurveId::section());
    auto c = incidence_axes(pt("[inf,inf,0]", 2));
    CHECK(c.u_axis == CurveId::exceptional(parse_sequence("[inf,inf]")));
    CHECK(c.v_axis == CurveId::section());
    auto d = incidence_axes(pt("[0,inf]", 2));
    CHECK(d.u_axis == CurveId::fiber());
    CHECK(d.v_axis == CurveId::exceptional(parse_sequence("[0]")));
    auto e = incidence_axes(pt("[0,inf,w]", 2));
    CHECK(e.u_axis == CurveId::exceptional(parse_sequence("[0,inf]")));
    CHECK(!e.v_axis);
}

TEST_CASE("incidence axes name only earlier curves") {
    // every axis curve is the fiber, the section, or a strict prefix
    std::vector<Sequence> frontier{parse_sequence("[0]"), parse_sequence("[q]"), parse_sequence("[inf,inf]")};
    int checked = 0;
    while (!frontier.empty()) {
        Sequence s = frontier.back();
        frontier.pop_back();
        auto ax = incidence_axes(validate_sequence(s, 2));
        for (auto* c : {&ax.u_axis, ax.v_axis ? &*ax.v_axis : nullptr}) {
            if (!c || !c->is_exceptional()) continue;
            CHECK(c->seq.size() < s.size());
            CHECK(std::equal(c->seq.begin(), c->seq.end(), s.begin()));
        }
        ++checked;
        if (s.size() < 6)
            for (auto e : {CoordEntry::zero(), CoordEntry::infinity(), CoordEntry::param("q")}) {
                Sequence t = s;
                t.push_back(e);
                frontier.push_back(t);
            }
    }
    CHECK(checked > 700);
}

TEST_CASE("round trips and associativity of tower composition") {
    // all sequences up to length 6 with entries 0, inf or one parameter
    std::vector<Sequence> frontier{parse_sequence("[0]"), parse_sequence("[q]"), parse_sequence("[inf,inf]")};
    int checked = 0;
    while (!frontier.empty()) {
        Sequence s = frontier.back();
        frontier.pop_back();
        auto p = validate_sequence(s, 2);
        auto steps = chart_steps(p);
        ChartMap left = compose_steps(steps);
        // right-nested: compose the later steps among themselves first
        ChartMap tail{{Rat::variable("u"), Rat::variable("v")}, {Rat::variable("u"), Rat::variable("v")}};
        for (size_t i = steps.size(); i-- > 1;) {
            Bindings bf{{"u", steps[i].forward.first}, {"v", steps[i].forward.second}};
            // tail := tail o step_i (forward), step_i^-1 o tail^-1 (inverse)
            tail.forward = {substitute(tail.forward.first, bf), substitute(tail.forward.second, bf)};
            Bindings bi{{"u", tail.inverse.first}, {"v", tail.inverse.second}};
            tail.inverse = {substitute(steps[i].inverse.first, bi), substitute(steps[i].inverse.second, bi)};
        }
        Bindings tf{{"u", steps[0].forward.first}, {"v", steps[0].forward.second}};
        RatPair right_fwd{substitute(tail.forward.first, tf), substitute(tail.forward.second, tf)};
        Bindings ti{{"u", tail.inverse.first}, {"v", tail.inverse.second}};
        RatPair right_inv{substitute(steps[0].inverse.first, ti), substitute(steps[0].inverse.second, ti)};
        CHECK(left.forward == right_fwd);
        CHECK(left.inverse == right_inv);
        CHECK(round_trip_ok(left));
        ++checked;
        if (s.size() < 6)
            for (auto e : {CoordEntry::zero(), CoordEntry::infinity(), CoordEntry::param("q")}) {
                Sequence t = s;
                t.push_back(e);
                frontier.push_back(t);
            }
    }
    CHECK(checked == 2 * 364 + 121);
}

}  // TEST_SUITE
