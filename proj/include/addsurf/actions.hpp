#pragma once

#include <optional>
#include <string>
#include <vector>

#include "addsurf/bubble.hpp"

namespace addsurf {

enum class ActionKind { Phi, Psi };

struct ActionTag {
    ActionKind kind = ActionKind::Phi;
    int r = 1;

    std::string str() const;
    friend bool operator==(const ActionTag& l, const ActionTag& r) { return l.kind == r.kind && l.r == r.r; }
};

ActionTag make_tag(ActionKind kind, int r);  // validates r (Phi needs r >= 1)

// Components in chart coordinates (u, v), or (x, y) on the open orbit, and the
// group parameters (a, b).
struct ActionMap {
    RatPair comp;
    bool on_open_orbit = false;
};

struct VectorField {
    RatPair d_a;
    RatPair d_b;
    std::string str() const;  // "∂_a = (.., ..); ∂_b = (.., ..)"
};

ActionMap action_on_open_orbit(const ActionTag& t);
// chart.forward o action o chart.inverse in one substitution chain.
ActionMap transport(const ActionTag& t, const ChartMap& chart);
// The same map built one tower step at a time.
ActionMap transport_steps(const ActionTag& t, const std::vector<ChartStep>& steps);
ActionMap transport_to_point(const ActionTag& t, const BubblePoint& p);

VectorField vector_fields(const ActionMap& m);
// Pushes the open-orbit fields through the tower (Jacobian times field).
VectorField push_fields(const ActionTag& t, const std::vector<ChartStep>& steps);
VectorField fields_at_point(const ActionTag& t, const BubblePoint& p);

// Generic-parameter test: every prefix maps the origin to itself for all (a, b).
bool is_point_fixed(const ActionTag& t, const BubblePoint& p);
// Origin test for the last step only (prefixes not checked).
bool origin_fixed(const ActionMap& m);

struct FixednessCondition {
    bool never = false;           // no parameter value satisfying the constraints works
    std::vector<Poly> generators;  // fixed exactly on their common zero set

    bool always() const { return !never && generators.empty(); }
    // Holds at the given parameter values (unbound parameters are treated as generic).
    bool holds(const std::map<std::string, Scalar>& values) const;
    std::string str() const;
};

// Reduces raw conditions: strips nonzero monomial factors, radicals of
// monomials, redundant multiples; detects infeasibility.
FixednessCondition normalize_condition(const std::vector<Poly>& raw, const std::set<std::string>& nonzero);

// Vector-field test on {v = 0} of the curve chart. Throws RestrictionPole.
FixednessCondition curve_fixedness(const ActionTag& t, const CurveId& c, const std::set<std::string>& nonzero = {});
// Action-map test: the transported map restricted to {v = 0} is (u, 0) for all (a, b).
FixednessCondition curve_fixedness_by_map(const ActionTag& t, const CurveId& c,
                                          const std::set<std::string>& nonzero = {});

// One instance of the fixed-curve clauses (i)..(viii) on (F_r, phi_r).
struct ClauseCheck {
    std::string clause;    // "i" .. "viii"
    int r = 0;
    int k = -1;            // clauses ii and vi
    std::string curve;
    std::string expected;  // FixednessCondition::str() form
    std::string computed;
    bool ok = false;
};

// q and w symbolic, w nonzero; clause vi runs k = 0..max_k.
std::vector<ClauseCheck> fixed_curve_sweep(int r_max, int max_k = 4);

// Elements of Aut_f(F_r): (x, y) -> (b1 x + a0 + a1 y + ... + ar y^r, b2 y + c).
struct AutFElement {
    Rat b1{1L}, b2{1L};
    std::vector<Rat> a;  // a[i] multiplies y^i; missing entries are zero
    Rat c{0L};

    RatPair as_map() const;
    std::string str() const;
};

// chart(dst).forward o g o chart(src).inverse fixes the origin, checked one
// tower level at a time. Both points need the same depth and head shape.
bool verify_point_map(const AutFElement& g, const BubblePoint& src, const BubblePoint& dst);

}  // namespace addsurf
