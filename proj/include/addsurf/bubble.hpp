#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "addsurf/rat.hpp"

namespace addsurf {

// One entry of a coordinate sequence.
struct CoordEntry {
    enum class Kind { Zero, Infinity, Param, Const, Expr };
    Kind kind = Kind::Zero;
    std::string name;  // Param only
    Scalar value;      // Const only (never zero; zero is stored as Zero)
    Rat expr;          // Expr only: a nonconstant expression in parameters

    static CoordEntry zero() { return {}; }
    static CoordEntry infinity() { return {Kind::Infinity, {}, {}, {}}; }
    static CoordEntry param(std::string name) { return {Kind::Param, std::move(name), {}, {}}; }
    static CoordEntry constant(const Scalar& value);
    // Picks the simplest kind for a finite value.
    static CoordEntry finite(const Rat& value);

    bool is_infinity() const { return kind == Kind::Infinity; }
    bool is_zero() const { return kind == Kind::Zero; }
    bool is_finite() const { return kind != Kind::Infinity; }
    Rat as_rat() const;  // finite entries only
    std::string str() const;

    friend bool operator==(const CoordEntry& l, const CoordEntry& r) {
        return l.kind == r.kind && l.name == r.name && l.value == r.value && l.expr == r.expr;
    }
    friend bool operator!=(const CoordEntry& l, const CoordEntry& r) { return !(l == r); }
    friend bool operator<(const CoordEntry& l, const CoordEntry& r);
};

using Sequence = std::vector<CoordEntry>;

std::string sequence_str(const Sequence& seq);  // re-compresses runs as e_(k)
Sequence parse_sequence(const std::string& text);  // accepts "[ ]" as empty

// A validated point over the distinguished fiber.
struct BubblePoint {
    int r = 0;
    Sequence entries;
    std::set<std::string> nonzero;  // parameters constrained to be nonzero

    size_t depth() const { return entries.size(); }
    bool head_is_infinity() const { return entries.front().is_infinity(); }
    BubblePoint prefix(size_t len) const;
    BubblePoint child(const CoordEntry& entry) const;
    std::set<std::string> params() const;
    std::string str() const { return sequence_str(entries); }

    friend bool operator==(const BubblePoint& l, const BubblePoint& r) {
        return l.r == r.r && l.entries == r.entries;
    }
    friend bool operator<(const BubblePoint& l, const BubblePoint& r) {
        return l.r != r.r ? l.r < r.r : l.entries < r.entries;
    }
};

BubblePoint validate_sequence(const Sequence& seq, int r, std::set<std::string> nonzero = {});
BubblePoint parse_point(const std::string& text, int r, std::set<std::string> nonzero = {});

using RatPair = std::pair<Rat, Rat>;

// forward: (u, v) in terms of (x, y); inverse: (x, y) in terms of (u, v).
struct ChartMap {
    RatPair forward;
    RatPair inverse;
};

// One step of the tower. The first step of a point starts from the open orbit
// (source variables x, y); later steps map chart coordinates (u, v) to (u, v).
struct ChartStep {
    RatPair forward;
    RatPair inverse;
    bool from_open_orbit = false;
};

std::vector<ChartStep> chart_steps(const BubblePoint& p);
// Composes the steps and verifies both round trips; throws ChartRoundTrip on failure.
ChartMap chart_to_point(const BubblePoint& p);
// Composes the whole tower in one substitution chain (used to cross-check).
ChartMap compose_steps(const std::vector<ChartStep>& steps);
bool round_trip_ok(const ChartMap& chart);

struct CurveId {
    enum class Kind { Fiber, Section, Exceptional };
    Kind kind = Kind::Fiber;
    Sequence seq;  // Exceptional only

    static CurveId fiber() { return {}; }
    static CurveId section() { return {Kind::Section, {}}; }
    static CurveId exceptional(Sequence s) { return {Kind::Exceptional, std::move(s)}; }

    bool is_exceptional() const { return kind == Kind::Exceptional; }
    std::string str() const;

    friend bool operator==(const CurveId& l, const CurveId& r) { return l.kind == r.kind && l.seq == r.seq; }
    friend bool operator!=(const CurveId& l, const CurveId& r) { return !(l == r); }
    friend bool operator<(const CurveId& l, const CurveId& r) {
        return l.kind != r.kind ? l.kind < r.kind : l.seq < r.seq;
    }
};

CurveId parse_curve(const std::string& text);

// Chart steps whose last chart has the curve as {v = 0}.
std::vector<ChartStep> curve_chart_steps(const CurveId& c, int r, const std::set<std::string>& nonzero = {});
ChartMap curve_chart(const CurveId& c, int r, const std::set<std::string>& nonzero = {});

struct Axes {
    CurveId u_axis;
    std::optional<CurveId> v_axis;  // nullopt: the v-axis lies in the open orbit
};
Axes incidence_axes(const BubblePoint& p);

}  // namespace addsurf
