#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "addsurf/actions.hpp"
#include "addsurf/ade.hpp"

namespace addsurf {

// Bl(F_r, points) with every strict prefix of a point blown before it.
struct BlowupModel {
    int r = 0;
    ActionTag action;
    std::vector<BubblePoint> points;               // prefix-closed, prefixes first
    std::map<std::string, Scalar> constraints;     // values substituted for parameters

    // Points that are not a strict prefix of another point.
    std::vector<BubblePoint> leaves() const;
    std::set<std::string> params() const;
    // "Bl(F2,[0,inf,1,0])", listing leaves only.
    std::string str() const;
};

// Validates fixedness of every point, closing under prefixes when asked.
// Throws NonFixedPoint, DuplicatePoint, MissingPrefix.
BlowupModel build_model(int r, const ActionTag& action, std::vector<Sequence> points, bool close_prefixes = true,
                        const std::map<std::string, Scalar>& constraints = {});
BlowupModel build_model(int r, const std::vector<Sequence>& points);  // action phi_r

// "Bl(F2,[0,inf,5,q0])" or "Bl(F_2, [1], [q])"; the action is phi_r.
BlowupModel parse_model(const std::string& text, const std::map<std::string, Scalar>& constraints = {});

// Cached fixedness under generic parameters.
bool curve_is_fixed(const ActionTag& t, const CurveId& c);
bool point_is_fixed(const ActionTag& t, const BubblePoint& p);

struct BoundaryCurve {
    CurveId id;
    int self_int = 0;
    bool fixed = false;
};

struct BoundaryEdge {
    CurveId a, b;
    Sequence witness;  // the blown-up-space point where the two curves meet
};

struct BoundaryGraph {
    int r = 0;
    std::vector<BoundaryCurve> curves;
    std::vector<BoundaryEdge> edges;

    const BoundaryCurve* find(const CurveId& id) const;
    bool adjacent(const CurveId& a, const CurveId& b) const;
    std::vector<CurveId> neighbors(const CurveId& id) const;
    bool is_tree() const;
    // Sorted "curve <id> <self_int> fixed|moving" and "edge <id> <id>" lines.
    std::string to_text() const;
    std::string to_dot() const;
    std::string to_json() const;
};

BoundaryGraph boundary_graph(const BlowupModel& m);

// The blowup data drawn for cases A..F, with parameters q1, q2 (A), q, w (B, E), w, q (C, D), w (F).
// Case B uses k for both chains. Throws InvalidR or InvalidK outside the admissible range.
BlowupModel figure_model(char which, int r, int k = 0);

enum class ContractionMode {
    FixedMinus2,                     // fixed curves only
    FixedMinus2PlusNonFixedMinus2,   // every (-2)-curve
    AllMinus2ExceptSection,          // every (-2)-curve other than the section
    SectionOnly,                     // the section alone, which must be a (-2)-curve
};

struct Contraction {
    std::vector<CurveId> contracted;
    std::vector<std::vector<CurveId>> components;  // connected pieces, one per singular point
    std::vector<SingularityType> singularities;
    std::vector<CurveId> survivors;
    std::vector<std::pair<CurveId, CurveId>> survivor_edges;  // direct or through one contracted piece
};

// Throws NotMinus2 when a selected curve, or any fixed curve, is not a (-2)-curve.
Contraction contract(const BoundaryGraph& g, ContractionMode mode);

// Singularity of a connected set of (-2)-curves; throws NotADE.
SingularityType singularity_type(const BoundaryGraph& g, const std::vector<CurveId>& curves);

bool check_minus2_hypothesis(const BoundaryGraph& g);

// Non-fixed boundary curves that survive the contraction.
std::vector<CurveId> one_dim_orbits(const BoundaryGraph& g, const std::vector<CurveId>& contracted = {});

// Connected pieces of the fixed locus after contraction; nullopt when a fixed
// curve survives, so the fixed locus is infinite.
std::optional<int> fixed_point_count(const BoundaryGraph& g, const std::vector<CurveId>& contracted = {});

enum class Family { A, B, C, D, E, F, Unclassified };
std::string family_name(Family f);

struct FamilyInfo {
    Family family = Family::Unclassified;
    bool reducible = false;          // B, D, F
    std::optional<Family> reduces_to;
};

// Shape of the leaves against the blowup cases.
FamilyInfo classify_family(const BlowupModel& m);

struct EnumerationOptions {
    int max_points = 2;  // blown chains (leaves)
    int max_depth = 6;
    bool allow_infinity = true;
};

struct EnumeratedModel {
    BlowupModel model;
    FamilyInfo family;
    std::string key;  // canonical encoding used for deduplication and ordering
};

std::vector<EnumeratedModel> enumerate_models(int r, const EnumerationOptions& options = {});

// Parameter names replaced by p0, p1, ... in order of appearance.
Sequence rename_params(const Sequence& s, std::map<std::string, std::string>& names);

}  // namespace addsurf
