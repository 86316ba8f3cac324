#pragma once

#include <optional>
#include <string>
#include <vector>

#include "addsurf/model.hpp"

namespace addsurf {

// (x, y) -> (b1 x + a0 + a1 y, b2 y + c), normalizing phi_r.
struct NormalizerElement {
    Rat b1{1L}, b2{1L}, a0{0L}, a1{0L}, c{0L};

    AutFElement autf() const;
    std::string str() const;
};

// lhs o rhs
NormalizerElement compose(const NormalizerElement& lhs, const NormalizerElement& rhs);
NormalizerElement inverse(const NormalizerElement& n);

// The rewrite rules for the shapes [q], [0_(k),q], [0_(r-1),q], [0,inf,w],
// [q,inf,w] (stabilizer of [q]) and [0,inf,w,q] (stabilizer of [0,inf,w]).
// Throws RuleShapeMismatch or StabilizerViolated; every image is checked
// with verify_point_map.
BubblePoint normalizer_act(const NormalizerElement& n, const BubblePoint& p);

// Image for an arbitrary element on the same shapes, without stabilizer
// conditions. Checked with verify_point_map.
BubblePoint normalizer_image(const NormalizerElement& n, const BubblePoint& p);

// Image of a whole model, leaf by leaf.
BlowupModel apply_normalizer(const NormalizerElement& n, const BlowupModel& m);

struct CanonicalForm {
    std::string tag;          // "i" .. "vi"
    int r = 0;
    int k = -1;               // case iii
    std::optional<Rat> q;     // case ii, representative of {q, 1/q}
    // Element taking the model to the representative; absent when it needs an
    // irrational root (case iii with a non-power ratio) or a symbolic one.
    std::optional<NormalizerElement> to_canonical;

    std::vector<Sequence> points() const;
    BlowupModel representative() const;
    std::string str() const;
    friend bool operator==(const CanonicalForm& l, const CanonicalForm& r) {
        return l.tag == r.tag && l.r == r.r && l.k == r.k && l.q == r.q;
    }
};

// Throws NotClassifiable outside the families A, C, E satisfying the (-2)-hypothesis.
CanonicalForm canonical_form(const BlowupModel& m);

struct Equivalence {
    bool equivalent = false;
    std::optional<NormalizerElement> witness;
};

// A returned witness has passed verify_point_map on every pair of matched leaves.
Equivalence equivalent_models(const BlowupModel& m1, const BlowupModel& m2);

// Leaf bijection m1 -> m2 realized by g, or false.
bool witness_matches(const AutFElement& g, const BlowupModel& m1, const BlowupModel& m2);

bool abstract_isomorphic(const BlowupModel& m1, const BlowupModel& m2);
// Aut_f element taking Bl(F_r,[1],[q]) to Bl(F_r,[0],[1]).
AutFElement two_point_witness(int r, const Rat& q);
// Aut_f element taking Bl(F_r,[0,inf,1,0]) to Bl(F_r,[0,inf,1,1]).
AutFElement c_family_witness(int r);

struct RowInstance {
    int r = 0;
    int k = -1;
    std::string model;
    std::vector<std::string> orbits;
    std::string singularity;
    int fixed_points = 0;
};

struct TableRow {
    int no = 0;
    std::string case_label;
    std::string model;       // desingularization
    std::string parameters;
    std::string action;
    std::vector<std::string> orbits;
    std::string singularity;
    std::vector<RowInstance> instances;  // computed
};

// Rows recomputed for r up to max_r; throws InternalMismatch on disagreement
// with the pinned table.
std::vector<TableRow> emit_table(int max_r = 5);
std::string table_text(const std::vector<TableRow>& rows);
std::string table_json(const std::vector<TableRow>& rows);

struct InfiniteOrbitCase {
    int corollary_case = 0;  // 1: [0_(k),0]; 2: [0,inf,1]; 3: section-only contraction
    BlowupModel alternative;
    CurveId fixed_curve;
    AutFElement witness;     // takes the alternative's points to the original ones
};

std::vector<InfiniteOrbitCase> infinite_orbit_actions(const BlowupModel& m, ContractionMode mode);

struct InfiniteOrbitFlag {
    int row = 0;
    int r = 0;
    int k = -1;
    InfiniteOrbitCase found;
};

// Every Table 1 row with blowup data, r up to max_r.
std::vector<InfiniteOrbitFlag> infinite_orbit_sweep(int max_r);

// Blowup datum of a table row at (r, k); nullopt for the sentinel rows and out-of-range values.
struct RowModel {
    BlowupModel model;
    ContractionMode mode;
};
std::optional<RowModel> table_row_model(int row, int r, int k = -1);

}  // namespace addsurf
