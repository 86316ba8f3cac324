#include <algorithm>
#include <sstream>

#include "addsurf/classify.hpp"
#include "json.hpp"

namespace addsurf {

namespace {

Sequence seq(const std::string& text) { return parse_sequence(text); }

Sequence zeros_one(int k) {
    Sequence s(size_t(k), CoordEntry::zero());
    s.push_back(CoordEntry::constant(1));
    return s;
}

struct PinnedRow {
    int no;
    const char* case_label;
    const char* model;
    const char* parameters;
    const char* action;
    std::vector<std::string> orbits;
    const char* singularity;
};

const std::vector<PinnedRow>& pinned() {
    static const std::vector<PinnedRow> rows{
        {1, "P2", "P2", "--", "psi_1", {"[ ]"}, "smooth"},
        {2, "P(1,1,2)", "F2", "--", "psi_2", {"[ ]"}, "A1"},
        {3, "(C)", "Bl(F2,[0,inf,1,0])", "--", "phi_2", {"[0,inf,1,0]"}, "D5"},
        {4, "(E)", "Bl(F2,[1,inf,1])", "--", "phi_2", {"[1,inf,1]"}, "A4"},
        {5, "F_r", "F_r", "r>=0", "psi_r", {"[ ]", "[inf]"}, "smooth"},
        {6, "(A)", "Bl(F2,[0],[1])", "--", "phi_2^2", {"[0]", "[1]"}, "A2"},
        {7, "(A)", "Bl(F2,[0,1],[1])", "--", "phi_2", {"[0,1]", "[1]"}, "A3"},
        {8, "(C)", "Bl(F_r,[0,inf,1,0])", "r>=2", "phi_r^1", {"[inf]", "[0,inf,1,0]"}, "D4"},
        {9, "(E)", "Bl(F_r,[1,inf,1])", "r>=1", "phi_r", {"[inf]", "[1,inf,1]"}, "A3"},
        {10, "(A)", "Bl(F1,[0],[1])", "--", "phi_1", {"[inf]", "[0]", "[1]"}, "A1"},
        {11, "(A)", "Bl(F_r,[0],[1])", "r>=2", "phi_r^2", {"[inf]", "[0]", "[1]"}, "A1"},
        {12, "(A)", "Bl(F_r,[0_(k),1],[1])", "r>=2, k=1..r-1", "phi_r", {"[inf]", "[0_(k),1]", "[1]"}, "A_{k+1}"},
    };
    return rows;
}

std::pair<int, int> r_range(int row) {
    switch (row) {
        case 1: case 10: return {1, 1};
        case 2: case 3: case 4: case 6: case 7: return {2, 2};
        case 5: return {0, 99};
        case 8: case 11: case 12: return {2, 99};
        case 9: return {1, 99};
    }
    return {1, 0};
}

std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<std::string> labels(const std::vector<CurveId>& curves) {
    std::vector<std::string> out;
    for (auto& c : curves) out.push_back(c.str());
    return out;
}

void mismatch(int row, int r, const std::string& what) {
    throw Error("InternalMismatch", "row " + std::to_string(row) + " at r = " + std::to_string(r) + ": " + what);
}

RowInstance compute_instance(int row, int r, int k) {
    RowInstance inst{r, k, "", {}, "", 0};
    if (row == 1 || row == 2 || row == 5) {
        // F_r with psi_r; P2 blows down the (-1)-section of F_1, P(1,1,2) contracts the (-2)-section of F_2
        int base = row == 1 ? 1 : row == 2 ? 2 : r;
        BlowupModel m = build_model(base, make_tag(ActionKind::Psi, base), {});
        BoundaryGraph g = boundary_graph(m);
        inst.model = "F" + std::to_string(base);
        if (row == 5) {
            inst.orbits = labels(one_dim_orbits(g));
            inst.singularity = "smooth";
        } else if (row == 1) {
            if (g.find(CurveId::section())->self_int != -1) mismatch(row, r, "section is not a (-1)-curve");
            inst.orbits = labels(one_dim_orbits(g, {CurveId::section()}));
            inst.singularity = "smooth";
        } else {
            Contraction c = contract(g, ContractionMode::SectionOnly);
            inst.orbits = labels(one_dim_orbits(g, c.contracted));
            inst.singularity = c.singularities.at(0).str();
        }
        auto fp = fixed_point_count(g, row == 1 || row == 2 ? std::vector<CurveId>{CurveId::section()} : std::vector<CurveId>{});
        inst.fixed_points = fp ? *fp : -1;
        return inst;
    }
    auto rm = table_row_model(row, r, k);
    BoundaryGraph g = boundary_graph(rm->model);
    if (!check_minus2_hypothesis(g)) mismatch(row, r, "the (-2)-hypothesis fails");
    Contraction c = contract(g, rm->mode);
    inst.model = rm->model.str();
    if (c.singularities.size() != 1) mismatch(row, r, std::to_string(c.singularities.size()) + " singular points");
    inst.singularity = c.singularities[0].str();
    auto fp = fixed_point_count(g, c.contracted);
    inst.fixed_points = fp ? *fp : -1;
    std::vector<CurveId> orbits = one_dim_orbits(g, c.contracted);
    if (row == 6 || row == 11) {
        // labels moved to Bl(F_r,[0],[1]) by the Aut_f element taking [1] to [0] and [q] to [1]
        AutFElement h = two_point_witness(r, Rat::variable("q"));
        for (auto& o : orbits) {
            if (!o.is_exceptional()) continue;
            Rat p = o.seq[0].as_rat();
            Rat image = (h.b1 * p + h.a[size_t(r)]) / h.b2.pow(r);
            Sequence target{CoordEntry::finite(image)};
            if (!verify_point_map(h, validate_sequence(o.seq, r), validate_sequence(target, r)))
                mismatch(row, r, "relabeling fails at " + o.str());
            o = CurveId::exceptional(target);
        }
    }
    inst.orbits = labels(orbits);
    return inst;
}

std::vector<std::string> expected_orbits(const PinnedRow& row, int k) {
    if (row.no != 12) return row.orbits;
    return {"[inf]", sequence_str(zeros_one(k)), "[1]"};
}

std::string expected_singularity(const PinnedRow& row, int k) {
    if (row.no != 12) return row.singularity;
    return "A" + std::to_string(k + 1);
}

}  // namespace

std::optional<RowModel> table_row_model(int row, int r, int k) {
    auto [lo, hi] = r_range(row);
    if (r < lo || r > hi) return std::nullopt;
    auto phi = [&](std::vector<Sequence> pts) { return build_model(r, make_tag(ActionKind::Phi, r), pts); };
    const ContractionMode all = ContractionMode::FixedMinus2PlusNonFixedMinus2;
    const ContractionMode but_section = ContractionMode::AllMinus2ExceptSection;
    switch (row) {
        case 3: return RowModel{phi({seq("[0,inf,1,0]")}), all};
        case 4: return RowModel{phi({seq("[1,inf,1]")}), all};
        case 6: return RowModel{phi({seq("[1]"), seq("[q]")}), all};
        case 7: return RowModel{phi({seq("[0,1]"), seq("[1]")}), all};
        case 8: return RowModel{phi({seq(k == 1 ? "[0,inf,1,1]" : "[0,inf,1,0]")}), but_section};
        case 9: return RowModel{phi({seq("[1,inf,1]")}), but_section};
        case 10: return RowModel{phi({seq("[0]"), seq("[1]")}), but_section};
        case 11: return RowModel{phi({seq("[1]"), seq("[q]")}), but_section};
        case 12:
            if (k < 1 || k > r - 1) return std::nullopt;
            return RowModel{phi({zeros_one(k), seq("[1]")}), but_section};
    }
    return std::nullopt;
}

std::vector<TableRow> emit_table(int max_r) {
    std::vector<TableRow> out;
    for (auto& p : pinned()) {
        TableRow row{p.no, p.case_label, p.model, p.parameters, p.action, p.orbits, p.singularity, {}};
        auto [lo, hi] = r_range(p.no);
        for (int r = lo; r <= std::min(hi, max_r); ++r) {
            std::vector<int> ks{-1};
            if (p.no == 12) {
                ks.clear();
                for (int k = 1; k <= r - 1; ++k) ks.push_back(k);
            }
            for (int k : ks) {
                RowInstance inst = compute_instance(p.no, r, k);
                if (sorted(inst.orbits) != sorted(expected_orbits(p, k)))
                    mismatch(p.no, r, "orbits differ from the table");
                if (inst.singularity != expected_singularity(p, k))
                    mismatch(p.no, r, "singularity " + inst.singularity + " differs from the table");
                if (p.no >= 3 && p.no != 5 && inst.fixed_points != 1)
                    mismatch(p.no, r, std::to_string(inst.fixed_points) + " fixed points after contraction");
                row.instances.push_back(inst);
            }
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::string table_text(const std::vector<TableRow>& rows) {
    std::vector<std::vector<std::string>> cells{{"no", "case", "desingularization", "parameters", "action", "1-dim orbits", "singularity"}};
    for (auto& r : rows) {
        std::string orbits;
        for (auto& o : r.orbits) orbits += (orbits.empty() ? "" : ",") + o;
        cells.push_back({std::to_string(r.no), r.case_label, r.model, r.parameters, r.action, orbits, r.singularity});
    }
    std::vector<size_t> width(cells[0].size(), 0);
    for (auto& row : cells)
        for (size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    std::ostringstream os;
    for (auto& row : cells) {
        for (size_t i = 0; i < row.size(); ++i) {
            os << row[i];
            if (i + 1 < row.size()) os << std::string(width[i] - row[i].size() + 2, ' ');
        }
        os << "\n";
    }
    return os.str();
}

std::string table_json(const std::vector<TableRow>& rows) {
    nlohmann::ordered_json j;
    j["schema"] = "addsurf.table/1";
    j["rows"] = nlohmann::ordered_json::array();
    for (auto& r : rows) {
        nlohmann::ordered_json row{{"no", r.no},         {"case", r.case_label}, {"desingularization", r.model},
                                   {"parameters", r.parameters}, {"action", r.action}, {"orbits", r.orbits},
                                   {"singularity", r.singularity}};
        row["instances"] = nlohmann::ordered_json::array();
        for (auto& i : r.instances) {
            nlohmann::ordered_json inst{{"r", i.r}};
            if (i.k >= 0) inst["k"] = i.k;
            inst["model"] = i.model;
            inst["orbits"] = i.orbits;
            inst["singularity"] = i.singularity;
            inst["fixed_points"] = i.fixed_points;
            row["instances"].push_back(inst);
        }
        j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
}

std::vector<InfiniteOrbitCase> infinite_orbit_actions(const BlowupModel& m, ContractionMode mode) {
    std::vector<InfiniteOrbitCase> out;
    BoundaryGraph g0 = boundary_graph(m);
    Contraction c0 = contract(g0, mode);
    auto leaves = m.leaves();
    for (size_t li = 0; li < leaves.size(); ++li) {
        for (size_t pos = 0; pos < leaves[li].depth(); ++pos) {
            const CoordEntry& entry = leaves[li].entries[pos];
            if (entry.kind != CoordEntry::Kind::Const) continue;
            std::vector<Sequence> alt_pts;
            for (auto& l : leaves) alt_pts.push_back(l.entries);
            alt_pts[li][pos] = CoordEntry::zero();
            BlowupModel alt;
            try {
                alt = build_model(m.r, m.action, alt_pts);
            } catch (const Error&) {
                continue;  // the degenerate datum is not a fixed-point blowup
            }
            // Aut_f translations x -> x + c y^e, the only ones that move a single coordinate
            std::optional<AutFElement> witness;
            for (int e = 0; e <= m.r && !witness; ++e) {
                AutFElement g;
                g.a.assign(size_t(m.r + 1), Rat(0L));
                g.a[size_t(e)] = Rat(entry.value);
                if (witness_matches(g, alt, m)) witness = g;
            }
            if (!witness) continue;
            BoundaryGraph ga = boundary_graph(alt);
            const Sequence& changed = alt_pts[li];
            for (auto& c : ga.curves) {
                if (!c.fixed || !c.id.is_exceptional() || c.id.seq.size() <= pos ||
                    !std::equal(c.id.seq.begin(), c.id.seq.begin() + long(pos) + 1, changed.begin()))
                    continue;
                Sequence orig = c.id.seq;
                orig[pos] = entry;
                CurveId counterpart = CurveId::exceptional(orig);
                const BoundaryCurve* before = g0.find(counterpart);
                if (!before || before->fixed) continue;
                if (std::find(c0.contracted.begin(), c0.contracted.end(), counterpart) != c0.contracted.end()) continue;
                if (!curve_fixedness(alt.action, c.id).always()) continue;
                int which = mode == ContractionMode::SectionOnly ? 3 : changed[0].is_zero() && changed.size() > 1 && changed[1].is_infinity() ? 2 : 1;
                // one entry per alternative, naming the deepest fixed curve
                if (!out.empty() && out.back().alternative.str() == alt.str() && out.back().corollary_case == which) {
                    if (c.id.seq.size() > out.back().fixed_curve.seq.size()) out.back().fixed_curve = c.id;
                } else {
                    out.push_back({which, alt, c.id, *witness});
                }
            }
        }
    }
    return out;
}

std::vector<InfiniteOrbitFlag> infinite_orbit_sweep(int max_r) {
    std::vector<InfiniteOrbitFlag> out;
    for (int row : {3, 4, 6, 7, 8, 9, 10, 11, 12}) {
        for (int r = 1; r <= max_r; ++r) {
            std::vector<int> ks{-1};
            if (row == 12) {
                ks.clear();
                for (int k = 1; k <= r - 1; ++k) ks.push_back(k);
            }
            for (int k : ks) {
                auto rm = table_row_model(row, r, k);
                if (!rm) continue;
                for (auto& f : infinite_orbit_actions(rm->model, rm->mode)) out.push_back({row, r, k, f});
                if (row == 4)
                    for (auto& f : infinite_orbit_actions(rm->model, ContractionMode::SectionOnly)) out.push_back({row, r, k, f});
            }
        }
    }
    return out;
}

}  // namespace addsurf
