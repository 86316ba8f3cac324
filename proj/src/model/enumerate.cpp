#include <algorithm>
#include <functional>

#include "addsurf/model.hpp"

namespace addsurf {

namespace {

struct SearchState {
    int r;
    ActionTag tag;
    EnumerationOptions opt;
    std::set<std::string> seen;
    std::map<std::string, EnumeratedModel> found;
};

bool strict_prefix(const Sequence& pre, const Sequence& s) {
    return pre.size() < s.size() && std::equal(pre.begin(), pre.end(), s.begin());
}

std::vector<Sequence> leaves_of(const std::vector<Sequence>& pts) {
    std::vector<Sequence> out;
    for (auto& p : pts)
        if (std::none_of(pts.begin(), pts.end(), [&](const Sequence& q) { return strict_prefix(p, q); })) out.push_back(p);
    return out;
}

// Smallest encoding over all orders of the leaves, with parameters renamed by appearance.
std::string canonical_key(std::vector<Sequence> leaves, std::vector<Sequence>* renamed = nullptr) {
    std::sort(leaves.begin(), leaves.end(), [](const Sequence& a, const Sequence& b) { return sequence_str(a) < sequence_str(b); });
    std::string best;
    bool first = true;
    do {
        std::map<std::string, std::string> names;
        std::vector<Sequence> out;
        std::string key;
        for (auto& l : leaves) {
            out.push_back(rename_params(l, names));
            key += sequence_str(out.back());
        }
        if (first || key < best) {
            best = key;
            if (renamed) *renamed = out;
        }
        first = false;
    } while (std::next_permutation(leaves.begin(), leaves.end(),
                                   [](const Sequence& a, const Sequence& b) { return sequence_str(a) < sequence_str(b); }));
    return best;
}

std::string fresh_name(const std::vector<Sequence>& pts) {
    std::set<std::string> used;
    for (auto& p : pts)
        for (auto& e : p)
            if (e.kind == CoordEntry::Kind::Param) used.insert(e.name);
    for (int i = 0;; ++i)
        if (!used.count("w" + std::to_string(i))) return "w" + std::to_string(i);
}

// Self-intersections of every curve, from incidence bookkeeping alone.
std::map<CurveId, int> self_intersections(int r, const std::vector<Sequence>& pts) {
    std::map<CurveId, int> si{{CurveId::fiber(), 0}, {CurveId::section(), -r}};
    for (auto& s : pts) {
        Axes ax = incidence_axes(validate_sequence(s, r));
        si[ax.u_axis] -= 1;
        if (ax.v_axis) si[*ax.v_axis] -= 1;
        si[CurveId::exceptional(s)] = -1;
    }
    return si;
}

void search(SearchState& st, const std::vector<Sequence>& pts) {
    auto leaves = leaves_of(pts);
    if (!pts.empty() && !st.seen.insert(canonical_key(leaves)).second) return;

    auto si = self_intersections(st.r, pts);
    std::map<CurveId, bool> fixed;
    for (auto& [c, s] : si) {
        fixed[c] = curve_is_fixed(st.tag, c);
        // self-intersections only drop under further blowups
        if (fixed[c] && s < -2) return;
    }
    if (!pts.empty()) {
        bool ok = std::all_of(si.begin(), si.end(), [&](const auto& kv) { return !fixed[kv.first] || kv.second == -2; });
        for (auto& l : leaves)
            if (fixed[CurveId::exceptional(l)]) ok = false;
        if (ok) {
            std::vector<Sequence> renamed;
            std::string key = canonical_key(leaves, &renamed);
            if (!st.found.count(key)) {
                BlowupModel m = build_model(st.r, st.tag, renamed);
                st.found[key] = {m, classify_family(m), key};
            }
        }
    }

    CoordEntry fresh = CoordEntry::param(fresh_name(pts));
    std::vector<Sequence> cands{{CoordEntry::zero()}, {fresh}};
    if (st.opt.allow_infinity) cands.push_back({CoordEntry::infinity(), CoordEntry::infinity()});
    std::vector<CoordEntry> steps{CoordEntry::zero(), fresh};
    if (st.opt.allow_infinity) steps.push_back(CoordEntry::infinity());
    for (auto& p : pts)
        if (int(p.size()) < st.opt.max_depth)
            for (auto& e : steps) {
                Sequence c = p;
                c.push_back(e);
                cands.push_back(c);
            }
    for (auto& c : cands) {
        if (std::find(pts.begin(), pts.end(), c) != pts.end()) continue;
        std::vector<Sequence> next = pts;
        next.push_back(c);
        if (int(leaves_of(next).size()) > st.opt.max_points) continue;
        if (!point_is_fixed(st.tag, validate_sequence(c, st.r))) continue;
        search(st, next);
    }
}

}  // namespace

std::vector<EnumeratedModel> enumerate_models(int r, const EnumerationOptions& options) {
    SearchState st{r, make_tag(ActionKind::Phi, r), options, {}, {}};
    search(st, {});
    std::vector<EnumeratedModel> out;
    for (auto& [k, m] : st.found) out.push_back(m);
    return out;
}

}  // namespace addsurf
