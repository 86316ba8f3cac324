#include "addsurf/actions.hpp"

namespace addsurf {

std::vector<ClauseCheck> fixed_curve_sweep(int r_max, int max_k) {
    const std::string iff_q = "fixed iff q = 0", never = "never fixed", always = "always fixed";
    auto chain = [](Sequence head, int zeros, Sequence tail) {
        head.insert(head.end(), size_t(zeros), CoordEntry::zero());
        head.insert(head.end(), tail.begin(), tail.end());
        return CurveId::exceptional(head);
    };
    const CoordEntry q = CoordEntry::param("q"), w = CoordEntry::param("w"), inf = CoordEntry::infinity(),
                     zero = CoordEntry::zero();
    std::vector<ClauseCheck> out;
    for (int r = 1; r <= r_max; ++r) {
        ActionTag t = make_tag(ActionKind::Phi, r);
        auto check = [&](const char* clause, int k, const CurveId& c, const std::string& expected) {
            std::string got = curve_fixedness(t, c, {"w"}).str();
            out.push_back({clause, r, k, c.str(), expected, got, got == expected});
        };
        check("i", -1, chain({q}, 0, {}), r > 1 ? iff_q : never);
        for (int k = 0; k < r - 1; ++k) check("ii", k, chain({}, k, {q}), iff_q);
        check("iii", r - 1, chain({}, r - 1, {q}), never);
        check("iv", -1, chain({q, inf, w}, 0, {}), r > 1 ? iff_q : never);
        if (r > 1) check("v", -1, chain({zero, inf, w, q}, 0, {}), never);
        for (int k = 0; k <= max_k; ++k) check("vi", k, chain({inf, inf}, k, {w}), never);
        check("vii", -1, chain({inf, inf, inf, w}, 0, {}), always);
        check("viii", -1, chain({inf, inf, inf, w, q}, 0, {}), never);
    }
    return out;
}

}  // namespace addsurf
