#include <algorithm>

#include "addsurf/classify.hpp"

namespace addsurf {

namespace {

bool nonzero_finite(const CoordEntry& e) { return e.is_finite() && !e.is_zero(); }

size_t leading_zeros(const Sequence& s) {
    size_t k = 0;
    while (k < s.size() && s[k].is_zero()) ++k;
    return k;
}

Sequence zeros_then(size_t k, const Rat& last) {
    Sequence s(k, CoordEntry::zero());
    s.push_back(CoordEntry::finite(last));
    return s;
}

Sequence inf_shape(const Rat& head, const Rat& w) {
    return {CoordEntry::finite(head), CoordEntry::infinity(), CoordEntry::finite(w)};
}

BubblePoint checked(const NormalizerElement& n, const BubblePoint& p, Sequence image) {
    std::set<std::string> nz = p.nonzero;
    BubblePoint out = validate_sequence(image, p.r, nz);
    if (!verify_point_map(n.autf(), p, out))
        throw Error("InternalMismatch", n.str() + " does not take " + p.str() + " to " + out.str());
    return out;
}

// Image of [q] under the first rules: the fiber coordinate q.
Rat fiber_image(const NormalizerElement& n, const Rat& q, int r) {
    if (r == 1) return (n.b1 * q + n.a1) / n.b2;
    return n.b1 * q / n.b2.pow(r);
}

std::optional<Scalar> rational_root(const Scalar& value, int k) {
    if (k == 1) return value;
    if (value < 0 && k % 2 == 0) return std::nullopt;
    mpz_class num = value.get_num(), den = value.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k) || !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k))
        return std::nullopt;
    return Scalar(rn, rd);
}

}  // namespace

AutFElement NormalizerElement::autf() const { return {b1, b2, {a0, a1}, c}; }

std::string NormalizerElement::str() const { return autf().str(); }

NormalizerElement compose(const NormalizerElement& g, const NormalizerElement& h) {
    return {g.b1 * h.b1, g.b2 * h.b2, g.b1 * h.a0 + g.a0 + g.a1 * h.c, g.b1 * h.a1 + g.a1 * h.b2, g.b2 * h.c + g.c};
}

NormalizerElement inverse(const NormalizerElement& n) {
    Rat ib1 = Rat(1L) / n.b1, ib2 = Rat(1L) / n.b2;
    return {ib1, ib2, (n.a1 * n.c * ib2 - n.a0) * ib1, -n.a1 * ib1 * ib2, -n.c * ib2};
}

BubblePoint normalizer_act(const NormalizerElement& n, const BubblePoint& p) {
    const Sequence& s = p.entries;
    int r = p.r;
    if (n.b1.is_zero() || n.b2.is_zero()) throw Error("StabilizerViolated", "b1 and b2 must be nonzero");
    // [0,inf,w,q] under the stabilizer of [0,inf,w]
    if (s.size() == 4 && s[0].is_zero() && s[1].is_infinity() && nonzero_finite(s[2]) && s[3].is_finite()) {
        if (r < 2) throw Error("RuleShapeMismatch", p.str() + " needs r > 1");
        if (n.b1.pow(2) != n.b2.pow(2 * r - 1))
            throw Error("StabilizerViolated", n.str() + " does not satisfy b1^2 = b2^(2r-1)");
        Rat b = n.b2.pow(r) / n.b1, w = s[2].as_rat(), q = s[3].as_rat();
        Rat image = b * q;
        if (r == 2) image += Rat(2L) * w * n.a1 / b.pow(2);
        return checked(n, p, {s[0], s[1], s[2], CoordEntry::finite(image)});
    }
    if (s.size() == 3 && s[1].is_infinity() && nonzero_finite(s[2])) {
        Rat w = s[2].as_rat();
        if (s[0].is_zero() && r > 1)
            return checked(n, p, inf_shape(Rat(0L), n.b1.pow(2) * w / n.b2.pow(2 * r - 1)));
        if (nonzero_finite(s[0])) {
            Rat q = s[0].as_rat();
            if (fiber_image(n, q, r) != q) throw Error("StabilizerViolated", n.str() + " moves " + sequence_str({s[0]}));
            return checked(n, p, inf_shape(q, r > 1 ? n.b2 * w : n.b1.pow(2) * w / n.b2));
        }
    }
    size_t k = std::min(leading_zeros(s), s.size() - 1);  // [0_(j)] reads as [0_(j-1),0]
    if (s.size() == k + 1 && s.back().is_finite()) {
        Rat q = s.back().as_rat();
        if (int(k) == r - 1) return checked(n, p, zeros_then(k, (n.b1 * q + n.a1) / n.b2));
        if (int(k) < r - 1) return checked(n, p, zeros_then(k, n.b1 * q / n.b2.pow(r - int(k))));
    }
    throw Error("RuleShapeMismatch", p.str() + " matches none of the normalizer rules");
}

BubblePoint normalizer_image(const NormalizerElement& n, const BubblePoint& p) {
    const Sequence& s = p.entries;
    int r = p.r;
    if (s.size() == 4 && s[0].is_zero() && s[1].is_infinity() && nonzero_finite(s[2]) && s[3].is_finite() && r >= 2) {
        Rat w = s[2].as_rat(), q = s[3].as_rat();
        Rat q_image = n.b1.pow(3) * q / n.b2.pow(3 * r - 2);
        if (r == 2) q_image += Rat(2L) * n.a1 * n.b1.pow(2) * w / n.b2.pow(4);
        return checked(n, p,
                       {s[0], s[1], CoordEntry::finite(n.b1.pow(2) * w / n.b2.pow(2 * r - 1)), CoordEntry::finite(q_image)});
    }
    if (s.size() == 3 && s[0].is_finite() && s[1].is_infinity() && nonzero_finite(s[2]))
        return checked(n, p, inf_shape(fiber_image(n, s[0].as_rat(), r), n.b1.pow(2) * s[2].as_rat() / n.b2.pow(2 * r - 1)));
    return normalizer_act(n, p);
}

BlowupModel apply_normalizer(const NormalizerElement& n, const BlowupModel& m) {
    std::vector<Sequence> images;
    for (auto& leaf : m.leaves()) images.push_back(normalizer_image(n, leaf).entries);
    return build_model(m.r, m.action, images);
}

std::vector<Sequence> CanonicalForm::points() const {
    auto one = CoordEntry::constant(1);
    if (tag == "i") return {{CoordEntry::zero()}, {one}};
    if (tag == "ii") return {{one}, {CoordEntry::finite(*q)}};
    if (tag == "iii") return {zeros_then(size_t(k), Rat(1L)), {one}};
    if (tag == "iv") return {{CoordEntry::zero(), CoordEntry::infinity(), one, CoordEntry::zero()}};
    if (tag == "v") return {{CoordEntry::zero(), CoordEntry::infinity(), one, one}};
    return {{one, CoordEntry::infinity(), one}};
}

BlowupModel CanonicalForm::representative() const { return build_model(r, points()); }

std::string CanonicalForm::str() const {
    std::string out = "(" + tag + ") Bl(F" + std::to_string(r);
    for (auto& p : points()) out += "," + sequence_str(p);
    return out + ")";
}

CanonicalForm canonical_form(const BlowupModel& m) {
    if (m.action.kind != ActionKind::Phi)
        throw Error("NotClassifiable", "canonical forms are defined for phi_r");
    if (!check_minus2_hypothesis(boundary_graph(m)))
        throw Error("NotClassifiable", m.str() + " has a fixed boundary curve that is not a (-2)-curve");
    FamilyInfo fam = classify_family(m);
    auto leaves = m.leaves();
    int r = m.r;
    CanonicalForm cf;
    cf.r = r;
    NormalizerElement n;
    switch (fam.family) {
        case Family::A: {
            Sequence s1 = leaves[0].entries, s2 = leaves[1].entries;
            if (s1.size() < s2.size()) std::swap(s1, s2);  // s1 carries the chain over [0], if any
            if (r == 1) {
                Rat q1 = s1[0].as_rat(), q2 = s2[0].as_rat();
                cf.tag = "i";
                n.b1 = Rat(1L) / (q2 - q1);
                n.a1 = -q1 * n.b1;
                break;
            }
            if (s1.size() == 1) {
                Rat q1 = s1[0].as_rat(), q2 = s2[0].as_rat();
                Rat c1 = q1 / q2, c2 = q2 / q1;
                cf.tag = "ii";
                // q and 1/q give the same surface; keep the smaller text
                bool first = c1.str() <= c2.str();
                cf.q = first ? c1 : c2;
                n.b1 = Rat(1L) / (first ? q2 : q1);
                break;
            }
            size_t k = leading_zeros(s1);
            Rat q1 = k == s1.size() ? Rat(0L) : s1.back().as_rat();
            if (k == s1.size()) k = size_t(r - 1);
            Rat q2 = s2[0].as_rat();
            cf.tag = "iii";
            cf.k = int(k);
            if (int(k) == r - 1) {
                n.b1 = Rat(1L) / q2;
                n.a1 = Rat(1L) - q1 / q2;
                break;
            }
            Rat ratio = q2 / q1;
            std::optional<Scalar> root = ratio.is_constant() ? rational_root(ratio.constant_value(), int(k)) : std::nullopt;
            if (!root) {
                cf.to_canonical = std::nullopt;
                return cf;
            }
            n.b2 = Rat(*root);
            n.b1 = n.b2.pow(r) / q2;
            break;
        }
        case Family::C: {
            const Sequence& s = leaves[0].entries;
            Rat w = s[2].as_rat(), q = s[3].as_rat();
            NormalizerElement t{w.pow(r - 1), w, Rat(0L), Rat(0L), Rat(0L)};
            Rat q1 = q / w;
            NormalizerElement st;
            if (r == 2) {
                cf.tag = "iv";
                st.a1 = -q1 / Rat(2L);
            } else if (q1.is_zero()) {
                cf.tag = "iv";
            } else {
                cf.tag = "v";
                Rat b = Rat(1L) / q1;
                st.b1 = b.pow(2 * r - 1);
                st.b2 = b.pow(2);
            }
            n = compose(st, t);
            break;
        }
        case Family::E: {
            const Sequence& s = leaves[0].entries;
            Rat q = s[0].as_rat(), w = s[2].as_rat();
            cf.tag = "vi";
            if (r == 1) {
                n.b2 = w;
                n.a1 = w - q;
            } else {
                Rat scale = q.pow(2) / w;
                n.b2 = scale;
                n.b1 = scale.pow(r) / q;
            }
            break;
        }
        default:
            throw Error("NotClassifiable", m.str() + " is of shape " + family_name(fam.family) +
                                               (fam.reduces_to ? ", reducible to " + family_name(*fam.reduces_to) : ""));
    }
    cf.to_canonical = n;
    return cf;
}

bool witness_matches(const AutFElement& g, const BlowupModel& m1, const BlowupModel& m2) {
    auto l1 = m1.leaves(), l2 = m2.leaves();
    if (l1.size() != l2.size()) return false;
    std::vector<size_t> perm(l2.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    do {
        bool ok = true;
        for (size_t i = 0; i < l1.size() && ok; ++i) ok = verify_point_map(g, l1[i], l2[perm[i]]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

Equivalence equivalent_models(const BlowupModel& m1, const BlowupModel& m2) {
    Equivalence out;
    if (m1.r != m2.r || !(m1.action == m2.action)) return out;
    CanonicalForm c1 = canonical_form(m1), c2 = canonical_form(m2);
    if (!(c1 == c2)) return out;
    out.equivalent = true;
    if (c1.to_canonical && c2.to_canonical) {
        NormalizerElement w = compose(inverse(*c2.to_canonical), *c1.to_canonical);
        if (!witness_matches(w.autf(), m1, m2))
            throw Error("InternalMismatch", "witness " + w.str() + " does not match " + m1.str() + " with " + m2.str());
        out.witness = w;
    }
    return out;
}

namespace {

// Key of the abstract class: the two Lemma identifications merge depth-one
// pairs on the fiber, and the C family regardless of its last coordinate.
std::string abstract_key(const BlowupModel& m) {
    auto leaves = m.leaves();
    std::string r = std::to_string(m.r);
    if (leaves.size() == 2 && leaves[0].depth() == 1 && leaves[1].depth() == 1 && leaves[0].entries[0].is_finite() &&
        leaves[1].entries[0].is_finite())
        return "two-points/" + r;
    if (classify_family(m).family == Family::C) return "C/" + r;
    CanonicalForm cf = canonical_form(m);
    return cf.tag + "/" + r + "/" + std::to_string(cf.k);
}

}  // namespace

bool abstract_isomorphic(const BlowupModel& m1, const BlowupModel& m2) { return abstract_key(m1) == abstract_key(m2); }

AutFElement two_point_witness(int r, const Rat& q) {
    // [p] -> [(b1 p + a_r) / b2^r]: 1 -> 0 and q -> 1
    AutFElement g;
    g.b1 = Rat(1L) / (q - Rat(1L));
    g.a.assign(size_t(r + 1), Rat(0L));
    g.a[size_t(r)] = -g.b1;
    return g;
}

AutFElement c_family_witness(int r) {
    // stabilizer of [0,inf,1] with b = 1: q -> q + 2 a_(r-1)
    AutFElement g;
    g.a.assign(size_t(r + 1), Rat(0L));
    g.a[size_t(r - 1)] = Rat(Scalar(1, 2));
    return g;
}

}  // namespace addsurf
