#pragma once

#include <string>
#include <utility>
#include <vector>

namespace addsurf {

struct SingularityType {
    enum class Kind { Smooth, A, D, E };
    Kind kind = Kind::Smooth;
    int n = 0;

    std::string str() const;  // "smooth", "A4", "D5", "E6"
    friend bool operator==(const SingularityType& l, const SingularityType& r) {
        return l.kind == r.kind && l.n == r.n;
    }
    friend bool operator!=(const SingularityType& l, const SingularityType& r) { return !(l == r); }
};

SingularityType parse_singularity(const std::string& text);

// Dynkin type of a simple graph on vertices 0..n-1. Throws NotADE for cycles,
// disconnected input, a vertex of degree >= 4, two branch vertices or a wrong
// leg profile.
SingularityType dynkin_type(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace addsurf
