#include "addsurf/ade.hpp"

#include <algorithm>
#include <cstdlib>

#include "addsurf/error.hpp"

namespace addsurf {

std::string SingularityType::str() const {
    switch (kind) {
        case Kind::Smooth: return "smooth";
        case Kind::A: return "A" + std::to_string(n);
        case Kind::D: return "D" + std::to_string(n);
        case Kind::E: return "E" + std::to_string(n);
    }
    return "?";
}

SingularityType parse_singularity(const std::string& text) {
    if (text == "smooth") return {};
    if (text.size() >= 2 && (text[0] == 'A' || text[0] == 'D' || text[0] == 'E')) {
        int n = std::atoi(text.c_str() + 1);
        SingularityType::Kind k = text[0] == 'A' ? SingularityType::Kind::A
                                  : text[0] == 'D' ? SingularityType::Kind::D
                                                   : SingularityType::Kind::E;
        if (n > 0) return {k, n};
    }
    throw Error("ParseError", "unknown singularity type '" + text + "'");
}

SingularityType dynkin_type(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n <= 0) throw Error("NotADE", "empty graph");
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        if (a == b || a < 0 || b < 0 || a >= n || b >= n) throw Error("NotADE", "malformed edge");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    if (int(edges.size()) != n - 1) throw Error("NotADE", "graph has a cycle or is disconnected");
    // connected with n - 1 edges: a tree
    std::vector<int> seen(n, 0), stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (!seen[w]) seen[w] = 1, ++count, stack.push_back(w);
    }
    if (count != n) throw Error("NotADE", "graph is disconnected");

    std::vector<int> branch;
    for (int v = 0; v < n; ++v) {
        if (adj[v].size() >= 4) throw Error("NotADE", "vertex of degree " + std::to_string(adj[v].size()));
        if (adj[v].size() == 3) branch.push_back(v);
    }
    if (branch.empty()) return {SingularityType::Kind::A, n};
    if (branch.size() > 1) throw Error("NotADE", "more than one branch vertex");

    std::vector<int> legs;
    int center = branch[0];
    for (int start : adj[center]) {
        int len = 1, prev = center, cur = start;
        while (adj[cur].size() == 2) {
            int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur, cur = next, ++len;
        }
        legs.push_back(len);
    }
    std::sort(legs.begin(), legs.end());
    if (legs[0] == 1 && legs[1] == 1) return {SingularityType::Kind::D, n};
    if (legs[0] == 1 && legs[1] == 2 && legs[2] >= 2 && legs[2] <= 4) return {SingularityType::Kind::E, n};
    throw Error("NotADE", "leg lengths " + std::to_string(legs[0]) + "," + std::to_string(legs[1]) + "," +
                              std::to_string(legs[2]));
}

}  // namespace addsurf
