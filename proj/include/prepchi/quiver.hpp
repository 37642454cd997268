#pragma once

#include "prepchi/field.hpp"

#include <map>
#include <string>
#include <vector>

namespace prepchi {

/// One arrow of the doubled quiver. `partner` indexes the reverse arrow h*.
struct Arrow {
    std::string id;
    int source = 0;
    int target = 0;
    int partner = -1;
    int eps = 0;  // +1 or -1, with eps(h) + eps(h*) = 0
};

struct QuiverGraph {
    std::vector<int> vertices;
    std::vector<Arrow> arrows;

    bool has_vertex(int v) const {
        for (int u : vertices)
            if (u == v) return true;
        return false;
    }
    const Arrow& arrow_by_id(const std::string& id) const {
        for (const Arrow& a : arrows)
            if (a.id == id) return a;
        throw std::invalid_argument("unknown arrow id: " + id);
    }
};

struct Edge {
    std::string id;
    int source;
    int target;
};

/// Doubles each listed edge into an arrow pair (h, h*) with eps(h) = +1 on
/// the listed orientation. Loops and duplicate ids are rejected.
inline QuiverGraph build_double_quiver(const std::vector<int>& vertices,
                                       const std::vector<Edge>& edges) {
    QuiverGraph g;
    g.vertices = vertices;
    for (const Edge& e : edges) {
        if (e.source == e.target)
            throw std::invalid_argument("loop edge " + e.id + " not allowed");
        if (!g.has_vertex(e.source) || !g.has_vertex(e.target))
            throw std::invalid_argument("edge " + e.id + " references unknown vertex");
        for (const Arrow& a : g.arrows)
            if (a.id == e.id || a.id == e.id + "*")
                throw std::invalid_argument("duplicate edge id " + e.id);
        int n = static_cast<int>(g.arrows.size());
        g.arrows.push_back(Arrow{e.id, e.source, e.target, n + 1, +1});
        g.arrows.push_back(Arrow{e.id + "*", e.target, e.source, n, -1});
    }
    return g;
}

/// Symmetric generalized Cartan matrix of the underlying graph.
struct CartanMatrix {
    std::vector<int> vertices;
    std::map<std::pair<int, int>, int> entries;

    int a(int i, int j) const {
        if (i == j) return 2;
        auto it = entries.find({i, j});
        return it == entries.end() ? 0 : it->second;
    }
};

inline CartanMatrix cartan_matrix(const QuiverGraph& g) {
    CartanMatrix c;
    c.vertices = g.vertices;
    // each undirected edge contributes one arrow in each direction, so the
    // count below is symmetric by construction
    for (const Arrow& h : g.arrows)
        if (h.source != h.target) c.entries[{h.source, h.target}] -= 1;
    return c;
}

/// The star-shaped graph: center 0, rays 1..n.
inline QuiverGraph star_quiver(int rays) {
    std::vector<int> vertices{0};
    std::vector<Edge> edges;
    for (int j = 1; j <= rays; ++j) {
        vertices.push_back(j);
        edges.push_back(Edge{"r" + std::to_string(j), 0, j});
    }
    return build_double_quiver(vertices, edges);
}

}  // namespace prepchi
