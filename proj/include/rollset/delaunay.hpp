#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "rollset/geom.hpp"

namespace rollset {

/// Incident triangles of an undirected triangulation edge. Interior edges
/// have two, convex-hull edges one, edges of a fully collinear input none.
struct EdgeTriangles {
    std::int32_t tri[2] = {-1, -1};
    int count = 0;
};

/// Delaunay triangulation of a deduplicated point set, with the adjacency
/// needed to walk the Voronoi dual. Triangle vertex triples are
/// counterclockwise and index into `vertices`.
class Triangulation {
public:
    PointSet vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;

    static std::uint64_t edge_key(std::uint32_t i, std::uint32_t j) {
        if (i > j) std::swap(i, j);
        return (std::uint64_t(i) << 32) | j;
    }

    const std::unordered_map<std::uint64_t, EdgeTriangles>& edges() const { return edges_; }
    const EdgeTriangles* edge(std::uint32_t i, std::uint32_t j) const {
        auto it = edges_.find(edge_key(i, j));
        return it == edges_.end() ? nullptr : &it->second;
    }

    bool is_hull_edge(std::uint32_t i, std::uint32_t j) const {
        const EdgeTriangles* e = edge(i, j);
        return e && e->count <= 1;
    }

    Point2 circumcenter(std::uint32_t tri_id) const;

    friend Triangulation delaunay(const PointSet& a);

private:
    std::unordered_map<std::uint64_t, EdgeTriangles> edges_;
};

/// Divide-and-conquer Delaunay triangulation (Guibas-Stolfi). Collinear
/// inputs produce an edge chain with no triangles; cocircular ties are
/// resolved by symbolic perturbation on point indices.
Triangulation delaunay(const PointSet& a);

/// Circumcenter of the triangle (a,b,c); the triangle must not be degenerate.
Point2 circumcenter(Point2 a, Point2 b, Point2 c);

}  // namespace rollset
