#pragma once

#include <array>
#include <vector>

namespace sieveflow::meshing {

/// Planar Delaunay triangulation (incremental Bowyer-Watson) with a
/// post-pass that recovers required edges by flipping. Input points must be
/// pairwise distinct. Used for the cross-section disk; the hole rims and the
/// outer circle become required edge loops.
struct Triangulation {
    std::vector<std::array<double, 2>> points;
    std::vector<std::array<int, 3>> triangles; // counterclockwise
};

Triangulation delaunay_triangulate(const std::vector<std::array<double, 2>>& points);

/// Ensure every segment (a, b) appears as an edge, flipping crossing edges.
/// Throws MeshError if a segment cannot be recovered.
void recover_edges(Triangulation& tri, const std::vector<std::array<int, 2>>& segments);

/// Drop triangles whose centroid lies outside the predicate.
template <typename Pred>
void filter_triangles(Triangulation& tri, Pred keep) {
    std::vector<std::array<int, 3>> kept;
    for (const auto& t : tri.triangles) {
        const double gx = (tri.points[static_cast<std::size_t>(t[0])][0] +
                           tri.points[static_cast<std::size_t>(t[1])][0] +
                           tri.points[static_cast<std::size_t>(t[2])][0]) / 3.0;
        const double gy = (tri.points[static_cast<std::size_t>(t[0])][1] +
                           tri.points[static_cast<std::size_t>(t[1])][1] +
                           tri.points[static_cast<std::size_t>(t[2])][1]) / 3.0;
        if (keep(gx, gy)) kept.push_back(t);
    }
    tri.triangles = std::move(kept);
}

} // namespace sieveflow::meshing
