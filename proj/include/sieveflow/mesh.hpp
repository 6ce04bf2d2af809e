#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "sieveflow/errors.hpp"
#include "sieveflow/geometry.hpp"

namespace sieveflow::meshing {

// ============================================================================
// Tags and resolution
// ============================================================================

enum class FacetTag : int { Inlet = 0, Outlet = 1, Lateral = 2, Sieve = 3 };
enum class Region : int { Minus = 0, Plus = 1 };

const char* to_string(FacetTag tag);
FacetTag facet_tag_from_string(const std::string& s);

/// Target cell sizes: h_hole at hole rims (and sieve-adjacent layers),
/// geometrically graded up to h_far away from the sieve.
struct MeshResolution {
    double h_far = 0.3;
    double h_hole = 0.03;
    double grading_rate = 1.6;
    int extrusion_layers = 0;   // 0 = derive from grading
    double quality_floor = 5e-3;

    void validate() const;
};

// ============================================================================
// Mesh
// ============================================================================

/// Boundary-tagged simplicial mesh of the (possibly perforated) pipe or of a
/// half domain. Coordinates are (x, z) in dim 2 and (x, y, z) in dim 3; the
/// axial coordinate is component dim-1. Cells are triangles (dim 2, fourth
/// vertex id -1) or tetrahedra (dim 3). Facets on the mid-plane z = 0 that
/// lie inside hole disks are interior facets of the complex and are recorded
/// in hole_facets; mid-plane facets on the solid sieve wall carry the Sieve
/// tag and are stored with their Minus-side cell.
struct SieveMesh {
    int dim = 2;
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<int, 4>> cells;
    std::vector<Region> cell_region;

    struct Facet {
        std::array<int, 3> v{-1, -1, -1}; // 2 vertices in dim 2, 3 in dim 3
        FacetTag tag = FacetTag::Lateral;
        int cell = -1; // owning cell (Minus side for Sieve facets)
    };
    std::vector<Facet> boundary_facets;

    struct HoleFacet {
        std::array<int, 3> v{-1, -1, -1};
        int hole = -1;       // index into layout.centers; -1 for an open mid-plane
        int cell_minus = -1;
        int cell_plus = -1;
    };
    std::vector<HoleFacet> hole_facets;

    // provenance
    geometry::PerforationLayout layout;
    bool has_layout = false;
    MeshResolution resolution;

    int zaxis() const { return dim - 1; }
    std::size_t n_vertices() const { return vertices.size(); }
    std::size_t n_cells() const { return cells.size(); }
    int nodes_per_cell() const { return dim + 1; }
    int nodes_per_facet() const { return dim; }

    double cell_measure(int c) const;
    std::array<double, 3> cell_centroid(int c) const;
    double facet_measure(const std::array<int, 3>& f) const;
    std::array<double, 3> facet_centroid(const std::array<int, 3>& f) const;
    /// Outward unit normal of a boundary facet (relative to its owning cell).
    std::array<double, 3> facet_outward_normal(const Facet& f) const;

    /// Normalized radius ratio of cell c: 1 for the regular simplex, -> 0 for
    /// degenerate cells.
    double cell_quality(int c) const;

    double volume() const;
    double tag_measure(FacetTag tag) const;
    double hole_measure() const;
};

/// Quality and bookkeeping summary.
struct MeshQuality {
    std::size_t cell_count = 0;
    std::size_t vertex_count = 0;
    double min_radius_ratio = 0.0;
    double mean_radius_ratio = 0.0;
    int worst_cell = -1;
    double volume = 0.0;
    std::map<std::string, double> tag_measures;
    double hole_measure = 0.0;
};

MeshQuality mesh_quality(const SieveMesh& mesh);

// ============================================================================
// Mesh generation (implemented in mesher.cpp)
// ============================================================================

/// Mesh the perforated pipe: conforming to the mid-plane z = 0 with hole
/// regions as interior facets and the solid sieve tagged Sieve. Throws
/// MeshError when h_hole cannot resolve the smallest hole or the quality
/// floor is violated.
SieveMesh mesh_sieve_pipe(const geometry::PerforationLayout& layout, const MeshResolution& res);

/// Mesh one half domain; the z = 0 section is fully tagged Sieve and no
/// Inlet (Plus side) or Outlet (Minus side) facets exist.
SieveMesh mesh_half_domain(const geometry::PipeParams& pipe, Region side,
                           const MeshResolution& res);

/// Mesh the unperforated pipe with an open mid-plane: the z = 0 section is
/// conforming but untagged (recorded in hole_facets), so no wall constraint
/// arises there. This is the reference geometry for Hagen-Poiseuille checks
/// and manufactured-solution runs.
SieveMesh mesh_pipe(const geometry::PipeParams& pipe, const MeshResolution& res);

} // namespace sieveflow::meshing
