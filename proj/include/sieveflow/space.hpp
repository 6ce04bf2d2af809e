#pragma once

#include <array>
#include <memory>
#include <set>
#include <vector>

#include "sieveflow/mesh.hpp"

namespace sieveflow::fem {

using meshing::FacetTag;
using meshing::SieveMesh;

// ============================================================================
// Reference elements (P2 simplex / P1 simplex, affine mapping)
// ============================================================================

/// Number of P2 nodes per cell: 6 on triangles, 10 on tetrahedra.
inline int p2_nodes_per_cell(int dim) { return dim == 2 ? 6 : 10; }

/// Cell-local edge list matching the P2 node ordering (vertices first, then
/// these edges).
const std::array<int, 2>* cell_edges(int dim, int& count);

/// Evaluate P2 basis and reference gradients at reference point x.
/// N has p2_nodes_per_cell entries; dN is row-major (node, ref direction).
void eval_p2(int dim, const double* x, double* N, double* dN);

/// Evaluate P1 (barycentric) basis; N has dim+1 entries, dN constant.
void eval_p1(int dim, const double* x, double* N, double* dN);

/// Affine cell geometry: Jacobian, inverse transpose, absolute determinant.
struct CellGeom {
    int dim = 2;
    std::array<double, 3> p0{};
    double J[3][3] = {};
    double JinvT[3][3] = {};
    double det_abs = 0.0;

    std::array<double, 3> map(const double* xref) const;
};

CellGeom cell_geometry(const SieveMesh& mesh, int c);

/// Facet geometry for boundary integrals: maps the reference segment [0,1]
/// (dim 2) or reference triangle (dim 3) onto the facet.
struct FacetGeom {
    int dim = 2;            // mesh dimension
    std::array<double, 3> p0{};
    double t1[3] = {};      // first edge vector
    double t2[3] = {};      // second edge vector (dim 3)
    double measure_jac = 0; // |facet| for segments, 2|facet| for triangles

    std::array<double, 3> map(const double* xref) const;
};

FacetGeom facet_geometry(const SieveMesh& mesh, const std::array<int, 3>& f);

// ============================================================================
// Degree-of-freedom handling
// ============================================================================

/// Continuous piecewise-quadratic space with ncomp components. Nodes are
/// mesh vertices followed by edge midpoints; the velocity dof of (node, comp)
/// is node * ncomp + comp. Constrained dofs carry homogeneous values.
struct FeSpace {
    std::shared_ptr<const SieveMesh> mesh;
    int ncomp = 1;
    int n_vertices = 0;
    int n_edges = 0;
    std::vector<std::array<int, 2>> edge_list;          // sorted vertex pairs
    std::vector<std::array<int, 10>> cell_nodes;        // global P2 node ids
    std::vector<char> constrained;                      // per dof
    std::vector<int> free_index;                        // per dof, -1 if constrained
    int n_free = 0;

    int n_nodes() const { return n_vertices + n_edges; }
    int n_dofs() const { return n_nodes() * ncomp; }
    int dof(int node, int comp) const { return node * ncomp + comp; }
    std::array<double, 3> node_coord(int node) const;
    /// Nodes lying on a facet: facet vertices plus its edge midpoints.
    std::vector<int> facet_nodes(const std::array<int, 3>& f) const;
    int edge_node(int va, int vb) const;
};

enum class BcProfile { EpsLevel, HalfMinus, HalfPlus, DirichletAll };

/// Velocity-pressure pair: P2^dim velocity with the profile's constraints,
/// continuous P1 Bernoulli pressure on the vertices (never constrained and
/// never mean-projected: test fields carrying net flux through the inlet and
/// outlet make the discrete divergence operator full-rank as is).
struct FunctionSpace {
    FeSpace velocity;
    int n_pressure = 0;

    const SieveMesh& mesh() const { return *velocity.mesh; }
    int dim() const { return velocity.mesh->dim; }
};

/// Build the constrained velocity space for the given profile. Throws
/// ConfigError when mesh tags contradict the profile (e.g. HalfMinus on a
/// mesh with Outlet facets).
FunctionSpace build_space(std::shared_ptr<const SieveMesh> mesh, BcProfile profile);

/// Scalar P2 space with Dirichlet constraints on the given facet tags
/// (used for trace and Poincare constant estimation).
FeSpace make_scalar_space(std::shared_ptr<const SieveMesh> mesh,
                          const std::set<FacetTag>& constrained_tags);

} // namespace sieveflow::fem
