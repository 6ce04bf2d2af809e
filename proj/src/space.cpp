#include "sieveflow/space.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sieveflow::fem {

// ============================================================================
// Reference elements
// ============================================================================

namespace {
constexpr std::array<int, 2> kEdges2[3] = {{0, 1}, {1, 2}, {2, 0}};
constexpr std::array<int, 2> kEdges3[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
} // namespace

const std::array<int, 2>* cell_edges(int dim, int& count) {
    if (dim == 2) {
        count = 3;
        return kEdges2;
    }
    count = 6;
    return kEdges3;
}

void eval_p1(int dim, const double* x, double* N, double* dN) {
    const int nv = dim + 1;
    double lam0 = 1.0;
    for (int d = 0; d < dim; ++d) lam0 -= x[d];
    N[0] = lam0;
    for (int d = 0; d < dim; ++d) N[d + 1] = x[d];
    if (dN) {
        for (int i = 0; i < nv; ++i)
            for (int d = 0; d < dim; ++d) dN[i * dim + d] = 0.0;
        for (int d = 0; d < dim; ++d) {
            dN[0 * dim + d] = -1.0;
            dN[(d + 1) * dim + d] = 1.0;
        }
    }
}

void eval_p2(int dim, const double* x, double* N, double* dN) {
    const int nv = dim + 1;
    double lam[4];
    double dlam[4][3] = {};
    lam[0] = 1.0;
    for (int d = 0; d < dim; ++d) {
        lam[0] -= x[d];
        lam[d + 1] = x[d];
        dlam[0][d] = -1.0;
        dlam[d + 1][d] = 1.0;
    }
    int ne = 0;
    const auto* edges = cell_edges(dim, ne);

    for (int i = 0; i < nv; ++i) N[i] = lam[i] * (2.0 * lam[i] - 1.0);
    for (int e = 0; e < ne; ++e)
        N[nv + e] = 4.0 * lam[edges[e][0]] * lam[edges[e][1]];

    if (dN) {
        for (int i = 0; i < nv; ++i)
            for (int d = 0; d < dim; ++d)
                dN[i * dim + d] = (4.0 * lam[i] - 1.0) * dlam[i][d];
        for (int e = 0; e < ne; ++e) {
            const int a = edges[e][0], b = edges[e][1];
            for (int d = 0; d < dim; ++d)
                dN[(nv + e) * dim + d] = 4.0 * (dlam[a][d] * lam[b] + lam[a] * dlam[b][d]);
        }
    }
}

CellGeom cell_geometry(const SieveMesh& mesh, int c) {
    CellGeom g;
    g.dim = mesh.dim;
    const auto& cell = mesh.cells[static_cast<std::size_t>(c)];
    g.p0 = mesh.vertices[static_cast<std::size_t>(cell[0])];
    for (int col = 0; col < g.dim; ++col) {
        const auto& pc = mesh.vertices[static_cast<std::size_t>(cell[static_cast<std::size_t>(col + 1)])];
        for (int row = 0; row < g.dim; ++row)
            g.J[row][col] = pc[static_cast<std::size_t>(row)] - g.p0[static_cast<std::size_t>(row)];
    }
    if (g.dim == 2) {
        const double det = g.J[0][0] * g.J[1][1] - g.J[0][1] * g.J[1][0];
        g.det_abs = std::abs(det);
        const double inv00 = g.J[1][1] / det, inv01 = -g.J[0][1] / det;
        const double inv10 = -g.J[1][0] / det, inv11 = g.J[0][0] / det;
        g.JinvT[0][0] = inv00;
        g.JinvT[0][1] = inv10;
        g.JinvT[1][0] = inv01;
        g.JinvT[1][1] = inv11;
    } else {
        const double* a = g.J[0];
        double cof[3][3];
        cof[0][0] = g.J[1][1] * g.J[2][2] - g.J[1][2] * g.J[2][1];
        cof[0][1] = g.J[1][2] * g.J[2][0] - g.J[1][0] * g.J[2][2];
        cof[0][2] = g.J[1][0] * g.J[2][1] - g.J[1][1] * g.J[2][0];
        cof[1][0] = g.J[0][2] * g.J[2][1] - g.J[0][1] * g.J[2][2];
        cof[1][1] = g.J[0][0] * g.J[2][2] - g.J[0][2] * g.J[2][0];
        cof[1][2] = g.J[0][1] * g.J[2][0] - g.J[0][0] * g.J[2][1];
        cof[2][0] = g.J[0][1] * g.J[1][2] - g.J[0][2] * g.J[1][1];
        cof[2][1] = g.J[0][2] * g.J[1][0] - g.J[0][0] * g.J[1][2];
        cof[2][2] = g.J[0][0] * g.J[1][1] - g.J[0][1] * g.J[1][0];
        const double det = g.J[0][0] * cof[0][0] + g.J[0][1] * cof[0][1] + g.J[0][2] * cof[0][2];
        (void)a;
        g.det_abs = std::abs(det);
        // J^{-1} = cof^T / det; J^{-T} = cof / det
        for (int r = 0; r < 3; ++r)
            for (int cc = 0; cc < 3; ++cc) g.JinvT[r][cc] = cof[r][cc] / det;
        // cof here is built so that row r of cof = gradient contributions;
        // verify: (J^{-1})_{ij} = cof[j][i] / det, hence (J^{-T})_{ij} = cof[i][j]/det.
    }
    return g;
}

std::array<double, 3> CellGeom::map(const double* xref) const {
    std::array<double, 3> x = p0;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) x[static_cast<std::size_t>(r)] += J[r][c] * xref[c];
    return x;
}

FacetGeom facet_geometry(const SieveMesh& mesh, const std::array<int, 3>& f) {
    FacetGeom g;
    g.dim = mesh.dim;
    g.p0 = mesh.vertices[static_cast<std::size_t>(f[0])];
    const auto& p1 = mesh.vertices[static_cast<std::size_t>(f[1])];
    for (int d = 0; d < 3; ++d) g.t1[d] = p1[static_cast<std::size_t>(d)] - g.p0[static_cast<std::size_t>(d)];
    if (mesh.dim == 2) {
        g.measure_jac = std::sqrt(g.t1[0] * g.t1[0] + g.t1[1] * g.t1[1] + g.t1[2] * g.t1[2]);
    } else {
        const auto& p2 = mesh.vertices[static_cast<std::size_t>(f[2])];
        for (int d = 0; d < 3; ++d) g.t2[d] = p2[static_cast<std::size_t>(d)] - g.p0[static_cast<std::size_t>(d)];
        const double cx = g.t1[1] * g.t2[2] - g.t1[2] * g.t2[1];
        const double cy = g.t1[2] * g.t2[0] - g.t1[0] * g.t2[2];
        const double cz = g.t1[0] * g.t2[1] - g.t1[1] * g.t2[0];
        g.measure_jac = std::sqrt(cx * cx + cy * cy + cz * cz); // = 2 |facet|
    }
    return g;
}

std::array<double, 3> FacetGeom::map(const double* xref) const {
    std::array<double, 3> x = p0;
    for (int d = 0; d < 3; ++d) {
        x[static_cast<std::size_t>(d)] += t1[d] * xref[0];
        if (dim == 3) x[static_cast<std::size_t>(d)] += t2[d] * xref[1];
    }
    return x;
}

// ============================================================================
// FeSpace construction
// ============================================================================

namespace {

void build_nodes(FeSpace& sp) {
    const auto& mesh = *sp.mesh;
    sp.n_vertices = static_cast<int>(mesh.n_vertices());
    std::map<std::pair<int, int>, int> edge_ids;
    int ne_local = 0;
    const auto* edges = cell_edges(mesh.dim, ne_local);
    sp.cell_nodes.resize(mesh.n_cells());
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const auto& cell = mesh.cells[c];
        auto& cn = sp.cell_nodes[c];
        cn.fill(-1);
        for (int v = 0; v <= mesh.dim; ++v) cn[static_cast<std::size_t>(v)] = cell[static_cast<std::size_t>(v)];
        for (int e = 0; e < ne_local; ++e) {
            const int va = cell[static_cast<std::size_t>(edges[e][0])];
            const int vb = cell[static_cast<std::size_t>(edges[e][1])];
            const auto key = std::minmax(va, vb);
            auto it = edge_ids.find(key);
            int id;
            if (it == edge_ids.end()) {
                id = static_cast<int>(sp.edge_list.size());
                edge_ids.emplace(key, id);
                sp.edge_list.push_back({key.first, key.second});
            } else {
                id = it->second;
            }
            cn[static_cast<std::size_t>(mesh.dim + 1 + e)] = sp.n_vertices + id;
        }
    }
    sp.n_edges = static_cast<int>(sp.edge_list.size());
}

void number_free_dofs(FeSpace& sp) {
    sp.free_index.assign(static_cast<std::size_t>(sp.n_dofs()), -1);
    sp.n_free = 0;
    for (int d = 0; d < sp.n_dofs(); ++d)
        if (!sp.constrained[static_cast<std::size_t>(d)]) sp.free_index[static_cast<std::size_t>(d)] = sp.n_free++;
}

} // namespace

std::array<double, 3> FeSpace::node_coord(int node) const {
    if (node < n_vertices) return mesh->vertices[static_cast<std::size_t>(node)];
    const auto& e = edge_list[static_cast<std::size_t>(node - n_vertices)];
    const auto& a = mesh->vertices[static_cast<std::size_t>(e[0])];
    const auto& b = mesh->vertices[static_cast<std::size_t>(e[1])];
    return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])};
}

int FeSpace::edge_node(int va, int vb) const {
    const auto key = std::minmax(va, vb);
    // binary search is not possible (edge_list ordered by discovery); linear
    // maps are avoided by callers that iterate cells. For facet marking we
    // rebuild a map once; this accessor is for tests.
    for (std::size_t i = 0; i < edge_list.size(); ++i)
        if (edge_list[i][0] == key.first && edge_list[i][1] == key.second)
            return n_vertices + static_cast<int>(i);
    return -1;
}

std::vector<int> FeSpace::facet_nodes(const std::array<int, 3>& f) const {
    std::vector<int> nodes;
    const int nv = mesh->nodes_per_facet();
    for (int k = 0; k < nv; ++k) nodes.push_back(f[static_cast<std::size_t>(k)]);
    // midpoints
    std::map<std::pair<int, int>, int> edge_ids;
    for (std::size_t i = 0; i < edge_list.size(); ++i)
        edge_ids[{edge_list[i][0], edge_list[i][1]}] = n_vertices + static_cast<int>(i);
    auto push_edge = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        auto it = edge_ids.find({key.first, key.second});
        if (it != edge_ids.end()) nodes.push_back(it->second);
    };
    if (nv == 2) {
        push_edge(f[0], f[1]);
    } else {
        push_edge(f[0], f[1]);
        push_edge(f[1], f[2]);
        push_edge(f[0], f[2]);
    }
    return nodes;
}

namespace {

// Mark constrained components for all nodes on facets with the given tag.
void constrain_tag(FeSpace& sp, const std::map<std::pair<int, int>, int>& edge_ids,
                   FacetTag tag, const std::vector<int>& comps) {
    const auto& mesh = *sp.mesh;
    for (const auto& f : mesh.boundary_facets) {
        if (f.tag != tag) continue;
        std::vector<int> nodes;
        const int nv = mesh.nodes_per_facet();
        for (int k = 0; k < nv; ++k) nodes.push_back(f.v[static_cast<std::size_t>(k)]);
        auto add_edge = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            const auto it = edge_ids.find({key.first, key.second});
            if (it != edge_ids.end()) nodes.push_back(it->second);
        };
        if (nv == 2) {
            add_edge(f.v[0], f.v[1]);
        } else {
            add_edge(f.v[0], f.v[1]);
            add_edge(f.v[1], f.v[2]);
            add_edge(f.v[0], f.v[2]);
        }
        for (int node : nodes)
            for (int c : comps) sp.constrained[static_cast<std::size_t>(sp.dof(node, c))] = 1;
    }
}

std::map<std::pair<int, int>, int> edge_id_map(const FeSpace& sp) {
    std::map<std::pair<int, int>, int> ids;
    for (std::size_t i = 0; i < sp.edge_list.size(); ++i)
        ids[{sp.edge_list[i][0], sp.edge_list[i][1]}] = sp.n_vertices + static_cast<int>(i);
    return ids;
}

bool has_tag(const SieveMesh& mesh, FacetTag tag) {
    for (const auto& f : mesh.boundary_facets)
        if (f.tag == tag) return true;
    return false;
}

} // namespace

FunctionSpace build_space(std::shared_ptr<const SieveMesh> mesh, BcProfile profile) {
    FunctionSpace fs;
    fs.velocity.mesh = mesh;
    fs.velocity.ncomp = mesh->dim;
    build_nodes(fs.velocity);
    fs.velocity.constrained.assign(static_cast<std::size_t>(fs.velocity.n_dofs()), 0);

    const int dim = mesh->dim;
    std::vector<int> all_comps, tangential;
    for (int c = 0; c < dim; ++c) all_comps.push_back(c);
    for (int c = 0; c < dim - 1; ++c) tangential.push_back(c);

    const auto edges = edge_id_map(fs.velocity);
    switch (profile) {
        case BcProfile::EpsLevel:
            constrain_tag(fs.velocity, edges, FacetTag::Lateral, all_comps);
            constrain_tag(fs.velocity, edges, FacetTag::Sieve, all_comps);
            constrain_tag(fs.velocity, edges, FacetTag::Inlet, tangential);
            constrain_tag(fs.velocity, edges, FacetTag::Outlet, tangential);
            break;
        case BcProfile::HalfMinus:
            if (has_tag(*mesh, FacetTag::Outlet))
                throw ConfigError("build_space: HalfMinus profile on a mesh with Outlet facets");
            constrain_tag(fs.velocity, edges, FacetTag::Lateral, all_comps);
            constrain_tag(fs.velocity, edges, FacetTag::Sieve, all_comps);
            constrain_tag(fs.velocity, edges, FacetTag::Inlet, tangential);
            break;
        case BcProfile::HalfPlus:
            if (has_tag(*mesh, FacetTag::Inlet))
                throw ConfigError("build_space: HalfPlus profile on a mesh with Inlet facets");
            constrain_tag(fs.velocity, edges, FacetTag::Lateral, all_comps);
            constrain_tag(fs.velocity, edges, FacetTag::Sieve, all_comps);
            constrain_tag(fs.velocity, edges, FacetTag::Outlet, tangential);
            break;
        case BcProfile::DirichletAll:
            for (FacetTag t : {FacetTag::Inlet, FacetTag::Outlet, FacetTag::Lateral, FacetTag::Sieve})
                constrain_tag(fs.velocity, edges, t, all_comps);
            break;
    }
    number_free_dofs(fs.velocity);
    fs.n_pressure = fs.velocity.n_vertices;
    return fs;
}

FeSpace make_scalar_space(std::shared_ptr<const SieveMesh> mesh,
                          const std::set<FacetTag>& constrained_tags) {
    FeSpace sp;
    sp.mesh = mesh;
    sp.ncomp = 1;
    build_nodes(sp);
    sp.constrained.assign(static_cast<std::size_t>(sp.n_dofs()), 0);
    const auto edges = edge_id_map(sp);
    for (FacetTag t : constrained_tags) constrain_tag(sp, edges, t, {0});
    number_free_dofs(sp);
    return sp;
}

} // namespace sieveflow::fem
