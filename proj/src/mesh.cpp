#include "sieveflow/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace sieveflow::meshing {

const char* to_string(FacetTag tag) {
    switch (tag) {
        case FacetTag::Inlet: return "INLET";
        case FacetTag::Outlet: return "OUTLET";
        case FacetTag::Lateral: return "LATERAL";
        case FacetTag::Sieve: return "SIEVE";
    }
    return "?";
}

FacetTag facet_tag_from_string(const std::string& s) {
    if (s == "INLET") return FacetTag::Inlet;
    if (s == "OUTLET") return FacetTag::Outlet;
    if (s == "LATERAL") return FacetTag::Lateral;
    if (s == "SIEVE") return FacetTag::Sieve;
    throw IoError("unknown facet tag: " + s);
}

void MeshResolution::validate() const {
    if (!(h_hole > 0.0 && h_hole <= h_far))
        throw ConfigError("MeshResolution: require 0 < h_hole <= h_far");
    if (!(grading_rate > 1.0 && grading_rate <= 3.0))
        throw ConfigError("MeshResolution: grading_rate must lie in (1, 3]");
    if (extrusion_layers < 0) throw ConfigError("MeshResolution: negative layer count");
}

namespace {

inline std::array<double, 3> diff(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline double norm3(const std::array<double, 3>& a) {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

inline std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

} // namespace

double SieveMesh::cell_measure(int c) const {
    const auto& cell = cells[static_cast<std::size_t>(c)];
    if (dim == 2) {
        const auto& p0 = vertices[static_cast<std::size_t>(cell[0])];
        const auto& p1 = vertices[static_cast<std::size_t>(cell[1])];
        const auto& p2 = vertices[static_cast<std::size_t>(cell[2])];
        return 0.5 * std::abs((p1[0] - p0[0]) * (p2[1] - p0[1]) -
                              (p2[0] - p0[0]) * (p1[1] - p0[1]));
    }
    const auto& p0 = vertices[static_cast<std::size_t>(cell[0])];
    const auto e1 = diff(vertices[static_cast<std::size_t>(cell[1])], p0);
    const auto e2 = diff(vertices[static_cast<std::size_t>(cell[2])], p0);
    const auto e3 = diff(vertices[static_cast<std::size_t>(cell[3])], p0);
    const auto c12 = cross(e1, e2);
    return std::abs(c12[0] * e3[0] + c12[1] * e3[1] + c12[2] * e3[2]) / 6.0;
}

std::array<double, 3> SieveMesh::cell_centroid(int c) const {
    const auto& cell = cells[static_cast<std::size_t>(c)];
    std::array<double, 3> g{0.0, 0.0, 0.0};
    const int n = nodes_per_cell();
    for (int k = 0; k < n; ++k)
        for (int d = 0; d < 3; ++d) g[static_cast<std::size_t>(d)] += vertices[static_cast<std::size_t>(cell[static_cast<std::size_t>(k)])][static_cast<std::size_t>(d)];
    for (int d = 0; d < 3; ++d) g[static_cast<std::size_t>(d)] /= n;
    return g;
}

double SieveMesh::facet_measure(const std::array<int, 3>& f) const {
    if (dim == 2)
        return norm3(diff(vertices[static_cast<std::size_t>(f[1])], vertices[static_cast<std::size_t>(f[0])]));
    const auto e1 = diff(vertices[static_cast<std::size_t>(f[1])], vertices[static_cast<std::size_t>(f[0])]);
    const auto e2 = diff(vertices[static_cast<std::size_t>(f[2])], vertices[static_cast<std::size_t>(f[0])]);
    return 0.5 * norm3(cross(e1, e2));
}

std::array<double, 3> SieveMesh::facet_centroid(const std::array<int, 3>& f) const {
    std::array<double, 3> g{0.0, 0.0, 0.0};
    const int n = nodes_per_facet();
    for (int k = 0; k < n; ++k)
        for (int d = 0; d < 3; ++d) g[static_cast<std::size_t>(d)] += vertices[static_cast<std::size_t>(f[static_cast<std::size_t>(k)])][static_cast<std::size_t>(d)];
    for (int d = 0; d < 3; ++d) g[static_cast<std::size_t>(d)] /= n;
    return g;
}

std::array<double, 3> SieveMesh::facet_outward_normal(const Facet& f) const {
    std::array<double, 3> n{0.0, 0.0, 0.0};
    if (dim == 2) {
        const auto t = diff(vertices[static_cast<std::size_t>(f.v[1])], vertices[static_cast<std::size_t>(f.v[0])]);
        n = {t[1], -t[0], 0.0};
        const double len = norm3(n);
        n[0] /= len;
        n[1] /= len;
    } else {
        const auto e1 = diff(vertices[static_cast<std::size_t>(f.v[1])], vertices[static_cast<std::size_t>(f.v[0])]);
        const auto e2 = diff(vertices[static_cast<std::size_t>(f.v[2])], vertices[static_cast<std::size_t>(f.v[0])]);
        n = cross(e1, e2);
        const double len = norm3(n);
        for (double& c : n) c /= len;
    }
    // orient away from the owning cell
    const auto g = cell_centroid(f.cell);
    const auto fc = facet_centroid(f.v);
    const auto d = diff(fc, g);
    if (n[0] * d[0] + n[1] * d[1] + n[2] * d[2] < 0.0)
        for (double& c : n) c = -c;
    return n;
}

double SieveMesh::cell_quality(int c) const {
    const auto& cell = cells[static_cast<std::size_t>(c)];
    if (dim == 2) {
        const double area = cell_measure(c);
        if (area <= 0.0) return 0.0;
        double per = 0.0;
        const int e[3][2] = {{0, 1}, {1, 2}, {2, 0}};
        double lens[3];
        for (int k = 0; k < 3; ++k) {
            lens[k] = norm3(diff(vertices[static_cast<std::size_t>(cell[static_cast<std::size_t>(e[k][0])])],
                                 vertices[static_cast<std::size_t>(cell[static_cast<std::size_t>(e[k][1])])]));
            per += lens[k];
        }
        const double r_in = 2.0 * area / per;
        const double r_circ = lens[0] * lens[1] * lens[2] / (4.0 * area);
        return r_circ > 0.0 ? 2.0 * r_in / r_circ : 0.0;
    }
    // dim 3: 3 r_in / r_circ, via standard formulas
    const double vol = cell_measure(c);
    const auto& p0 = vertices[static_cast<std::size_t>(cell[0])];
    const auto& p1 = vertices[static_cast<std::size_t>(cell[1])];
    const auto& p2 = vertices[static_cast<std::size_t>(cell[2])];
    const auto& p3 = vertices[static_cast<std::size_t>(cell[3])];
    auto tri_area = [](const std::array<double, 3>& a, const std::array<double, 3>& b,
                       const std::array<double, 3>& c0) {
        const std::array<double, 3> u{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
        const std::array<double, 3> v{c0[0] - a[0], c0[1] - a[1], c0[2] - a[2]};
        const std::array<double, 3> w{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                      u[0] * v[1] - u[1] * v[0]};
        return 0.5 * std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
    };
    const double s = tri_area(p1, p2, p3) + tri_area(p0, p2, p3) + tri_area(p0, p1, p3) +
                     tri_area(p0, p1, p2);
    const double r_in = 3.0 * vol / s;
    // circumradius from the standard determinant-free formula
    const auto a = diff(p1, p0);
    const auto b = diff(p2, p0);
    const auto c3 = diff(p3, p0);
    const double a2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
    const double b2 = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
    const double c2 = c3[0] * c3[0] + c3[1] * c3[1] + c3[2] * c3[2];
    const auto bc = cross(b, c3);
    const auto ca = cross(c3, a);
    const auto ab = cross(a, b);
    std::array<double, 3> o{a2 * bc[0] + b2 * ca[0] + c2 * ab[0],
                            a2 * bc[1] + b2 * ca[1] + c2 * ab[1],
                            a2 * bc[2] + b2 * ca[2] + c2 * ab[2]};
    const double denom = 12.0 * vol;
    for (double& x : o) x /= denom;
    const double r_circ = norm3(o);
    return r_circ > 0.0 ? 3.0 * r_in / r_circ : 0.0;
}

double SieveMesh::volume() const {
    double v = 0.0;
    for (std::size_t c = 0; c < cells.size(); ++c) v += cell_measure(static_cast<int>(c));
    return v;
}

double SieveMesh::tag_measure(FacetTag tag) const {
    double m = 0.0;
    for (const auto& f : boundary_facets)
        if (f.tag == tag) m += facet_measure(f.v);
    return m;
}

double SieveMesh::hole_measure() const {
    double m = 0.0;
    for (const auto& f : hole_facets) m += facet_measure(f.v);
    return m;
}

MeshQuality mesh_quality(const SieveMesh& mesh) {
    if (mesh.cells.empty()) throw MeshError("mesh_quality: empty mesh");
    MeshQuality q;
    q.cell_count = mesh.n_cells();
    q.vertex_count = mesh.n_vertices();
    q.volume = mesh.volume();
    q.min_radius_ratio = 2.0;
    double sum = 0.0;
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const double r = mesh.cell_quality(static_cast<int>(c));
        sum += r;
        if (r < q.min_radius_ratio) {
            q.min_radius_ratio = r;
            q.worst_cell = static_cast<int>(c);
        }
    }
    q.mean_radius_ratio = sum / static_cast<double>(mesh.cells.size());
    for (FacetTag t : {FacetTag::Inlet, FacetTag::Outlet, FacetTag::Lateral, FacetTag::Sieve})
        q.tag_measures[to_string(t)] = mesh.tag_measure(t);
    q.hole_measure = mesh.hole_measure();
    return q;
}

} // namespace sieveflow::meshing
