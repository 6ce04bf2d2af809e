#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "sieveflow/delaunay.hpp"
#include "sieveflow/mesh.hpp"

namespace sieveflow::meshing {

namespace {

// ----------------------------------------------------------------------------
// 1D point distributions
// ----------------------------------------------------------------------------

// Graded levels 0 = t0 < t1 < ... < tm = length: first step h0, geometric
// growth by rate, capped at h1, then rescaled to end exactly at length.
std::vector<double> graded_axis(double length, double h0, double h1, double rate,
                                int override_layers) {
    std::vector<double> t{0.0};
    if (override_layers > 0) {
        for (int k = 1; k <= override_layers; ++k)
            t.push_back(length * static_cast<double>(k) / override_layers);
        return t;
    }
    double step = std::min(h0, length);
    while (t.back() < length - 1e-12) {
        t.push_back(t.back() + step);
        step = std::min(step * rate, h1);
    }
    const double scale = length / t.back();
    for (double& z : t) z *= scale;
    t.back() = length;
    return t;
}

// Fill (a, b) with points spaced by the local size function via the metric
// integral \int dx / s(x); endpoints excluded.
template <typename SizeFn>
std::vector<double> fill_interval(double a, double b, SizeFn s, double s_min) {
    std::vector<double> out;
    const double len = b - a;
    if (len <= 1.05 * s(0.5 * (a + b))) return out;
    const int K = std::max(64, static_cast<int>(8.0 * len / s_min));
    std::vector<double> cdf(static_cast<std::size_t>(K) + 1, 0.0);
    const double dx = len / K;
    for (int k = 1; k <= K; ++k) {
        const double xm = a + (k - 0.5) * dx;
        cdf[static_cast<std::size_t>(k)] = cdf[static_cast<std::size_t>(k - 1)] + dx / s(xm);
    }
    const double total = cdf.back();
    const int n = std::max(1, static_cast<int>(std::lround(total)));
    int k = 0;
    for (int i = 1; i < n; ++i) {
        const double target = total * static_cast<double>(i) / n;
        while (k < K && cdf[static_cast<std::size_t>(k + 1)] < target) ++k;
        const double c0 = cdf[static_cast<std::size_t>(k)], c1 = cdf[static_cast<std::size_t>(k + 1)];
        const double w = (target - c0) / std::max(c1 - c0, 1e-300);
        out.push_back(a + (k + w) * dx);
    }
    return out;
}

// ----------------------------------------------------------------------------
// Generic finishing: facet extraction, tagging, regions, quality gate
// ----------------------------------------------------------------------------

struct HoleClassifier {
    const geometry::PerforationLayout* layout = nullptr;
    bool open_midplane = false; // mesh_pipe: whole section open

    // Returns hole index for a mid-plane facet centroid, -1 for solid sieve.
    int classify(const std::array<double, 3>& c, int dim) const {
        if (open_midplane) return -1; // caller maps to open
        if (!layout) return -1;
        for (std::size_t n = 0; n < layout->centers.size(); ++n) {
            const double dx = c[0] - layout->centers[n][0];
            const double dy = dim == 3 ? c[1] - layout->centers[n][1] : 0.0;
            if (std::hypot(dx, dy) < layout->hole_radii[n]) return static_cast<int>(n);
        }
        return -1;
    }
};

void finalize_mesh(SieveMesh& mesh, const HoleClassifier& holes, double R, double h,
                   const std::vector<char>& vertex_on_lateral, bool tag_midplane_sieve) {
    const int nf = mesh.nodes_per_facet();
    const double ztol = 1e-9 * h;

    // face -> (cell, cell) incidence
    std::map<std::array<int, 3>, std::array<int, 2>> faces;
    const int tri_faces[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    const int tet_faces[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const auto& cell = mesh.cells[c];
        const int nfc = mesh.dim + 1;
        for (int k = 0; k < nfc; ++k) {
            std::array<int, 3> key{-1, -1, -1};
            if (mesh.dim == 2) {
                key = {cell[static_cast<std::size_t>(tri_faces[k][0])], cell[static_cast<std::size_t>(tri_faces[k][1])], -1};
                std::sort(key.begin(), key.begin() + 2);
            } else {
                key = {cell[static_cast<std::size_t>(tet_faces[k][0])], cell[static_cast<std::size_t>(tet_faces[k][1])],
                       cell[static_cast<std::size_t>(tet_faces[k][2])]};
                std::sort(key.begin(), key.end());
            }
            auto it = faces.find(key);
            if (it == faces.end())
                faces[key] = {static_cast<int>(c), -1};
            else
                it->second[1] = static_cast<int>(c);
        }
    }

    mesh.boundary_facets.clear();
    mesh.hole_facets.clear();
    const int zc = mesh.zaxis();

    for (const auto& [key, cc] : faces) {
        std::array<int, 3> fv{key[0], key[1], key[2]};
        const auto centroid = mesh.facet_centroid(fv);
        const double z = centroid[static_cast<std::size_t>(zc)];

        if (cc[1] == -1) {
            // true boundary facet
            SieveMesh::Facet f;
            f.v = fv;
            f.cell = cc[0];
            if (std::abs(z + h) < ztol)
                f.tag = FacetTag::Inlet;
            else if (std::abs(z - h) < ztol)
                f.tag = FacetTag::Outlet;
            else if (std::abs(z) < ztol)
                f.tag = FacetTag::Sieve; // half-domain section
            else
                f.tag = FacetTag::Lateral;
            mesh.boundary_facets.push_back(f);
        } else if (std::abs(z) < ztol) {
            // interior mid-plane facet: hole or tagged sieve wall
            bool all_on_plane = true;
            for (int k = 0; k < nf; ++k)
                if (std::abs(mesh.vertices[static_cast<std::size_t>(fv[static_cast<std::size_t>(k)])][static_cast<std::size_t>(zc)]) > ztol)
                    all_on_plane = false;
            if (!all_on_plane) continue;

            const int hole = holes.open_midplane ? -1 : holes.classify(centroid, mesh.dim);
            const int c0 = cc[0], c1 = cc[1];
            const bool c0_minus =
                mesh.cell_centroid(c0)[static_cast<std::size_t>(zc)] < mesh.cell_centroid(c1)[static_cast<std::size_t>(zc)];
            const int cminus = c0_minus ? c0 : c1;
            const int cplus = c0_minus ? c1 : c0;
            if (!holes.open_midplane && hole < 0 && tag_midplane_sieve) {
                SieveMesh::Facet f;
                f.v = fv;
                f.cell = cminus;
                f.tag = FacetTag::Sieve;
                mesh.boundary_facets.push_back(f);
            } else {
                SieveMesh::HoleFacet f;
                f.v = fv;
                f.hole = hole;
                f.cell_minus = cminus;
                f.cell_plus = cplus;
                mesh.hole_facets.push_back(f);
            }
        }
    }
    (void)vertex_on_lateral;
    (void)R;

    // regions
    mesh.cell_region.resize(mesh.cells.size());
    for (std::size_t c = 0; c < mesh.cells.size(); ++c)
        mesh.cell_region[c] =
            mesh.cell_centroid(static_cast<int>(c))[static_cast<std::size_t>(zc)] < 0.0 ? Region::Minus : Region::Plus;

    // quality gate
    double qmin = 2.0;
    int worst = -1;
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
        const double q = mesh.cell_quality(static_cast<int>(c));
        if (q < qmin) {
            qmin = q;
            worst = static_cast<int>(c);
        }
    }
    if (qmin < mesh.resolution.quality_floor) {
        const auto g = mesh.cell_centroid(worst);
        throw MeshError("mesh quality floor violated: worst cell " + std::to_string(worst) +
                        " quality " + std::to_string(qmin) + " at (" + std::to_string(g[0]) +
                        ", " + std::to_string(g[1]) + ", " + std::to_string(g[2]) + ")");
    }
}

// ----------------------------------------------------------------------------
// dim-2 meshing: graded tensor grid conforming to hole endpoints
// ----------------------------------------------------------------------------

std::vector<double> sieve_x_points(const geometry::PerforationLayout& layout,
                                   const MeshResolution& res) {
    const double R = layout.pipe.R;
    std::vector<std::pair<double, double>> hole_iv; // (begin, end)
    for (std::size_t n = 0; n < layout.centers.size(); ++n)
        hole_iv.push_back({layout.centers[n][0] - layout.hole_radii[n],
                           layout.centers[n][0] + layout.hole_radii[n]});
    std::sort(hole_iv.begin(), hole_iv.end());

    std::vector<double> crit{-R};
    for (const auto& [a, b] : hole_iv) {
        crit.push_back(a);
        crit.push_back(b);
    }
    crit.push_back(R);

    const double slope = res.grading_rate - 1.0;
    auto size_at = [&](double x) {
        double s = res.h_far;
        for (const auto& [a, b] : hole_iv) {
            const double d = x < a ? a - x : (x > b ? x - b : 0.0);
            s = std::min(s, res.h_hole + slope * d);
        }
        return s;
    };

    std::vector<double> pts;
    for (std::size_t k = 0; k + 1 < crit.size(); ++k) {
        pts.push_back(crit[k]);
        const auto fill = fill_interval(crit[k], crit[k + 1], size_at, res.h_hole);
        pts.insert(pts.end(), fill.begin(), fill.end());
    }
    pts.push_back(crit.back());
    // drop accidental duplicates from touching critical points
    std::vector<double> out;
    for (double x : pts)
        if (out.empty() || x - out.back() > 1e-12 * R) out.push_back(x);
    return out;
}

SieveMesh build_2d(const geometry::PipeParams& pipe, const MeshResolution& res,
                   const std::vector<double>& xs, double z_lo, double z_hi, double dz0,
                   const HoleClassifier& holes, bool tag_midplane_sieve) {
    SieveMesh mesh;
    mesh.dim = 2;
    mesh.resolution = res;

    // z levels: graded away from z = 0 on whichever sides are present
    std::vector<double> zs;
    if (z_lo < 0.0) {
        auto upper = graded_axis(-z_lo, dz0, res.h_far, res.grading_rate, res.extrusion_layers);
        for (std::size_t k = upper.size(); k-- > 1;) zs.push_back(-upper[k]);
        zs.push_back(0.0);
    } else {
        zs.push_back(0.0);
    }
    if (z_hi > 0.0) {
        auto upper = graded_axis(z_hi, dz0, res.h_far, res.grading_rate, res.extrusion_layers);
        for (std::size_t k = 1; k < upper.size(); ++k) zs.push_back(upper[k]);
    }

    const int nx = static_cast<int>(xs.size());
    const int nz = static_cast<int>(zs.size());
    auto vid = [nx](int i, int j) { return j * nx + i; };

    mesh.vertices.resize(static_cast<std::size_t>(nx) * static_cast<std::size_t>(nz));
    for (int j = 0; j < nz; ++j)
        for (int i = 0; i < nx; ++i)
            mesh.vertices[static_cast<std::size_t>(vid(i, j))] = {xs[static_cast<std::size_t>(i)], zs[static_cast<std::size_t>(j)], 0.0};

    // union-jack diagonals, mirrored across z = 0 so the mesh is z-symmetric
    int j0 = 0;
    while (j0 < nz && zs[static_cast<std::size_t>(j0)] < -1e-15) ++j0; // index of z = 0 (or of z_lo boundary)
    for (int j = 0; j + 1 < nz; ++j) {
        const bool upper_side = zs[static_cast<std::size_t>(j)] >= -1e-15;
        const int jd = upper_side ? j - j0 : (j0 - 1 - j); // mirrored band index
        for (int i = 0; i + 1 < nx; ++i) {
            const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            const bool diag_ac = ((i + jd) % 2 == 0);
            if (diag_ac ^ !upper_side) {
                mesh.cells.push_back({a, b, c, -1});
                mesh.cells.push_back({a, c, d, -1});
            } else {
                mesh.cells.push_back({a, b, d, -1});
                mesh.cells.push_back({b, c, d, -1});
            }
        }
    }

    std::vector<char> lateral;
    finalize_mesh(mesh, holes, pipe.R, pipe.h, lateral, tag_midplane_sieve);
    return mesh;
}

// ----------------------------------------------------------------------------
// dim-3 meshing: constrained triangulation of the section disk + extrusion
// ----------------------------------------------------------------------------

struct SectionMesh {
    std::vector<std::array<double, 2>> points;
    std::vector<std::array<int, 3>> triangles;
    std::vector<int> tri_hole;     // hole index per triangle, -1 outside
    std::vector<char> pt_on_outer; // point on the lateral circle
};

SectionMesh build_section(const geometry::PipeParams& pipe,
                          const geometry::PerforationLayout* layout,
                          const MeshResolution& res) {
    const double R = pipe.R;
    SectionMesh sec;
    std::vector<std::array<int, 2>> required;

    // outer circle
    const double h_b = std::min(res.h_far, 0.35 * R);
    const int n_outer = std::max(24, static_cast<int>(std::ceil(2.0 * M_PI * R / h_b)));
    for (int k = 0; k < n_outer; ++k) {
        const double th = 2.0 * M_PI * k / n_outer;
        sec.points.push_back({R * std::cos(th), R * std::sin(th)});
        sec.pt_on_outer.push_back(1);
    }

    struct HoleRings {
        double reach = 0.0; // outermost ring radius
    };
    std::vector<HoleRings> ring_info;

    if (layout) {
        for (std::size_t n = 0; n < layout->centers.size(); ++n) {
            const double cxn = layout->centers[n][0], cyn = layout->centers[n][1];
            const double rho = layout->hole_radii[n];
            // clearance to other spacing disks and the wall
            double clear_r = 0.95 * layout->params.delta1 * layout->params.epsilon;
            clear_r = std::min(clear_r, R - std::hypot(cxn, cyn) - 0.6 * h_b);
            for (std::size_t m = 0; m < layout->centers.size(); ++m)
                if (m != n)
                    clear_r = std::min(clear_r, 0.5 * std::hypot(cxn - layout->centers[m][0],
                                                                 cyn - layout->centers[m][1]));

            // rim
            const int m_rim = std::max(12, static_cast<int>(std::ceil(2.0 * M_PI * rho / res.h_hole)));
            const int rim_start = static_cast<int>(sec.points.size());
            for (int k = 0; k < m_rim; ++k) {
                const double th = 2.0 * M_PI * k / m_rim;
                sec.points.push_back({cxn + rho * std::cos(th), cyn + rho * std::sin(th)});
                sec.pt_on_outer.push_back(0);
            }
            for (int k = 0; k < m_rim; ++k)
                required.push_back({rim_start + k, rim_start + (k + 1) % m_rim});

            // interior rings + center
            double r_in = rho - res.h_hole;
            while (r_in > 0.45 * res.h_hole) {
                const int m = std::max(6, static_cast<int>(std::ceil(2.0 * M_PI * r_in / res.h_hole)));
                for (int k = 0; k < m; ++k) {
                    const double th = 2.0 * M_PI * (k + 0.5) / m;
                    sec.points.push_back({cxn + r_in * std::cos(th), cyn + r_in * std::sin(th)});
                    sec.pt_on_outer.push_back(0);
                }
                r_in -= res.h_hole;
            }
            sec.points.push_back({cxn, cyn});
            sec.pt_on_outer.push_back(0);

            // graded exterior rings
            HoleRings hr;
            double r_out = rho;
            double step = res.h_hole;
            while (true) {
                const double r_next = r_out + step;
                if (r_next > clear_r || step >= 0.95 * res.h_far) break;
                r_out = r_next;
                const int m = std::max(8, static_cast<int>(std::ceil(2.0 * M_PI * r_out / step)));
                for (int k = 0; k < m; ++k) {
                    const double th = 2.0 * M_PI * (k + 0.37) / m;
                    sec.points.push_back({cxn + r_out * std::cos(th), cyn + r_out * std::sin(th)});
                    sec.pt_on_outer.push_back(0);
                }
                step = std::min(step * res.grading_rate, res.h_far);
            }
            hr.reach = r_out;
            ring_info.push_back(hr);
        }
    }

    // hex background lattice
    const double pitch = res.h_far;
    const double row = pitch * std::sqrt(3.0) / 2.0;
    const int jmax = static_cast<int>(std::ceil(R / row)) + 1;
    for (int j = -jmax; j <= jmax; ++j) {
        const double y = j * row;
        const double shift = (j % 2 == 0) ? 0.0 : 0.5 * pitch;
        const int imax = static_cast<int>(std::ceil(R / pitch)) + 1;
        for (int i = -imax; i <= imax; ++i) {
            const double x = i * pitch + shift;
            if (std::hypot(x, y) > R - 0.62 * h_b) continue;
            bool clear = true;
            if (layout)
                for (std::size_t n = 0; n < layout->centers.size(); ++n) {
                    const double d = std::hypot(x - layout->centers[n][0], y - layout->centers[n][1]);
                    if (d < ring_info[n].reach + 0.62 * pitch) clear = false;
                }
            if (!clear) continue;
            sec.points.push_back({x, y});
            sec.pt_on_outer.push_back(0);
        }
    }

    Triangulation tri = delaunay_triangulate(sec.points);
    recover_edges(tri, required);

    sec.triangles = tri.triangles;
    sec.tri_hole.assign(sec.triangles.size(), -1);
    if (layout) {
        for (std::size_t t = 0; t < sec.triangles.size(); ++t) {
            const auto& v = sec.triangles[t];
            const double gx = (sec.points[static_cast<std::size_t>(v[0])][0] + sec.points[static_cast<std::size_t>(v[1])][0] +
                               sec.points[static_cast<std::size_t>(v[2])][0]) / 3.0;
            const double gy = (sec.points[static_cast<std::size_t>(v[0])][1] + sec.points[static_cast<std::size_t>(v[1])][1] +
                               sec.points[static_cast<std::size_t>(v[2])][1]) / 3.0;
            for (std::size_t n = 0; n < layout->centers.size(); ++n)
                if (std::hypot(gx - layout->centers[n][0], gy - layout->centers[n][1]) <
                    layout->hole_radii[n]) {
                    sec.tri_hole[t] = static_cast<int>(n);
                    break;
                }
        }
    }
    return sec;
}

// Split prism (bottom a,b,c / top d,e,f with d over a) into three tetrahedra
// with index-based diagonals so neighboring prisms conform.
void split_prism(const std::array<int, 6>& p, std::vector<std::array<int, 4>>& cells) {
    std::array<int, 6> v = p;
    // rotate/flip so the smallest global index sits at position 0
    int mi = 0;
    for (int k = 1; k < 6; ++k)
        if (v[static_cast<std::size_t>(k)] < v[static_cast<std::size_t>(mi)]) mi = k;
    auto rot = [&v](int r) { // rotate bottom and top in sync
        std::array<int, 6> w = v;
        for (int k = 0; k < 3; ++k) {
            w[static_cast<std::size_t>(k)] = v[static_cast<std::size_t>((k + r) % 3)];
            w[static_cast<std::size_t>(k + 3)] = v[static_cast<std::size_t>((k + r) % 3 + 3)];
        }
        v = w;
    };
    if (mi >= 3) { // flip upside down, reversing bottom orientation
        v = {v[3], v[5], v[4], v[0], v[2], v[1]};
        mi = (mi == 3) ? 0 : (mi == 4 ? 2 : 1);
    }
    rot(mi);

    // v[0] is the global minimum; quad (v1, v2, v5, v4) gets the diagonal
    // through its smallest vertex.
    if (std::min(v[1], v[5]) < std::min(v[2], v[4])) {
        cells.push_back({v[0], v[1], v[2], v[5]});
        cells.push_back({v[0], v[1], v[5], v[4]});
        cells.push_back({v[0], v[4], v[5], v[3]});
    } else {
        cells.push_back({v[0], v[1], v[2], v[4]});
        cells.push_back({v[0], v[4], v[2], v[5]});
        cells.push_back({v[0], v[4], v[5], v[3]});
    }
}

SieveMesh build_3d(const geometry::PipeParams& pipe, const MeshResolution& res,
                   const SectionMesh& sec, double z_lo, double z_hi, double dz0,
                   const HoleClassifier& holes, bool tag_midplane_sieve) {
    SieveMesh mesh;
    mesh.dim = 3;
    mesh.resolution = res;

    std::vector<double> zs;
    if (z_lo < 0.0) {
        auto lower = graded_axis(-z_lo, dz0, res.h_far, res.grading_rate, res.extrusion_layers);
        for (std::size_t k = lower.size(); k-- > 1;) zs.push_back(-lower[k]);
        zs.push_back(0.0);
    } else {
        zs.push_back(0.0);
    }
    if (z_hi > 0.0) {
        auto upper = graded_axis(z_hi, dz0, res.h_far, res.grading_rate, res.extrusion_layers);
        for (std::size_t k = 1; k < upper.size(); ++k) zs.push_back(upper[k]);
    }

    const int npt = static_cast<int>(sec.points.size());
    const int nz = static_cast<int>(zs.size());
    mesh.vertices.resize(static_cast<std::size_t>(npt) * static_cast<std::size_t>(nz));
    for (int j = 0; j < nz; ++j)
        for (int i = 0; i < npt; ++i)
            mesh.vertices[static_cast<std::size_t>(j * npt + i)] = {sec.points[static_cast<std::size_t>(i)][0],
                                                                    sec.points[static_cast<std::size_t>(i)][1],
                                                                    zs[static_cast<std::size_t>(j)]};

    for (int j = 0; j + 1 < nz; ++j)
        for (const auto& t : sec.triangles) {
            const std::array<int, 6> prism{j * npt + t[0],       j * npt + t[1],
                                           j * npt + t[2],       (j + 1) * npt + t[0],
                                           (j + 1) * npt + t[1], (j + 1) * npt + t[2]};
            split_prism(prism, mesh.cells);
        }

    std::vector<char> lateral(mesh.vertices.size(), 0);
    for (int j = 0; j < nz; ++j)
        for (int i = 0; i < npt; ++i)
            lateral[static_cast<std::size_t>(j * npt + i)] = sec.pt_on_outer[static_cast<std::size_t>(i)];

    finalize_mesh(mesh, holes, pipe.R, pipe.h, lateral, tag_midplane_sieve);
    return mesh;
}

double min_hole_radius(const geometry::PerforationLayout& layout) {
    double r = std::numeric_limits<double>::infinity();
    for (double rho : layout.hole_radii) r = std::min(r, rho);
    return r;
}

} // namespace

// ----------------------------------------------------------------------------
// Public entry points
// ----------------------------------------------------------------------------

SieveMesh mesh_sieve_pipe(const geometry::PerforationLayout& layout, const MeshResolution& res) {
    res.validate();
    const auto report = geometry::validate_layout(layout);
    if (!report.ok())
        throw MeshError("mesh_sieve_pipe: invalid layout\n" + report.summary());
    const bool has_holes = !layout.centers.empty();
    if (has_holes && res.h_hole > min_hole_radius(layout) / 3.0 + 1e-15)
        throw MeshError("mesh_sieve_pipe: resolution error: h_hole = " + std::to_string(res.h_hole) +
                        " cannot resolve smallest hole radius " +
                        std::to_string(min_hole_radius(layout)));

    HoleClassifier holes;
    holes.layout = &layout;
    const double dz0 = has_holes ? res.h_hole : res.h_far;

    SieveMesh mesh;
    if (layout.pipe.dim == 2) {
        const auto xs = sieve_x_points(layout, res);
        mesh = build_2d(layout.pipe, res, xs, -layout.pipe.h, layout.pipe.h, dz0, holes, true);
    } else {
        const auto sec = build_section(layout.pipe, &layout, res);
        mesh = build_3d(layout.pipe, res, sec, -layout.pipe.h, layout.pipe.h, dz0, holes, true);
    }
    mesh.layout = layout;
    mesh.has_layout = true;
    return mesh;
}

SieveMesh mesh_half_domain(const geometry::PipeParams& pipe, Region side,
                           const MeshResolution& res) {
    pipe.validate();
    res.validate();
    HoleClassifier holes; // no holes: full section is a wall
    const double z_lo = side == Region::Minus ? -pipe.h : 0.0;
    const double z_hi = side == Region::Minus ? 0.0 : pipe.h;

    SieveMesh mesh;
    if (pipe.dim == 2) {
        std::vector<double> xs;
        const int n = std::max(2, static_cast<int>(std::ceil(2.0 * pipe.R / res.h_far)));
        for (int i = 0; i <= n; ++i) xs.push_back(-pipe.R + 2.0 * pipe.R * i / n);
        mesh = build_2d(pipe, res, xs, z_lo, z_hi, res.h_far, holes, true);
    } else {
        const auto sec = build_section(pipe, nullptr, res);
        mesh = build_3d(pipe, res, sec, z_lo, z_hi, res.h_far, holes, true);
    }
    mesh.layout.pipe = pipe;
    return mesh;
}

SieveMesh mesh_pipe(const geometry::PipeParams& pipe, const MeshResolution& res) {
    pipe.validate();
    res.validate();
    HoleClassifier holes;
    holes.open_midplane = true;

    SieveMesh mesh;
    if (pipe.dim == 2) {
        std::vector<double> xs;
        const int n = std::max(2, static_cast<int>(std::ceil(2.0 * pipe.R / res.h_far)));
        for (int i = 0; i <= n; ++i) xs.push_back(-pipe.R + 2.0 * pipe.R * i / n);
        mesh = build_2d(pipe, res, xs, -pipe.h, pipe.h, res.h_far, holes, false);
    } else {
        const auto sec = build_section(pipe, nullptr, res);
        mesh = build_3d(pipe, res, sec, -pipe.h, pipe.h, res.h_far, holes, false);
    }
    mesh.layout.pipe = pipe;
    return mesh;
}

} // namespace sieveflow::meshing
