#include "sieveflow/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "sieveflow/errors.hpp"

namespace sieveflow::meshing {

namespace {

using Pt = std::array<double, 2>;

inline long double orient2d(const Pt& a, const Pt& b, const Pt& c) {
    const long double abx = static_cast<long double>(b[0]) - a[0];
    const long double aby = static_cast<long double>(b[1]) - a[1];
    const long double acx = static_cast<long double>(c[0]) - a[0];
    const long double acy = static_cast<long double>(c[1]) - a[1];
    return abx * acy - aby * acx;
}

// > 0 when d is strictly inside the circumcircle of ccw triangle (a,b,c)
inline long double incircle(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
    const long double adx = static_cast<long double>(a[0]) - d[0];
    const long double ady = static_cast<long double>(a[1]) - d[1];
    const long double bdx = static_cast<long double>(b[0]) - d[0];
    const long double bdy = static_cast<long double>(b[1]) - d[1];
    const long double cdx = static_cast<long double>(c[0]) - d[0];
    const long double cdy = static_cast<long double>(c[1]) - d[1];
    const long double ad2 = adx * adx + ady * ady;
    const long double bd2 = bdx * bdx + bdy * bdy;
    const long double cd2 = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd2 - cdy * bd2) - ady * (bdx * cd2 - cdx * bd2) +
           ad2 * (bdx * cdy - cdx * bdy);
}

struct Tri {
    std::array<int, 3> v;
    bool alive = true;
};

} // namespace

Triangulation delaunay_triangulate(const std::vector<Pt>& input) {
    if (input.size() < 3) throw MeshError("delaunay: need at least 3 points");

    // bounding super-triangle
    double xmin = input[0][0], xmax = xmin, ymin = input[0][1], ymax = ymin;
    for (const auto& p : input) {
        xmin = std::min(xmin, p[0]);
        xmax = std::max(xmax, p[0]);
        ymin = std::min(ymin, p[1]);
        ymax = std::max(ymax, p[1]);
    }
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    const double span = std::max(xmax - xmin, ymax - ymin) * 64.0 + 1.0;

    std::vector<Pt> pts = input;
    const int s0 = static_cast<int>(pts.size());
    pts.push_back({cx - span, cy - span});
    pts.push_back({cx + span, cy - span});
    pts.push_back({cx, cy + span});

    std::vector<Tri> tris;
    tris.push_back({{s0, s0 + 1, s0 + 2}, true});

    std::vector<int> bad;
    std::map<std::pair<int, int>, std::pair<int, int>> hull; // directed edge -> (count marker)

    for (int ip = 0; ip < s0; ++ip) {
        const Pt& p = pts[static_cast<std::size_t>(ip)];
        bad.clear();
        for (std::size_t t = 0; t < tris.size(); ++t) {
            if (!tris[t].alive) continue;
            const auto& v = tris[t].v;
            if (incircle(pts[static_cast<std::size_t>(v[0])], pts[static_cast<std::size_t>(v[1])],
                         pts[static_cast<std::size_t>(v[2])], p) > 0.0L)
                bad.push_back(static_cast<int>(t));
        }
        // boundary of the cavity: edges appearing exactly once
        std::map<std::pair<int, int>, int> edge_count;
        for (int t : bad) {
            const auto& v = tris[static_cast<std::size_t>(t)].v;
            for (int k = 0; k < 3; ++k) {
                int a = v[static_cast<std::size_t>(k)], b = v[static_cast<std::size_t>((k + 1) % 3)];
                const auto key = std::minmax(a, b);
                edge_count[{key.first, key.second}]++;
            }
            tris[static_cast<std::size_t>(t)].alive = false;
        }
        for (int t : bad) {
            const auto& v = tris[static_cast<std::size_t>(t)].v;
            for (int k = 0; k < 3; ++k) {
                int a = v[static_cast<std::size_t>(k)], b = v[static_cast<std::size_t>((k + 1) % 3)];
                const auto key = std::minmax(a, b);
                if (edge_count[{key.first, key.second}] == 1) {
                    // keep ccw orientation (a, b, p)
                    Tri nt;
                    nt.v = {a, b, ip};
                    if (orient2d(pts[static_cast<std::size_t>(a)], pts[static_cast<std::size_t>(b)], p) < 0.0L)
                        std::swap(nt.v[0], nt.v[1]);
                    tris.push_back(nt);
                }
            }
        }
        if (bad.empty())
            throw MeshError("delaunay: point " + std::to_string(ip) +
                            " not inside any circumcircle (duplicate point?)");
        (void)hull;
    }

    Triangulation out;
    out.points = input;
    for (const auto& t : tris) {
        if (!t.alive) continue;
        if (t.v[0] >= s0 || t.v[1] >= s0 || t.v[2] >= s0) continue;
        out.triangles.push_back(t.v);
    }
    return out;
}

namespace {

// edge -> adjacent triangles map
std::map<std::pair<int, int>, std::vector<int>> build_edge_map(const Triangulation& tri) {
    std::map<std::pair<int, int>, std::vector<int>> em;
    for (std::size_t t = 0; t < tri.triangles.size(); ++t) {
        const auto& v = tri.triangles[t];
        for (int k = 0; k < 3; ++k) {
            const auto key = std::minmax(v[static_cast<std::size_t>(k)], v[static_cast<std::size_t>((k + 1) % 3)]);
            em[{key.first, key.second}].push_back(static_cast<int>(t));
        }
    }
    return em;
}

bool segments_cross(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
    const long double o1 = orient2d(a, b, c);
    const long double o2 = orient2d(a, b, d);
    const long double o3 = orient2d(c, d, a);
    const long double o4 = orient2d(c, d, b);
    return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

} // namespace

void recover_edges(Triangulation& tri, const std::vector<std::array<int, 2>>& segments) {
    for (const auto& seg : segments) {
        const int sa = seg[0], sb = seg[1];
        for (int attempt = 0; attempt < 256; ++attempt) {
            auto em = build_edge_map(tri);
            const auto key = std::minmax(sa, sb);
            if (em.count({key.first, key.second})) break; // edge present

            // find one edge crossing the segment and flip it
            bool flipped = false;
            for (auto& [e, ts] : em) {
                if (ts.size() != 2) continue;
                const auto [ea, eb] = e;
                if (ea == sa || ea == sb || eb == sa || eb == sb) continue;
                if (!segments_cross(tri.points[static_cast<std::size_t>(sa)], tri.points[static_cast<std::size_t>(sb)],
                                    tri.points[static_cast<std::size_t>(ea)], tri.points[static_cast<std::size_t>(eb)]))
                    continue;
                // flip edge (ea, eb) shared by ts[0], ts[1]
                auto& t0 = tri.triangles[static_cast<std::size_t>(ts[0])];
                auto& t1 = tri.triangles[static_cast<std::size_t>(ts[1])];
                int c0 = -1, c1 = -1;
                for (int k = 0; k < 3; ++k) {
                    if (t0[static_cast<std::size_t>(k)] != ea && t0[static_cast<std::size_t>(k)] != eb) c0 = t0[static_cast<std::size_t>(k)];
                    if (t1[static_cast<std::size_t>(k)] != ea && t1[static_cast<std::size_t>(k)] != eb) c1 = t1[static_cast<std::size_t>(k)];
                }
                // only flip if the quad (ea, c0, eb, c1) is convex
                if (orient2d(tri.points[static_cast<std::size_t>(c0)], tri.points[static_cast<std::size_t>(c1)],
                             tri.points[static_cast<std::size_t>(ea)]) == 0.0L ||
                    orient2d(tri.points[static_cast<std::size_t>(c0)], tri.points[static_cast<std::size_t>(c1)],
                             tri.points[static_cast<std::size_t>(eb)]) == 0.0L)
                    continue;
                if (!segments_cross(tri.points[static_cast<std::size_t>(c0)], tri.points[static_cast<std::size_t>(c1)],
                                    tri.points[static_cast<std::size_t>(ea)], tri.points[static_cast<std::size_t>(eb)]))
                    continue;
                auto fix = [](std::array<int, 3>& t, const std::vector<Pt>& pts) {
                    if (orient2d(pts[static_cast<std::size_t>(t[0])], pts[static_cast<std::size_t>(t[1])],
                                 pts[static_cast<std::size_t>(t[2])]) < 0.0L)
                        std::swap(t[1], t[2]);
                };
                t0 = {ea, c0, c1};
                t1 = {eb, c1, c0};
                fix(t0, tri.points);
                fix(t1, tri.points);
                flipped = true;
                break;
            }
            if (!flipped)
                throw MeshError("recover_edges: cannot recover segment " + std::to_string(sa) +
                                "-" + std::to_string(sb));
        }
        auto em = build_edge_map(tri);
        const auto key = std::minmax(sa, sb);
        if (!em.count({key.first, key.second}))
            throw MeshError("recover_edges: segment " + std::to_string(sa) + "-" +
                            std::to_string(sb) + " missing after recovery");
    }
}

} // namespace sieveflow::meshing
