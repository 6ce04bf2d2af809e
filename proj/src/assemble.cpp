#include "sieveflow/assemble.hpp"

#include <algorithm>
#include <cmath>

#include "sieveflow/quadrature.hpp"

namespace sieveflow::fem {

using quadrature::Rule;
using quadrature::segment_rule;
using quadrature::simplex_rule;

// ============================================================================
// BodyForce
// ============================================================================

BodyForce BodyForce::constant(const std::array<double, 3>& v) {
    BodyForce f;
    f.kind = Kind::Constant;
    f.value = v;
    return f;
}

BodyForce BodyForce::analytic(std::function<std::array<double, 3>(const std::array<double, 3>&)> fn,
                              int min_degree) {
    BodyForce f;
    f.kind = Kind::Analytic;
    f.fn = std::move(fn);
    f.min_quadrature_degree = min_degree;
    return f;
}

BodyForce BodyForce::sampled(std::vector<std::array<double, 3>> vertex_values) {
    BodyForce f;
    f.kind = Kind::VertexSampled;
    f.samples = std::move(vertex_values);
    return f;
}

// ============================================================================
// Local evaluation helpers
// ============================================================================

namespace {

struct P2Eval {
    int dim;
    int nn;
    const Rule* rule;
    // per quadrature point: values and reference gradients
    std::vector<double> N;   // q * nn
    std::vector<double> dN;  // q * nn * dim

    P2Eval(int dim_, const Rule& r) : dim(dim_), nn(p2_nodes_per_cell(dim_)), rule(&r) {
        N.resize(r.size() * static_cast<std::size_t>(nn));
        dN.resize(r.size() * static_cast<std::size_t>(nn * dim));
        for (std::size_t q = 0; q < r.size(); ++q)
            eval_p2(dim, r.points[q].data(), &N[q * static_cast<std::size_t>(nn)],
                    &dN[q * static_cast<std::size_t>(nn * dim)]);
    }
    const double* values(std::size_t q) const { return &N[q * static_cast<std::size_t>(nn)]; }
    const double* grads(std::size_t q) const { return &dN[q * static_cast<std::size_t>(nn * dim)]; }
};

struct P1Eval {
    int dim;
    int nn;
    std::vector<double> N;
    std::vector<double> dN;

    P1Eval(int dim_, const Rule& r) : dim(dim_), nn(dim_ + 1) {
        N.resize(r.size() * static_cast<std::size_t>(nn));
        dN.resize(r.size() * static_cast<std::size_t>(nn * dim));
        for (std::size_t q = 0; q < r.size(); ++q)
            eval_p1(dim, r.points[q].data(), &N[q * static_cast<std::size_t>(nn)],
                    &dN[q * static_cast<std::size_t>(nn * dim)]);
    }
    const double* values(std::size_t q) const { return &N[q * static_cast<std::size_t>(nn)]; }
    const double* grads(std::size_t q) const { return &dN[q * static_cast<std::size_t>(nn * dim)]; }
};

// physical gradients of all P2 basis functions at one quadrature point
inline void physical_grads(const CellGeom& g, const double* dN_ref, int nn, double* out) {
    for (int i = 0; i < nn; ++i)
        for (int r = 0; r < g.dim; ++r) {
            double v = 0.0;
            for (int c = 0; c < g.dim; ++c) v += g.JinvT[r][c] * dN_ref[i * g.dim + c];
            out[i * g.dim + r] = v;
        }
}

// P2 trace basis on a facet: segment (3 nodes) or triangle (6 nodes).
void facet_p2(int facet_dim, const double* x, double* N) {
    if (facet_dim == 1) {
        const double t = x[0];
        const double l0 = 1.0 - t, l1 = t;
        N[0] = l0 * (2.0 * l0 - 1.0);
        N[1] = l1 * (2.0 * l1 - 1.0);
        N[2] = 4.0 * l0 * l1;
    } else {
        eval_p2(2, x, N, nullptr);
    }
}

} // namespace

// ============================================================================
// Matrices
// ============================================================================

SpMat stiffness_matrix(const FeSpace& sp) {
    const auto& mesh = *sp.mesh;
    const Rule rule = simplex_rule(mesh.dim, 2);
    P2Eval fe(mesh.dim, rule);
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> gp(static_cast<std::size_t>(fe.nn * mesh.dim));

    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const CellGeom g = cell_geometry(mesh, static_cast<int>(c));
        const auto& cn = sp.cell_nodes[c];
        std::vector<double> ke(static_cast<std::size_t>(fe.nn * fe.nn), 0.0);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            physical_grads(g, fe.grads(q), fe.nn, gp.data());
            const double w = rule.weights[q] * g.det_abs;
            for (int i = 0; i < fe.nn; ++i)
                for (int j = 0; j < fe.nn; ++j) {
                    double s = 0.0;
                    for (int d = 0; d < mesh.dim; ++d)
                        s += gp[static_cast<std::size_t>(i * mesh.dim + d)] * gp[static_cast<std::size_t>(j * mesh.dim + d)];
                    ke[static_cast<std::size_t>(i * fe.nn + j)] += w * s;
                }
        }
        for (int i = 0; i < fe.nn; ++i)
            for (int j = 0; j < fe.nn; ++j)
                for (int comp = 0; comp < sp.ncomp; ++comp) {
                    const int gi = sp.free_index[static_cast<std::size_t>(sp.dof(cn[static_cast<std::size_t>(i)], comp))];
                    const int gj = sp.free_index[static_cast<std::size_t>(sp.dof(cn[static_cast<std::size_t>(j)], comp))];
                    if (gi >= 0 && gj >= 0)
                        trip.emplace_back(gi, gj, ke[static_cast<std::size_t>(i * fe.nn + j)]);
                }
    }
    SpMat K(sp.n_free, sp.n_free);
    K.setFromTriplets(trip.begin(), trip.end());
    return K;
}

SpMat mass_matrix(const FeSpace& sp) {
    const auto& mesh = *sp.mesh;
    const Rule rule = simplex_rule(mesh.dim, 4);
    P2Eval fe(mesh.dim, rule);
    std::vector<Eigen::Triplet<double>> trip;

    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const CellGeom g = cell_geometry(mesh, static_cast<int>(c));
        const auto& cn = sp.cell_nodes[c];
        std::vector<double> me(static_cast<std::size_t>(fe.nn * fe.nn), 0.0);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double w = rule.weights[q] * g.det_abs;
            const double* N = fe.values(q);
            for (int i = 0; i < fe.nn; ++i)
                for (int j = 0; j < fe.nn; ++j)
                    me[static_cast<std::size_t>(i * fe.nn + j)] += w * N[i] * N[j];
        }
        for (int i = 0; i < fe.nn; ++i)
            for (int j = 0; j < fe.nn; ++j)
                for (int comp = 0; comp < sp.ncomp; ++comp) {
                    const int gi = sp.free_index[static_cast<std::size_t>(sp.dof(cn[static_cast<std::size_t>(i)], comp))];
                    const int gj = sp.free_index[static_cast<std::size_t>(sp.dof(cn[static_cast<std::size_t>(j)], comp))];
                    if (gi >= 0 && gj >= 0)
                        trip.emplace_back(gi, gj, me[static_cast<std::size_t>(i * fe.nn + j)]);
                }
    }
    SpMat M(sp.n_free, sp.n_free);
    M.setFromTriplets(trip.begin(), trip.end());
    return M;
}

namespace {

// Accumulate a facet mass matrix into triplets for one facet.
void facet_mass_accumulate(const FeSpace& sp, const std::array<int, 3>& fv,
                           int degree, std::vector<Eigen::Triplet<double>>& trip) {
    const auto& mesh = *sp.mesh;
    const int fdim = mesh.dim - 1;
    const Rule rule = fdim == 1 ? segment_rule(degree) : simplex_rule(2, degree);
    const FacetGeom fg = facet_geometry(mesh, fv);
    const auto nodes = sp.facet_nodes(fv);
    const int nn = static_cast<int>(nodes.size());
    std::vector<double> N(static_cast<std::size_t>(nn));
    std::vector<double> me(static_cast<std::size_t>(nn * nn), 0.0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        facet_p2(fdim, rule.points[q].data(), N.data());
        const double w = rule.weights[q] * fg.measure_jac;
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j < nn; ++j)
                me[static_cast<std::size_t>(i * nn + j)] += w * N[static_cast<std::size_t>(i)] * N[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j) {
            const int gi = sp.free_index[static_cast<std::size_t>(sp.dof(nodes[static_cast<std::size_t>(i)], 0))];
            const int gj = sp.free_index[static_cast<std::size_t>(sp.dof(nodes[static_cast<std::size_t>(j)], 0))];
            if (gi >= 0 && gj >= 0) trip.emplace_back(gi, gj, me[static_cast<std::size_t>(i * nn + j)]);
        }
}

} // namespace

SpMat midplane_mass(const FeSpace& sp, int degree) {
    if (sp.ncomp != 1) throw ConfigError("midplane_mass expects a scalar space");
    const auto& mesh = *sp.mesh;
    std::vector<Eigen::Triplet<double>> trip;
    for (const auto& f : mesh.boundary_facets)
        if (f.tag == FacetTag::Sieve) facet_mass_accumulate(sp, f.v, degree, trip);
    for (const auto& f : mesh.hole_facets) facet_mass_accumulate(sp, f.v, degree, trip);
    SpMat M(sp.n_free, sp.n_free);
    M.setFromTriplets(trip.begin(), trip.end());
    return M;
}

SpMat divergence_matrix(const FunctionSpace& space) {
    const FeSpace& sp = space.velocity;
    const auto& mesh = *sp.mesh;
    const Rule rule = simplex_rule(mesh.dim, 3);
    P2Eval fe(mesh.dim, rule);
    P1Eval p1(mesh.dim, rule);
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> gp(static_cast<std::size_t>(fe.nn * mesh.dim));

    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const CellGeom g = cell_geometry(mesh, static_cast<int>(c));
        const auto& cn = sp.cell_nodes[c];
        const auto& cell = mesh.cells[c];
        for (std::size_t q = 0; q < rule.size(); ++q) {
            physical_grads(g, fe.grads(q), fe.nn, gp.data());
            const double w = rule.weights[q] * g.det_abs;
            const double* Np = p1.values(q);
            for (int p = 0; p <= mesh.dim; ++p) {
                const int row = cell[static_cast<std::size_t>(p)];
                for (int j = 0; j < fe.nn; ++j)
                    for (int a = 0; a < mesh.dim; ++a) {
                        const int gj = sp.free_index[static_cast<std::size_t>(sp.dof(cn[static_cast<std::size_t>(j)], a))];
                        if (gj >= 0)
                            trip.emplace_back(row, gj,
                                              w * Np[p] * gp[static_cast<std::size_t>(j * mesh.dim + a)]);
                    }
            }
        }
    }
    SpMat B(space.n_pressure, sp.n_free);
    B.setFromTriplets(trip.begin(), trip.end());
    return B;
}

SpMat convection_matrix(const FunctionSpace& space, const Eigen::VectorXd& w_free, int degree) {
    const FeSpace& sp = space.velocity;
    const auto& mesh = *sp.mesh;
    const int dim = mesh.dim;
    const Eigen::VectorXd w = expand(sp, w_free);
    const Rule rule = simplex_rule(dim, degree);
    P2Eval fe(dim, rule);
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> gp(static_cast<std::size_t>(fe.nn * dim));

    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const CellGeom g = cell_geometry(mesh, static_cast<int>(c));
        const auto& cn = sp.cell_nodes[c];
        std::vector<double> ce(static_cast<std::size_t>(fe.nn * dim * fe.nn * dim), 0.0);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            physical_grads(g, fe.grads(q), fe.nn, gp.data());
            const double* N = fe.values(q);
            // grad w at the quadrature point: gw[a][b] = d_b w_a
            double gw[3][3] = {};
            for (int k = 0; k < fe.nn; ++k)
                for (int a = 0; a < dim; ++a) {
                    const double wk = w[sp.dof(cn[static_cast<std::size_t>(k)], a)];
                    if (wk == 0.0) continue;
                    for (int b = 0; b < dim; ++b)
                        gw[a][b] += wk * gp[static_cast<std::size_t>(k * dim + b)];
                }
            const double wq = rule.weights[q] * g.det_abs;
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) {
                    const double e_ab = gw[a][b] - gw[b][a];
                    if (e_ab == 0.0) continue;
                    for (int i = 0; i < fe.nn; ++i) {
                        const double wNi = wq * e_ab * N[i];
                        for (int j = 0; j < fe.nn; ++j)
                            ce[static_cast<std::size_t>(((i * dim + a) * fe.nn + j) * dim + b)] +=
                                wNi * N[j];
                    }
                }
        }
        for (int i = 0; i < fe.nn; ++i)
            for (int a = 0; a < dim; ++a) {
                const int gi = sp.free_index[static_cast<std::size_t>(sp.dof(cn[static_cast<std::size_t>(i)], a))];
                if (gi < 0) continue;
                for (int j = 0; j < fe.nn; ++j)
                    for (int b = 0; b < dim; ++b) {
                        const int gj = sp.free_index[static_cast<std::size_t>(sp.dof(cn[static_cast<std::size_t>(j)], b))];
                        if (gj < 0) continue;
                        const double v = ce[static_cast<std::size_t>(((i * dim + a) * fe.nn + j) * dim + b)];
                        if (v != 0.0) trip.emplace_back(gi, gj, v);
                    }
            }
    }
    SpMat C(sp.n_free, sp.n_free);
    C.setFromTriplets(trip.begin(), trip.end());
    return C;
}

SpMat convection_jacobian_extra(const FunctionSpace& space, const Eigen::VectorXd& u_free,
                                int degree) {
    const FeSpace& sp = space.velocity;
    const auto& mesh = *sp.mesh;
    const int dim = mesh.dim;
    const Eigen::VectorXd u = expand(sp, u_free);
    const Rule rule = simplex_rule(dim, degree);
    P2Eval fe(dim, rule);
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> gp(static_cast<std::size_t>(fe.nn * dim));

    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const CellGeom g = cell_geometry(mesh, static_cast<int>(c));
        const auto& cn = sp.cell_nodes[c];
        std::vector<double> de(static_cast<std::size_t>(fe.nn * dim * fe.nn * dim), 0.0);
        for (std::size_t q = 0; q < rule.size(); ++q) {
            physical_grads(g, fe.grads(q), fe.nn, gp.data());
            const double* N = fe.values(q);
            double uq[3] = {};
            for (int k = 0; k < fe.nn; ++k)
                for (int a = 0; a < dim; ++a)
                    uq[a] += u[sp.dof(cn[static_cast<std::size_t>(k)], a)] * N[k];
            const double wq = rule.weights[q] * g.det_abs;
            for (int j = 0; j < fe.nn; ++j) {
                double gradNj_dot_u = 0.0;
                for (int b = 0; b < dim; ++b)
                    gradNj_dot_u += gp[static_cast<std::size_t>(j * dim + b)] * uq[b];
                for (int i = 0; i < fe.nn; ++i) {
                    const double wNi = wq * N[i];
                    for (int a = 0; a < dim; ++a)
                        for (int cpt = 0; cpt < dim; ++cpt) {
                            double v = 0.0;
                            if (a == cpt) v += gradNj_dot_u;
                            v -= uq[cpt] * gp[static_cast<std::size_t>(j * dim + a)];
                            if (v != 0.0)
                                de[static_cast<std::size_t>(((i * dim + a) * fe.nn + j) * dim + cpt)] += wNi * v;
                        }
                }
            }
        }
        for (int i = 0; i < fe.nn; ++i)
            for (int a = 0; a < dim; ++a) {
                const int gi = sp.free_index[static_cast<std::size_t>(sp.dof(cn[static_cast<std::size_t>(i)], a))];
                if (gi < 0) continue;
                for (int j = 0; j < fe.nn; ++j)
                    for (int b = 0; b < dim; ++b) {
                        const int gj = sp.free_index[static_cast<std::size_t>(sp.dof(cn[static_cast<std::size_t>(j)], b))];
                        if (gj < 0) continue;
                        const double v = de[static_cast<std::size_t>(((i * dim + a) * fe.nn + j) * dim + b)];
                        if (v != 0.0) trip.emplace_back(gi, gj, v);
                    }
            }
    }
    SpMat D(sp.n_free, sp.n_free);
    D.setFromTriplets(trip.begin(), trip.end());
    return D;
}

// ============================================================================
// Load vectors
// ============================================================================

Eigen::VectorXd drop_load(const FunctionSpace& space, double p_minus, double p_plus,
                          int degree) {
    const FeSpace& sp = space.velocity;
    const auto& mesh = *sp.mesh;
    const int zc = mesh.zaxis();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(sp.n_free);
    const int fdim = mesh.dim - 1;
    const Rule rule = fdim == 1 ? segment_rule(degree) : simplex_rule(2, degree);

    for (const auto& f : mesh.boundary_facets) {
        double coef;
        if (f.tag == FacetTag::Outlet)
            coef = p_plus;
        else if (f.tag == FacetTag::Inlet)
            coef = -p_minus;
        else
            continue;
        const FacetGeom fg = facet_geometry(mesh, f.v);
        const auto nodes = sp.facet_nodes(f.v);
        const int nn = static_cast<int>(nodes.size());
        std::vector<double> N(static_cast<std::size_t>(nn));
        for (std::size_t q = 0; q < rule.size(); ++q) {
            facet_p2(fdim, rule.points[q].data(), N.data());
            const double w = rule.weights[q] * fg.measure_jac;
            for (int i = 0; i < nn; ++i) {
                const int gi = sp.free_index[static_cast<std::size_t>(sp.dof(nodes[static_cast<std::size_t>(i)], zc))];
                if (gi >= 0) b[gi] += coef * w * N[static_cast<std::size_t>(i)];
            }
        }
    }
    return b;
}

Eigen::VectorXd body_load(const FunctionSpace& space, const BodyForce& f, int degree) {
    const FeSpace& sp = space.velocity;
    const auto& mesh = *sp.mesh;
    const int dim = mesh.dim;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(sp.n_free);
    if (f.is_zero()) return b;
    if (f.kind == BodyForce::Kind::Analytic && degree < f.min_quadrature_degree)
        throw ConfigError("body_load: quadrature degree " + std::to_string(degree) +
                          " below the " + std::to_string(f.min_quadrature_degree) +
                          " required by the body force");
    if (f.kind == BodyForce::Kind::VertexSampled && f.samples.size() != mesh.n_vertices())
        throw ConfigError("body_load: sampled force has wrong vertex count");

    const Rule rule = simplex_rule(dim, degree);
    P2Eval fe(dim, rule);
    P1Eval p1(dim, rule);

    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const CellGeom g = cell_geometry(mesh, static_cast<int>(c));
        const auto& cn = sp.cell_nodes[c];
        const auto& cell = mesh.cells[c];
        for (std::size_t q = 0; q < rule.size(); ++q) {
            std::array<double, 3> fx{0.0, 0.0, 0.0};
            switch (f.kind) {
                case BodyForce::Kind::Zero: break;
                case BodyForce::Kind::Constant: fx = f.value; break;
                case BodyForce::Kind::Analytic: fx = f.fn(g.map(rule.points[q].data())); break;
                case BodyForce::Kind::VertexSampled: {
                    const double* Np = p1.values(q);
                    for (int p = 0; p <= dim; ++p) {
                        const auto& s = f.samples[static_cast<std::size_t>(cell[static_cast<std::size_t>(p)])];
                        for (int a = 0; a < dim; ++a) fx[static_cast<std::size_t>(a)] += Np[p] * s[static_cast<std::size_t>(a)];
                    }
                    break;
                }
            }
            const double w = rule.weights[q] * g.det_abs;
            const double* N = fe.values(q);
            for (int i = 0; i < fe.nn; ++i)
                for (int a = 0; a < dim; ++a) {
                    const int gi = sp.free_index[static_cast<std::size_t>(sp.dof(cn[static_cast<std::size_t>(i)], a))];
                    if (gi >= 0) b[gi] += w * N[i] * fx[static_cast<std::size_t>(a)];
                }
        }
    }
    return b;
}

DiscreteSystem assemble(std::shared_ptr<const FunctionSpace> space, double p_minus,
                        double p_plus, const BodyForce& f, int cell_degree, int facet_degree) {
    DiscreteSystem sys;
    sys.space = space;
    sys.p_minus = p_minus;
    sys.p_plus = p_plus;
    sys.force = f;
    sys.cell_quadrature_degree = cell_degree;
    sys.facet_quadrature_degree = facet_degree;
    sys.A = stiffness_matrix(space->velocity);
    sys.B = divergence_matrix(*space);
    sys.b_drop = drop_load(*space, p_minus, p_plus, facet_degree);
    sys.b_f = body_load(*space, f, cell_degree);
    return sys;
}

// ============================================================================
// Coefficient helpers and norms
// ============================================================================

Eigen::VectorXd expand(const FeSpace& sp, const Eigen::VectorXd& free_values) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(sp.n_dofs());
    for (int d = 0; d < sp.n_dofs(); ++d) {
        const int fi = sp.free_index[static_cast<std::size_t>(d)];
        if (fi >= 0) full[d] = free_values[fi];
    }
    return full;
}

Eigen::VectorXd restrict_free(const FeSpace& sp, const Eigen::VectorXd& full_values) {
    Eigen::VectorXd v(sp.n_free);
    for (int d = 0; d < sp.n_dofs(); ++d) {
        const int fi = sp.free_index[static_cast<std::size_t>(d)];
        if (fi >= 0) v[fi] = full_values[d];
    }
    return v;
}

namespace {

template <bool Grad>
double norm_sq_impl(const FeSpace& sp, const Eigen::VectorXd& full, bool restrict_region,
                    meshing::Region region) {
    const auto& mesh = *sp.mesh;
    const int dim = mesh.dim;
    const Rule rule = simplex_rule(dim, Grad ? 2 : 4);
    P2Eval fe(dim, rule);
    std::vector<double> gp(static_cast<std::size_t>(fe.nn * dim));
    double total = 0.0;
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        if (restrict_region && mesh.cell_region[c] != region) continue;
        const CellGeom g = cell_geometry(mesh, static_cast<int>(c));
        const auto& cn = sp.cell_nodes[c];
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double w = rule.weights[q] * g.det_abs;
            if constexpr (Grad) {
                physical_grads(g, fe.grads(q), fe.nn, gp.data());
                for (int a = 0; a < sp.ncomp; ++a)
                    for (int d = 0; d < dim; ++d) {
                        double s = 0.0;
                        for (int k = 0; k < fe.nn; ++k)
                            s += full[sp.dof(cn[static_cast<std::size_t>(k)], a)] * gp[static_cast<std::size_t>(k * dim + d)];
                        total += w * s * s;
                    }
            } else {
                const double* N = fe.values(q);
                for (int a = 0; a < sp.ncomp; ++a) {
                    double s = 0.0;
                    for (int k = 0; k < fe.nn; ++k)
                        s += full[sp.dof(cn[static_cast<std::size_t>(k)], a)] * N[k];
                    total += w * s * s;
                }
            }
        }
    }
    return total;
}

} // namespace

double grad_norm_sq(const FeSpace& sp, const Eigen::VectorXd& full) {
    return norm_sq_impl<true>(sp, full, false, meshing::Region::Minus);
}
double grad_norm_sq_region(const FeSpace& sp, const Eigen::VectorXd& full, meshing::Region r) {
    return norm_sq_impl<true>(sp, full, true, r);
}
double l2_norm_sq(const FeSpace& sp, const Eigen::VectorXd& full) {
    return norm_sq_impl<false>(sp, full, false, meshing::Region::Minus);
}
double l2_norm_sq_region(const FeSpace& sp, const Eigen::VectorXd& full, meshing::Region r) {
    return norm_sq_impl<false>(sp, full, true, r);
}

double p1_integral_region(const SieveMesh& mesh, const Eigen::VectorXd& vertex_values,
                          meshing::Region region) {
    const Rule rule = simplex_rule(mesh.dim, 2);
    P1Eval p1(mesh.dim, rule);
    double total = 0.0;
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        if (mesh.cell_region[c] != region) continue;
        const CellGeom g = cell_geometry(mesh, static_cast<int>(c));
        const auto& cell = mesh.cells[c];
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double* N = p1.values(q);
            double s = 0.0;
            for (int p = 0; p <= mesh.dim; ++p) s += vertex_values[cell[static_cast<std::size_t>(p)]] * N[p];
            total += rule.weights[q] * g.det_abs * s;
        }
    }
    return total;
}

double p1_l2_norm_sq_region(const SieveMesh& mesh, const Eigen::VectorXd& vertex_values,
                            meshing::Region region) {
    const Rule rule = simplex_rule(mesh.dim, 3);
    P1Eval p1(mesh.dim, rule);
    double total = 0.0;
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        if (mesh.cell_region[c] != region) continue;
        const CellGeom g = cell_geometry(mesh, static_cast<int>(c));
        const auto& cell = mesh.cells[c];
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const double* N = p1.values(q);
            double s = 0.0;
            for (int p = 0; p <= mesh.dim; ++p) s += vertex_values[cell[static_cast<std::size_t>(p)]] * N[p];
            total += rule.weights[q] * g.det_abs * s * s;
        }
    }
    return total;
}

double region_volume(const SieveMesh& mesh, meshing::Region region) {
    double v = 0.0;
    for (std::size_t c = 0; c < mesh.n_cells(); ++c)
        if (mesh.cell_region[c] == region) v += mesh.cell_measure(static_cast<int>(c));
    return v;
}

} // namespace sieveflow::fem
