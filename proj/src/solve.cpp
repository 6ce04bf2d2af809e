#include "sieveflow/solve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "sieveflow/quadrature.hpp"

namespace sieveflow::solve {

using fem::SpMat;

// ============================================================================
// Config plumbing
// ============================================================================

void SolverConfig::validate() const {
    if (!(tolerance > 0.0) || !(linear_tolerance > 0.0))
        throw ConfigError("SolverConfig: tolerances must be positive");
    if (!(damping > 0.0 && damping <= 1.0))
        throw ConfigError("SolverConfig: damping must lie in (0, 1]");
    if (max_iterations < 1) throw ConfigError("SolverConfig: max_iterations < 1");
}

SolveMode solve_mode_from_string(const std::string& s) {
    if (s == "stokes") return SolveMode::Stokes;
    if (s == "navier_stokes") return SolveMode::NavierStokes;
    throw ConfigError("unknown solver mode: " + s);
}
NonlinearScheme scheme_from_string(const std::string& s) {
    if (s == "picard") return NonlinearScheme::Picard;
    if (s == "newton") return NonlinearScheme::Newton;
    if (s == "picard_then_newton") return NonlinearScheme::PicardThenNewton;
    throw ConfigError("unknown nonlinear scheme: " + s);
}
LinearBackend backend_from_string(const std::string& s) {
    if (s == "direct") return LinearBackend::SparseDirect;
    if (s == "krylov") return LinearBackend::Krylov;
    throw ConfigError("unknown linear backend: " + s);
}
std::string to_string(SolveMode m) { return m == SolveMode::Stokes ? "stokes" : "navier_stokes"; }
std::string to_string(NonlinearScheme s) {
    switch (s) {
        case NonlinearScheme::Picard: return "picard";
        case NonlinearScheme::Newton: return "newton";
        case NonlinearScheme::PicardThenNewton: return "picard_then_newton";
    }
    return "?";
}
std::string to_string(LinearBackend b) {
    return b == LinearBackend::SparseDirect ? "direct" : "krylov";
}

// ============================================================================
// Saddle-point linear algebra
// ============================================================================

namespace {

// Assemble [[V, -B^T], [B, 0]] where V is the velocity block.
SpMat saddle_matrix(const SpMat& V, const SpMat& B) {
    const int nf = static_cast<int>(V.rows());
    const int np = static_cast<int>(B.rows());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(V.nonZeros() + 2 * B.nonZeros()));
    for (int k = 0; k < V.outerSize(); ++k)
        for (SpMat::InnerIterator it(V, k); it; ++it)
            trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    for (int k = 0; k < B.outerSize(); ++k)
        for (SpMat::InnerIterator it(B, k); it; ++it) {
            const int p = static_cast<int>(it.row());
            const int j = static_cast<int>(it.col());
            trip.emplace_back(j, nf + p, -it.value()); // -B^T
            trip.emplace_back(nf + p, j, it.value());  // B
        }
    SpMat K(nf + np, nf + np);
    K.setFromTriplets(trip.begin(), trip.end());
    return K;
}

// Vertex-lumped P1 mass (pressure-block preconditioner scale).
Eigen::VectorXd lumped_pressure_mass(const meshing::SieveMesh& mesh) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(static_cast<int>(mesh.n_vertices()));
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        const double share = mesh.cell_measure(static_cast<int>(c)) / (mesh.dim + 1);
        for (int k = 0; k <= mesh.dim; ++k) m[mesh.cells[c][static_cast<std::size_t>(k)]] += share;
    }
    return m;
}

// Block-diagonal preconditioned restarted GMRES on the coupled system.
class KrylovSaddleSolver {
public:
    KrylovSaddleSolver(const SpMat& K, const SpMat& A, const Eigen::VectorXd& mp,
                       const SolverConfig& cfg)
        : K_(K), nf_(static_cast<int>(A.rows())), mp_(mp), cfg_(cfg) {
        a_fact_.compute(A);
        if (a_fact_.info() != Eigen::Success)
            throw NumericalError("krylov: velocity-block factorization failed");
    }

    Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
        const int n = static_cast<int>(K_.rows());
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        const double bnorm = b.norm();
        if (bnorm == 0.0) return x;
        const int m = cfg_.krylov_restart;
        int total_iters = 0;

        while (total_iters < cfg_.krylov_max_iterations) {
            Eigen::VectorXd r = b - K_ * x;
            if (r.norm() / bnorm <= cfg_.linear_tolerance) return x;
            Eigen::VectorXd z = precond(r);
            const double beta = z.norm();
            std::vector<Eigen::VectorXd> V{z / beta};
            Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
            Eigen::VectorXd g = Eigen::VectorXd::Zero(m + 1);
            g[0] = beta;
            std::vector<double> cs(static_cast<std::size_t>(m)), sn(static_cast<std::size_t>(m));
            int k = 0;
            for (; k < m && total_iters < cfg_.krylov_max_iterations; ++k, ++total_iters) {
                Eigen::VectorXd w = precond(K_ * V[static_cast<std::size_t>(k)]);
                for (int i = 0; i <= k; ++i) {
                    H(i, k) = w.dot(V[static_cast<std::size_t>(i)]);
                    w -= H(i, k) * V[static_cast<std::size_t>(i)];
                }
                H(k + 1, k) = w.norm();
                if (H(k + 1, k) > 0.0) V.push_back(w / H(k + 1, k));
                // Givens rotations
                for (int i = 0; i < k; ++i) {
                    const double t = cs[static_cast<std::size_t>(i)] * H(i, k) + sn[static_cast<std::size_t>(i)] * H(i + 1, k);
                    H(i + 1, k) = -sn[static_cast<std::size_t>(i)] * H(i, k) + cs[static_cast<std::size_t>(i)] * H(i + 1, k);
                    H(i, k) = t;
                }
                const double denom = std::hypot(H(k, k), H(k + 1, k));
                cs[static_cast<std::size_t>(k)] = H(k, k) / denom;
                sn[static_cast<std::size_t>(k)] = H(k + 1, k) / denom;
                H(k, k) = denom;
                H(k + 1, k) = 0.0;
                g[k + 1] = -sn[static_cast<std::size_t>(k)] * g[k];
                g[k] = cs[static_cast<std::size_t>(k)] * g[k];
                if (std::abs(g[k + 1]) / beta < 0.05 * cfg_.linear_tolerance) {
                    ++k;
                    break;
                }
                if (H(k + 1, k) == 0.0 && V.size() == static_cast<std::size_t>(k + 1)) {
                    ++k;
                    break; // lucky breakdown
                }
            }
            // back substitution
            Eigen::VectorXd y = Eigen::VectorXd::Zero(k);
            for (int i = k - 1; i >= 0; --i) {
                double s = g[i];
                for (int j = i + 1; j < k; ++j) s -= H(i, j) * y[j];
                y[i] = s / H(i, i);
            }
            for (int i = 0; i < k; ++i) x += y[i] * V[static_cast<std::size_t>(i)];
        }
        Eigen::VectorXd r = b - K_ * x;
        if (r.norm() / bnorm <= cfg_.linear_tolerance) return x;
        throw NumericalError("krylov: GMRES failed to reach the linear tolerance (rel " +
                             std::to_string(r.norm() / bnorm) + ")");
    }

private:
    Eigen::VectorXd precond(const Eigen::VectorXd& r) const {
        Eigen::VectorXd z(r.size());
        z.head(nf_) = a_fact_.solve(r.head(nf_));
        const int np = static_cast<int>(r.size()) - nf_;
        for (int p = 0; p < np; ++p) z[nf_ + p] = r[nf_ + p] / mp_[p];
        return z;
    }

    const SpMat& K_;
    int nf_;
    Eigen::VectorXd mp_;
    const SolverConfig& cfg_;
    Eigen::SimplicialLDLT<SpMat> a_fact_;
};

Eigen::VectorXd solve_linear(const SpMat& K, const Eigen::VectorXd& rhs, const SpMat& A,
                             const meshing::SieveMesh& mesh, const SolverConfig& cfg) {
    if (cfg.linear == LinearBackend::SparseDirect) {
        Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
        lu.analyzePattern(K);
        lu.factorize(K);
        if (lu.info() != Eigen::Success)
            throw NumericalError("sparse direct solve: singular or failed factorization");
        Eigen::VectorXd x = lu.solve(rhs);
        if (lu.info() != Eigen::Success) throw NumericalError("sparse direct solve: backsolve failed");
        return x;
    }
    KrylovSaddleSolver ks(K, A, lumped_pressure_mass(mesh), cfg);
    return ks.solve(rhs);
}

} // namespace

// ============================================================================
// Stationary solver
// ============================================================================

FlowState solve_stationary(const DiscreteSystem& sys, const SolverConfig& cfg,
                           const FlowState* warm_start) {
    cfg.validate();
    const auto& space = *sys.space;
    const int nf = sys.n_free();
    const int np = sys.n_pressure();

    Eigen::VectorXd rhs(nf + np);
    rhs.head(nf) = sys.b_f - sys.b_drop;
    rhs.tail(np).setZero();
    const double scale = std::max(rhs.norm(), 1e-300);

    FlowState state;
    state.space = sys.space;
    state.p_minus = sys.p_minus;
    state.p_plus = sys.p_plus;
    state.mode = cfg.mode;
    state.u = Eigen::VectorXd::Zero(nf);
    state.phi = Eigen::VectorXd::Zero(np);
    if (warm_start && warm_start->u.size() == nf) {
        state.u = warm_start->u;
        state.phi = warm_start->phi;
    }

    auto residual = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& phi,
                        const SpMat* C) -> Eigen::VectorXd {
        Eigen::VectorXd r(nf + np);
        r.head(nf) = sys.A * u - sys.B.transpose() * phi - rhs.head(nf);
        if (C) r.head(nf) += (*C) * u;
        r.tail(np) = sys.B * u;
        return r;
    };

    if (cfg.mode == SolveMode::Stokes) {
        const SpMat K = saddle_matrix(sys.A, sys.B);
        const Eigen::VectorXd x = solve_linear(K, rhs, sys.A, space.mesh(), cfg);
        state.u = x.head(nf);
        state.phi = x.tail(np);
        const double rel = residual(state.u, state.phi, nullptr).norm() / scale;
        state.residual_history.push_back(rel);
        state.converged = rel <= std::max(cfg.tolerance, 1e-6);
        if (!state.converged)
            throw NumericalError("solve_stationary: Stokes residual " + std::to_string(rel));
        return state;
    }

    // Navier-Stokes: damped Picard, optional Newton finish
    double best = std::numeric_limits<double>::infinity();
    int bad_steps = 0;
    for (int it = 0; it <= cfg.max_iterations; ++it) {
        const SpMat C = fem::convection_matrix(space, state.u, sys.cell_quadrature_degree);
        const Eigen::VectorXd r = residual(state.u, state.phi, &C);
        const double rel = r.norm() / scale;
        state.residual_history.push_back(rel);
        if (rel <= cfg.tolerance) {
            state.converged = true;
            return state;
        }
        if (it == cfg.max_iterations) break;
        if (rel < best) {
            best = rel;
            bad_steps = 0;
        } else if (++bad_steps > 8 || !std::isfinite(rel)) {
            std::ostringstream os;
            os << "solve_stationary: nonlinear divergence, residuals";
            for (double h : state.residual_history) os << " " << h;
            throw NumericalError(os.str());
        }

        const bool newton = cfg.scheme == NonlinearScheme::Newton ||
                            (cfg.scheme == NonlinearScheme::PicardThenNewton &&
                             rel < cfg.newton_switch);
        if (newton) {
            SpMat V = sys.A;
            V += C;
            V += fem::convection_jacobian_extra(space, state.u, sys.cell_quadrature_degree);
            const SpMat K = saddle_matrix(V, sys.B);
            const Eigen::VectorXd d = solve_linear(K, -r, sys.A, space.mesh(), cfg);
            state.u += d.head(nf);
            state.phi += d.tail(np);
        } else {
            SpMat V = sys.A;
            V += C;
            const SpMat K = saddle_matrix(V, sys.B);
            const Eigen::VectorXd x = solve_linear(K, rhs, sys.A, space.mesh(), cfg);
            const double w = cfg.damping;
            state.u = (1.0 - w) * state.u + w * x.head(nf);
            state.phi = (1.0 - w) * state.phi + w * x.tail(np);
        }
    }
    std::ostringstream os;
    os << "solve_stationary: no convergence in " << cfg.max_iterations << " iterations, residuals";
    for (double h : state.residual_history) os << " " << h;
    throw NumericalError(os.str());
}

std::pair<FlowState, FlowState> solve_limit_problems(const geometry::PipeParams& pipe,
                                                     double p_minus, double p_plus,
                                                     const fem::BodyForce& f,
                                                     const meshing::MeshResolution& res,
                                                     const SolverConfig& cfg) {
    auto mesh_minus = std::make_shared<meshing::SieveMesh>(
        meshing::mesh_half_domain(pipe, meshing::Region::Minus, res));
    auto mesh_plus = std::make_shared<meshing::SieveMesh>(
        meshing::mesh_half_domain(pipe, meshing::Region::Plus, res));
    auto space_minus = std::make_shared<fem::FunctionSpace>(
        fem::build_space(mesh_minus, fem::BcProfile::HalfMinus));
    auto space_plus = std::make_shared<fem::FunctionSpace>(
        fem::build_space(mesh_plus, fem::BcProfile::HalfPlus));
    const auto sys_minus = fem::assemble(space_minus, p_minus, p_plus, f);
    const auto sys_plus = fem::assemble(space_plus, p_minus, p_plus, f);
    return {solve_stationary(sys_minus, cfg), solve_stationary(sys_plus, cfg)};
}

Eigen::VectorXd static_pressure(const FlowState& state) {
    const auto& sp = state.space->velocity;
    const Eigen::VectorXd full = state.u_full();
    Eigen::VectorXd p = state.phi;
    for (int v = 0; v < sp.n_vertices; ++v) {
        double mag2 = 0.0;
        for (int a = 0; a < sp.ncomp; ++a) {
            const double ua = full[sp.dof(v, a)];
            mag2 += ua * ua;
        }
        p[v] -= 0.5 * mag2;
    }
    return p;
}

double boundary_flux(const FlowState& state, meshing::FacetTag tag) {
    const auto& sp = state.space->velocity;
    const auto& mesh = *sp.mesh;
    const int zc = mesh.zaxis();
    const Eigen::VectorXd full = state.u_full();
    const int fdim = mesh.dim - 1;
    const quadrature::Rule rule =
        fdim == 1 ? quadrature::segment_rule(4) : quadrature::simplex_rule(2, 4);
    double flux = 0.0;
    for (const auto& f : mesh.boundary_facets) {
        if (f.tag != tag) continue;
        const fem::FacetGeom fg = fem::facet_geometry(mesh, f.v);
        const auto nodes = sp.facet_nodes(f.v);
        const int nn = static_cast<int>(nodes.size());
        std::vector<double> N(static_cast<std::size_t>(nn));
        for (std::size_t q = 0; q < rule.size(); ++q) {
            // P2 trace basis
            if (fdim == 1) {
                const double t = rule.points[q][0];
                N[0] = (1.0 - t) * (1.0 - 2.0 * t);
                N[1] = t * (2.0 * t - 1.0);
                N[2] = 4.0 * t * (1.0 - t);
            } else {
                fem::eval_p2(2, rule.points[q].data(), N.data(), nullptr);
            }
            double uz = 0.0;
            for (int i = 0; i < nn; ++i)
                uz += full[sp.dof(nodes[static_cast<std::size_t>(i)], zc)] * N[static_cast<std::size_t>(i)];
            flux += rule.weights[q] * fg.measure_jac * uz;
        }
    }
    return flux;
}

} // namespace sieveflow::solve
