#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "sieveflow/assemble.hpp"

namespace sieveflow::solve {

using fem::DiscreteSystem;
using fem::FunctionSpace;

// ============================================================================
// Configuration
// ============================================================================

enum class SolveMode { Stokes, NavierStokes };
enum class NonlinearScheme { Picard, Newton, PicardThenNewton };
enum class LinearBackend { SparseDirect, Krylov };

struct SolverConfig {
    SolveMode mode = SolveMode::NavierStokes;
    NonlinearScheme scheme = NonlinearScheme::PicardThenNewton;
    double tolerance = 1e-8;       // relative nonlinear residual
    int max_iterations = 60;
    double damping = 0.7;          // Picard damping in (0, 1]
    double newton_switch = 1e-3;   // PicardThenNewton handoff
    LinearBackend linear = LinearBackend::SparseDirect;
    double linear_tolerance = 1e-10;
    int krylov_restart = 150;
    int krylov_max_iterations = 8000;

    void validate() const;
};

SolveMode solve_mode_from_string(const std::string& s);
NonlinearScheme scheme_from_string(const std::string& s);
LinearBackend backend_from_string(const std::string& s);
std::string to_string(SolveMode m);
std::string to_string(NonlinearScheme s);
std::string to_string(LinearBackend b);

// ============================================================================
// FlowState
// ============================================================================

/// Converged discrete state: free velocity coefficients, Bernoulli-pressure
/// vertex coefficients, the data that produced them, and the residual
/// history. Constrained velocity dofs are exactly zero by construction.
struct FlowState {
    std::shared_ptr<const FunctionSpace> space;
    Eigen::VectorXd u;   // free velocity dofs
    Eigen::VectorXd phi; // pressure vertex dofs
    double p_minus = 0.0;
    double p_plus = 0.0;
    SolveMode mode = SolveMode::Stokes;
    std::vector<double> residual_history;
    bool converged = false;

    Eigen::VectorXd u_full() const { return fem::expand(space->velocity, u); }
    /// ||grad u|| over the whole fluid domain.
    double energy() const { return std::sqrt(fem::grad_norm_sq(space->velocity, u_full())); }
};

// ============================================================================
// Solvers
// ============================================================================

/// Solve the assembled system. Stokes mode solves the saddle problem once;
/// NavierStokes runs damped Picard in rotational form, optionally switching
/// to Newton near convergence. Throws NumericalError on nonlinear divergence
/// (with the residual history in the message) or singular linear solves.
FlowState solve_stationary(const DiscreteSystem& sys, const SolverConfig& cfg,
                           const FlowState* warm_start = nullptr);

/// Solve the two decoupled half-domain limit problems (no-slip on the full
/// section) and return the (minus, plus) states.
std::pair<FlowState, FlowState> solve_limit_problems(const geometry::PipeParams& pipe,
                                                     double p_minus, double p_plus,
                                                     const fem::BodyForce& f,
                                                     const meshing::MeshResolution& res,
                                                     const SolverConfig& cfg);

/// Static pressure p = Phi - |u|^2/2 evaluated at the pressure vertices.
Eigen::VectorXd static_pressure(const FlowState& state);

/// Flux through a tagged boundary (integral of u . k over Inlet or Outlet).
double boundary_flux(const FlowState& state, meshing::FacetTag tag);

} // namespace sieveflow::solve
