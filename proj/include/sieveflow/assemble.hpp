#pragma once

#include <functional>
#include <memory>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sieveflow/space.hpp"

namespace sieveflow::fem {

using SpMat = Eigen::SparseMatrix<double>;

// ============================================================================
// Body force
// ============================================================================

/// Body force given as a named built-in, a closed-form expression, or a
/// per-vertex sampled field (P1-interpolated).
struct BodyForce {
    enum class Kind { Zero, Constant, Analytic, VertexSampled };
    Kind kind = Kind::Zero;
    std::array<double, 3> value{0.0, 0.0, 0.0};
    std::function<std::array<double, 3>(const std::array<double, 3>&)> fn;
    std::vector<std::array<double, 3>> samples;
    int min_quadrature_degree = 0;

    static BodyForce zero() { return {}; }
    static BodyForce constant(const std::array<double, 3>& v);
    static BodyForce analytic(std::function<std::array<double, 3>(const std::array<double, 3>&)> f,
                              int min_degree);
    static BodyForce sampled(std::vector<std::array<double, 3>> vertex_values);
    bool is_zero() const { return kind == Kind::Zero; }
};

// ============================================================================
// Discrete operators
// ============================================================================

/// Discrete operators of the pressure-drop problem over the constrained
/// velocity space: A (viscous), B (divergence pairing against P1 pressure),
/// b_drop (boundary pairing of the prescribed Bernoulli pressures), b_f.
/// Velocity rows read A u + C(u) u - B^T Phi = b_f - b_drop, pressure rows
/// B u = 0.
struct DiscreteSystem {
    std::shared_ptr<const FunctionSpace> space;
    SpMat A;
    SpMat B;
    Eigen::VectorXd b_drop;
    Eigen::VectorXd b_f;
    double p_minus = 0.0;
    double p_plus = 0.0;
    BodyForce force;
    int cell_quadrature_degree = 5;
    int facet_quadrature_degree = 4;

    int n_free() const { return space->velocity.n_free; }
    int n_pressure() const { return space->n_pressure; }
};

DiscreteSystem assemble(std::shared_ptr<const FunctionSpace> space, double p_minus,
                        double p_plus, const BodyForce& f, int cell_degree = 5,
                        int facet_degree = 4);

/// Picard convection operator in rotational form: entries
/// \int [grad w - (grad w)^T]_{ab} N_j N_i, exactly skew-symmetric over the
/// constrained space for any quadrature.
SpMat convection_matrix(const FunctionSpace& space, const Eigen::VectorXd& w_free,
                        int degree = 5);

/// Derivative of C(u) u with respect to u minus C(u) itself (the extra
/// Newton term).
SpMat convection_jacobian_extra(const FunctionSpace& space, const Eigen::VectorXd& u_free,
                                int degree = 5);

// ============================================================================
// Generic kernels (used by the analysis module as well)
// ============================================================================

/// Stiffness over free dofs of an FeSpace (component-blocked).
SpMat stiffness_matrix(const FeSpace& sp);
/// Mass over free dofs.
SpMat mass_matrix(const FeSpace& sp);
/// Mass over the mid-plane z = 0 (Sieve facets plus hole facets), free dofs.
SpMat midplane_mass(const FeSpace& sp, int degree = 4);
/// Divergence pairing: rows = pressure vertices, cols = free velocity dofs.
SpMat divergence_matrix(const FunctionSpace& space);
/// b[(i,z)] = p_plus \int_{Outlet} N_i - p_minus \int_{Inlet} N_i.
Eigen::VectorXd drop_load(const FunctionSpace& space, double p_minus, double p_plus,
                          int degree = 4);
Eigen::VectorXd body_load(const FunctionSpace& space, const BodyForce& f, int degree = 5);

// ============================================================================
// Coefficient-vector helpers and norms
// ============================================================================

/// Expand free dofs to the full nodal vector (constrained entries zero).
Eigen::VectorXd expand(const FeSpace& sp, const Eigen::VectorXd& free_values);
Eigen::VectorXd restrict_free(const FeSpace& sp, const Eigen::VectorXd& full_values);

/// ||grad u||^2 over all cells or one region.
double grad_norm_sq(const FeSpace& sp, const Eigen::VectorXd& full_values);
double grad_norm_sq_region(const FeSpace& sp, const Eigen::VectorXd& full_values,
                           meshing::Region region);
double l2_norm_sq(const FeSpace& sp, const Eigen::VectorXd& full_values);
double l2_norm_sq_region(const FeSpace& sp, const Eigen::VectorXd& full_values,
                         meshing::Region region);

/// P1 field (vertex values) integrals per region.
double p1_integral_region(const SieveMesh& mesh, const Eigen::VectorXd& vertex_values,
                          meshing::Region region);
double p1_l2_norm_sq_region(const SieveMesh& mesh, const Eigen::VectorXd& vertex_values,
                            meshing::Region region);
double region_volume(const SieveMesh& mesh, meshing::Region region);

} // namespace sieveflow::fem
