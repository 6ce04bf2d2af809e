#pragma once

#include <array>
#include <string>
#include <vector>

#include "sieveflow/errors.hpp"

namespace sieveflow::geometry {

// ============================================================================
// Domain parameters
// ============================================================================

/// Straight pipe of cross-section radius R spanning z in (-h, h).
/// dim = 3 is the cylindrical geometry; dim = 2 is the channel analogue
/// (-R, R) x (-h, h) with the sieve on the segment z = 0.
struct PipeParams {
    double R = 1.0;
    double h = 2.0;
    int dim = 2;

    void validate() const;
    /// Cross-section measure: pi R^2 (dim 3) or 2R (dim 2).
    double section_measure() const;
    /// |Omega| = section_measure * 2h.
    double volume() const;
};

/// Perforation scale parameters. The hole scale is r_eps = exp(-eps^-alpha);
/// holes live in guard disks of radius delta0 * r_eps, spacing disks of
/// radius delta1 * eps.
struct PerforationParams {
    double epsilon = 0.5;
    double alpha = 1.0;
    double delta0 = 1.0;
    double delta1 = 0.3;
    double epsilon_star = 0.99;

    void validate() const;
    double r_eps() const;
};

/// Scale factor of the perforations: exp(-epsilon^-alpha).
/// Strictly increasing in epsilon and strictly decreasing in alpha for
/// epsilon < 1.
double hole_radius(double epsilon, double alpha);

/// Upper bound on the admissible number of holes: floor((R / (delta1 eps))^2).
long long max_hole_count(double R, double delta1, double epsilon);

// ============================================================================
// Layout
// ============================================================================

enum class LayoutStrategy {
    SquareLattice,
    HexLattice,
    Explicit,
};

LayoutStrategy layout_strategy_from_string(const std::string& s);
std::string to_string(LayoutStrategy s);

/// Hole centers and radii in the cross-section plane. In dim 2 the centers
/// are scalars stored as (x, 0) and a "disk" is the interval
/// (x - rho, x + rho) on the sieve segment.
struct PerforationLayout {
    PipeParams pipe;
    PerforationParams params;
    std::vector<std::array<double, 2>> centers;
    std::vector<double> hole_radii;

    std::size_t hole_count() const { return centers.size(); }
    double r_eps() const { return params.r_eps(); }
};

/// A single violated layout constraint. Indices refer to the offending
/// hole(s); index_b is -1 for per-hole or global constraints.
struct LayoutViolation {
    std::string constraint;
    int index_a = -1;
    int index_b = -1;
    std::string detail;
};

struct LayoutValidation {
    std::vector<LayoutViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

/// Place hole centers by the requested strategy. Lattice strategies use a
/// pitch of 2 delta1 eps times (1 + pitch_margin), clipped to the strict
/// interior {|xi| + delta1 eps < R}; holes are disks of radius
/// delta0 r_eps / 2. For Explicit, centers (and optionally radii) are caller
/// supplied and validated. Throws EmptyLayoutError when no center fits and
/// ParameterError when an explicit layout is invalid.
PerforationLayout generate_layout(const PipeParams& pipe,
                                  const PerforationParams& params,
                                  LayoutStrategy strategy,
                                  const std::vector<std::array<double, 2>>& explicit_centers = {},
                                  const std::vector<double>& explicit_radii = {},
                                  double pitch_margin = 0.05);

/// Check every layout invariant; violations are report entries, not errors.
LayoutValidation validate_layout(const PerforationLayout& layout);

// ============================================================================
// Serialization (JSON document with keys R, h, dim, epsilon, alpha, delta0,
// delta1, epsilon_star, centers, hole_radii)
// ============================================================================

std::string layout_to_json(const PerforationLayout& layout);
PerforationLayout layout_from_json(const std::string& text);
void save_layout(const PerforationLayout& layout, const std::string& path);
PerforationLayout load_layout(const std::string& path);

} // namespace sieveflow::geometry
