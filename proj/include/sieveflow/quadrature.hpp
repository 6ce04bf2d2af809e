#pragma once

#include <array>
#include <vector>

namespace sieveflow::quadrature {

/// Quadrature rule on a reference element. For the unit simplex in dim d
/// (vertices at the origin and the unit coordinate vectors) the weights sum
/// to 1/d!; for the unit segment [0,1] they sum to 1.
struct Rule {
    int dim = 0;
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;

    std::size_t size() const { return points.size(); }
};

/// Grundmann-Moller rule on the unit simplex, exact for polynomials of the
/// requested total degree (dim 2 = triangle, dim 3 = tetrahedron).
Rule simplex_rule(int dim, int degree);

/// Gauss-Legendre rule on [0,1], exact for the requested degree.
Rule segment_rule(int degree);

} // namespace sieveflow::quadrature
