#include "sieveflow/quadrature.hpp"

#include <cmath>
#include <cstdint>

#include "sieveflow/errors.hpp"

namespace sieveflow::quadrature {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// All compositions of total into nparts nonnegative parts, lexicographic.
void compositions(int total, int nparts, std::vector<std::vector<int>>& out) {
    std::vector<int> part(static_cast<std::size_t>(nparts), 0);
    // iterative odometer
    std::vector<int> rem(static_cast<std::size_t>(nparts), 0);
    // recursive lambda is clearer here
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == nparts - 1) {
            part[static_cast<std::size_t>(pos)] = left;
            out.push_back(part);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            part[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, left - v);
        }
    };
    rec(rec, 0, total);
}

} // namespace

Rule simplex_rule(int dim, int degree) {
    if (dim != 2 && dim != 3) throw Error("simplex_rule: dim must be 2 or 3");
    if (degree < 1) degree = 1;
    const int s = (degree % 2 == 0) ? degree / 2 : (degree - 1) / 2; // rule degree 2s+1 >= degree
    const int d = 2 * s + 1;

    Rule rule;
    rule.dim = dim;
    for (int i = 0; i <= s; ++i) {
        const double num = std::pow(static_cast<double>(d + dim - 2 * i), d);
        const double den = factorial(i) * factorial(d + dim - i);
        const double w = ((i % 2 == 0) ? 1.0 : -1.0) * std::pow(2.0, -2 * s) * num / den;
        std::vector<std::vector<int>> parts;
        compositions(s - i, dim + 1, parts);
        for (const auto& k : parts) {
            // barycentric coordinates (2k+1)/(d+dim-2i); reference coords drop bary 0
            std::array<double, 3> x{0.0, 0.0, 0.0};
            for (int c = 0; c < dim; ++c)
                x[static_cast<std::size_t>(c)] =
                    (2.0 * k[static_cast<std::size_t>(c + 1)] + 1.0) / (d + dim - 2 * i);
            rule.points.push_back(x);
            rule.weights.push_back(w);
        }
    }
    return rule;
}

Rule segment_rule(int degree) {
    if (degree < 1) degree = 1;
    const int n = (degree + 2) / 2; // n-point Gauss exact to degree 2n-1

    // Newton iteration on Legendre P_n over [-1,1].
    Rule rule;
    rule.dim = 1;
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, p1 = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.points.push_back({0.5 * (x + 1.0), 0.0, 0.0}); // map to [0,1]
        rule.weights.push_back(0.5 * w);
    }
    return rule;
}

} // namespace sieveflow::quadrature
