#include "ri/quadrature.hpp"

#include <numbers>

namespace ri {

GaussLegendre::GaussLegendre(int points) {
    if (points < 1)
        throw std::invalid_argument("quadrature order must be positive");
    const int n = points;
    nodes_.resize(n);
    weights_.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton iteration from the Chebyshev-like initial guess.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15)
                break;
        }
        nodes_[i] = -z;
        nodes_[n - 1 - i] = z;
        weights_[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        weights_[n - 1 - i] = weights_[i];
    }
}

const GaussLegendre& GaussLegendre::order64() {
    static const GaussLegendre rule(64);
    return rule;
}

} // namespace ri
