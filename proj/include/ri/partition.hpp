#pragma once

#include <vector>

#include "ri/curves.hpp"
#include "ri/quadrature.hpp"
#include "ri/rational.hpp"
#include "ri/set_family.hpp"
#include "ri/shapley.hpp"

namespace ri {

/// Density of the mean union cardinality along a monotone curve: its integral
/// over [0, 1] recovers the cardinality of the full union for every curve.
class PartitionDensity {
  public:
    PartitionDensity(const SetFamily& family, MonotoneCurve curve);

    const SetFamily& family() const { return *family_; }
    const MonotoneCurve& curve() const { return curve_; }

    /// Density value at t; non-negative on [0, 1].
    double operator()(double t) const;

    bool has_exact_form() const { return curve_.is_diagonal(); }

    /// Diagonal case only: the coefficient c_a = r_a / B(a, n-a+1) on the
    /// Bernstein-style basis t^(a-1) (1-t)^(n-a), held exactly.
    const std::vector<Rational>& bernstein_coefficients() const;

    /// Diagonal case only: the integral via exact Beta integrals, which
    /// telescopes to sum_a r_a.
    Rational exact_integral() const;

    /// Numeric integral over [0, 1]; equals the full union cardinality.
    double integrate(const QuadratureOptions& opts = {}) const;

  private:
    const SetFamily* family_;
    MonotoneCurve curve_;
    std::vector<Rational> diagonal_coeff_; // filled for the diagonal kind
    std::vector<Rational> increment_means_;
    std::vector<std::vector<std::int64_t>> lambda_;
};

/// Density at a point without building the object (validates t in [0, 1]).
double partition_density_at(const SetFamily& family, const MonotoneCurve& curve,
                            double t);

/// The diagonal (equal probability) density in closed form.
PartitionDensity diagonal_density(const SetFamily& family);

/// Per-set share of the union cardinality written as the exact Beta integral
/// of the diagonal directional derivative; agrees exactly with the
/// permutation form.
Rational shapley_via_integral(const SetFamily& family, int i);

} // namespace ri
