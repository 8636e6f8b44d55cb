#include "ri/partition.hpp"

#include <stdexcept>

#include "ri/random_sets.hpp"

namespace ri {

namespace {

/// sum_i dS/dp_i(p) * dp_i/dt evaluated with the division-free derivative.
double density_from_derivatives(const SetFamily& family,
                                const std::vector<double>& p,
                                const std::vector<double>& dpdt) {
    auto dist = RandomSetDistribution<double>::build(p);
    double acc = 0.0;
    for (int i = 0; i < family.n(); ++i)
        if (dpdt[i] != 0.0)
            acc += dist.partial_derivative(family, i) * dpdt[i];
    return acc;
}

} // namespace

PartitionDensity::PartitionDensity(const SetFamily& family, MonotoneCurve curve)
    : family_(&family), curve_(std::move(curve)) {
    if (curve_.n() != family.n())
        throw std::invalid_argument("curve dimension does not match the family");
    lambda_ = lambda_table(family);
    const int n = family.n();
    increment_means_.reserve(n);
    for (int a = 1; a <= n; ++a) {
        std::int64_t total = 0;
        for (int i = 0; i < n; ++i)
            total += lambda_[a - 1][i];
        increment_means_.push_back(beta_exact(a, n) * Rational(total));
    }
    if (curve_.is_diagonal()) {
        diagonal_coeff_.reserve(n);
        for (int a = 1; a <= n; ++a)
            diagonal_coeff_.push_back(increment_means_[a - 1] / beta_exact(a, n));
    }
}

double PartitionDensity::operator()(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("density argument outside [0, 1]");
    const int n = family_->n();
    if (curve_.is_diagonal()) {
        // Bernstein form with exact coefficients.
        double acc = 0.0;
        for (int a = 1; a <= n; ++a) {
            double basis = 1.0;
            for (int k = 0; k < a - 1; ++k)
                basis *= t;
            for (int k = 0; k < n - a; ++k)
                basis *= 1.0 - t;
            acc += diagonal_coeff_[a - 1].to_double() * basis;
        }
        return acc;
    }
    std::vector<double> p, dpdt;
    curve_.evaluate(t, p, dpdt);
    return density_from_derivatives(*family_, p, dpdt);
}

const std::vector<Rational>& PartitionDensity::bernstein_coefficients() const {
    if (!has_exact_form())
        throw std::logic_error("exact coefficients exist only for the diagonal curve");
    return diagonal_coeff_;
}

Rational PartitionDensity::exact_integral() const {
    if (!has_exact_form())
        throw std::logic_error("exact integral exists only for the diagonal curve");
    Rational acc;
    for (const auto& r : increment_means_)
        acc += r;
    return acc;
}

double PartitionDensity::integrate(const QuadratureOptions& opts) const {
    if (has_exact_form())
        return exact_integral().to_double();
    return integrate_piecewise([this](double t) { return (*this)(t); },
                               curve_.breakpoints(), opts);
}

double partition_density_at(const SetFamily& family, const MonotoneCurve& curve,
                            double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("density argument outside [0, 1]");
    if (curve.n() != family.n())
        throw std::invalid_argument("curve dimension does not match the family");
    std::vector<double> p, dpdt;
    curve.evaluate(t, p, dpdt);
    return density_from_derivatives(family, p, dpdt);
}

PartitionDensity diagonal_density(const SetFamily& family) {
    return PartitionDensity(family, MonotoneCurve::diagonal(family.n()));
}

Rational shapley_via_integral(const SetFamily& family, int i) {
    const int n = family.n();
    if (i < 0 || i >= n)
        throw std::out_of_range("set index out of range");
    const auto lambda = lambda_table(family);
    // Integrate the diagonal derivative polynomial term by term; each basis
    // integral is an exact Beta value.
    Rational acc;
    for (int a = 1; a <= n; ++a)
        acc += Rational(lambda[a - 1][i]) * beta_exact(a, n);
    return acc;
}

} // namespace ri
