#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ri {

class QuadratureError : public std::runtime_error {
  public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// Gauss-Legendre rule on [-1, 1]. Nodes and weights via Newton iteration on
/// the Legendre recurrence.
class GaussLegendre {
  public:
    explicit GaussLegendre(int points);

    int points() const { return int(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    /// The shared order-64 rule used throughout.
    static const GaussLegendre& order64();

  private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

struct QuadratureOptions {
    double rel_tol = 1e-12;
    int max_panels = 1024;
};

inline double value_norm(double v) { return std::abs(v); }
inline double value_norm(const std::complex<double>& v) { return std::abs(v); }

namespace detail {

template <class F>
auto panel_sum(F&& f, double a, double b, int panels) {
    const auto& rule = GaussLegendre::order64();
    const double h = (b - a) / panels;
    using R = decltype(f(a));
    R acc{};
    bool first = true;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (int k = 0; k < rule.points(); ++k) {
            const double x = mid + 0.5 * h * rule.nodes()[k];
            auto term = f(x) * (0.5 * h * rule.weights()[k]);
            if (first) {
                acc = term;
                first = false;
            } else {
                acc += term;
            }
        }
    }
    return acc;
}

} // namespace detail

/// Integrates f over [a, b] with panel doubling until two successive
/// estimates agree to rel_tol (relative to max(1, |I|)). Works for any value
/// type with +=, * double and value_norm. Throws QuadratureError when the
/// panel budget runs out.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureOptions& opts = {}) {
    auto prev = detail::panel_sum(f, a, b, 1);
    for (int panels = 2; panels <= opts.max_panels; panels *= 2) {
        auto cur = detail::panel_sum(f, a, b, panels);
        auto diff = cur;
        diff += prev * (-1.0);
        const double scale = std::max(1.0, value_norm(cur));
        if (value_norm(diff) <= opts.rel_tol * scale)
            return cur;
        prev = cur;
    }
    throw QuadratureError("quadrature failed to converge within " +
                          std::to_string(opts.max_panels) + " panels");
}

/// Same, but the interval is pre-split at the given breakpoints (used for
/// piecewise-smooth integrands such as polyline curves).
template <class F>
auto integrate_piecewise(F&& f, const std::vector<double>& breakpoints,
                         const QuadratureOptions& opts = {}) {
    if (breakpoints.size() < 2)
        throw std::invalid_argument("need at least two breakpoints");
    auto acc = integrate(f, breakpoints[0], breakpoints[1], opts);
    for (size_t k = 1; k + 1 < breakpoints.size(); ++k)
        acc += integrate(f, breakpoints[k], breakpoints[k + 1], opts);
    return acc;
}

} // namespace ri
