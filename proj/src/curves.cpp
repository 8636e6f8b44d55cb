#include "ri/curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ri/index_set.hpp"

namespace ri {

namespace {
constexpr double kEndpointTol = 1e-12;
}

MonotoneCurve MonotoneCurve::diagonal(int n) {
    check_ground_size(n);
    if (n < 1)
        throw std::invalid_argument("curve dimension must be positive");
    return MonotoneCurve(Kind::Diagonal, n);
}

MonotoneCurve MonotoneCurve::power(std::vector<double> gamma) {
    const int n = int(gamma.size());
    check_ground_size(n);
    if (n < 1)
        throw std::invalid_argument("curve dimension must be positive");
    for (double g : gamma)
        if (!(g > 0.0))
            throw std::invalid_argument(
                "power-curve exponents must be positive so that p_i(0) = 0");
    MonotoneCurve c(Kind::Power, n);
    c.gamma_ = std::move(gamma);
    return c;
}

MonotoneCurve MonotoneCurve::polyline(std::vector<double> t,
                                      std::vector<std::vector<double>> p) {
    const int n = int(p.size());
    check_ground_size(n);
    if (n < 1)
        throw std::invalid_argument("curve dimension must be positive");
    if (t.size() < 2)
        throw std::invalid_argument("polyline needs at least two knots");
    if (std::abs(t.front()) > kEndpointTol || std::abs(t.back() - 1.0) > kEndpointTol)
        throw std::invalid_argument("polyline knots must start at 0 and end at 1");
    for (size_t k = 1; k < t.size(); ++k)
        if (!(t[k] > t[k - 1]))
            throw std::invalid_argument("polyline knots must be strictly increasing");
    for (int i = 0; i < n; ++i) {
        if (p[i].size() != t.size())
            throw std::invalid_argument("polyline component " + std::to_string(i + 1) +
                                        " has wrong sample count");
        if (std::abs(p[i].front()) > kEndpointTol ||
            std::abs(p[i].back() - 1.0) > kEndpointTol)
            throw std::invalid_argument("polyline components must run from 0 to 1");
        for (size_t k = 1; k < p[i].size(); ++k)
            if (p[i][k] < p[i][k - 1])
                throw std::invalid_argument("polyline component " +
                                            std::to_string(i + 1) +
                                            " is not non-decreasing");
    }
    MonotoneCurve c(Kind::Polyline, n);
    c.knots_ = std::move(t);
    c.samples_ = std::move(p);
    c.knots_.front() = 0.0;
    c.knots_.back() = 1.0;
    return c;
}

void MonotoneCurve::evaluate(double t, std::vector<double>& p,
                             std::vector<double>& dpdt) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("curve parameter outside [0, 1]");
    p.resize(n_);
    dpdt.resize(n_);
    switch (kind_) {
    case Kind::Diagonal:
        std::fill(p.begin(), p.end(), t);
        std::fill(dpdt.begin(), dpdt.end(), 1.0);
        return;
    case Kind::Power:
        for (int i = 0; i < n_; ++i) {
            p[i] = std::pow(t, gamma_[i]);
            dpdt[i] = t == 0.0 && gamma_[i] < 1.0
                          ? 0.0 // derivative unbounded at 0; quadrature never lands here
                          : gamma_[i] * std::pow(t, gamma_[i] - 1.0);
        }
        return;
    case Kind::Polyline: {
        auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
        size_t seg = std::min(size_t(std::max<std::ptrdiff_t>(
                                  1, it - knots_.begin())),
                              knots_.size() - 1) -
                     1;
        const double t0 = knots_[seg], t1 = knots_[seg + 1];
        const double w = (t - t0) / (t1 - t0);
        for (int i = 0; i < n_; ++i) {
            const double a = samples_[i][seg], b = samples_[i][seg + 1];
            p[i] = a + w * (b - a);
            dpdt[i] = (b - a) / (t1 - t0);
        }
        return;
    }
    }
    throw std::logic_error("unreachable");
}

std::vector<double> MonotoneCurve::breakpoints() const {
    if (kind_ == Kind::Polyline)
        return knots_;
    return {0.0, 1.0};
}

} // namespace ri
