#include "ri/resolution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ri {

namespace {
constexpr double kIdentityTol = 1e-10;
constexpr double kUpperIncrementTol = 1e-9;
constexpr double kZeroWeight = 1e-14;

double pow_int(double base, int e) {
    double acc = 1.0;
    for (int k = 0; k < e; ++k)
        acc *= base;
    return acc;
}
} // namespace

TruncatedBinomial::TruncatedBinomial(int n, int k) : n_(n), k_(k) {
    if (n < 0 || k < 0 || k > n)
        throw std::invalid_argument("truncated binomial needs 0 <= k <= n");
}

double TruncatedBinomial::operator()(double t) const {
    double acc = 0.0;
    for (int j = 0; j <= k_; ++j)
        acc += rational_binomial(n_, j).to_double() * pow_int(t, j) *
               pow_int(1.0 - t, n_ - j);
    return acc;
}

Rational TruncatedBinomial::integral() const {
    // Term-by-term Beta integrals: C(n,j) * B(j+1, n-j+1) = 1/(n+1) each.
    Rational acc;
    for (int j = 0; j <= k_; ++j)
        acc += rational_binomial(n_, j) * beta_exact(j + 1, n_ + 1);
    return acc;
}

ResolutionKernel ResolutionKernel::build(const DressedOperators& ops) {
    const int d = ops.dimension;
    const int n = ops.count;
    ResolutionKernel kernel;
    kernel.d_ = d;
    kernel.n_ = n;

    // Increments above level d must vanish; a nonzero tail means some
    // d-subset of the generating vectors was dependent, and the level-d
    // truncation below would no longer resolve the identity.
    for (int a = d + 1; a <= n; ++a)
        for (int i = 0; i < n; ++i) {
            const double tail = ops.increments[a - 1][i].frobenius_norm();
            if (tail > kUpperIncrementTol)
                throw std::invalid_argument(
                    "span increments above level d are nonzero (" +
                    std::to_string(tail) +
                    "); the projector family is inconsistent with a generic "
                    "pre-basis");
        }

    kernel.r_.reserve(d);
    kernel.betas_.reserve(d);
    for (int a = 1; a <= d; ++a) {
        const Rational beta = beta_exact(a, n);
        Matrix r = Matrix::zero(d, d);
        for (int i = 0; i < n; ++i)
            r += ops.increments[a - 1][i];
        r *= beta.to_double();
        kernel.r_.push_back(std::move(r));
        kernel.betas_.push_back(beta);
        kernel.inv_beta_.push_back(1.0 / beta.to_double());
    }

    if (kernel.identity_residual().frobenius_norm() > kIdentityTol)
        throw std::invalid_argument(
            "level increments do not resolve the identity; upstream projector "
            "family is inconsistent");
    return kernel;
}

Matrix ResolutionKernel::identity_residual() const {
    Matrix acc = Matrix::zero(d_, d_);
    for (const auto& r : r_)
        acc += r;
    return acc - Matrix::identity(d_);
}

Matrix ResolutionKernel::diagonal_resolution(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("probability argument outside [0, 1]");
    Matrix acc = Matrix::zero(d_, d_);
    for (int a = 1; a <= d_; ++a)
        acc += r_[a - 1] *
               (inv_beta_[a - 1] * pow_int(t, a - 1) * pow_int(1.0 - t, n_ - a));
    return acc;
}

double ResolutionKernel::diagonal_trace(double t) const {
    return n_ * TruncatedBinomial(n_ - 1, d_ - 1)(t);
}

Matrix ResolutionKernel::semiaxis_kernel(double x) const {
    if (!(x >= 0.0))
        throw std::domain_error("semi-axis argument must be non-negative");
    const double denom = std::pow(1.0 + x, n_ + 1);
    Matrix acc = Matrix::zero(d_, d_);
    for (int a = 1; a <= d_; ++a)
        acc += r_[a - 1] * (inv_beta_[a - 1] * pow_int(x, a - 1) / denom);
    return acc;
}

Matrix ResolutionKernel::semiaxis_integral(const QuadratureOptions& opts) const {
    // x = t/(1-t) maps [0, inf) back to [0, 1); the substituted integrand is
    // a matrix polynomial in t.
    return integrate(
        [this](double t) {
            const double x = t / (1.0 - t);
            const double jac = 1.0 / ((1.0 - t) * (1.0 - t));
            return semiaxis_kernel(x) * jac;
        },
        0.0, 1.0, opts);
}

Matrix curve_resolution(const ProjectorFamily& family, const MonotoneCurve& curve,
                        double t) {
    if (curve.n() != family.count())
        throw std::invalid_argument("curve dimension does not match the family");
    std::vector<double> p, dpdt;
    curve.evaluate(t, p, dpdt);
    Matrix acc = Matrix::zero(family.dimension(), family.dimension());
    for (int i = 0; i < family.count(); ++i)
        if (dpdt[i] != 0.0)
            acc += random_projector_derivative(family, p, i) * dpdt[i];
    return acc;
}

Matrix curve_resolution_integral(const ProjectorFamily& family,
                                 const MonotoneCurve& curve,
                                 const QuadratureOptions& opts) {
    return integrate_piecewise(
        [&](double t) { return curve_resolution(family, curve, t); },
        curve.breakpoints(), opts);
}

StateExpansion::StateExpansion(const ResolutionKernel& kernel, CVector s)
    : kernel_(&kernel), s_(std::move(s)) {
    if (int(s_.size()) != kernel.dimension())
        throw std::invalid_argument("state dimension does not match the kernel");
    if (std::abs(vector_norm(s_) - 1.0) > 1e-8)
        throw std::invalid_argument("state must be normalized");
}

CVector StateExpansion::component(double x) const {
    return matvec(kernel_->semiaxis_kernel(x), s_);
}

double StateExpansion::weight(double x) const {
    const CVector c = component(x);
    return inner(c, c).real();
}

std::optional<CVector> StateExpansion::normalized_component(double x) const {
    const CVector c = component(x);
    const double norm2 = inner(c, c).real();
    if (norm2 <= kZeroWeight)
        return std::nullopt;
    CVector out = c;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& v : out)
        v *= inv;
    return out;
}

CVector StateExpansion::integral(const QuadratureOptions& opts) const {
    const Matrix total = integrate(
        [this](double t) {
            const double x = t / (1.0 - t);
            const double jac = 1.0 / ((1.0 - t) * (1.0 - t));
            const CVector c = component(x);
            Matrix col(int(c.size()), 1);
            for (int i = 0; i < int(c.size()); ++i)
                col(i, 0) = c[i] * jac;
            return col;
        },
        0.0, 1.0, opts);
    CVector out(total.rows());
    for (int i = 0; i < total.rows(); ++i)
        out[i] = total(i, 0);
    return out;
}

OperatorRep::OperatorRep(const ResolutionKernel& kernel, Matrix theta)
    : kernel_(&kernel), theta_(std::move(theta)) {
    const int d = kernel.dimension();
    if (theta_.rows() != d || theta_.cols() != d)
        throw std::invalid_argument("operator dimension does not match the kernel");
    coeff_ = Matrix(d, d);
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b)
            coeff_(a - 1, b - 1) =
                (kernel.increment_means()[a - 1] * theta_ *
                 kernel.increment_means()[b - 1])
                    .trace();
    marginal_coeff_.resize(d);
    for (int b = 1; b <= d; ++b)
        marginal_coeff_[b - 1] = (theta_ * kernel.increment_means()[b - 1]).trace();
}

OperatorRep OperatorRep::for_density(const ResolutionKernel& kernel, Matrix rho) {
    if (!is_hermitian(rho, 1e-10))
        throw std::invalid_argument("density matrix must be Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10 ||
        std::abs(rho.trace().imag()) > 1e-10)
        throw std::invalid_argument("density matrix must have unit trace");
    if (!is_positive_semidefinite(rho))
        throw std::invalid_argument("density matrix must be positive semi-definite");
    return OperatorRep(kernel, std::move(rho));
}

Matrix OperatorRep::point(double x1, double x2) const {
    return kernel_->semiaxis_kernel(x1) * theta_ * kernel_->semiaxis_kernel(x2);
}

Complex OperatorRep::f(double x1, double x2) const {
    const int d = kernel_->dimension();
    const int n = kernel_->count();
    const double denom =
        std::pow(1.0 + x1, n + 1) * std::pow(1.0 + x2, n + 1);
    Complex acc = 0.0;
    double xa = 1.0;
    for (int a = 1; a <= d; ++a) {
        double xb = 1.0;
        const double wa = xa / kernel_->betas()[a - 1].to_double();
        for (int b = 1; b <= d; ++b) {
            acc += coeff_(a - 1, b - 1) *
                   (wa * xb / kernel_->betas()[b - 1].to_double());
            xb *= x2;
        }
        xa *= x1;
    }
    return acc / denom;
}

double OperatorRep::marginal(double alpha) const {
    const int d = kernel_->dimension();
    const int n = kernel_->count();
    const double denom = std::pow(1.0 + alpha, n + 1);
    Complex acc = 0.0;
    double xb = 1.0;
    for (int b = 1; b <= d; ++b) {
        acc += marginal_coeff_[b - 1] * (xb / kernel_->betas()[b - 1].to_double());
        xb *= alpha;
    }
    return acc.real() / denom;
}

Complex OperatorRep::moment(int mu, int nu) const {
    const int d = kernel_->dimension();
    const int n = kernel_->count();
    if (mu < 0 || nu < 0)
        throw std::invalid_argument("moment orders must be non-negative");
    if (mu > n - d || nu > n - d)
        throw std::domain_error(
            "moment diverges: needs mu <= n-d and nu <= n-d (got mu=" +
            std::to_string(mu) + ", nu=" + std::to_string(nu) + ", n-d=" +
            std::to_string(n - d) + ")");

    // B(a+mu, n-a+1-mu) / B(a, n-a+1) as an exact ratio of rising factorials.
    auto ratio = [&](int a, int m) {
        Rational num(1), den(1);
        for (int k = 0; k < m; ++k) {
            num *= Rational(a + k);
            den *= Rational(n - a + 1 - m + k);
        }
        return (num / den).to_double();
    };

    Complex acc = 0.0;
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b)
            acc += coeff_(a - 1, b - 1) * (ratio(a, mu) * ratio(b, nu));
    return acc;
}

Matrix OperatorRep::integral(const QuadratureOptions& opts) const {
    // Both axes substituted back to [0, 1].
    auto inner_integral = [&](double t1) {
        const double x1 = t1 / (1.0 - t1);
        const double j1 = 1.0 / ((1.0 - t1) * (1.0 - t1));
        return integrate(
                   [&](double t2) {
                       const double x2 = t2 / (1.0 - t2);
                       const double j2 = 1.0 / ((1.0 - t2) * (1.0 - t2));
                       return point(x1, x2) * j2;
                   },
                   0.0, 1.0, opts) *
               j1;
    };
    return integrate(inner_integral, 0.0, 1.0, opts);
}

CVector OperatorRep::ket_component(double x, const CVector& s) const {
    return matvec(kernel_->semiaxis_kernel(x) * theta_, s);
}

CVector OperatorRep::bra_component(double x, const CVector& s) const {
    // Row vector <s| Theta T(x), returned as its conjugate transpose.
    return matvec((theta_ * kernel_->semiaxis_kernel(x)).adjoint(), s);
}

CVector finite_fourier(const CVector& v) {
    const int d = int(v.size());
    if (d == 0)
        throw std::invalid_argument("empty vector");
    CVector out(d, Complex(0.0));
    const double scale = 1.0 / std::sqrt(double(d));
    for (int k = 0; k < d; ++k) {
        Complex acc = 0.0;
        for (int m = 0; m < d; ++m) {
            const double angle = 2.0 * std::numbers::pi * double(m) * double(k) / d;
            acc += std::polar(1.0, angle) * v[m];
        }
        out[k] = acc * scale;
    }
    return out;
}

} // namespace ri
