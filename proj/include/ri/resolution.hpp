#pragma once

#include <optional>
#include <vector>

#include "ri/curves.hpp"
#include "ri/matrix.hpp"
#include "ri/prebasis.hpp"
#include "ri/quadrature.hpp"
#include "ri/rational.hpp"

namespace ri {

/// P_{n,k}(t) = sum_{j<=k} C(n,j) t^j (1-t)^(n-j); integrates to (k+1)/(n+1).
class TruncatedBinomial {
  public:
    TruncatedBinomial(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    double operator()(double t) const;

    /// Exact integral over [0, 1], summed term by term through Beta values;
    /// reduces to (k+1)/(n+1).
    Rational integral() const;

  private:
    int n_, k_;
};

/// The d Beta-weighted average span increments R_a together with their exact
/// weights. Each R_a is a density matrix and they sum to the identity; that
/// sum is what every continuous resolution integrates back to.
class ResolutionKernel {
  public:
    /// Builds R_a = B(a, n-a+1) * sum_i increments[a-1][i] for a = 1..d.
    /// Fails if increments above level d are nonzero (they vanish exactly
    /// when every d-subset of the underlying vectors is independent) or if
    /// the R_a do not resolve the identity to tolerance.
    static ResolutionKernel build(const DressedOperators& ops);

    int dimension() const { return d_; }
    int count() const { return n_; }
    const std::vector<Matrix>& increment_means() const { return r_; } // R_1..R_d
    const std::vector<Rational>& betas() const { return betas_; }

    /// sum_a R_a - identity, for residual reporting.
    Matrix identity_residual() const;

    /// Diagonal resolution density at probability t:
    /// sum_a R_a t^(a-1) (1-t)^(n-a) / B(a, n-a+1). PSD; integrates to 1.
    Matrix diagonal_resolution(double t) const;

    /// Trace of the diagonal resolution: n * P_{n-1,d-1}(t).
    double diagonal_trace(double t) const;

    /// Same kernel on the semi-axis x = t/(1-t):
    /// (1+x)^-(n+1) sum_a x^(a-1) R_a / B(a, n-a+1). Integrates to 1 on
    /// [0, inf).
    Matrix semiaxis_kernel(double x) const;

    /// Numeric check of the semi-axis resolution via the substitution back
    /// to [0, 1].
    Matrix semiaxis_integral(const QuadratureOptions& opts = {}) const;

  private:
    ResolutionKernel() = default;

    int d_ = 0, n_ = 0;
    std::vector<Matrix> r_;
    std::vector<Rational> betas_;
    std::vector<double> inv_beta_; // 1 / B(a, n-a+1)
};

/// Resolution density along an arbitrary monotone curve:
/// sum_i d(mean projector)/dp_i * dp_i/dt at the curve point. PSD, and its
/// integral over [0, 1] is the identity.
Matrix curve_resolution(const ProjectorFamily& family, const MonotoneCurve& curve,
                        double t);

/// Integral of the curve resolution over [0, 1] (splits at polyline knots).
Matrix curve_resolution_integral(const ProjectorFamily& family,
                                 const MonotoneCurve& curve,
                                 const QuadratureOptions& opts = {});

/// Continuum expansion of a unit vector: s(x) = T(x) s, integrating back to s.
class StateExpansion {
  public:
    StateExpansion(const ResolutionKernel& kernel, CVector s);

    const CVector& state() const { return s_; }

    CVector component(double x) const;

    /// Pointwise weight <s(x)|s(x)>; the diagonal of the two-argument
    /// overlap for the pure state.
    double weight(double x) const;

    /// Unit-normalized component, or nothing where the weight vanishes
    /// (below 1e-14).
    std::optional<CVector> normalized_component(double x) const;

    /// Numeric integral of the components over [0, inf); recovers the state.
    CVector integral(const QuadratureOptions& opts = {}) const;

  private:
    const ResolutionKernel* kernel_;
    CVector s_;
};

/// Two-variable representation of an operator: point(x1, x2) =
/// T(x1) Theta T(x2), with the trace form, marginal and moments attached.
class OperatorRep {
  public:
    OperatorRep(const ResolutionKernel& kernel, Matrix theta);

    /// Same, validating that theta is a density matrix (Hermitian, unit
    /// trace, PSD).
    static OperatorRep for_density(const ResolutionKernel& kernel, Matrix rho);

    const Matrix& coefficients() const { return coeff_; } // Tr(R_a Theta R_b)

    Matrix point(double x1, double x2) const;

    /// F(x1, x2) = Tr[point] = Tr[Theta T(x2) T(x1)], via the precomputed
    /// coefficient table.
    Complex f(double x1, double x2) const;

    /// Marginal Tr[Theta T(alpha)]; non-negative for a density matrix, and
    /// equal to either single integral of f.
    double marginal(double alpha) const;

    /// <x1^mu x2^nu> of f in closed form. Throws when the moment diverges
    /// (needs mu <= n-d and nu <= n-d).
    Complex moment(int mu, int nu) const;

    /// Numeric double integral of point(); recovers Theta.
    Matrix integral(const QuadratureOptions& opts = {}) const;

    /// Representation of Theta applied to a ket / bra: T(x) Theta s and
    /// adjoint(Theta s') pairings collapse the double integrals.
    CVector ket_component(double x, const CVector& s) const;
    CVector bra_component(double x, const CVector& s) const;

  private:
    const ResolutionKernel* kernel_;
    Matrix theta_;
    Matrix coeff_;
    std::vector<Complex> marginal_coeff_; // Tr(Theta R_b)
};

/// Unitary finite Fourier transform: out_k = (1/sqrt(d)) sum_m w^(mk) v_m
/// with w = exp(2 pi i / d).
CVector finite_fourier(const CVector& v);

} // namespace ri
