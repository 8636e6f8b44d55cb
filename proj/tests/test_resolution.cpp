#include <doctest.h>

#include <cmath>

#include "qutrit_reference.hpp"

#include "ri/resolution.hpp"
#include "ri/rng.hpp"

using namespace ri;

namespace {

ResolutionKernel reference_kernel() {
    return ResolutionKernel::build(dressed_operators(riref::reference_family()));
}

std::vector<CVector> random_unit_columns(Xoshiro256& rng, int d, int n) {
    std::vector<CVector> cols(n, CVector(d));
    for (auto& c : cols) {
        for (auto& v : c)
            v = Complex(rng.next_unit() - 0.5, rng.next_unit() - 0.5);
        const double norm = vector_norm(c);
        for (auto& v : c)
            v /= norm;
    }
    return cols;
}

} // namespace

TEST_CASE("truncated binomial polynomials") {
    TruncatedBinomial full(5, 5);
    CHECK(full(0.3) == doctest::Approx(1.0).epsilon(1e-14));
    TruncatedBinomial bottom(5, 0);
    CHECK(bottom(0.3) == doctest::Approx(std::pow(0.7, 5)).epsilon(1e-14));
    TruncatedBinomial nearly(4, 3);
    CHECK(nearly(0.3) ==
          doctest::Approx(1.0 - std::pow(0.3, 4)).epsilon(1e-14));
    // Exact integral (k+1)/(n+1), via term-by-term Beta sums.
    for (int n = 1; n <= 8; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(TruncatedBinomial(n, k).integral() == Rational(k + 1, n + 1));
    CHECK_THROWS_AS(TruncatedBinomial(3, 4), std::invalid_argument);
}

TEST_CASE("kernel of the reference qutrit family") {
    const auto kernel = reference_kernel();
    REQUIRE(kernel.dimension() == 3);
    REQUIRE(kernel.count() == 4);

    SUBCASE("level means match the exact oracle and the reference decimals") {
        for (int a = 1; a <= 3; ++a) {
            CHECK(riref::max_abs_diff(kernel.increment_means()[a - 1],
                                      riref::exact_level_mean(a)) <= 1e-12);
            const Matrix reference = riref::reference_level_mean(a);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c)
                    CHECK(std::abs(kernel.increment_means()[a - 1](r, c) -
                                   reference(r, c)) <= 1e-3);
        }
        CHECK(riref::exact_level_mean(1).at(0, 0) == Rational(7, 24));
        CHECK(riref::exact_level_mean(2).at(0, 0) == Rational(25, 72));
        CHECK(riref::exact_level_mean(3).at(0, 0) == Rational(13, 36));
        CHECK(kernel.identity_residual().frobenius_norm() <= 1e-12);
        for (const auto& r : kernel.increment_means()) {
            CHECK(r.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(is_positive_semidefinite(r));
        }
    }

    SUBCASE("diagonal resolution") {
        // Only the first level survives at t = 0.
        CHECK((kernel.diagonal_resolution(0.0) -
               kernel.increment_means()[0] * 4.0)
                  .frobenius_norm() <= 1e-13);
        // Trace identity n * P_{n-1,d-1}(t) = 4 (1 - t^3) here.
        for (int k = 0; k <= 10; ++k) {
            const double t = k / 10.0;
            const double direct = kernel.diagonal_resolution(t).trace().real();
            CHECK(direct == doctest::Approx(4.0 * (1.0 - t * t * t)).epsilon(1e-12));
            CHECK(kernel.diagonal_trace(t) ==
                  doctest::Approx(direct).epsilon(1e-12));
        }
        CHECK(kernel.diagonal_resolution(0.5).trace().real() ==
              doctest::Approx(3.5).epsilon(1e-13));
        CHECK_THROWS_AS(kernel.diagonal_resolution(1.0001), std::domain_error);
        // PSD at scattered arguments.
        Xoshiro256 rng(55);
        for (int k = 0; k < 25; ++k)
            CHECK(is_positive_semidefinite(kernel.diagonal_resolution(rng.next_unit())));
    }

    SUBCASE("semi-axis kernel") {
        // Reference closed form: (4 R1 + 12 x R2 + 12 x^2 R3) / (1+x)^5.
        Xoshiro256 rng(56);
        for (int k = 0; k < 20; ++k) {
            const double x = rng.next_unit() * 8.0;
            Matrix expected = kernel.increment_means()[0] * 4.0;
            expected += kernel.increment_means()[1] * (12.0 * x);
            expected += kernel.increment_means()[2] * (12.0 * x * x);
            expected *= 1.0 / std::pow(1.0 + x, 5);
            CHECK((kernel.semiaxis_kernel(x) - expected).frobenius_norm() <= 1e-13);

            // Change of variables back to the probability parameter.
            const double t = x / (1.0 + x);
            CHECK((kernel.semiaxis_kernel(x) -
                   kernel.diagonal_resolution(t) * (1.0 / ((1.0 + x) * (1.0 + x))))
                      .frobenius_norm() <= 1e-13);
            CHECK(is_positive_semidefinite(kernel.semiaxis_kernel(x)));
        }
        CHECK((kernel.semiaxis_kernel(0.0) - kernel.increment_means()[0] * 4.0)
                  .frobenius_norm() <= 1e-13);
        CHECK_THROWS_AS(kernel.semiaxis_kernel(-0.5), std::domain_error);
        CHECK((kernel.semiaxis_integral() - Matrix::identity(3)).frobenius_norm() <=
              1e-10);
    }

    SUBCASE("basis-weight integrals") {
        // integral of x^(a-1) (1+x)^-(n+1) over the semi-axis equals the
        // exact ordering weight.
        for (int a = 1; a <= 3; ++a) {
            const double got = integrate(
                [&](double t) {
                    const double x = t / (1.0 - t);
                    const double jac = 1.0 / ((1.0 - t) * (1.0 - t));
                    return std::pow(x, a - 1) / std::pow(1.0 + x, 5) * jac;
                },
                0.0, 1.0);
            CHECK(got == doctest::Approx(beta_exact(a, 4).to_double()).epsilon(1e-12));
        }
    }
}

TEST_CASE("kernel construction rejects inconsistent families") {
    // The projectors computed from the degenerate pre-basis keep a nonzero
    // level-4 increment, so the level-d truncation cannot resolve the
    // identity.
    const PreBasis basis = PreBasis::validate(3, riref::prebasis_columns());
    const auto ops = dressed_operators(ProjectorFamily::from_prebasis(basis));
    CHECK(ops.increments[3][0].frobenius_norm() > 1e-6);
    CHECK_THROWS_WITH_AS(static_cast<void>(ResolutionKernel::build(ops)),
                         doctest::Contains("inconsistent"),
                         std::invalid_argument);
}

TEST_CASE("orthonormal kernel") {
    const PreBasis basis = PreBasis::validate(
        3, std::vector<CVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const auto kernel =
        ResolutionKernel::build(dressed_operators(ProjectorFamily::from_prebasis(basis)));
    // First level mean is the maximally mixed state.
    CHECK((kernel.increment_means()[0] - Matrix::identity(3) * (1.0 / 3.0))
              .frobenius_norm() <= 1e-13);
    CHECK(kernel.identity_residual().frobenius_norm() <= 1e-12);
    // d = n: the trace of the diagonal resolution is constant n.
    for (double t : {0.1, 0.5, 0.9})
        CHECK(kernel.diagonal_trace(t) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("resolution along curves") {
    const auto family = riref::reference_family();
    const auto kernel = reference_kernel();

    SUBCASE("diagonal curve matches the closed form") {
        const MonotoneCurve diag = MonotoneCurve::diagonal(4);
        Xoshiro256 rng(57);
        for (int k = 0; k < 20; ++k) {
            const double t = rng.next_unit();
            CHECK((curve_resolution(family, diag, t) -
                   kernel.diagonal_resolution(t))
                      .frobenius_norm() <= 1e-12);
        }
    }
    SUBCASE("non-diagonal curves still resolve the identity") {
        for (const auto& curve :
             {MonotoneCurve::power({1, 2, 1, 2}), MonotoneCurve::power({3, 1, 2, 1})}) {
            const Matrix total = curve_resolution_integral(family, curve);
            CHECK((total - Matrix::identity(3)).frobenius_norm() <= 1e-8);
        }
    }
    SUBCASE("orthonormal basis: weighted projector sum") {
        const PreBasis basis = PreBasis::validate(
            3, std::vector<CVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
        const auto fam = ProjectorFamily::from_prebasis(basis);
        const MonotoneCurve curve = MonotoneCurve::power({1, 2, 3});
        std::vector<double> p, dp;
        curve.evaluate(0.6, p, dp);
        Matrix expected = Matrix::zero(3, 3);
        for (int i = 0; i < 3; ++i)
            expected += fam.projector(IndexSet::single(i)) * dp[i];
        CHECK((curve_resolution(fam, curve, 0.6) - expected).frobenius_norm() <=
              1e-12);
    }
}

TEST_CASE("state expansion on the semi-axis") {
    const auto kernel = reference_kernel();
    const StateExpansion expansion(kernel, {1.0, 0.0, 0.0});

    SUBCASE("component at the origin uses only the first level mean") {
        const CVector c0 = expansion.component(0.0);
        const CVector expected = matvec(kernel.increment_means()[0] * 4.0,
                                        CVector{1.0, 0.0, 0.0});
        for (int k = 0; k < 3; ++k)
            CHECK(std::abs(c0[k] - expected[k]) <= 1e-13);
    }
    SUBCASE("components integrate back to the state") {
        const CVector total = expansion.integral();
        CHECK(std::abs(total[0] - Complex(1.0)) <= 1e-8);
        CHECK(std::abs(total[1]) <= 1e-8);
        CHECK(std::abs(total[2]) <= 1e-8);
    }
    SUBCASE("far tail decays like x^-(n-d+2)") {
        const double n1 = vector_norm(expansion.component(1e2));
        const double n2 = vector_norm(expansion.component(1e4));
        const double slope = (std::log(n2) - std::log(n1)) /
                             (std::log(1e4) - std::log(1e2));
        CHECK(std::abs(slope - (-3.0)) <= 0.02 * 3.0);
    }
    SUBCASE("normalized components") {
        const auto unit = expansion.normalized_component(1.0);
        REQUIRE(unit.has_value());
        CHECK(vector_norm(*unit) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(expansion.weight(1.0) > 0.0);
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(StateExpansion(kernel, CVector{1.0, 0.0}),
                        std::invalid_argument);
        CHECK_THROWS_AS(StateExpansion(kernel, CVector{2.0, 0.0, 0.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("a vanishing component is reported, not normalized") {
    // Orthonormal qubit basis: T(x) = (2 R1 + 2 x R2) / (1+x)^3 with
    // R1 = R2 = I/2, so T(x) s is never zero; build a state orthogonal to
    // the only surviving term at x = 0 instead, using a rank-deficient rho.
    // Simpler: the zero-weight branch triggers when T(x) s underflows far in
    // the tail.
    const auto kernel = reference_kernel();
    const StateExpansion expansion(kernel, {1.0, 0.0, 0.0});
    CHECK_FALSE(expansion.normalized_component(1e12).has_value());
}

TEST_CASE("operator representation") {
    const auto kernel = reference_kernel();

    SUBCASE("identity operator: double integral returns the identity") {
        const OperatorRep rep(kernel, Matrix::identity(3));
        const Matrix total = rep.integral(QuadratureOptions{1e-11, 256});
        CHECK((total - Matrix::identity(3)).frobenius_norm() <= 1e-8);
    }
    SUBCASE("adjoint symmetry for Hermitian operators") {
        Matrix theta = Matrix::zero(3, 3);
        theta(0, 0) = 2.0;
        theta(1, 2) = Complex(0.5, 0.25);
        theta(2, 1) = Complex(0.5, -0.25);
        const OperatorRep rep(kernel, theta);
        Xoshiro256 rng(58);
        for (int k = 0; k < 10; ++k) {
            const double x1 = rng.next_unit() * 4.0;
            const double x2 = rng.next_unit() * 4.0;
            CHECK((rep.point(x1, x2).adjoint() - rep.point(x2, x1))
                      .frobenius_norm() <= 1e-12);
        }
    }
    SUBCASE("maximally mixed state coefficients") {
        const auto rep =
            OperatorRep::for_density(kernel, Matrix::identity(3) * (1.0 / 3.0));
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const Complex expected =
                    (kernel.increment_means()[a] * kernel.increment_means()[b])
                        .trace() *
                    (1.0 / 3.0);
                CHECK(std::abs(rep.coefficients()(a, b) - expected) <= 1e-14);
            }
    }
    SUBCASE("pure-state shortcut equals the trace form") {
        const CVector s = {0.6, 0.0, 0.8};
        const auto rep = OperatorRep::for_density(kernel, Matrix::outer(s, s));
        const StateExpansion expansion(kernel, s);
        Xoshiro256 rng(59);
        for (int k = 0; k < 10; ++k) {
            const double x1 = rng.next_unit() * 3.0;
            const double x2 = rng.next_unit() * 3.0;
            const Complex via_components =
                inner(expansion.component(x2), expansion.component(x1));
            CHECK(std::abs(rep.f(x1, x2) - via_components) <= 1e-12);
        }
        CHECK(rep.f(0.7, 0.7).real() ==
              doctest::Approx(expansion.weight(0.7)).epsilon(1e-12));
    }
    SUBCASE("dimension mismatch is rejected") {
        CHECK_THROWS_AS(OperatorRep(kernel, Matrix::identity(2)),
                        std::invalid_argument);
    }
    SUBCASE("density validation") {
        CHECK_THROWS_AS(OperatorRep::for_density(kernel, Matrix::identity(3)),
                        std::invalid_argument); // trace 3
        Matrix bad = Matrix::zero(3, 3);
        bad(0, 0) = 2.0;
        bad(1, 1) = -1.0;
        CHECK_THROWS_AS(OperatorRep::for_density(kernel, bad),
                        std::invalid_argument); // not PSD
        Matrix skew = Matrix::identity(3) * (1.0 / 3.0);
        skew(0, 1) = 0.1;
        CHECK_THROWS_AS(OperatorRep::for_density(kernel, skew),
                        std::invalid_argument); // not Hermitian
    }
    SUBCASE("ket and bra components collapse the double integrals") {
        Matrix theta = Matrix::zero(3, 3);
        theta(0, 1) = 1.0;
        theta(1, 0) = 1.0;
        theta(2, 2) = 0.5;
        const OperatorRep rep(kernel, theta);
        const CVector s = {0.0, 1.0, 0.0};
        const CVector expected = matvec(kernel.semiaxis_kernel(0.8) * theta, s);
        const CVector got = rep.ket_component(0.8, s);
        for (int k = 0; k < 3; ++k)
            CHECK(std::abs(got[k] - expected[k]) <= 1e-14);
        // The triple-integral reduction: integrating the two-variable
        // representation against the state components reproduces it.
        const Matrix inner_total = integrate(
            [&](double t2) {
                const double x2 = t2 / (1.0 - t2);
                const double j2 = 1.0 / ((1.0 - t2) * (1.0 - t2));
                return kernel.semiaxis_kernel(x2) * j2;
            },
            0.0, 1.0);
        const CVector collapsed =
            matvec(kernel.semiaxis_kernel(0.8) * theta * inner_total, s);
        for (int k = 0; k < 3; ++k)
            CHECK(std::abs(collapsed[k] - expected[k]) <= 1e-9);
    }
}

TEST_CASE("reproducing property at scattered arguments") {
    const auto kernel = reference_kernel();
    Xoshiro256 rng(63);
    for (int k = 0; k < 10; ++k) {
        const double alpha = 0.05 + 6.0 * rng.next_unit();
        const Matrix reproduced = integrate(
            [&](double t) {
                const double beta = t / (1.0 - t);
                const double jac = 1.0 / ((1.0 - t) * (1.0 - t));
                return kernel.semiaxis_kernel(alpha) * kernel.semiaxis_kernel(beta) *
                       jac;
            },
            0.0, 1.0);
        REQUIRE((reproduced - kernel.semiaxis_kernel(alpha)).frobenius_norm() <=
                1e-8);
        // Order of the factors does not matter for the integral.
        const Matrix flipped = integrate(
            [&](double t) {
                const double beta = t / (1.0 - t);
                const double jac = 1.0 / ((1.0 - t) * (1.0 - t));
                return kernel.semiaxis_kernel(beta) * kernel.semiaxis_kernel(alpha) *
                       jac;
            },
            0.0, 1.0);
        REQUIRE((flipped - kernel.semiaxis_kernel(alpha)).frobenius_norm() <= 1e-8);
    }
}

TEST_CASE("conjugate symmetry of the overlap function, complex family") {
    // A pre-basis with genuinely complex amplitudes so the overlap function
    // picks up nonzero imaginary parts.
    Xoshiro256 rng(64);
    std::vector<CVector> cols(5, CVector(3));
    for (auto& c : cols) {
        for (auto& v : c)
            v = Complex(rng.next_unit() - 0.5, rng.next_unit() - 0.5);
        const double norm = vector_norm(c);
        for (auto& v : c)
            v /= norm;
    }
    const PreBasis basis = PreBasis::validate(3, cols);
    REQUIRE(basis.degenerate_subsets().empty());
    const auto kernel =
        ResolutionKernel::build(dressed_operators(ProjectorFamily::from_prebasis(basis)));

    CVector s = {Complex(0.6, 0.2), Complex(0.0, -0.5), Complex(0.3, 0.1)};
    const double norm = vector_norm(s);
    for (auto& v : s)
        v /= norm;
    const auto rep = OperatorRep::for_density(kernel, Matrix::outer(s, s));

    bool saw_imaginary = false;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double x1 = rng.next_unit() * 5.0;
        const double x2 = rng.next_unit() * 5.0;
        const Complex f12 = rep.f(x1, x2);
        worst = std::max(worst, std::abs(rep.f(x2, x1) - std::conj(f12)));
        saw_imaginary = saw_imaginary || std::abs(f12.imag()) > 1e-6;
    }
    CHECK(worst <= 1e-12);
    CHECK(saw_imaginary);

    // The diagonal weight is real and the marginal stays non-negative.
    for (double x : {0.1, 0.8, 2.0, 7.0}) {
        CHECK(std::abs(rep.f(x, x).imag()) <= 1e-14);
        CHECK(rep.marginal(x) >= 0.0);
    }
}

TEST_CASE("marginal and moments of the mixed state") {
    const auto kernel = reference_kernel();
    const auto rep =
        OperatorRep::for_density(kernel, Matrix::identity(3) * (1.0 / 3.0));

    // Closed form at the origin: n * Tr(rho R1).
    CHECK(rep.marginal(0.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
    // Trace form at x = 1: (1/3) * Tr T(1) = (1/3)(4/4)(1 - 1/8).
    CHECK(rep.marginal(1.0) == doctest::Approx(7.0 / 24.0).epsilon(1e-13));
    // The marginal integrates to one.
    const double total = integrate(
        [&](double t) {
            const double x = t / (1.0 - t);
            return rep.marginal(x) / ((1.0 - t) * (1.0 - t));
        },
        0.0, 1.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

    CHECK(rep.moment(0, 0).real() == doctest::Approx(1.0).epsilon(1e-13));
    // Frozen closed-form value (1/3)(1/3 + 1 + 3) = 13/9, confirmed by the
    // quadrature cross-check below.
    CHECK(rep.moment(1, 0).real() == doctest::Approx(13.0 / 9.0).epsilon(1e-13));
    CHECK(rep.moment(0, 1).real() == doctest::Approx(13.0 / 9.0).epsilon(1e-13));
    {
        const double quad = integrate(
            [&](double t1) {
                const double x1 = t1 / (1.0 - t1);
                const double j1 = 1.0 / ((1.0 - t1) * (1.0 - t1));
                return integrate(
                           [&](double t2) {
                               const double x2 = t2 / (1.0 - t2);
                               const double j2 = 1.0 / ((1.0 - t2) * (1.0 - t2));
                               return rep.f(x1, x2).real() * x1 * j2;
                           },
                           0.0, 1.0) *
                       j1;
            },
            0.0, 1.0, QuadratureOptions{1e-11, 256});
        CHECK(std::abs(rep.moment(1, 0).real() - quad) <= 1e-6);
    }
    // Divergent orders are rejected: n - d = 1 here.
    CHECK_THROWS_AS(rep.moment(2, 0), std::domain_error);
    CHECK_THROWS_AS(rep.moment(0, 2), std::domain_error);
}

TEST_CASE("finite Fourier transform") {
    const CVector x0 = {1.0, 0.0, 0.0};
    const CVector f = finite_fourier(x0);
    const double s3 = 1.0 / std::sqrt(3.0);
    for (int k = 0; k < 3; ++k) {
        CHECK(f[k].real() == doctest::Approx(s3).epsilon(1e-14));
        CHECK(f[k].imag() == doctest::Approx(0.0).epsilon(1e-14));
    }
    // Unitarity on random vectors.
    Xoshiro256 rng(60);
    for (int trial = 0; trial < 10; ++trial) {
        CVector v(5);
        for (auto& c : v)
            c = Complex(rng.next_unit() - 0.5, rng.next_unit() - 0.5);
        CHECK(vector_norm(finite_fourier(v)) ==
              doctest::Approx(vector_norm(v)).epsilon(1e-12));
    }
    // Second basis vector picks up the cube roots of unity.
    const CVector x1 = {0.0, 1.0, 0.0};
    const CVector g = finite_fourier(x1);
    CHECK(g[1].real() == doctest::Approx(s3 * std::cos(2 * std::acos(-1.0) / 3))
                             .epsilon(1e-12));
    CHECK(g[1].imag() == doctest::Approx(s3 * std::sin(2 * std::acos(-1.0) / 3))
                             .epsilon(1e-12));
}

TEST_CASE("expansion of a Fourier state is the Fourier mix of expansions") {
    const auto kernel = reference_kernel();
    // Build the nu = 1 Fourier state from the three position states and
    // compare its components with the same mix of the per-state components.
    CVector basis1 = {0.0, 1.0, 0.0};
    const CVector fourier_state = [&] {
        CVector out(3, Complex(0.0));
        const Complex w = std::polar(1.0, 2.0 * std::acos(-1.0) / 3.0);
        for (int mu = 0; mu < 3; ++mu) {
            Complex phase = std::pow(w, mu); // omega^(mu * nu) with nu = 1
            out[mu] = phase / std::sqrt(3.0);
        }
        return out;
    }();
    const StateExpansion mixed(kernel, fourier_state);
    std::vector<StateExpansion> parts;
    for (int mu = 0; mu < 3; ++mu) {
        CVector e(3, Complex(0.0));
        e[mu] = 1.0;
        parts.emplace_back(kernel, e);
    }
    Xoshiro256 rng(62);
    const Complex w = std::polar(1.0, 2.0 * std::acos(-1.0) / 3.0);
    for (int k = 0; k < 10; ++k) {
        const double x = rng.next_unit() * 5.0;
        const CVector got = mixed.component(x);
        CVector expected(3, Complex(0.0));
        for (int mu = 0; mu < 3; ++mu) {
            const CVector c = parts[mu].component(x);
            const Complex phase = std::pow(w, mu) / std::sqrt(3.0);
            for (int j = 0; j < 3; ++j)
                expected[j] += phase * c[j];
        }
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(got[j] - expected[j]) <= 1e-13);
    }
}

TEST_CASE("reference-grid coefficients: exact values and symmetry") {
    const auto kernel = reference_kernel();
    // The exact coefficient table from the rational oracle, for each
    // position state.
    for (int state = 0; state < 3; ++state) {
        Matrix rho = Matrix::zero(3, 3);
        rho(state, state) = 1.0;
        const auto rep = OperatorRep::for_density(kernel, rho);
        const auto exact = riref::exact_grid_coefficients(state);
        const int pairs[9][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2},
                                 {1, 1}, {2, 1}, {1, 2}, {2, 2}};
        for (int k = 0; k < 9; ++k) {
            const int a = pairs[k][0], b = pairs[k][1];
            const Complex got = rep.coefficients()(a, b) /
                                (kernel.betas()[a].to_double() *
                                 kernel.betas()[b].to_double());
            CHECK(std::abs(got.real() - exact[k].to_double()) <= 1e-11);
            CHECK(std::abs(got.imag()) <= 1e-13);
        }
    }
    // Frozen exact corner values.
    const auto exact0 = riref::exact_grid_coefficients(0);
    CHECK(exact0[0] == Rational(5, 2));
    CHECK(exact0[1] == Rational(10, 3));
    CHECK(exact0[3] == Rational(19, 6));
    CHECK(exact0[5] == Rational(734, 36));
    CHECK(exact0[6] == Rational(353, 18));
    CHECK(exact0[8] == Rational(206, 9));
    const auto exact2 = riref::exact_grid_coefficients(2);
    CHECK(exact2[0] == Rational(25, 6));
    CHECK(exact2[5] == Rational(251, 18));
    // States 0 and 1 give identical rows.
    CHECK(riref::exact_grid_coefficients(0) == riref::exact_grid_coefficients(1));
}

TEST_CASE("random pre-bases give well-formed kernels (d <= 6, n <= 8)") {
    Xoshiro256 rng(61);
    for (int trial = 0; trial < 4; ++trial) {
        const int d = 2 + int(rng.next() % 5);
        const int n = d + int(rng.next() % (9 - d));
        const PreBasis basis =
            PreBasis::validate(d, random_unit_columns(rng, d, n));
        REQUIRE(basis.degenerate_subsets().empty());
        const auto kernel = ResolutionKernel::build(
            dressed_operators(ProjectorFamily::from_prebasis(basis)));
        CHECK(kernel.identity_residual().frobenius_norm() <= 1e-10);
        for (const auto& r : kernel.increment_means()) {
            CHECK((r - r.adjoint()).frobenius_norm() <= 1e-11);
            CHECK(r.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(is_positive_semidefinite(r));
        }
        // Reproducing property at one point.
        const double alpha = 0.8;
        const Matrix reproduced = integrate(
            [&](double t) {
                const double beta = t / (1.0 - t);
                const double jac = 1.0 / ((1.0 - t) * (1.0 - t));
                return kernel.semiaxis_kernel(alpha) * kernel.semiaxis_kernel(beta) *
                       jac;
            },
            0.0, 1.0);
        CHECK((reproduced - kernel.semiaxis_kernel(alpha)).frobenius_norm() <= 1e-8);
    }
}
