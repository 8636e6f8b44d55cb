#include <doctest.h>

#include "ri/partition.hpp"
#include "ri/quadrature.hpp"
#include "ri/random_sets.hpp"
#include "ri/rng.hpp"

using namespace ri;

namespace {

SetFamily worked_family() {
    return SetFamily({"a", "b", "c", "d"},
                     {{"a", "b"}, {"b", "c"}, {"a", "c", "d"}, {"b", "d"}});
}

// Exact integral of t^x (1-t)^y by expanding the binomial and integrating
// monomials; independent of beta_exact.
Rational bernstein_integral_exact(int x, int y) {
    Rational acc;
    for (int k = 0; k <= y; ++k) {
        const Rational term =
            rational_binomial(y, k) * Rational(1, x + k + 1);
        acc += (k % 2 == 0) ? term : -term;
    }
    return acc;
}

} // namespace

TEST_CASE("quadrature sanity") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 2.0) ==
          doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-13));
    // A panel budget too small to resolve a needle.
    QuadratureOptions tight;
    tight.max_panels = 2;
    tight.rel_tol = 1e-14;
    CHECK_THROWS_AS(integrate([](double x) { return std::exp(-1e6 * (x - 0.37) * (x - 0.37)); },
                              0.0, 1.0, tight),
                    QuadratureError);
}

TEST_CASE("beta integral identity, exact for integer exponents up to 24") {
    for (int x = 0; x <= 24; ++x)
        for (int y = 0; y <= 24; ++y) {
            // B(x+1, y+1) in reduced form, valid beyond the factorial range.
            const Rational reference =
                Rational(1) / (Rational(x + y + 1) * rational_binomial(x + y, x));
            REQUIRE(bernstein_integral_exact(x, y) == reference);
            if (x + y + 1 <= 24)
                REQUIRE(reference == beta_exact(x + 1, x + y + 1));
        }
}

TEST_CASE("diagonal density of the worked family") {
    const SetFamily fam = worked_family();
    const auto density = diagonal_density(fam);

    // Coefficients on the Bernstein-style basis are r_a / B(a, n-a+1):
    // 4 * 9/4, 12 * 5/4, 12 * 1/2, 4 * 0.
    CHECK(density.bernstein_coefficients() ==
          std::vector<Rational>{Rational(9), Rational(15), Rational(6),
                                Rational(0)});

    // Frozen from the sum of the displayed terms (and cross-checked against
    // central finite differences of the mean union cardinality): 15/4.
    CHECK(density(0.5) == doctest::Approx(3.75).epsilon(1e-13));
    {
        double fd = 0.0;
        const double h = 1e-6;
        for (int i = 0; i < 4; ++i) {
            std::vector<double> hi(4, 0.5), lo(4, 0.5);
            hi[i] += h;
            lo[i] -= h;
            fd += (RandomSetDistribution<double>::build(hi).average_union_cardinality(fam) -
                   RandomSetDistribution<double>::build(lo).average_union_cardinality(fam)) /
                  (2 * h);
        }
        CHECK(density(0.5) == doctest::Approx(fd).epsilon(1e-7));
    }

    // At t = 0 only the first level survives: n * r_1 = 9.
    CHECK(density(0.0) == doctest::Approx(9.0).epsilon(1e-14));

    CHECK(density.exact_integral() == Rational(4));
    CHECK(density.integrate() == doctest::Approx(4.0).epsilon(1e-13));
    CHECK_THROWS_AS(density(1.5), std::domain_error);
}

TEST_CASE("density along arbitrary monotone curves integrates to the union size") {
    const SetFamily fam = worked_family();

    SUBCASE("power curve") {
        PartitionDensity density(fam, MonotoneCurve::power({1, 2, 3, 4}));
        CHECK(std::abs(density.integrate() - 4.0) <= 1e-8);
    }
    SUBCASE("another power curve") {
        PartitionDensity density(fam, MonotoneCurve::power({2, 1, 2, 1}));
        CHECK(std::abs(density.integrate() - 4.0) <= 1e-8);
    }
    SUBCASE("polyline approximation of the diagonal") {
        std::vector<double> t, row;
        for (int k = 0; k <= 16; ++k) {
            t.push_back(k / 16.0);
            row.push_back(k / 16.0);
        }
        PartitionDensity density(
            fam, MonotoneCurve::polyline(t, {row, row, row, row}));
        CHECK(std::abs(density.integrate() - 4.0) <= 1e-6);
    }
    SUBCASE("kinked polyline") {
        const std::vector<double> t = {0.0, 0.3, 1.0};
        const std::vector<std::vector<double>> p = {{0.0, 0.9, 1.0},
                                                    {0.0, 0.1, 1.0},
                                                    {0.0, 0.5, 1.0},
                                                    {0.0, 0.0, 1.0}};
        PartitionDensity density(fam, MonotoneCurve::polyline(t, p));
        CHECK(std::abs(density.integrate() - 4.0) <= 1e-8);
    }
    SUBCASE("disjoint family on the diagonal is constant") {
        const SetFamily disjoint({"a", "b", "c"}, {{"a", "b"}, {"c"}});
        const auto density = diagonal_density(disjoint);
        for (double t : {0.0, 0.3, 0.7, 1.0})
            CHECK(density(t) == doctest::Approx(3.0).epsilon(1e-13));
    }
    SUBCASE("single-set family is the constant set size") {
        const SetFamily single({"a", "b"}, {{"a", "b"}});
        const auto density = diagonal_density(single);
        for (double t : {0.0, 0.4, 1.0})
            CHECK(density(t) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(density.exact_integral() == Rational(2));
    }
}

TEST_CASE("diagonal closed form matches the generic route at random points") {
    const SetFamily fam = worked_family();
    const auto density = diagonal_density(fam);
    const MonotoneCurve diag = MonotoneCurve::diagonal(4);
    Xoshiro256 rng(2024);
    for (int k = 0; k < 50; ++k) {
        const double t = rng.next_unit();
        REQUIRE(std::abs(density(t) - partition_density_at(fam, diag, t)) <= 1e-12);
    }
    // Non-negative across the interval.
    for (int k = 0; k <= 100; ++k)
        REQUIRE(density(k / 100.0) >= 0.0);
}

TEST_CASE("per-set share as an exact integral of the diagonal derivative") {
    const SetFamily fam = worked_family();
    CHECK(shapley_via_integral(fam, 0) == Rational(5, 6));
    CHECK(shapley_via_integral(fam, 2) == Rational(3, 2));
    for (int i = 0; i < 4; ++i)
        CHECK(shapley_via_integral(fam, i) == shapley_permutation(fam, i));

    const SetFamily disjoint({"a", "b", "c"}, {{"a", "b"}, {"c"}});
    CHECK(shapley_via_integral(disjoint, 0) == Rational(2));
    CHECK(shapley_via_integral(disjoint, 1) == Rational(1));
}

TEST_CASE("curve validation") {
    CHECK_THROWS_AS(MonotoneCurve::power({1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(MonotoneCurve::power({1.0, -2.0}), std::invalid_argument);
    CHECK_THROWS_AS(MonotoneCurve::polyline({0.0, 1.0}, {{0.0, 0.5}}),
                    std::invalid_argument); // endpoint not 1
    CHECK_THROWS_AS(MonotoneCurve::polyline({0.0, 0.5, 1.0},
                                            {{0.0, 0.7, 0.6}}),
                    std::invalid_argument); // not monotone
    CHECK_THROWS_AS(MonotoneCurve::polyline({0.0, 0.5, 0.5, 1.0},
                                            {{0.0, 0.2, 0.3, 1.0}}),
                    std::invalid_argument); // knots not strictly increasing
    const MonotoneCurve diag = MonotoneCurve::diagonal(3);
    std::vector<double> p, dp;
    CHECK_THROWS_AS(diag.evaluate(-0.1, p, dp), std::domain_error);
    CHECK_THROWS_AS(diag.evaluate(1.1, p, dp), std::domain_error);

    const SetFamily fam = worked_family();
    CHECK_THROWS_AS(PartitionDensity(fam, MonotoneCurve::diagonal(3)),
                    std::invalid_argument);
}
