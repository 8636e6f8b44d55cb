#include "ri/verify.hpp"

#include <cmath>
#include <optional>

#include "ri/partition.hpp"
#include "ri/quadrature.hpp"
#include "ri/random_sets.hpp"
#include "ri/resolution.hpp"
#include "ri/rng.hpp"
#include "ri/shapley.hpp"

namespace ri {

namespace {

double to_double_value(const Rational& r) { return r.to_double(); }
double to_double_value(double v) { return v; }

template <class T>
double abs_value(const T& v) {
    return std::abs(to_double_value(v));
}

class CheckSink {
  public:
    void exact(const std::string& name, bool ok, const std::string& detail = "") {
        checks_.push_back({name, ok, ok ? 0.0 : 1.0, 0.0, detail});
    }
    void residual(const std::string& name, double value, double tol,
                  const std::string& detail = "") {
        checks_.push_back({name, value <= tol, value, tol, detail});
    }
    std::vector<CheckResult> take() { return std::move(checks_); }

  private:
    std::vector<CheckResult> checks_;
};

template <class T>
void product_measure_checks(CheckSink& sink, const std::vector<T>& p, double tol) {
    const int n = int(p.size());
    auto dist = RandomSetDistribution<T>::build(p);

    // Exhaustive loops are fine up to n = 12; above that, spot-check a
    // deterministic sample of subsets (the inclusion-exclusion sweep alone
    // is 3^n when run over everything).
    std::vector<std::uint32_t> masks;
    if (n <= 12) {
        masks.resize(std::size_t(1) << n);
        for (std::uint32_t m = 0; m < masks.size(); ++m)
            masks[m] = m;
    } else {
        Xoshiro256 rng(5);
        for (int k = 0; k < 2048; ++k)
            masks.push_back(std::uint32_t(rng.next()) & ((1u << 12) - 1));
    }

    // Normalization of the subset probabilities.
    {
        T total{};
        for (const auto& v : dist.subset_probability())
            total += v;
        sink.residual("probability-normalization", abs_value(total - T(1)), tol);
    }

    // Cumulative superset sums reproduce the superset probabilities.
    {
        auto cumulative = cumulative_superset_sum(dist.subset_probability());
        double worst = 0.0;
        for (std::uint32_t m = 0; m < (1u << n); ++m)
            worst = std::max(worst,
                             abs_value(cumulative[IndexSet(m)] -
                                       dist.superset_probability()[IndexSet(m)]));
        sink.residual("cumulative-superset-sum", worst, tol);
    }

    // Avoidance probabilities by inclusion-exclusion over superset
    // probabilities.
    {
        double worst = 0.0;
        for (std::uint32_t m : masks) {
            const IndexSet a(m);
            T acc(1);
            for_each_subset(a, [&](IndexSet b) {
                if (b.empty())
                    return;
                if (b.cardinality() % 2 == 1)
                    acc -= dist.superset_probability()[b];
                else
                    acc += dist.superset_probability()[b];
            });
            worst = std::max(worst,
                             abs_value(acc - dist.avoidance_probability()[a]));
        }
        sink.residual("avoidance-inclusion-exclusion", worst, tol);
    }

    // Modularity of all three tables.
    {
        double worst = 0.0;
        const std::uint32_t step =
            masks.size() > 64 ? std::uint32_t(masks.size() / 64) : 1;
        auto check_table = [&](const SubsetTable<T>& t) {
            for (std::uint32_t i = 0; i < masks.size(); i += step)
                for (std::uint32_t j = 0; j < masks.size(); j += step) {
                    const IndexSet a(masks[i]), b(masks[j]);
                    const T lhs = t[a] * t[b];
                    const T rhs = t[a | b] * t[a & b];
                    worst = std::max(worst, abs_value(lhs - rhs));
                }
        };
        check_table(dist.subset_probability());
        check_table(dist.superset_probability());
        check_table(dist.avoidance_probability());
        sink.residual("product-measure-modularity", worst, tol);
    }

    // Index marginals equal the component probabilities.
    {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            const T marg = index_marginal(dist.subset_probability(), i);
            worst = std::max(worst, abs_value(marg - dist.p()[i]));
        }
        sink.residual("index-marginal", worst, tol);
    }

    // p(A) = P(A) * Pnot(complement A).
    {
        double worst = 0.0;
        for (std::uint32_t m : masks) {
            const IndexSet a(m);
            const T rhs = dist.superset_probability()[a] *
                          dist.avoidance_probability()[a.complement(n)];
            worst = std::max(worst, abs_value(dist.subset_probability()[a] - rhs));
        }
        sink.residual("subset-probability-split", worst, tol);
    }
}

template <class T>
void set_side_checks(CheckSink& sink, const SetFamily& family,
                     const std::vector<T>& p, double tol) {
    auto dist = RandomSetDistribution<T>::build(p);

    // Mean union cardinality, both routes.
    {
        const auto via_mu = dist.average_union_cardinality(family);
        const auto via_corrections =
            dist.average_union_cardinality_corrections(family);
        sink.residual("average-union-two-routes",
                      abs_value(via_mu - via_corrections), tol);
    }

    // Derivatives are non-negative.
    {
        double worst = 0.0;
        for (int i = 0; i < family.n(); ++i)
            worst = std::min(worst,
                             to_double_value(dist.partial_derivative(family, i)));
        sink.residual("derivative-nonnegative", std::max(0.0, -worst), tol);
    }
}

void double_derivative_check(CheckSink& sink, const SetFamily& family,
                             const std::vector<double>& p) {
    // Finite-difference agreement at an interior point.
    auto clamp = [](double v) { return std::min(0.999, std::max(0.001, v)); };
    std::vector<double> q(p.size());
    for (size_t i = 0; i < p.size(); ++i)
        q[i] = clamp(p[i]);
    auto dist = RandomSetDistribution<double>::build(q);
    const double h = 1e-6;
    double worst = 0.0;
    for (int i = 0; i < family.n(); ++i) {
        std::vector<double> lo = q, hi = q;
        hi[i] += h;
        lo[i] -= h;
        const double fd = (RandomSetDistribution<double>::build(hi)
                               .average_union_cardinality(family) -
                           RandomSetDistribution<double>::build(lo)
                               .average_union_cardinality(family)) /
                          (2.0 * h);
        worst = std::max(worst, std::abs(fd - dist.partial_derivative(family, i)));
    }
    sink.residual("derivative-finite-difference", worst, 1e-6);
}

void family_checks(CheckSink& sink, const SetFamily& family) {
    const int n = family.n();
    const auto& mu = family.cardinality_table();

    {
        auto round = inverse_mobius(mobius_transform(mu));
        bool ok = true;
        for (std::uint32_t m = 0; m < (1u << n); ++m)
            ok = ok && round[IndexSet(m)] == mu[IndexSet(m)];
        sink.exact("mobius-roundtrip", ok);
    }

    {
        bool ok = true;
        for (std::uint32_t m = 0; m < (1u << n); ++m) {
            const IndexSet a(m);
            std::int64_t singles = 0;
            for (int i : a.elements())
                singles += mu[IndexSet::single(i)];
            ok = ok && mu[a] <= singles;
        }
        sink.exact("subadditivity", ok);
    }

    const auto report = increment_totals(family);
    {
        Rational total;
        for (const auto& m : report.shapley)
            total += m;
        sink.exact("shapley-efficiency",
                   total == Rational(mu[IndexSet::full(n)]));
    }
    {
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            const Rational direct = shapley_direct(family, IndexSet::full(n), i);
            ok = ok && direct == report.shapley[i] &&
                 shapley_via_integral(family, i) == report.shapley[i];
        }
        sink.exact("shapley-route-equality", ok);
    }
    {
        bool ok = true;
        for (const auto& level : report.lambda)
            for (const auto& v : level)
                ok = ok && v >= 0;
        sink.exact("lambda-nonnegative", ok);
    }
    {
        Rational total;
        for (const auto& r : report.increment_means)
            total += r;
        sink.exact("increment-means-total",
                   total == Rational(mu[IndexSet::full(n)]));
    }
}

void curve_checks(CheckSink& sink, const SetFamily& family,
                  const MonotoneCurve& curve) {
    PartitionDensity density(family, curve);
    const double mu_total = double(family.union_cardinality(IndexSet::full(family.n())));

    double min_value = 0.0;
    const auto& rule = GaussLegendre::order64();
    for (int k = 0; k < rule.points(); ++k) {
        const double t = 0.5 + 0.5 * rule.nodes()[k];
        min_value = std::min(min_value, density(t));
    }
    sink.residual("partition-density-nonnegative", std::max(0.0, -min_value), 1e-12);

    const double tol = curve.is_diagonal() ? 1e-12 : 1e-8;
    double integral = density.integrate();
    sink.residual("partition-density-integral", std::abs(integral - mu_total), tol,
                  "integral " + std::to_string(integral));

    if (curve.is_diagonal()) {
        // Closed form against the generic route at scattered points.
        Xoshiro256 rng(7);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const double t = rng.next_unit();
            worst = std::max(worst,
                             std::abs(density(t) -
                                      partition_density_at(family, curve, t)));
        }
        sink.residual("diagonal-density-crosscheck", worst, 1e-12);
    }
}

void projector_checks(CheckSink& sink, const ProjectorFamily& family,
                      const PreBasis* basis) {
    const int n = family.count();
    const int d = family.dimension();
    const std::uint32_t size = 1u << n;

    double herm = 0.0, idem = 0.0, trace_err = 0.0, monotone = 0.0;
    for (std::uint32_t m = 0; m < size; ++m) {
        const IndexSet a(m);
        const Matrix& pi = family.projector(a);
        herm = std::max(herm, (pi - pi.adjoint()).frobenius_norm());
        idem = std::max(idem, (pi * pi - pi).frobenius_norm());
        // Trace equals the span rank: an integer no larger than min(|A|, d).
        const double tr = pi.trace().real();
        trace_err = std::max(trace_err, std::abs(tr - std::round(tr)));
        trace_err = std::max(trace_err,
                             std::max(0.0, tr - double(std::min(a.cardinality(), d))));
        for (int i : a.elements()) {
            const Matrix diffm = pi - family.projector(a.without(i));
            monotone = std::max(monotone, std::max(0.0, -min_eigenvalue(diffm)));
        }
    }
    sink.residual("projector-hermitian", herm, 1e-12);
    sink.residual("projector-idempotent", idem, 1e-10);
    sink.residual("projector-trace-law", trace_err, 1e-9);
    sink.residual("projector-monotone", monotone, 1e-10);

    if (basis) {
        double worst = 0.0;
        for (std::uint32_t m = 1; m < size; ++m) {
            const IndexSet a(m);
            for (int i : a.elements()) {
                const CVector v = basis->column(i);
                const CVector pv = matvec(family.projector(a), v);
                double acc = 0.0;
                for (size_t k = 0; k < v.size(); ++k)
                    acc += std::norm(pv[k] - v[k]);
                worst = std::max(worst, std::sqrt(acc));
            }
        }
        sink.residual("projector-fixes-generators", worst, 1e-10);

        bool ok = basis->degenerate_subsets().empty();
        std::string detail;
        for (const auto& g : basis->degenerate_subsets())
            detail += (detail.empty() ? "" : ", ") + g.subset.str();
        sink.exact("prebasis-genericity", ok,
                   ok ? "" : "dependent subsets: " + detail);
    }

    {
        auto mobius = operator_mobius(family);
        auto round = inverse_mobius(mobius);
        double worst = 0.0;
        for (std::uint32_t m = 0; m < size; ++m)
            worst = std::max(worst, (round[IndexSet(m)] -
                                     family.projector(IndexSet(m)))
                                        .frobenius_norm());
        sink.residual("operator-mobius-roundtrip", worst, 1e-12);
    }

    const auto ops = dressed_operators(family);
    {
        Matrix sum = Matrix::zero(d, d);
        for (const auto& th : ops.dressed)
            sum += th;
        sink.residual("dressed-sum-identity",
                      (sum - Matrix::identity(d)).frobenius_norm(), 1e-10);
    }
    {
        double worst = 0.0;
        for (const auto& sigma : ops.densities) {
            worst = std::max(worst, (sigma - sigma.adjoint()).frobenius_norm());
            worst = std::max(worst, std::abs(sigma.trace().real() - 1.0));
            worst = std::max(worst, std::abs(sigma.trace().imag()));
            const double lam = min_eigenvalue(sigma);
            worst = std::max(worst, std::max(0.0, -lam));
        }
        sink.residual("density-matrix-laws", worst, 1e-10);
    }
    sink.residual("sigma-two-routes", ops.route_residual, 1e-10);
    {
        double worst = 0.0;
        for (int a = 1; a <= std::min(d, n); ++a) {
            Matrix total = Matrix::zero(d, d);
            for (int i = 0; i < n; ++i)
                total += ops.increments[a - 1][i];
            const double expected = 1.0 / beta_exact(a, n).to_double();
            worst = std::max(worst, std::abs(total.trace().real() - expected));
        }
        sink.residual("increment-trace-law", worst, 1e-9);
    }

    // Kernel-level checks; a degenerate family cannot build one, which the
    // genericity check above already reports.
    try {
        const auto kernel = ResolutionKernel::build(ops);
        sink.residual("kernel-identity-resolution",
                      kernel.identity_residual().frobenius_norm(), 1e-12);
        {
            double worst = 0.0;
            for (const auto& r : kernel.increment_means()) {
                worst = std::max(worst, (r - r.adjoint()).frobenius_norm());
                worst = std::max(worst, std::abs(r.trace().real() - 1.0));
                worst = std::max(worst, std::max(0.0, -min_eigenvalue(r)));
            }
            sink.residual("kernel-density-matrices", worst, 1e-10);
        }
        sink.residual("semiaxis-resolution-integral",
                      (kernel.semiaxis_integral() - Matrix::identity(d))
                          .frobenius_norm(),
                      1e-10);
        {
            double worst = 0.0;
            for (int k = 0; k <= 20; ++k) {
                const double t = k / 20.0;
                worst = std::max(
                    worst, std::abs(kernel.diagonal_resolution(t).trace().real() -
                                    kernel.diagonal_trace(t)));
            }
            sink.residual("diagonal-trace-identity", worst, 1e-12);
        }
        {
            double worst = 0.0;
            Xoshiro256 rng(11);
            for (int k = 0; k < 25; ++k) {
                const double t = rng.next_unit();
                worst = std::max(worst, std::max(0.0, -min_eigenvalue(
                                                          kernel.diagonal_resolution(t))));
                const double x = t / (1.0 - t);
                worst = std::max(worst, std::max(0.0, -min_eigenvalue(
                                                          kernel.semiaxis_kernel(x))));
            }
            sink.residual("resolution-psd", worst, 1e-10);
        }
        {
            // Reproducing property at a few points.
            Xoshiro256 rng(13);
            double worst = 0.0;
            for (int k = 0; k < 3; ++k) {
                const double alpha = 0.2 + 2.0 * rng.next_unit();
                const Matrix lhs = integrate(
                    [&](double t) {
                        const double beta = t / (1.0 - t);
                        const double jac = 1.0 / ((1.0 - t) * (1.0 - t));
                        return kernel.semiaxis_kernel(alpha) *
                               kernel.semiaxis_kernel(beta) * jac;
                    },
                    0.0, 1.0, QuadratureOptions{1e-12, 1024});
                worst = std::max(worst, (lhs - kernel.semiaxis_kernel(alpha))
                                            .frobenius_norm());
            }
            sink.residual("reproducing-property", worst, 1e-8);
        }
        {
            bool ok = true;
            for (int k = 0; k <= n; ++k)
                ok = ok && TruncatedBinomial(n, k).integral() ==
                               Rational(k + 1, n + 1);
            sink.exact("truncated-binomial-integral", ok);
        }
    } catch (const std::exception& e) {
        sink.exact("kernel-buildable", false, e.what());
    }
}

void curve_resolution_checks(CheckSink& sink, const ProjectorFamily& family,
                             const MonotoneCurve& curve) {
    const Matrix total = curve_resolution_integral(family, curve);
    sink.residual("curve-resolution-integral",
                  (total - Matrix::identity(family.dimension())).frobenius_norm(),
                  1e-8);
}

void rho_checks(CheckSink& sink, const ProjectorFamily& family, const Matrix& rho) {
    const auto ops = dressed_operators(family);
    std::optional<ResolutionKernel> kernel_opt;
    try {
        kernel_opt = ResolutionKernel::build(ops);
    } catch (const std::exception&) {
        return; // already reported by kernel-buildable
    }
    const ResolutionKernel& kernel = *kernel_opt;
    const auto rep = OperatorRep::for_density(kernel, rho);

    {
        // Double integral of f over the quadrant.
        const double total = integrate(
            [&](double t1) {
                const double x1 = t1 / (1.0 - t1);
                const double j1 = 1.0 / ((1.0 - t1) * (1.0 - t1));
                const Complex row = integrate(
                    [&](double t2) {
                        const double x2 = t2 / (1.0 - t2);
                        const double j2 = 1.0 / ((1.0 - t2) * (1.0 - t2));
                        return rep.f(x1, x2) * j2;
                    },
                    0.0, 1.0, QuadratureOptions{1e-12, 256});
                return row.real() * j1;
            },
            0.0, 1.0, QuadratureOptions{1e-10, 256});
        sink.residual("f-normalization", std::abs(total - 1.0), 1e-8);
    }
    {
        // Both marginals equal the trace form.
        double worst = 0.0;
        for (double alpha : {0.1, 0.7, 1.0, 2.5, 9.0}) {
            const double direct = rep.marginal(alpha);
            const Complex row = integrate(
                [&](double t1) {
                    const double x1 = t1 / (1.0 - t1);
                    const double j1 = 1.0 / ((1.0 - t1) * (1.0 - t1));
                    return rep.f(x1, alpha) * j1;
                },
                0.0, 1.0, QuadratureOptions{1e-12, 256});
            const Complex col = integrate(
                [&](double t2) {
                    const double x2 = t2 / (1.0 - t2);
                    const double j2 = 1.0 / ((1.0 - t2) * (1.0 - t2));
                    return rep.f(alpha, x2) * j2;
                },
                0.0, 1.0, QuadratureOptions{1e-12, 256});
            worst = std::max(worst, std::abs(row.real() - direct));
            worst = std::max(worst, std::abs(col.real() - direct));
            worst = std::max(worst, std::abs(row.imag()));
            worst = std::max(worst, std::abs(col.imag()));
        }
        sink.residual("marginal-equality", worst, 1e-8);
    }
    {
        double min_val = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const double x = std::pow(10.0, -2.0 + 4.0 * k / 999.0);
            min_val = std::min(min_val, rep.marginal(x));
        }
        sink.residual("marginal-nonnegative", std::max(0.0, -min_val), 1e-12);
    }
    {
        Xoshiro256 rng(17);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double x1 = rng.next_unit() * 5.0;
            const double x2 = rng.next_unit() * 5.0;
            worst = std::max(worst,
                             std::abs(rep.f(x2, x1) - std::conj(rep.f(x1, x2))));
        }
        sink.residual("f-conjugate-symmetry", worst, 1e-12);
    }
    {
        // Moment formula against direct quadrature.
        double worst = 0.0;
        const int max_order = kernel.count() - kernel.dimension();
        for (int mu = 0; mu <= std::min(1, max_order); ++mu)
            for (int nu = 0; nu <= std::min(1, max_order); ++nu) {
                const Complex closed = rep.moment(mu, nu);
                const Complex quad = integrate(
                    [&](double t1) {
                        const double x1 = t1 / (1.0 - t1);
                        const double j1 = 1.0 / ((1.0 - t1) * (1.0 - t1));
                        return integrate(
                                   [&](double t2) {
                                       const double x2 = t2 / (1.0 - t2);
                                       const double j2 =
                                           1.0 / ((1.0 - t2) * (1.0 - t2));
                                       return rep.f(x1, x2) *
                                              (std::pow(x1, mu) * std::pow(x2, nu) *
                                               j2);
                                   },
                                   0.0, 1.0, QuadratureOptions{1e-12, 256}) *
                               j1;
                    },
                    0.0, 1.0, QuadratureOptions{1e-10, 256});
                worst = std::max(worst, std::abs(closed - quad));
            }
        sink.residual("moment-quadrature-agreement", worst, 1e-6);
    }
}

} // namespace

std::vector<CheckResult> run_verification(const InputDocument& doc) {
    CheckSink sink;

    if (doc.family)
        family_checks(sink, *doc.family);

    if (doc.probabilities) {
        if (doc.exact_mode())
            product_measure_checks<Rational>(sink, *doc.probabilities, 0.0);
        else
            product_measure_checks<double>(sink, doc.probabilities_double(),
                                           1e-12);
    }

    if (doc.family && doc.probabilities) {
        if (doc.exact_mode())
            set_side_checks<Rational>(sink, *doc.family, *doc.probabilities, 0.0);
        else
            set_side_checks<double>(sink, *doc.family, doc.probabilities_double(),
                                    1e-12);
        double_derivative_check(sink, *doc.family, doc.probabilities_double());
    }

    if (doc.family && doc.curve)
        curve_checks(sink, *doc.family, *doc.curve);

    if (doc.projectors) {
        projector_checks(sink, *doc.projectors,
                         doc.prebasis ? &*doc.prebasis : nullptr);
        if (doc.curve)
            curve_resolution_checks(sink, *doc.projectors, *doc.curve);
        if (doc.rho)
            rho_checks(sink, *doc.projectors, *doc.rho);
    }

    return sink.take();
}

Json checks_to_json(const std::vector<CheckResult>& checks) {
    Json out = Json::array();
    for (const auto& c : checks) {
        Json e;
        e["name"] = c.name;
        e["passed"] = c.passed;
        e["residual"] = c.residual;
        e["tolerance"] = c.tolerance;
        if (!c.detail.empty())
            e["detail"] = c.detail;
        out.push_back(std::move(e));
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (!c.passed)
            return false;
    return true;
}

} // namespace ri
