#include "ri/shapley.hpp"

#include <stdexcept>

namespace ri {

Rational shapley_direct(const SetFamily& family, IndexSet a, int i) {
    const int n = family.n();
    if (i < 0 || i >= n)
        throw std::out_of_range("set index out of range");
    if (!a.contains(i))
        throw std::invalid_argument("shapley_direct: index " + std::to_string(i + 1) +
                                    " is not in " + a.str());
    if (!a.is_subset_of(IndexSet::full(n)))
        throw std::out_of_range("subset refers to indices outside the family");

    SubsetTable<std::int64_t> overlaps = mobius_transform(family.cardinality_table());
    Rational acc;
    for_each_subset(a, [&](IndexSet b) {
        if (b.contains(i))
            acc += Rational(overlaps[b], b.cardinality());
    });
    return acc;
}

std::vector<std::vector<std::int64_t>> lambda_table(const SetFamily& family) {
    const int n = family.n();
    const auto& mu = family.cardinality_table();
    std::vector<std::vector<std::int64_t>> lambda(n, std::vector<std::int64_t>(n, 0));
    for (std::uint32_t m = 1; m < (std::uint32_t(1) << n); ++m) {
        const IndexSet a(m);
        const int card = a.cardinality();
        for (int i : a.elements())
            lambda[card - 1][i] += mu[a] - mu[a.without(i)];
    }
    return lambda;
}

Rational shapley_permutation(const SetFamily& family, int i) {
    const int n = family.n();
    if (i < 0 || i >= n)
        throw std::out_of_range("set index out of range");
    const auto lambda = lambda_table(family);
    Rational acc;
    for (int a = 1; a <= n; ++a)
        acc += beta_exact(a, n) * Rational(lambda[a - 1][i]);
    return acc;
}

ShapleyReport increment_totals(const SetFamily& family) {
    const int n = family.n();
    ShapleyReport report;
    report.lambda = lambda_table(family);

    report.beta.reserve(n);
    for (int a = 1; a <= n; ++a)
        report.beta.push_back(beta_exact(a, n));

    report.increment_means.reserve(n);
    for (int a = 1; a <= n; ++a) {
        std::int64_t total = 0;
        for (int i = 0; i < n; ++i)
            total += report.lambda[a - 1][i];
        report.increment_means.push_back(report.beta[a - 1] * Rational(total));
    }

    report.shapley.reserve(n);
    for (int i = 0; i < n; ++i) {
        Rational m;
        for (int a = 1; a <= n; ++a)
            m += report.beta[a - 1] * Rational(report.lambda[a - 1][i]);
        report.shapley.push_back(m);
    }

    report.level_sums.assign(n, 0);
    const auto& mu = family.cardinality_table();
    for (std::uint32_t m = 1; m < (std::uint32_t(1) << n); ++m)
        report.level_sums[IndexSet(m).cardinality() - 1] += mu[IndexSet(m)];

    return report;
}

} // namespace ri
