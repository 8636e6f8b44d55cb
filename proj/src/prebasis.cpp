#include "ri/prebasis.hpp"

#include <cmath>
#include <stdexcept>

#include "ri/random_sets.hpp"

namespace ri {

namespace {
constexpr double kRankTol = 1e-10;       // singular values below tol * max are zero
constexpr double kProjectorHermTol = 1e-12;
constexpr double kProjectorIdemTol = 1e-10;
constexpr double kConflictTol = 1e-8;

Matrix columns_for_subset(const Matrix& all, IndexSet a) {
    Matrix m(all.rows(), a.cardinality());
    int j = 0;
    for (int i : a.elements()) {
        for (int r = 0; r < all.rows(); ++r)
            m(r, j) = all(r, i);
        ++j;
    }
    return m;
}

} // namespace

PreBasis PreBasis::validate(int dimension, std::vector<CVector> columns,
                            const PreBasisOptions& options) {
    const int d = dimension;
    const int n = int(columns.size());
    if (d < 1)
        throw std::invalid_argument("dimension must be at least 1");
    check_ground_size(n);
    if (n < d)
        throw std::invalid_argument("a pre-basis needs at least d vectors (n >= d)");
    for (int i = 0; i < n; ++i)
        if (int(columns[i].size()) != d)
            throw std::invalid_argument("vector " + std::to_string(i + 1) +
                                        " has wrong dimension");

    PreBasis basis;
    basis.d_ = d;
    basis.n_ = n;

    for (int i = 0; i < n; ++i) {
        const double norm = vector_norm(columns[i]);
        if (norm < 1e-12)
            throw std::invalid_argument("vector " + std::to_string(i + 1) +
                                        " is (numerically) zero");
        if (std::abs(norm - 1.0) > options.unit_tol) {
            basis.warnings_.push_back("vector " + std::to_string(i + 1) +
                                      " renormalized (norm was " +
                                      std::to_string(norm) + ")");
            for (auto& c : columns[i])
                c /= norm;
        }
    }
    basis.columns_ = Matrix::from_columns(columns);

    // Rate every d-subset by its smallest singular value.
    std::vector<int> pick(d);
    for (int i = 0; i < d; ++i)
        pick[i] = i;
    while (true) {
        IndexSet subset;
        for (int i : pick)
            subset = subset.with(i);
        const double sv =
            smallest_singular_value(columns_for_subset(basis.columns_, subset));
        if (sv <= options.genericity_threshold) {
            if (options.strict)
                throw std::invalid_argument(
                    "pre-basis rejected: columns " + subset.str() +
                    " are linearly dependent (smallest singular value " +
                    std::to_string(sv) + ")");
            basis.degenerate_.push_back({subset, sv});
            basis.warnings_.push_back("columns " + subset.str() +
                                      " are linearly dependent to tolerance");
        }
        // next combination
        int k = d - 1;
        while (k >= 0 && pick[k] == n - d + k)
            --k;
        if (k < 0)
            break;
        ++pick[k];
        for (int j = k + 1; j < d; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return basis;
}

Matrix subset_projector(const PreBasis& basis, IndexSet a) {
    if (!a.is_subset_of(IndexSet::full(basis.count())))
        throw std::out_of_range("subset refers to vectors outside the pre-basis");
    if (a.empty())
        return Matrix::zero(basis.dimension(), basis.dimension());
    return projector_onto_range(columns_for_subset(basis.columns(), a), kRankTol);
}

Matrix subset_projector_gram(const PreBasis& basis, IndexSet a) {
    if (a.empty())
        return Matrix::zero(basis.dimension(), basis.dimension());
    return projector_gram_formula(columns_for_subset(basis.columns(), a));
}

ProjectorFamily ProjectorFamily::from_prebasis(const PreBasis& basis) {
    ProjectorFamily family(basis.dimension(), basis.count(), Source::Computed);
    const std::uint32_t size = std::uint32_t(1) << basis.count();
    for (std::uint32_t m = 0; m < size; ++m)
        family.table_[IndexSet(m)] = subset_projector(basis, IndexSet(m));
    return family;
}

ProjectorFamily
ProjectorFamily::from_entries(int dimension, int count,
                              const std::map<std::uint32_t, Matrix>& entries,
                              const PreBasis* fill) {
    check_ground_size(count);
    if (dimension < 1 || count < 1)
        throw std::invalid_argument("projector family needs d >= 1, n >= 1");
    if (fill && (fill->dimension() != dimension || fill->count() != count))
        throw std::invalid_argument("pre-basis shape does not match projector family");

    ProjectorFamily family(dimension, count, Source::Explicit);
    const std::uint32_t size = std::uint32_t(1) << count;
    for (std::uint32_t m = 0; m < size; ++m) {
        const auto it = entries.find(m);
        if (it == entries.end()) {
            if (m == 0)
                continue; // the empty subset is always the zero matrix
            if (!fill)
                throw std::invalid_argument("projector for subset " +
                                            IndexSet(m).str() +
                                            " missing and no pre-basis given");
            family.table_[IndexSet(m)] = subset_projector(*fill, IndexSet(m));
            continue;
        }
        const Matrix& pi = it->second;
        if (pi.rows() != dimension || pi.cols() != dimension)
            throw std::invalid_argument("projector for subset " + IndexSet(m).str() +
                                        " has wrong shape");
        if (m == 0) {
            if (pi.frobenius_norm() > kProjectorIdemTol)
                throw std::invalid_argument("projector for the empty subset must be 0");
        } else {
            if (!is_hermitian(pi, kProjectorHermTol))
                throw std::invalid_argument("projector for subset " +
                                            IndexSet(m).str() + " is not Hermitian");
            if ((pi * pi - pi).frobenius_norm() > kProjectorIdemTol)
                throw std::invalid_argument("projector for subset " +
                                            IndexSet(m).str() +
                                            " is not idempotent to tolerance");
        }
        if (fill) {
            const Matrix computed = subset_projector(*fill, IndexSet(m));
            if ((computed - pi).frobenius_norm() > kConflictTol)
                throw std::invalid_argument(
                    "explicit projector for subset " + IndexSet(m).str() +
                    " conflicts with the one computed from the pre-basis");
        }
        family.table_[IndexSet(m)] = pi;
    }
    return family;
}

SubsetTable<Matrix> operator_mobius(const ProjectorFamily& family) {
    return mobius_transform(family.table());
}

DressedOperators dressed_operators(const ProjectorFamily& family) {
    const int d = family.dimension();
    const int n = family.count();
    DressedOperators ops;
    ops.dimension = d;
    ops.count = n;
    ops.mobius = operator_mobius(family);

    // theta(i) = sum over subsets B containing i of mobius(B) / |B|.
    ops.dressed.assign(n, Matrix::zero(d, d));
    const std::uint32_t size = std::uint32_t(1) << n;
    for (std::uint32_t m = 1; m < size; ++m) {
        const IndexSet b(m);
        const Matrix share = ops.mobius[b] * (1.0 / b.cardinality());
        for (int i : b.elements())
            ops.dressed[i] += share;
    }

    ops.densities.clear();
    ops.densities.reserve(n);
    for (int i = 0; i < n; ++i)
        ops.densities.push_back(ops.dressed[i] * (double(n) / double(d)));

    // increments[a-1][i] = sum over |A| = a, A containing i of
    // Pi(A) - Pi(A \ {i}).
    ops.increments.assign(n, std::vector<Matrix>(n, Matrix::zero(d, d)));
    for (std::uint32_t m = 1; m < size; ++m) {
        const IndexSet a(m);
        const int card = a.cardinality();
        for (int i : a.elements()) {
            ops.increments[card - 1][i] += family.projector(a);
            ops.increments[card - 1][i] -= family.projector(a.without(i));
        }
    }

    // Second route for sigma: (n/d) * sum_a B(a, n-a+1) increments[a-1][i].
    double residual = 0.0;
    for (int i = 0; i < n; ++i) {
        Matrix alt = Matrix::zero(d, d);
        for (int a = 1; a <= n; ++a)
            alt += ops.increments[a - 1][i] * beta_exact(a, n).to_double();
        alt *= double(n) / double(d);
        residual = std::max(residual, (alt - ops.densities[i]).frobenius_norm());
    }
    ops.route_residual = residual;
    return ops;
}

std::vector<CVector> expand_discrete(const DressedOperators& ops, const CVector& s) {
    if (int(s.size()) != ops.dimension)
        throw std::invalid_argument("vector dimension does not match the family");
    if (vector_norm(s) == 0.0)
        throw std::invalid_argument("cannot expand the zero vector");
    std::vector<CVector> parts;
    parts.reserve(ops.count);
    const double scale = double(ops.dimension) / double(ops.count);
    for (int i = 0; i < ops.count; ++i)
        parts.push_back(matvec(ops.densities[i] * scale, s));
    return parts;
}

namespace {

void check_prob_vector(const ProjectorFamily& family, const std::vector<double>& p) {
    if (int(p.size()) != family.count())
        throw std::invalid_argument("probability vector size does not match family");
    for (double c : p)
        check_probability(c);
}

} // namespace

Matrix random_projector_average(const ProjectorFamily& family,
                                const std::vector<double>& p) {
    check_prob_vector(family, p);
    auto dist = RandomSetDistribution<double>::build(p);
    Matrix acc = Matrix::zero(family.dimension(), family.dimension());
    const std::uint32_t size = std::uint32_t(1) << family.count();
    for (std::uint32_t m = 0; m < size; ++m) {
        const IndexSet a(m);
        acc += family.projector(a) * dist.subset_probability()[a];
    }
    return acc;
}

Matrix random_projector_average_corrections(const ProjectorFamily& family,
                                            const std::vector<double>& p) {
    check_prob_vector(family, p);
    auto dist = RandomSetDistribution<double>::build(p);
    const auto mobius = operator_mobius(family);
    Matrix acc = Matrix::zero(family.dimension(), family.dimension());
    const std::uint32_t size = std::uint32_t(1) << family.count();
    for (std::uint32_t m = 0; m < size; ++m) {
        const IndexSet a(m);
        acc += mobius[a] * dist.superset_probability()[a];
    }
    return acc;
}

Matrix random_projector_derivative(const ProjectorFamily& family,
                                   const std::vector<double>& p, int i) {
    check_prob_vector(family, p);
    const int n = family.count();
    if (i < 0 || i >= n)
        throw std::out_of_range("index out of range");

    // Product measure on the ground set without i (division-free form).
    std::vector<double> reduced;
    reduced.reserve(n - 1);
    for (int j = 0; j < n; ++j)
        if (j != i)
            reduced.push_back(p[j]);
    SubsetTable<double> table(n - 1, 0.0);
    table[IndexSet(0)] = 1.0;
    for (int j = 0; j < n - 1; ++j) {
        const std::uint32_t bit = std::uint32_t(1) << j;
        for (std::uint32_t m = 0; m < bit; ++m) {
            table[IndexSet(m | bit)] = table[IndexSet(m)] * reduced[j];
            table[IndexSet(m)] *= 1.0 - reduced[j];
        }
    }

    Matrix acc = Matrix::zero(family.dimension(), family.dimension());
    const std::uint32_t low_mask = (std::uint32_t(1) << i) - 1;
    for (std::uint32_t m = 0; m < (std::uint32_t(1) << (n - 1)); ++m) {
        const double w = table[IndexSet(m)];
        if (w == 0.0)
            continue;
        const std::uint32_t with_gap = (m & low_mask) | ((m & ~low_mask) << 1);
        const IndexSet without_i(with_gap);
        const IndexSet with_i(with_gap | (std::uint32_t(1) << i));
        acc += (family.projector(with_i) - family.projector(without_i)) * w;
    }
    return acc;
}

ProjectorSampleSummary sample_random_projector(const ProjectorFamily& family,
                                               const std::vector<double>& p,
                                               std::uint64_t seed,
                                               std::uint64_t samples) {
    check_prob_vector(family, p);
    if (samples < 1)
        throw std::invalid_argument("sample count must be at least 1");
    const int d = family.dimension();
    const int n = family.count();
    Xoshiro256 rng = Xoshiro256::stream(seed, 1);

    Matrix sum = Matrix::zero(d, d);
    Matrix sumsq = Matrix::zero(d, d); // entrywise sums of re^2 and im^2
    for (std::uint64_t k = 0; k < samples; ++k) {
        std::uint32_t mask = 0;
        for (int i = 0; i < n; ++i)
            if (bernoulli(rng, p[i]))
                mask |= std::uint32_t(1) << i;
        const Matrix& pi = family.projector(IndexSet(mask));
        sum += pi;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                sumsq(r, c) += Complex(pi(r, c).real() * pi(r, c).real(),
                                       pi(r, c).imag() * pi(r, c).imag());
    }

    ProjectorSampleSummary out;
    out.samples = samples;
    out.seed = seed;
    out.rng_name = Xoshiro256::kName;
    const double nn = double(samples);
    out.mean = sum * (1.0 / nn);
    out.standard_error = Matrix::zero(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            const double mre = out.mean(r, c).real();
            const double mim = out.mean(r, c).imag();
            const double vre = std::max(0.0, sumsq(r, c).real() / nn - mre * mre);
            const double vim = std::max(0.0, sumsq(r, c).imag() / nn - mim * mim);
            out.standard_error(r, c) =
                Complex(std::sqrt(vre / nn), std::sqrt(vim / nn));
        }
    return out;
}

} // namespace ri
