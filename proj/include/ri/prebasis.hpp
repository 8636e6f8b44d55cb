#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ri/index_set.hpp"
#include "ri/matrix.hpp"
#include "ri/rational.hpp"
#include "ri/rng.hpp"
#include "ri/subset_table.hpp"

namespace ri {

struct PreBasisOptions {
    bool strict = false;
    double genericity_threshold = 1e-8; // smallest singular value per d-subset
    double unit_tol = 1e-12;
};

struct GenericityRecord {
    IndexSet subset;
    double smallest_singular_value = 0.0;
};

/// n >= d unit vectors spanning a d-dimensional space. Validation checks unit
/// norms (renormalizing with a warning) and rates every d-subset of columns
/// by its smallest singular value; subsets at or below the threshold are
/// recorded, and rejected outright in strict mode.
class PreBasis {
  public:
    static PreBasis validate(int dimension, std::vector<CVector> columns,
                             const PreBasisOptions& options = {});

    int dimension() const { return d_; }
    int count() const { return n_; }
    const Matrix& columns() const { return columns_; }
    CVector column(int i) const { return columns_.column(i); }

    const std::vector<GenericityRecord>& degenerate_subsets() const {
        return degenerate_;
    }
    const std::vector<std::string>& warnings() const { return warnings_; }

  private:
    PreBasis() = default;

    int d_ = 0, n_ = 0;
    Matrix columns_;
    std::vector<GenericityRecord> degenerate_;
    std::vector<std::string> warnings_;
};

/// Orthogonal projector onto the span of the columns of `basis` indexed by
/// `a`, via rank-revealing orthonormalization.
Matrix subset_projector(const PreBasis& basis, IndexSet a);

/// Cross-check route: the Gram pseudo-inverse formula. Valid only when the
/// selected columns are independent.
Matrix subset_projector_gram(const PreBasis& basis, IndexSet a);

/// The full 2^n table of span projectors, either computed from a pre-basis
/// or supplied explicitly (the latter lets reference projector tables be used
/// verbatim, even when they disagree with the vectors they came from).
class ProjectorFamily {
  public:
    enum class Source { Computed, Explicit };

    static ProjectorFamily from_prebasis(const PreBasis& basis);

    /// Explicit entries keyed by subset bit pattern. Missing entries are
    /// filled from `fill` when given; an explicit entry that disagrees with
    /// the one computed from `fill` is a hard error. Every entry must be
    /// Hermitian and idempotent to tolerance, with the empty subset zero.
    static ProjectorFamily
    from_entries(int dimension, int count,
                 const std::map<std::uint32_t, Matrix>& entries,
                 const PreBasis* fill = nullptr);

    int dimension() const { return d_; }
    int count() const { return n_; }
    Source source() const { return source_; }
    const Matrix& projector(IndexSet a) const { return table_[a]; }
    const SubsetTable<Matrix>& table() const { return table_; }

  private:
    ProjectorFamily(int d, int n, Source source)
        : d_(d), n_(n), source_(source), table_(n, Matrix::zero(d, d)) {}

    int d_, n_;
    Source source_;
    SubsetTable<Matrix> table_;
};

/// Signed subset sums of the projector table (same transform as for scalars,
/// with matrix values).
SubsetTable<Matrix> operator_mobius(const ProjectorFamily& family);

/// The renormalized operator family attached to a projector table.
struct DressedOperators {
    int dimension = 0;
    int count = 0;
    SubsetTable<Matrix> mobius{0};             // signed subset sums
    std::vector<Matrix> dressed;               // theta(i); sums to identity
    std::vector<Matrix> densities;             // sigma(i) = (n/d) theta(i)
    std::vector<std::vector<Matrix>> increments; // increments[a-1][i], a = 1..n
    double route_residual = 0.0; // max |sigma(i) - Beta-weighted increment sum|
};

DressedOperators dressed_operators(const ProjectorFamily& family);

/// Components s_i = (d/n) sigma(i) s; they sum back to s.
std::vector<CVector> expand_discrete(const DressedOperators& ops, const CVector& s);

/// Mean of the projector-valued random variable under the product measure:
/// sum_A p(A) Pi(A). Positive semi-definite.
Matrix random_projector_average(const ProjectorFamily& family,
                                const std::vector<double>& p);

/// Same mean through the signed subset sums and cumulative probabilities.
Matrix random_projector_average_corrections(const ProjectorFamily& family,
                                            const std::vector<double>& p);

/// Division-free d(mean)/dp_i; positive semi-definite.
Matrix random_projector_derivative(const ProjectorFamily& family,
                                   const std::vector<double>& p, int i);

struct ProjectorSampleSummary {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string rng_name;
    Matrix mean;
    Matrix standard_error; // entrywise; real/imag parts hold se(re), se(im)
};

ProjectorSampleSummary sample_random_projector(const ProjectorFamily& family,
                                               const std::vector<double>& p,
                                               std::uint64_t seed,
                                               std::uint64_t samples);

} // namespace ri
