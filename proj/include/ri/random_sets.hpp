#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ri/index_set.hpp"
#include "ri/rational.hpp"
#include "ri/rng.hpp"
#include "ri/set_family.hpp"
#include "ri/subset_table.hpp"

namespace ri {

inline bool bernoulli(Xoshiro256& g, double p) { return g.next_unit() < p; }

/// Exact Bernoulli draw for a rational inclusion probability: accepts iff
/// u / 2^64 < num/den, decided in integer arithmetic whenever it fits.
inline bool bernoulli(Xoshiro256& g, const Rational& p) {
    const std::uint64_t u = g.next();
    const int128 num = p.num();
    const int128 den = p.den();
    if (num <= 0)
        return false;
    if (num >= den)
        return true;
    if (num < (int128(1) << 62) && den < (int128(1) << 62)) {
        const unsigned __int128 lhs =
            static_cast<unsigned __int128>(u) * static_cast<unsigned __int128>(den);
        const unsigned __int128 rhs = static_cast<unsigned __int128>(num) << 64;
        return lhs < rhs;
    }
    return static_cast<long double>(u) <
           static_cast<long double>(num) / static_cast<long double>(den) * 0x1.0p64L;
}

template <class T>
void check_probability(const T& p) {
    if (p < T(0) || T(1) < p)
        throw std::invalid_argument("probability component outside [0, 1]");
}

inline void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("probability component outside [0, 1]");
}

/// Product measure on the subsets of {0..n-1}: element i is included
/// independently with probability p_i. Holds the three dense tables
/// (subset probability, superset probability, avoidance probability).
/// T is an exact Rational or a double.
template <class T>
class RandomSetDistribution {
  public:
    static RandomSetDistribution build(std::vector<T> p) {
        const int n = int(p.size());
        check_ground_size(n);
        if (n == 0)
            throw std::invalid_argument("probability vector is empty");
        for (const auto& c : p)
            check_probability(c);

        RandomSetDistribution dist(std::move(p));
        auto& small = dist.subset_;
        auto& big = dist.superset_;
        auto& avoid = dist.avoidance_;
        small[IndexSet(0)] = T(1);
        big[IndexSet(0)] = T(1);
        avoid[IndexSet(0)] = T(1);
        // Doubling construction: extend the measure one ground element at a
        // time. Division-free, so p_i in {0, 1} needs no special casing.
        for (int i = 0; i < n; ++i) {
            const std::uint32_t bit = std::uint32_t(1) << i;
            const T& pi = dist.p_[i];
            const T qi = T(1) - pi;
            for (std::uint32_t m = 0; m < bit; ++m) {
                small[IndexSet(m | bit)] = small[IndexSet(m)] * pi;
                small[IndexSet(m)] = small[IndexSet(m)] * qi;
                big[IndexSet(m | bit)] = big[IndexSet(m)] * pi;
                avoid[IndexSet(m | bit)] = avoid[IndexSet(m)] * qi;
            }
        }
        return dist;
    }

    int n() const { return int(p_.size()); }
    const std::vector<T>& p() const { return p_; }

    const SubsetTable<T>& subset_probability() const { return subset_; }
    const SubsetTable<T>& superset_probability() const { return superset_; }
    const SubsetTable<T>& avoidance_probability() const { return avoidance_; }

    /// Mean number of included indices: p_1 + ... + p_n.
    T average_index_cardinality() const {
        T acc{};
        for (const auto& c : p_)
            acc += c;
        return acc;
    }

    /// Mean union cardinality, contracted against the subset probabilities.
    auto average_union_cardinality(const SetFamily& family) const {
        require_same_ground(family);
        return pair_contraction(family.cardinality_table(), subset_);
    }

    /// Same quantity through the overlap corrections and the cumulative
    /// superset probabilities; must agree with the route above.
    auto average_union_cardinality_corrections(const SetFamily& family) const {
        require_same_ground(family);
        auto overlaps = mobius_transform(family.cardinality_table());
        return pair_contraction(overlaps, superset_);
    }

    /// d(average union cardinality)/dp_i, evaluated as
    /// sum over A containing i of [mu(A) - mu(A\{i})] * prod_{j in A\{i}} p_j
    /// * prod_{j not in A} (1 - p_j). The product excludes index i, so the
    /// derivative is defined at p_i = 0 and p_i = 1 as well. Non-negative.
    auto partial_derivative(const SetFamily& family, int i) const {
        require_same_ground(family);
        const int n = this->n();
        if (i < 0 || i >= n)
            throw std::out_of_range("index out of range");

        std::vector<T> reduced;
        reduced.reserve(n - 1);
        for (int j = 0; j < n; ++j)
            if (j != i)
                reduced.push_back(p_[j]);

        // Product measure on the ground set without i.
        SubsetTable<T> table(n - 1, T{});
        table[IndexSet(0)] = T(1);
        for (int j = 0; j < n - 1; ++j) {
            const std::uint32_t bit = std::uint32_t(1) << j;
            const T qj = T(1) - reduced[j];
            for (std::uint32_t m = 0; m < bit; ++m) {
                table[IndexSet(m | bit)] = table[IndexSet(m)] * reduced[j];
                table[IndexSet(m)] = table[IndexSet(m)] * qj;
            }
        }

        const auto& mu = family.cardinality_table();
        const std::uint32_t low_mask = (std::uint32_t(1) << i) - 1;
        auto acc = std::int64_t(0) * T(1);
        for (std::uint32_t m = 0; m < (std::uint32_t(1) << (n - 1)); ++m) {
            const std::uint32_t with_gap = (m & low_mask) | ((m & ~low_mask) << 1);
            const IndexSet without_i(with_gap);
            const IndexSet with_i(with_gap | (std::uint32_t(1) << i));
            acc += (mu[with_i] - mu[without_i]) * table[IndexSet(m)];
        }
        return acc;
    }

  private:
    explicit RandomSetDistribution(std::vector<T> p)
        : p_(std::move(p)), subset_(int(p_.size())), superset_(int(p_.size())),
          avoidance_(int(p_.size())) {}

    void require_same_ground(const SetFamily& family) const {
        if (family.n() != n())
            throw std::invalid_argument("family and probability vector sizes differ");
    }

    std::vector<T> p_;
    SubsetTable<T> subset_;
    SubsetTable<T> superset_;
    SubsetTable<T> avoidance_;
};

/// Empirical summary of repeated independent-inclusion draws.
struct SetSampleSummary {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::string rng_name;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> subset_counts; // by mask
    std::vector<double> index_frequency;
    double mean_index_cardinality = 0.0;
    double se_index_cardinality = 0.0;
    bool has_union_stats = false;
    double mean_union_cardinality = 0.0;
    double se_union_cardinality = 0.0;
};

/// Draws `samples` subsets; when `family` is given, also accumulates the
/// union cardinality statistics.
template <class T>
SetSampleSummary sample_random_sets(const RandomSetDistribution<T>& dist,
                                    const SetFamily* family, std::uint64_t seed,
                                    std::uint64_t samples) {
    if (samples < 1)
        throw std::invalid_argument("sample count must be at least 1");
    if (family && family->n() != dist.n())
        throw std::invalid_argument("family and probability vector sizes differ");

    const int n = dist.n();
    Xoshiro256 rng = Xoshiro256::stream(seed, 0);

    std::map<std::uint32_t, std::uint64_t> counts;
    std::vector<std::uint64_t> per_index(n, 0);
    double sum_card = 0.0, sumsq_card = 0.0;
    double sum_union = 0.0, sumsq_union = 0.0;

    for (std::uint64_t k = 0; k < samples; ++k) {
        std::uint32_t mask = 0;
        for (int i = 0; i < n; ++i)
            if (bernoulli(rng, dist.p()[i]))
                mask |= std::uint32_t(1) << i;
        ++counts[mask];
        const IndexSet a(mask);
        for (int i : a.elements())
            ++per_index[i];
        const double card = a.cardinality();
        sum_card += card;
        sumsq_card += card * card;
        if (family) {
            const double u = double(family->cardinality_table()[a]);
            sum_union += u;
            sumsq_union += u * u;
        }
    }

    SetSampleSummary out;
    out.samples = samples;
    out.seed = seed;
    out.rng_name = Xoshiro256::kName;
    out.subset_counts.assign(counts.begin(), counts.end());
    out.index_frequency.resize(n);
    for (int i = 0; i < n; ++i)
        out.index_frequency[i] = double(per_index[i]) / double(samples);

    const double nn = double(samples);
    auto standard_error = [&](double sum, double sumsq) {
        const double mean = sum / nn;
        const double var = std::max(0.0, sumsq / nn - mean * mean);
        return std::sqrt(var / nn);
    };
    out.mean_index_cardinality = sum_card / nn;
    out.se_index_cardinality = standard_error(sum_card, sumsq_card);
    if (family) {
        out.has_union_stats = true;
        out.mean_union_cardinality = sum_union / nn;
        out.se_union_cardinality = standard_error(sum_union, sumsq_union);
    }
    return out;
}

} // namespace ri
