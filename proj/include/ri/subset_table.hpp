#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ri/index_set.hpp"

namespace ri {

/// Total assignment of a value to every subset of {0, ..., n-1}.
///
/// The value type only needs += and -= for the transforms below; the
/// contraction additionally needs a mixed product `V * W`. Used with exact
/// rationals, plain integers and dense complex matrices alike.
template <class V>
class SubsetTable {
  public:
    explicit SubsetTable(int n, V init = V{})
        : n_(n), values_(std::size_t(1) << n, std::move(init)) {
        check_ground_size(n);
    }

    int ground_size() const { return n_; }
    std::size_t size() const { return values_.size(); }

    V& operator[](IndexSet a) { return values_[a.bits]; }
    const V& operator[](IndexSet a) const { return values_[a.bits]; }

    auto begin() { return values_.begin(); }
    auto end() { return values_.end(); }
    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

  private:
    int n_;
    std::vector<V> values_;
};

/// Signed subset sum d(A) = sum_{B subset A} (-1)^{|A|-|B|} f(B).
/// In-place Yates recursion, n * 2^(n-1) value subtractions.
template <class V>
SubsetTable<V> mobius_transform(SubsetTable<V> f) {
    const int n = f.ground_size();
    const std::uint32_t size = std::uint32_t(1) << n;
    for (int b = 0; b < n; ++b) {
        const std::uint32_t bit = std::uint32_t(1) << b;
        for (std::uint32_t m = 0; m < size; ++m)
            if (m & bit)
                f[IndexSet(m)] -= f[IndexSet(m ^ bit)];
    }
    return f;
}

/// Zeta transform f(A) = sum_{B subset A} d(B); inverse of mobius_transform.
template <class V>
SubsetTable<V> inverse_mobius(SubsetTable<V> d) {
    const int n = d.ground_size();
    const std::uint32_t size = std::uint32_t(1) << n;
    for (int b = 0; b < n; ++b) {
        const std::uint32_t bit = std::uint32_t(1) << b;
        for (std::uint32_t m = 0; m < size; ++m)
            if (m & bit)
                d[IndexSet(m)] += d[IndexSet(m ^ bit)];
    }
    return d;
}

/// Superset accumulation Q(A) = sum_{B superset A} q(B).
template <class V>
SubsetTable<V> cumulative_superset_sum(SubsetTable<V> q) {
    const int n = q.ground_size();
    const std::uint32_t size = std::uint32_t(1) << n;
    for (int b = 0; b < n; ++b) {
        const std::uint32_t bit = std::uint32_t(1) << b;
        for (std::uint32_t m = 0; m < size; ++m)
            if (!(m & bit))
                q[IndexSet(m)] += q[IndexSet(m | bit)];
    }
    return q;
}

/// Index marginal: sum of q(A) over all subsets A containing element i.
template <class V>
V index_marginal(const SubsetTable<V>& q, int i) {
    V acc{};
    const std::uint32_t size = std::uint32_t(1) << q.ground_size();
    const std::uint32_t bit = std::uint32_t(1) << i;
    for (std::uint32_t m = 0; m < size; ++m)
        if (m & bit)
            acc += q[IndexSet(m)];
    return acc;
}

/// Full contraction sum_A f(A) * q(A). Equals the contraction of the Mobius
/// transform of f against the superset accumulation of q.
template <class V, class W>
auto pair_contraction(const SubsetTable<V>& f, const SubsetTable<W>& q) {
    if (f.ground_size() != q.ground_size())
        throw std::invalid_argument("pair_contraction: ground size mismatch");
    const std::uint32_t size = std::uint32_t(1) << f.ground_size();
    auto acc = f[IndexSet(0)] * q[IndexSet(0)];
    for (std::uint32_t m = 1; m < size; ++m)
        acc += f[IndexSet(m)] * q[IndexSet(m)];
    return acc;
}

} // namespace ri
