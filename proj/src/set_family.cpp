#include "ri/set_family.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ri {

SetFamily::SetFamily(std::vector<std::string> universe,
                     std::vector<std::vector<std::string>> sets)
    : universe_(std::move(universe)), sets_(std::move(sets)), mu_(0) {
    const int n = int(sets_.size());
    if (n < 1)
        throw std::invalid_argument("set family needs at least one set");
    check_ground_size(n);

    std::unordered_map<std::string, int> position;
    for (int u = 0; u < int(universe_.size()); ++u) {
        if (!position.emplace(universe_[u], u).second)
            throw std::invalid_argument("duplicate universe label: " + universe_[u]);
    }

    const size_t blocks = (universe_.size() + 63) / 64;
    member_blocks_.assign(n, std::vector<std::uint64_t>(blocks, 0));
    for (int i = 0; i < n; ++i) {
        std::unordered_set<std::string> seen;
        for (const auto& label : sets_[i]) {
            auto it = position.find(label);
            if (it == position.end())
                throw std::invalid_argument("set member '" + label +
                                            "' is not in the universe");
            if (!seen.insert(label).second)
                throw std::invalid_argument("duplicate member '" + label +
                                            "' in set " + std::to_string(i + 1));
            member_blocks_[i][it->second / 64] |= std::uint64_t(1)
                                                  << (it->second % 64);
        }
    }

    // mu(A) by peeling the lowest index off each subfamily. The transient
    // union bitsets live in one flat array (2^n * blocks words).
    mu_ = SubsetTable<std::int64_t>(n, 0);
    std::vector<std::uint64_t> unions((std::size_t(1) << n) * blocks, 0);
    for (std::uint32_t m = 1; m < (std::uint32_t(1) << n); ++m) {
        const int low = std::countr_zero(m);
        const std::uint32_t rest = m & (m - 1);
        std::int64_t count = 0;
        std::uint64_t* row = unions.data() + std::size_t(m) * blocks;
        const std::uint64_t* prev = unions.data() + std::size_t(rest) * blocks;
        for (size_t b = 0; b < blocks; ++b) {
            row[b] = prev[b] | member_blocks_[low][b];
            count += std::popcount(row[b]);
        }
        mu_[IndexSet(m)] = count;
    }
}

std::int64_t SetFamily::union_cardinality(IndexSet a) const {
    if (!a.is_subset_of(IndexSet::full(n())))
        throw std::out_of_range("subset refers to indices outside the family");
    return mu_[a];
}

} // namespace ri
