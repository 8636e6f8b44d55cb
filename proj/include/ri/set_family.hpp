#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ri/index_set.hpp"
#include "ri/subset_table.hpp"

namespace ri {

/// A finite family of sets S_1..S_n over a labeled universe, with the union
/// cardinality of every subfamily precomputed as a dense 2^n table.
class SetFamily {
  public:
    SetFamily(std::vector<std::string> universe,
              std::vector<std::vector<std::string>> sets);

    int n() const { return int(member_blocks_.size()); }
    int universe_size() const { return int(universe_.size()); }
    const std::vector<std::string>& universe() const { return universe_; }
    const std::vector<std::vector<std::string>>& sets() const { return sets_; }

    /// |union of S_i, i in A|; zero for the empty subfamily.
    std::int64_t union_cardinality(IndexSet a) const;

    const SubsetTable<std::int64_t>& cardinality_table() const { return mu_; }

  private:
    std::vector<std::string> universe_;
    std::vector<std::vector<std::string>> sets_;
    std::vector<std::vector<std::uint64_t>> member_blocks_; // bitset per set
    SubsetTable<std::int64_t> mu_;
};

} // namespace ri
