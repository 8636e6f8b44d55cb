#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ri {

/// Hard cap on the ground-set size: every structure here enumerates all 2^n
/// subsets as dense tables.
inline constexpr int kMaxGroundSize = 24;

inline void check_ground_size(int n) {
    if (n < 0 || n > kMaxGroundSize)
        throw std::invalid_argument("ground size must be in [0, 24], got " +
                                    std::to_string(n));
}

/// A subset of {0, ..., n-1} stored as a bit pattern (bit i <=> element i).
struct IndexSet {
    std::uint32_t bits = 0;

    constexpr IndexSet() = default;
    constexpr explicit IndexSet(std::uint32_t b) : bits(b) {}

    static constexpr IndexSet empty_set() { return IndexSet(0); }
    static constexpr IndexSet single(int i) { return IndexSet(1u << i); }
    static constexpr IndexSet full(int n) {
        return IndexSet(n == 0 ? 0u : (0xFFFFFFFFu >> (32 - n)));
    }

    constexpr int cardinality() const { return std::popcount(bits); }
    constexpr bool empty() const { return bits == 0; }
    constexpr bool contains(int i) const { return (bits >> i) & 1u; }
    constexpr bool is_subset_of(IndexSet o) const { return (bits & ~o.bits) == 0; }

    constexpr IndexSet with(int i) const { return IndexSet(bits | (1u << i)); }
    constexpr IndexSet without(int i) const { return IndexSet(bits & ~(1u << i)); }
    constexpr IndexSet complement(int n) const {
        return IndexSet(full(n).bits & ~bits);
    }

    friend constexpr IndexSet operator|(IndexSet a, IndexSet b) {
        return IndexSet(a.bits | b.bits);
    }
    friend constexpr IndexSet operator&(IndexSet a, IndexSet b) {
        return IndexSet(a.bits & b.bits);
    }
    friend constexpr bool operator==(IndexSet a, IndexSet b) { return a.bits == b.bits; }
    friend constexpr bool operator!=(IndexSet a, IndexSet b) { return a.bits != b.bits; }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (std::uint32_t m = bits; m != 0; m &= m - 1)
            out.push_back(std::countr_zero(m));
        return out;
    }

    /// Human-readable form like "{1,3}" using 1-based element labels.
    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (int e : elements()) {
            if (!first)
                s += ",";
            s += std::to_string(e + 1);
            first = false;
        }
        return s + "}";
    }
};

/// Visits every subset of `a`, including the empty set and `a` itself.
template <class F>
void for_each_subset(IndexSet a, F&& f) {
    std::uint32_t sub = a.bits;
    while (true) {
        f(IndexSet(sub));
        if (sub == 0)
            break;
        sub = (sub - 1) & a.bits;
    }
}

} // namespace ri
