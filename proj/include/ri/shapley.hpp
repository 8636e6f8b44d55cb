#pragma once

#include <cstdint>
#include <vector>

#include "ri/rational.hpp"
#include "ri/set_family.hpp"

namespace ri {

/// Everything the equal-division allocation of union cardinality produces for
/// one family: per-set shares, per-level increments and their weighted means.
struct ShapleyReport {
    std::vector<Rational> shapley;                   // M(i), one per set
    std::vector<std::vector<std::int64_t>> lambda;   // lambda[a-1][i], a = 1..n
    std::vector<Rational> increment_means;           // r_a = B(a,n-a+1) * sum_i lambda_a(i)
    std::vector<std::int64_t> level_sums;            // mu_a = sum_{|A|=a} mu(A)
    std::vector<Rational> beta;                      // B(a, n-a+1), a = 1..n
};

/// Share of mu(A) allocated to set i by splitting every overlap correction
/// equally among its owners: sum over B in A containing i of d(B)/|B|.
/// Throws if i is not a member of A.
Rational shapley_direct(const SetFamily& family, IndexSet a, int i);

/// Same share over the full family, computed from ordering statistics:
/// sum_a B(a, n-a+1) * lambda_a(i). Agrees exactly with shapley_direct.
Rational shapley_permutation(const SetFamily& family, int i);

/// lambda[a-1][i] = sum over subsets A of size a containing i of
/// mu(A) - mu(A \ {i}).
std::vector<std::vector<std::int64_t>> lambda_table(const SetFamily& family);

ShapleyReport increment_totals(const SetFamily& family);

} // namespace ri
