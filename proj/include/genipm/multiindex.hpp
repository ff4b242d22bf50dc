#pragma once

#include <cstdint>
#include <vector>

namespace genipm {

// Multi-index in N^d. Comparisons are lexicographic on the entry vector.
struct MultiIndex {
    std::vector<int> entries;

    std::size_t dims() const { return entries.size(); }
    int order() const;                  // |k| = sum of entries
    std::uint64_t factorial() const;    // k! = prod entries!, guarded for order <= 20
    bool is_zero() const { return order() == 0; }

    bool operator==(const MultiIndex& o) const { return entries == o.entries; }
    bool operator<(const MultiIndex& o) const { return entries < o.entries; }
};

std::uint64_t factorial_u64(int n);  // n <= 20

// All k in N^d with |k| <= max_order, lexicographically sorted.
// Throws length_error if the count would exceed the enumeration cap.
std::vector<MultiIndex> enumerate_multiindices(std::size_t d, int max_order, bool include_zero);

// The set {beta : 0 < beta <= gamma componentwise}, lexicographically sorted.
// This fixed order is what r_set indexes into.
std::vector<MultiIndex> lower_multiindices(const MultiIndex& gamma);

// All rho in N^r with sum_j rho_j * beta(j) = gamma and |rho| = a, where
// beta(1..r) = lower_multiindices(gamma). Returned in lexicographic order.
std::vector<std::vector<int>> r_set(const MultiIndex& gamma, int a);

}  // namespace genipm
