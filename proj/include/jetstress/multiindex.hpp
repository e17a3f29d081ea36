#pragma once

#include "jetstress/scalar.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace jetstress {

enum class IndexOrdering { any, non_decreasing, strictly_increasing };

/// A finite sequence of 1-based coordinate indices in 1..n.
///
/// The ordering parameter fixes which sequences are admissible:
/// `any` for general multi-indices I, `non_decreasing` for the symmetric
/// (boldface) indices used by jets and hyper-stresses, and `strictly_increasing`
/// for the indices lambda labelling alternating tensors. Construction validates
/// the range and ordering and throws DomainError otherwise.
template <IndexOrdering Ordering>
class BasicIndex {
public:
    BasicIndex() = default;

    BasicIndex(std::vector<int> entries, int dim) : entries_(std::move(entries)), dim_(dim)
    {
        if (dim_ < 0) throw DomainError("multi-index: negative dimension");
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            if (entries_[k] < 1 || entries_[k] > dim_) {
                throw DomainError("multi-index: entry " + std::to_string(entries_[k]) +
                                  " outside 1.." + std::to_string(dim_));
            }
            if (k == 0) continue;
            if constexpr (Ordering == IndexOrdering::non_decreasing) {
                if (entries_[k - 1] > entries_[k]) throw DomainError("multi-index: entries not non-decreasing");
            } else if constexpr (Ordering == IndexOrdering::strictly_increasing) {
                if (entries_[k - 1] >= entries_[k]) throw DomainError("multi-index: entries not strictly increasing");
            }
        }
    }

    BasicIndex(std::initializer_list<int> entries, int dim) : BasicIndex(std::vector<int>(entries), dim) {}

    const std::vector<int>& entries() const { return entries_; }
    int dim() const { return dim_; }
    int size() const { return static_cast<int>(entries_.size()); }
    bool empty() const { return entries_.empty(); }
    int operator[](int k) const { return entries_[static_cast<std::size_t>(k)]; }

    auto operator<=>(const BasicIndex&) const = default;
    bool operator==(const BasicIndex&) const = default;

    /// `(1,3)`; the empty index is `()`.
    std::string to_string() const
    {
        std::string out = "(";
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(entries_[k]);
        }
        return out + ")";
    }

private:
    std::vector<int> entries_;
    int dim_ = 0;
};

using MultiIndex = BasicIndex<IndexOrdering::any>;
using NonDecreasingIndex = BasicIndex<IndexOrdering::non_decreasing>;
using IncreasingIndex = BasicIndex<IndexOrdering::strictly_increasing>;

/// Parses `(1,3)` (whitespace tolerated) against dimension n.
template <IndexOrdering O>
BasicIndex<O> parse_index(const std::string& text, int dim);

/// Strictly increasing index on the entries of 1..n not in lambda.
IncreasingIndex complement(const IncreasingIndex& lambda);

/// Levi-Civita symbol: 0 on repetition, otherwise the sign of the permutation
/// taking (1..n) to I. Requires |I| = n.
int perm_sign(const MultiIndex& index);

/// Sign of the permutation sorting the concatenation of lambda and mu (any total
/// length), 0 if they share an entry. This is the sign of
/// dX^lambda ^ dX^mu = sign * dX^{lambda u mu}.
int merge_sign(const IncreasingIndex& lambda, const IncreasingIndex& mu);

/// epsilon^{lambda mu}: perm_sign of the concatenation when it is a permutation of
/// 1..n; 0 on overlap. Requires |lambda| + |mu| = n.
int concat_sign(const IncreasingIndex& lambda, const IncreasingIndex& mu);

/// Sorted union of two disjoint increasing indices.
IncreasingIndex merge_union(const IncreasingIndex& lambda, const IncreasingIndex& mu);

/// Entries of lambda not in mu; requires mu to be a subset of lambda.
IncreasingIndex set_difference(const IncreasingIndex& lambda, const IncreasingIndex& mu);
bool is_subset(const IncreasingIndex& mu, const IncreasingIndex& lambda);

/// All C(n,p) strictly increasing p-indices, lexicographic.
std::vector<IncreasingIndex> enumerate_increasing(int n, int p);

/// All non-decreasing indices of length exactly k, lexicographic.
std::vector<NonDecreasingIndex> enumerate_non_decreasing(int n, int k);

/// All non-decreasing indices of length 0..max_len, grouped by length then lexicographic.
std::vector<NonDecreasingIndex> enumerate_non_decreasing_upto(int n, int max_len);

/// All n^k multi-indices of length k in row-major order (last entry varies fastest).
std::vector<MultiIndex> enumerate_multi(int n, int k);

/// Row-major position of a length-k multi-index among enumerate_multi(n, k).
std::size_t row_major_offset(const MultiIndex& index);

NonDecreasingIndex sorted(const MultiIndex& index);

/// Number of distinct multi-indices that sort to the given non-decreasing one.
std::uint64_t permutation_count(const NonDecreasingIndex& index);

std::uint64_t binomial(int n, int k);

/// Binary label p of an array in an iterated-jet representation.
///
/// Generation G_p = floor(log2 p) + 1 for p >= 1 and G_0 = 0; arity |p| is the
/// number of binary ones, which is also the length of the multi-index attached
/// to the array.
class BinaryNodeIndex {
public:
    BinaryNodeIndex() = default;
    explicit BinaryNodeIndex(std::uint32_t value) : value_(value) {}

    std::uint32_t value() const { return value_; }
    int generation() const;
    int arity() const;

    /// Binary digit string; `0` for the base array.
    std::string to_string() const;
    static BinaryNodeIndex parse(const std::string& digits);

    auto operator<=>(const BinaryNodeIndex&) const = default;

private:
    std::uint32_t value_ = 0;
};

/// Child array 2^{r-1} + q holding the derivatives of array q in generation r.
/// Requires G_q <= r - 1.
BinaryNodeIndex child_index(BinaryNodeIndex q, int r);

}  // namespace jetstress
