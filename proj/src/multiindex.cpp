#include "jetstress/multiindex.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace jetstress {
namespace {

// Counts inversions with a merge sort; the parity is the permutation sign.
std::uint64_t count_inversions(std::vector<int>& v, std::vector<int>& scratch, std::size_t lo, std::size_t hi)
{
    if (hi - lo < 2) return 0;
    std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = count_inversions(v, scratch, lo, mid) + count_inversions(v, scratch, mid, hi);
    std::size_t a = lo, b = mid, out = lo;
    while (a < mid && b < hi) {
        if (v[a] <= v[b]) {
            scratch[out++] = v[a++];
        } else {
            inv += mid - a;
            scratch[out++] = v[b++];
        }
    }
    while (a < mid) scratch[out++] = v[a++];
    while (b < hi) scratch[out++] = v[b++];
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

// Sign of the sorting permutation of a sequence, 0 on repetition.
int sorting_sign(std::vector<int> v)
{
    std::vector<int> check = v;
    std::sort(check.begin(), check.end());
    if (std::adjacent_find(check.begin(), check.end()) != check.end()) return 0;
    std::vector<int> scratch(v.size());
    return count_inversions(v, scratch, 0, v.size()) % 2 == 0 ? 1 : -1;
}

void require_same_dim(int a, int b, const char* what)
{
    if (a != b) throw DomainError(std::string(what) + ": dimension mismatch");
}

}  // namespace

template <IndexOrdering O>
BasicIndex<O> parse_index(const std::string& text, int dim)
{
    std::string body;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) body += c;
    }
    if (body.size() < 2 || body.front() != '(' || body.back() != ')') {
        throw DomainError("multi-index: expected '(i,j,...)', got '" + text + "'");
    }
    body = body.substr(1, body.size() - 2);
    std::vector<int> entries;
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t comma = body.find(',', pos);
        std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            throw DomainError("multi-index: bad entry '" + item + "'");
        }
        entries.push_back(std::stoi(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
        if (pos == body.size()) throw DomainError("multi-index: trailing comma");
    }
    return BasicIndex<O>(std::move(entries), dim);
}

template MultiIndex parse_index<IndexOrdering::any>(const std::string&, int);
template NonDecreasingIndex parse_index<IndexOrdering::non_decreasing>(const std::string&, int);
template IncreasingIndex parse_index<IndexOrdering::strictly_increasing>(const std::string&, int);

IncreasingIndex complement(const IncreasingIndex& lambda)
{
    std::vector<int> out;
    const auto& e = lambda.entries();
    for (int i = 1; i <= lambda.dim(); ++i) {
        if (!std::binary_search(e.begin(), e.end(), i)) out.push_back(i);
    }
    return IncreasingIndex(std::move(out), lambda.dim());
}

int perm_sign(const MultiIndex& index)
{
    if (index.size() != index.dim()) {
        throw DomainError("perm_sign: |I| = " + std::to_string(index.size()) + " but n = " + std::to_string(index.dim()));
    }
    return sorting_sign(index.entries());
}

int merge_sign(const IncreasingIndex& lambda, const IncreasingIndex& mu)
{
    require_same_dim(lambda.dim(), mu.dim(), "merge_sign");
    // Inversions of a concatenation of two sorted runs: for each entry of mu,
    // the number of entries of lambda greater than it.
    const auto& a = lambda.entries();
    const auto& b = mu.entries();
    std::uint64_t inversions = 0;
    for (int x : b) {
        auto it = std::lower_bound(a.begin(), a.end(), x);
        if (it != a.end() && *it == x) return 0;
        inversions += static_cast<std::uint64_t>(a.end() - it);
    }
    return inversions % 2 == 0 ? 1 : -1;
}

int concat_sign(const IncreasingIndex& lambda, const IncreasingIndex& mu)
{
    require_same_dim(lambda.dim(), mu.dim(), "concat_sign");
    if (lambda.size() + mu.size() != lambda.dim()) {
        throw DomainError("concat_sign: |lambda| + |mu| must equal n");
    }
    std::vector<int> joined = lambda.entries();
    joined.insert(joined.end(), mu.entries().begin(), mu.entries().end());
    return perm_sign(MultiIndex(std::move(joined), lambda.dim()));
}

IncreasingIndex merge_union(const IncreasingIndex& lambda, const IncreasingIndex& mu)
{
    require_same_dim(lambda.dim(), mu.dim(), "merge_union");
    std::vector<int> out;
    std::merge(lambda.entries().begin(), lambda.entries().end(), mu.entries().begin(), mu.entries().end(),
               std::back_inserter(out));
    return IncreasingIndex(std::move(out), lambda.dim());
}

bool is_subset(const IncreasingIndex& mu, const IncreasingIndex& lambda)
{
    return std::includes(lambda.entries().begin(), lambda.entries().end(), mu.entries().begin(), mu.entries().end());
}

IncreasingIndex set_difference(const IncreasingIndex& lambda, const IncreasingIndex& mu)
{
    require_same_dim(lambda.dim(), mu.dim(), "set_difference");
    if (!is_subset(mu, lambda)) throw DomainError("set_difference: not a subset");
    std::vector<int> out;
    std::set_difference(lambda.entries().begin(), lambda.entries().end(), mu.entries().begin(), mu.entries().end(),
                        std::back_inserter(out));
    return IncreasingIndex(std::move(out), lambda.dim());
}

std::vector<IncreasingIndex> enumerate_increasing(int n, int p)
{
    if (p < 0 || p > n) {
        throw DomainError("enumerate_increasing: need 0 <= p <= n, got p = " + std::to_string(p) +
                          ", n = " + std::to_string(n));
    }
    std::vector<IncreasingIndex> out;
    std::vector<int> current(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) current[static_cast<std::size_t>(k)] = k + 1;
    while (true) {
        out.emplace_back(current, n);
        int k = p - 1;
        while (k >= 0 && current[static_cast<std::size_t>(k)] == n - p + k + 1) --k;
        if (k < 0) break;
        ++current[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < p; ++j) current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

std::vector<NonDecreasingIndex> enumerate_non_decreasing(int n, int k)
{
    if (k < 0) throw DomainError("enumerate_non_decreasing: negative length");
    std::vector<NonDecreasingIndex> out;
    if (k > 0 && n < 1) return out;
    std::vector<int> current(static_cast<std::size_t>(k), 1);
    while (true) {
        out.emplace_back(current, n);
        int j = k - 1;
        while (j >= 0 && current[static_cast<std::size_t>(j)] == n) --j;
        if (j < 0) break;
        int v = ++current[static_cast<std::size_t>(j)];
        for (int t = j + 1; t < k; ++t) current[static_cast<std::size_t>(t)] = v;
    }
    return out;
}

std::vector<NonDecreasingIndex> enumerate_non_decreasing_upto(int n, int max_len)
{
    std::vector<NonDecreasingIndex> out;
    for (int k = 0; k <= max_len; ++k) {
        auto level = enumerate_non_decreasing(n, k);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::vector<MultiIndex> enumerate_multi(int n, int k)
{
    if (k < 0) throw DomainError("enumerate_multi: negative length");
    std::vector<MultiIndex> out;
    if (k > 0 && n < 1) return out;
    std::vector<int> current(static_cast<std::size_t>(k), 1);
    while (true) {
        out.emplace_back(current, n);
        int j = k - 1;
        while (j >= 0 && current[static_cast<std::size_t>(j)] == n) {
            current[static_cast<std::size_t>(j)] = 1;
            --j;
        }
        if (j < 0) break;
        ++current[static_cast<std::size_t>(j)];
    }
    return out;
}

std::size_t row_major_offset(const MultiIndex& index)
{
    std::size_t offset = 0;
    for (int e : index.entries()) offset = offset * static_cast<std::size_t>(index.dim()) + static_cast<std::size_t>(e - 1);
    return offset;
}

NonDecreasingIndex sorted(const MultiIndex& index)
{
    std::vector<int> e = index.entries();
    std::sort(e.begin(), e.end());
    return NonDecreasingIndex(std::move(e), index.dim());
}

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int j = 1; j <= k; ++j) r = r * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
    return r;
}

std::uint64_t permutation_count(const NonDecreasingIndex& index)
{
    // k! / prod(multiplicity!)
    std::uint64_t count = 1;
    int placed = 0;
    const auto& e = index.entries();
    std::size_t k = 0;
    while (k < e.size()) {
        std::size_t run = 1;
        while (k + run < e.size() && e[k + run] == e[k]) ++run;
        count *= binomial(placed + static_cast<int>(run), static_cast<int>(run));
        placed += static_cast<int>(run);
        k += run;
    }
    return count;
}

int BinaryNodeIndex::generation() const { return value_ == 0 ? 0 : std::bit_width(value_); }

int BinaryNodeIndex::arity() const { return std::popcount(value_); }

std::string BinaryNodeIndex::to_string() const
{
    if (value_ == 0) return "0";
    std::string out;
    for (int bit = generation() - 1; bit >= 0; --bit) out += ((value_ >> bit) & 1u) ? '1' : '0';
    return out;
}

BinaryNodeIndex BinaryNodeIndex::parse(const std::string& digits)
{
    if (digits.empty() || digits.size() > 31) throw DomainError("binary index: bad length '" + digits + "'");
    std::uint32_t v = 0;
    for (char c : digits) {
        if (c != '0' && c != '1') throw DomainError("binary index: non-binary digit in '" + digits + "'");
        v = (v << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return BinaryNodeIndex(v);
}

BinaryNodeIndex child_index(BinaryNodeIndex q, int r)
{
    if (r < 1 || r > 31 || q.generation() > r - 1) {
        throw DomainError("child_index: need G_q <= r - 1 (G_q = " + std::to_string(q.generation()) +
                          ", r = " + std::to_string(r) + ")");
    }
    return BinaryNodeIndex((1u << (r - 1)) + q.value());
}

}  // namespace jetstress
