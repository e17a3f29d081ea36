#pragma once

#include "jetstress/fields.hpp"
#include "jetstress/multiindex.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace jetstress {

/// Local representative of a section of J^r W: the coordinates A^alpha_I for
/// every non-decreasing I with 0 <= |I| <= r (symmetric storage).
template <Scalar T>
class JetField {
public:
    JetField(BoxDomain<T> domain, int fiber, int order) : domain_(std::move(domain)), fiber_(fiber), order_(order)
    {
        if (order < 0) throw DomainError("jet: negative order");
        const int n = domain_.dim();
        components_.resize(static_cast<std::size_t>(fiber));
        for (auto& slot : components_) {
            for (const auto& index : enumerate_non_decreasing_upto(n, order)) slot.emplace(index, Polynomial<T>(n));
        }
    }

    int dim() const { return domain_.dim(); }
    int fiber() const { return fiber_; }
    int order() const { return order_; }
    const BoxDomain<T>& domain() const { return domain_; }

    const Polynomial<T>& at(int alpha, const NonDecreasingIndex& index) const { return slots(alpha).at(index); }
    void set(int alpha, const NonDecreasingIndex& index, Polynomial<T> value)
    {
        auto& s = slots(alpha);
        auto it = s.find(index);
        if (it == s.end()) throw DomainError("jet: index " + index.to_string() + " beyond order " + std::to_string(order_));
        it->second = value.is_zero() ? Polynomial<T>(dim()) : std::move(value);
    }
    const std::map<NonDecreasingIndex, Polynomial<T>>& slots(int alpha) const
    {
        return components_.at(static_cast<std::size_t>(alpha - 1));
    }

    JetField& operator+=(const JetField& o)
    {
        require_same_shape(o);
        for (int alpha = 1; alpha <= fiber_; ++alpha) {
            for (auto& [k, v] : slots(alpha)) v += o.at(alpha, k);
        }
        return *this;
    }
    friend JetField operator+(JetField a, const JetField& b) { return a += b; }
    friend JetField operator*(const T& s, JetField a)
    {
        for (auto& slot : a.components_) {
            for (auto& [k, v] : slot) v *= s;
        }
        return a;
    }
    friend bool operator==(const JetField& a, const JetField& b)
    {
        return a.domain_ == b.domain_ && a.fiber_ == b.fiber_ && a.order_ == b.order_ && a.components_ == b.components_;
    }

    std::size_t slot_count() const { return static_cast<std::size_t>(fiber_) * components_.front().size(); }

private:
    std::map<NonDecreasingIndex, Polynomial<T>>& slots(int alpha) { return components_.at(static_cast<std::size_t>(alpha - 1)); }
    void require_same_shape(const JetField& o) const
    {
        if (o.dim() != dim() || o.fiber_ != fiber_ || o.order_ != order_) throw DomainError("jet: shape mismatch");
    }

    BoxDomain<T> domain_;
    int fiber_;
    int order_;
    std::vector<std::map<NonDecreasingIndex, Polynomial<T>>> components_;
};

/// Local representative of a section of the iterated jet bundle \hat J^r W.
///
/// Holds the 2^r arrays y^{p alpha}_{I_p}, p = 0 .. 2^r - 1, with
/// |I_p| = popcount(p). Each array stores m * n^{|p|} polynomials laid out
/// alpha-major, then row-major over (i_1, ..., i_k).
template <Scalar T>
class IteratedJetField {
public:
    IteratedJetField(BoxDomain<T> domain, int fiber, int order) : domain_(std::move(domain)), fiber_(fiber), order_(order)
    {
        if (order < 0 || order > 8) throw DomainError("iterated jet: order must be in 0..8");
        const auto n = static_cast<std::size_t>(domain_.dim());
        for (std::uint32_t p = 0; p < array_count(); ++p) {
            std::size_t width = 1;
            for (int k = 0; k < BinaryNodeIndex(p).arity(); ++k) width *= n;
            arrays_.emplace_back(static_cast<std::size_t>(fiber) * width, Polynomial<T>(domain_.dim()));
        }
    }

    int dim() const { return domain_.dim(); }
    int fiber() const { return fiber_; }
    int order() const { return order_; }
    const BoxDomain<T>& domain() const { return domain_; }
    std::uint32_t array_count() const { return 1u << order_; }

    std::vector<BinaryNodeIndex> labels() const
    {
        std::vector<BinaryNodeIndex> out;
        for (std::uint32_t p = 0; p < array_count(); ++p) out.emplace_back(p);
        return out;
    }

    /// Number of scalar slots in array p: m * n^{|p|}.
    std::size_t slot_count(BinaryNodeIndex p) const { return array(p).size(); }

    const Polynomial<T>& at(BinaryNodeIndex p, int alpha, const MultiIndex& index) const
    {
        return array(p).at(offset(p, alpha, index));
    }
    void set(BinaryNodeIndex p, int alpha, const MultiIndex& index, Polynomial<T> value)
    {
        arrays_.at(p.value()).at(offset(p, alpha, index)) = value.is_zero() ? Polynomial<T>(dim()) : std::move(value);
    }
    const std::vector<Polynomial<T>>& array(BinaryNodeIndex p) const
    {
        if (p.value() >= array_count()) {
            throw DomainError("iterated jet: array " + p.to_string() + " beyond order " + std::to_string(order_));
        }
        return arrays_[p.value()];
    }

    friend bool operator==(const IteratedJetField& a, const IteratedJetField& b)
    {
        return a.domain_ == b.domain_ && a.fiber_ == b.fiber_ && a.order_ == b.order_ && a.arrays_ == b.arrays_;
    }

private:
    std::size_t offset(BinaryNodeIndex p, int alpha, const MultiIndex& index) const
    {
        if (index.size() != p.arity() || index.dim() != dim()) {
            throw DomainError("iterated jet: array " + p.to_string() + " takes indices of length " +
                              std::to_string(p.arity()));
        }
        if (alpha < 1 || alpha > fiber_) throw DomainError("iterated jet: fiber index out of range");
        std::size_t width = array(p).size() / static_cast<std::size_t>(fiber_);
        return static_cast<std::size_t>(alpha - 1) * width + row_major_offset(index);
    }

    BoxDomain<T> domain_;
    int fiber_;
    int order_;
    std::vector<std::vector<Polynomial<T>>> arrays_;
};

/// j^r w: A^alpha_I = d_I w^alpha.
template <Scalar T> JetField<T> prolong(const SectionField<T>& w, int order)
{
    JetField<T> jet(w.domain(), w.fiber(), order);
    for (int alpha = 1; alpha <= w.fiber(); ++alpha) {
        for (const auto& index : enumerate_non_decreasing_upto(w.dim(), order)) {
            jet.set(alpha, index, w[alpha].derivative(index.entries()));
        }
    }
    return jet;
}

/// \hat j^r w built inductively as j^1 applied r times: in generation g every
/// array q with G_q <= g - 1 spawns the child 2^{g-1} + q holding
/// d_j y^q_{I_q} at index (I_q, j).
template <Scalar T> IteratedJetField<T> iterate_prolong(const SectionField<T>& w, int order)
{
    IteratedJetField<T> out(w.domain(), w.fiber(), order);
    const int n = w.dim();
    for (int alpha = 1; alpha <= w.fiber(); ++alpha) out.set(BinaryNodeIndex(0), alpha, MultiIndex({}, n), w[alpha]);
    for (int g = 1; g <= order; ++g) {
        for (std::uint32_t q = 0; q < (1u << (g - 1)); ++q) {
            const BinaryNodeIndex parent(q);
            const BinaryNodeIndex child = child_index(parent, g);
            for (const auto& index : enumerate_multi(n, parent.arity())) {
                for (int j = 1; j <= n; ++j) {
                    std::vector<int> extended = index.entries();
                    extended.push_back(j);
                    const MultiIndex child_index_value(std::move(extended), n);
                    for (int alpha = 1; alpha <= w.fiber(); ++alpha) {
                        out.set(child, alpha, child_index_value, out.at(parent, alpha, index).derivative(j));
                    }
                }
            }
        }
    }
    return out;
}

/// iota^r: every array p receives the symmetric values y^{p alpha}_I = A^alpha_{sort(I)}.
template <Scalar T> IteratedJetField<T> include_holonomic(const JetField<T>& jet)
{
    IteratedJetField<T> out(jet.domain(), jet.fiber(), jet.order());
    for (const auto& p : out.labels()) {
        for (const auto& index : enumerate_multi(jet.dim(), p.arity())) {
            for (int alpha = 1; alpha <= jet.fiber(); ++alpha) out.set(p, alpha, index, jet.at(alpha, sorted(index)));
        }
    }
    return out;
}

namespace detail {

template <Scalar T> bool polys_close(const Polynomial<T>& a, const Polynomial<T>& b, double tol)
{
    if constexpr (std::same_as<T, Rational>) {
        (void)tol;
        return a == b;
    } else {
        return (a - b).max_abs_coefficient() <= tol;
    }
}

}  // namespace detail

/// Arrays of equal popcount agree entrywise and each array is symmetric under
/// permutation of its index; no derivative relation is checked.
template <Scalar T> bool is_pointwise_holonomic(const IteratedJetField<T>& h, double tol = 0)
{
    const int n = h.dim();
    for (const auto& p : h.labels()) {
        for (const auto& index : enumerate_multi(n, p.arity())) {
            // Reference: the first array with this popcount, at the sorted index.
            std::uint32_t reference = (1u << p.arity()) - 1;
            MultiIndex canonical(sorted(index).entries(), n);
            for (int alpha = 1; alpha <= h.fiber(); ++alpha) {
                if (!detail::polys_close(h.at(p, alpha, index), h.at(BinaryNodeIndex(reference), alpha, canonical), tol)) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Holonomic and integrable: every entry equals the iterated derivative
/// d_I y^0 of the base array, so h = \hat j^r of the section in array 0.
template <Scalar T> bool is_holonomic(const IteratedJetField<T>& h, double tol = 0)
{
    if (!is_pointwise_holonomic(h, tol)) return false;
    const int n = h.dim();
    const MultiIndex empty({}, n);
    for (const auto& p : h.labels()) {
        for (const auto& index : enumerate_multi(n, p.arity())) {
            for (int alpha = 1; alpha <= h.fiber(); ++alpha) {
                const Polynomial<T> expected = h.at(BinaryNodeIndex(0), alpha, empty).derivative(index.entries());
                if (!detail::polys_close(h.at(p, alpha, index), expected, tol)) return false;
            }
        }
    }
    return true;
}

/// ||j||^0: sup over grid points, fiber components and index slots.
template <Scalar T> T jet_norm0(const JetField<T>& jet, const SamplingGrid& grid)
{
    const auto points = grid.points(jet.domain());
    T best = 0;
    for (int alpha = 1; alpha <= jet.fiber(); ++alpha) {
        for (const auto& [index, value] : jet.slots(alpha)) {
            T v = grid_sup(value, points);
            if (v > best) best = v;
        }
    }
    return best;
}

template <Scalar T> T jet_norm0(const IteratedJetField<T>& h, const SamplingGrid& grid)
{
    const auto points = grid.points(h.domain());
    T best = 0;
    for (const auto& p : h.labels()) {
        for (const auto& value : h.array(p)) {
            T v = grid_sup(value, points);
            if (v > best) best = v;
        }
    }
    return best;
}

/// Position of (p, alpha, I) in the flattened fiber of \hat J^r W, ordered by
/// array label, then alpha, then row-major I.
template <Scalar T> std::size_t iterated_fiber_offset(const IteratedJetField<T>& h, BinaryNodeIndex p, int alpha, const MultiIndex& index)
{
    std::size_t offset = 0;
    for (std::uint32_t q = 0; q < p.value(); ++q) offset += h.slot_count(BinaryNodeIndex(q));
    std::size_t width = h.slot_count(p) / static_cast<std::size_t>(h.fiber());
    return offset + static_cast<std::size_t>(alpha - 1) * width + row_major_offset(index);
}

/// Views an iterated jet field as a section of the vector bundle \hat J^r W
/// (all arrays flattened, see iterated_fiber_offset).
template <Scalar T> SectionField<T> as_section(const IteratedJetField<T>& h)
{
    std::vector<Polynomial<T>> comps;
    for (const auto& p : h.labels()) {
        const auto& arr = h.array(p);
        comps.insert(comps.end(), arr.begin(), arr.end());
    }
    return SectionField<T>(h.domain(), std::move(comps));
}

/// `(alpha, I) -> polynomial` listing, one line per slot.
template <Scalar T> std::string to_listing(const JetField<T>& jet)
{
    std::ostringstream out;
    for (int alpha = 1; alpha <= jet.fiber(); ++alpha) {
        for (const auto& [index, value] : jet.slots(alpha)) {
            out << "(" << alpha << ", " << index.to_string() << ") -> " << value.to_string() << "\n";
        }
    }
    return out.str();
}

/// Listing grouped by binary array label.
template <Scalar T> std::string to_listing(const IteratedJetField<T>& h)
{
    std::ostringstream out;
    for (const auto& p : h.labels()) {
        out << "array " << p.to_string() << " (G=" << p.generation() << ", |p|=" << p.arity() << ", "
            << h.slot_count(p) << " slots)\n";
        for (int alpha = 1; alpha <= h.fiber(); ++alpha) {
            for (const auto& index : enumerate_multi(h.dim(), p.arity())) {
                out << "  (" << alpha << ", " << index.to_string() << ") -> " << h.at(p, alpha, index).to_string() << "\n";
            }
        }
    }
    return out.str();
}

}  // namespace jetstress
