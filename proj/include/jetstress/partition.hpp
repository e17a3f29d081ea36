#pragma once

#include "jetstress/fields.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace jetstress {

/// Polynomial smoothstep S_k on [0,1] in one variable: S_k(0) = 0, S_k(1) = 1,
/// first k derivatives vanish at both ends.
/// S_k(t) = t^{k+1} sum_{j=0}^{k} C(k+j, j) C(2k+1, k-j) (-t)^j.
template <Scalar T> Polynomial<T> smoothstep(int order)
{
    if (order < 0) throw DomainError("smoothstep: negative order");
    Polynomial<T> s(1);
    for (int j = 0; j <= order; ++j) {
        T c = T(static_cast<long>(binomial(order + j, j))) * T(static_cast<long>(binomial(2 * order + 1, order - j)));
        if (j % 2) c = -c;
        Exponent e{};
        e[0] = static_cast<std::uint8_t>(order + 1 + j);
        s.add_term(e, c);
    }
    return s;
}

/// Composes a one-variable polynomial with the affine map X^axis -> (X^axis - lo)/(hi - lo).
template <Scalar T>
Polynomial<T> compose_affine(const Polynomial<T>& f1, int dim, int axis, const T& lo, const T& hi)
{
    Polynomial<T> t = (Polynomial<T>::coordinate(dim, axis) - Polynomial<T>::constant(dim, lo)) * T(T(1) / T(hi - lo));
    Polynomial<T> out(dim);
    for (const auto& [e, c] : f1.terms()) {
        Polynomial<T> term = Polynomial<T>::constant(dim, c);
        for (int k = 0; k < e[0]; ++k) term = term * t;
        out += term;
    }
    return out;
}

/// Telescoping smoothstep partition of unity on one axis, subordinate to an
/// ordered interval cover [l_1,r_1], ..., [l_A,r_A] of [a,b].
///
/// Requires l_1 = a, r_A = b, l_{k+1} < r_k (consecutive overlap) and
/// r_{k-1} <= l_{k+1} (transition zones disjoint). With ramps h_k rising from 0
/// to 1 across [l_{k+1}, r_k], the weights are u_k = h_{k-1} - h_k (h_0 = 1,
/// h_A = 0), which sum to 1 identically and vanish outside [l_k, r_k].
template <Scalar T>
class AxisPartition {
public:
    AxisPartition(int dim, int axis, std::vector<std::pair<T, T>> cover, int order)
        : dim_(dim), axis_(axis), cover_(std::move(cover)), order_(order)
    {
        const std::size_t count = cover_.size();
        if (count == 0) throw DomainError("partition: empty cover");
        for (std::size_t k = 0; k < count; ++k) {
            if (!(cover_[k].first < cover_[k].second)) throw DomainError("partition: empty interval in cover");
            if (k + 1 < count && !(cover_[k + 1].first < cover_[k].second)) {
                throw DomainError("partition: consecutive cover intervals must overlap");
            }
            if (k + 1 < count && !(cover_[k].first < cover_[k + 1].first)) {
                throw DomainError("partition: cover intervals must be ordered");
            }
            if (k >= 1 && k + 1 < count && cover_[k + 1].first < cover_[k - 1].second) {
                throw DomainError("partition: transition zones must not overlap");
            }
        }
        for (const auto& [l, r] : cover_) {
            breakpoints_.push_back(l);
            breakpoints_.push_back(r);
        }
        std::sort(breakpoints_.begin(), breakpoints_.end());
        breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
        step_ = smoothstep<T>(order);
    }

    int size() const { return static_cast<int>(cover_.size()); }
    const std::vector<std::pair<T, T>>& cover() const { return cover_; }
    const std::vector<T>& breakpoints() const { return breakpoints_; }
    int segments() const { return static_cast<int>(breakpoints_.size()) - 1; }

    /// Weight u_k (0-based k) restricted to segment [t_j, t_{j+1}] as a polynomial in n variables.
    Polynomial<T> weight_on_segment(int k, int segment) const
    {
        return ramp_on_segment(k - 1, segment) - ramp_on_segment(k, segment);
    }

private:
    // h_k on a segment; h_{-1} = 1 and h_{A-1} = 0 in 0-based numbering.
    Polynomial<T> ramp_on_segment(int k, int segment) const
    {
        if (k < 0) return Polynomial<T>::constant(dim_, T(1));
        if (k >= size() - 1) return Polynomial<T>(dim_);
        const T& lo = cover_[static_cast<std::size_t>(k + 1)].first;
        const T& hi = cover_[static_cast<std::size_t>(k)].second;
        const T& s0 = breakpoints_[static_cast<std::size_t>(segment)];
        const T& s1 = breakpoints_[static_cast<std::size_t>(segment + 1)];
        if (!(lo < s1)) return Polynomial<T>(dim_);  // segment left of the ramp
        if (!(s0 < hi)) return Polynomial<T>::constant(dim_, T(1));
        return compose_affine(step_, dim_, axis_, lo, hi);
    }

    int dim_;
    int axis_;
    std::vector<std::pair<T, T>> cover_;
    int order_;
    std::vector<T> breakpoints_;
    Polynomial<T> step_;
};

/// Cell of the rectilinear decomposition induced by all partition breakpoints.
using CellIndex = std::vector<int>;

/// Tensor-product partition of unity {(K_a, u_a)} on a box.
///
/// Patches are products of per-axis cover intervals, enumerated row-major over
/// the per-axis interval numbers. Each weight u_a is a piecewise polynomial,
/// exact on every cell; sum_a u_a = 1 and supp u_a is inside K_a.
template <Scalar T>
class PartitionOfUnity {
public:
    PartitionOfUnity(BoxDomain<T> box, const std::vector<std::vector<std::pair<T, T>>>& axis_covers, int order)
        : box_(std::move(box)), order_(order)
    {
        if (static_cast<int>(axis_covers.size()) != box_.dim()) throw DomainError("partition: need one cover per axis");
        for (int i = 1; i <= box_.dim(); ++i) {
            const auto& cover = axis_covers[static_cast<std::size_t>(i - 1)];
            if (cover.empty() || cover.front().first != box_.lower(i) || cover.back().second != box_.upper(i)) {
                throw DomainError("partition: axis cover must span the box");
            }
            axes_.emplace_back(box_.dim(), i, cover, order);
        }
        std::vector<int> sizes;
        for (const auto& a : axes_) sizes.push_back(a.size());
        patch_labels_ = product(sizes);
        std::vector<int> seg;
        for (const auto& a : axes_) seg.push_back(a.segments());
        cells_ = product(seg);
    }

    const BoxDomain<T>& box() const { return box_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(patch_labels_.size()); }
    const std::vector<CellIndex>& cells() const { return cells_; }

    BoxDomain<T> patch(int a) const
    {
        const auto& label = patch_labels_.at(static_cast<std::size_t>(a));
        std::vector<std::pair<T, T>> iv;
        for (std::size_t i = 0; i < axes_.size(); ++i) iv.push_back(axes_[i].cover()[static_cast<std::size_t>(label[i])]);
        return BoxDomain<T>(std::move(iv));
    }

    BoxDomain<T> cell_box(const CellIndex& cell) const
    {
        std::vector<std::pair<T, T>> iv;
        for (std::size_t i = 0; i < axes_.size(); ++i) {
            const auto& bp = axes_[i].breakpoints();
            iv.emplace_back(bp[static_cast<std::size_t>(cell[i])], bp[static_cast<std::size_t>(cell[i] + 1)]);
        }
        return BoxDomain<T>(std::move(iv));
    }

    /// u_a restricted to one cell.
    Polynomial<T> weight_on_cell(int a, const CellIndex& cell) const
    {
        const auto& label = patch_labels_.at(static_cast<std::size_t>(a));
        Polynomial<T> w = Polynomial<T>::constant(box_.dim(), T(1));
        for (std::size_t i = 0; i < axes_.size(); ++i) {
            w = w * axes_[i].weight_on_segment(label[i], cell[i]);
            if (w.is_zero()) break;
        }
        return w;
    }

    /// Cell containing x (the lowest one on shared breakpoints).
    CellIndex locate(const std::vector<T>& x) const
    {
        if (!box_.contains_point(x)) throw DomainError("partition: point outside the box");
        CellIndex cell;
        for (std::size_t i = 0; i < axes_.size(); ++i) {
            const auto& bp = axes_[i].breakpoints();
            int seg = 0;
            while (seg + 1 < axes_[i].segments() && x[i] > bp[static_cast<std::size_t>(seg + 1)]) ++seg;
            cell.push_back(seg);
        }
        return cell;
    }

    T weight(int a, const std::vector<T>& x) const { return weight_on_cell(a, locate(x)).evaluate(x); }

    /// Single-axis partitions, exposed for smoothness checks.
    const AxisPartition<T>& axis(int i) const { return axes_.at(static_cast<std::size_t>(i - 1)); }

private:
    static std::vector<std::vector<int>> product(const std::vector<int>& sizes)
    {
        std::vector<std::vector<int>> out{{}};
        for (int s : sizes) {
            std::vector<std::vector<int>> next;
            for (const auto& prefix : out) {
                for (int k = 0; k < s; ++k) {
                    auto p = prefix;
                    p.push_back(k);
                    next.push_back(std::move(p));
                }
            }
            out = std::move(next);
        }
        return out;
    }

    BoxDomain<T> box_;
    int order_;
    std::vector<AxisPartition<T>> axes_;
    std::vector<std::vector<int>> patch_labels_;
    std::vector<CellIndex> cells_;
};

/// Raised by glue_sections when two local pieces disagree on an overlap.
class CompatibilityError : public std::runtime_error {
public:
    CompatibilityError(int first, int second, std::string overlap, double deviation)
        : std::runtime_error("glue: pieces " + std::to_string(first) + " and " + std::to_string(second) +
                             " disagree on overlap " + overlap + " (max deviation " + format_scalar(deviation) + ")"),
          first_(first), second_(second), overlap_(std::move(overlap)), deviation_(deviation)
    {
    }
    int first() const { return first_; }
    int second() const { return second_; }
    const std::string& overlap() const { return overlap_; }
    double deviation() const { return deviation_; }

private:
    int first_;
    int second_;
    std::string overlap_;
    double deviation_;
};

/// Section that is polynomial on each cell of a partition's decomposition.
template <Scalar T>
class PiecewiseSection {
public:
    PiecewiseSection(const PartitionOfUnity<T>& pou, int fiber) : pou_(&pou), fiber_(fiber) {}

    int fiber() const { return fiber_; }
    const std::map<CellIndex, std::vector<Polynomial<T>>>& cells() const { return cells_; }
    void set_cell(const CellIndex& cell, std::vector<Polynomial<T>> values) { cells_[cell] = std::move(values); }
    const std::vector<Polynomial<T>>& on_cell(const CellIndex& cell) const { return cells_.at(cell); }

    std::vector<T> evaluate(const std::vector<T>& x) const
    {
        std::vector<T> out;
        for (const auto& p : on_cell(pou_->locate(x))) out.push_back(p.evaluate(x));
        return out;
    }

    /// True iff every cell inside `region` carries exactly the components of `section`.
    bool agrees_on(const SectionField<T>& section, const BoxDomain<T>& region) const
    {
        for (const auto& [cell, values] : cells_) {
            if (!region.contains(pou_->cell_box(cell))) continue;
            for (int alpha = 1; alpha <= fiber_; ++alpha) {
                if (!(values[static_cast<std::size_t>(alpha - 1)] == section[alpha])) return false;
            }
        }
        return true;
    }

    /// The single polynomial section this piecewise object equals, if all cells agree.
    SectionField<T> as_section() const
    {
        const auto& first = cells_.begin()->second;
        for (const auto& [cell, values] : cells_) {
            if (!(values == first)) throw DomainError("piecewise section does not reduce to one polynomial section");
        }
        return SectionField<T>(pou_->box(), first);
    }

private:
    const PartitionOfUnity<T>* pou_;
    int fiber_;
    std::map<CellIndex, std::vector<Polynomial<T>>> cells_;
};

/// Restrictions chi_a = w|K_a of a global section to every patch.
template <Scalar T>
std::vector<SectionField<T>> restrict_to_patches(const SectionField<T>& w, const PartitionOfUnity<T>& pou)
{
    std::vector<SectionField<T>> out;
    for (int a = 0; a < pou.size(); ++a) out.push_back(w.restrict_to(pou.patch(a)));
    return out;
}

/// Glues compatible local pieces chi_a on K_a into sum_a u_a chi_a.
///
/// Compatibility chi_a = chi_b on every overlap with non-empty interior is
/// checked exactly for rationals and to `tol` on a grid for doubles; a
/// violation throws CompatibilityError naming the overlap and the deviation.
template <Scalar T>
PiecewiseSection<T> glue_sections(const std::vector<SectionField<T>>& pieces, const PartitionOfUnity<T>& pou,
                                  double tol = 1e-10)
{
    if (static_cast<int>(pieces.size()) != pou.size()) throw DomainError("glue: one piece per patch required");
    const int fiber = pieces.empty() ? 0 : pieces.front().fiber();
    for (int a = 0; a < pou.size(); ++a) {
        if (!(pieces[static_cast<std::size_t>(a)].domain() == pou.patch(a))) {
            throw DomainError("glue: piece " + std::to_string(a) + " is not defined on patch " + pou.patch(a).to_string());
        }
        if (pieces[static_cast<std::size_t>(a)].fiber() != fiber) throw DomainError("glue: fiber dimension mismatch");
    }
    const SamplingGrid probe = SamplingGrid::uniform(pou.box().dim(), 5);
    for (int a = 0; a < pou.size(); ++a) {
        for (int b = a + 1; b < pou.size(); ++b) {
            auto region = pou.patch(a).overlap(pou.patch(b));
            if (!region) continue;
            const auto points = probe.points(*region);
            double deviation = 0;
            bool exact_mismatch = false;
            for (int alpha = 1; alpha <= fiber; ++alpha) {
                Polynomial<T> diff = pieces[static_cast<std::size_t>(a)][alpha] - pieces[static_cast<std::size_t>(b)][alpha];
                deviation = std::max(deviation, to_double(grid_sup(diff, points)));
                if constexpr (std::same_as<T, Rational>) {
                    if (!diff.is_zero()) {
                        exact_mismatch = true;
                        deviation = std::max(deviation, to_double(diff.max_abs_coefficient()));
                    }
                }
            }
            bool bad = std::same_as<T, Rational> ? exact_mismatch : deviation > tol;
            if (bad) throw CompatibilityError(a, b, region->to_string(), deviation);
        }
    }
    PiecewiseSection<T> glued(pou, fiber);
    const int n = pou.box().dim();
    for (const auto& cell : pou.cells()) {
        std::vector<Polynomial<T>> values(static_cast<std::size_t>(fiber), Polynomial<T>(n));
        for (int a = 0; a < pou.size(); ++a) {
            Polynomial<T> u = pou.weight_on_cell(a, cell);
            if (u.is_zero()) continue;
            for (int alpha = 1; alpha <= fiber; ++alpha) {
                values[static_cast<std::size_t>(alpha - 1)] += u * pieces[static_cast<std::size_t>(a)][alpha];
            }
        }
        glued.set_cell(cell, std::move(values));
    }
    return glued;
}

}  // namespace jetstress
