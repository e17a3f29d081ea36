#pragma once

#include "jetstress/scalar.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jetstress {

/// One of the 2n faces of a box: X^axis = a_axis (lower) or X^axis = b_axis (upper).
struct Face {
    int axis = 1;
    bool upper = false;

    /// Induced (outward-normal-first) orientation of the face relative to the
    /// standard orientation of the remaining coordinates: (-1)^{i-1} on the
    /// upper face, (-1)^i on the lower face.
    int orientation_sign() const { return upper ? minus_one_pow(axis - 1) : minus_one_pow(axis); }

    /// `2:hi` / `1:lo`
    std::string to_string() const { return std::to_string(axis) + (upper ? ":hi" : ":lo"); }
    static Face parse(const std::string& text);

    auto operator<=>(const Face&) const = default;
};

/// Axis-aligned closed box [a_1,b_1] x ... x [a_n,b_n] with a_i < b_i; the
/// desk-scale model of a compact manifold with corners.
template <Scalar T>
class BoxDomain {
public:
    BoxDomain() = default;
    explicit BoxDomain(std::vector<std::pair<T, T>> intervals) : intervals_(std::move(intervals))
    {
        for (const auto& [a, b] : intervals_) {
            if (!(a < b)) throw DomainError("box: need a_i < b_i");
        }
    }

    static BoxDomain unit(int n) { return BoxDomain(std::vector<std::pair<T, T>>(static_cast<std::size_t>(n), {T(0), T(1)})); }

    int dim() const { return static_cast<int>(intervals_.size()); }
    const std::vector<std::pair<T, T>>& intervals() const { return intervals_; }
    const T& lower(int axis) const { return intervals_.at(static_cast<std::size_t>(axis - 1)).first; }
    const T& upper(int axis) const { return intervals_.at(static_cast<std::size_t>(axis - 1)).second; }
    const T& face_value(const Face& f) const { return f.upper ? upper(f.axis) : lower(f.axis); }

    T volume() const
    {
        T v = 1;
        for (const auto& [a, b] : intervals_) v *= (b - a);
        return v;
    }

    bool contains(const BoxDomain& inner) const
    {
        if (inner.dim() != dim()) return false;
        for (int i = 1; i <= dim(); ++i) {
            if (inner.lower(i) < lower(i) || inner.upper(i) > upper(i)) return false;
        }
        return true;
    }

    bool contains_point(const std::vector<T>& x) const
    {
        if (static_cast<int>(x.size()) != dim()) return false;
        for (int i = 1; i <= dim(); ++i) {
            if (x[static_cast<std::size_t>(i - 1)] < lower(i) || x[static_cast<std::size_t>(i - 1)] > upper(i)) return false;
        }
        return true;
    }

    /// Intersection with non-empty interior, if any.
    std::optional<BoxDomain> overlap(const BoxDomain& other) const
    {
        if (other.dim() != dim()) throw DomainError("box: dimension mismatch");
        std::vector<std::pair<T, T>> out;
        for (int i = 1; i <= dim(); ++i) {
            T a = lower(i) < other.lower(i) ? other.lower(i) : lower(i);
            T b = upper(i) < other.upper(i) ? upper(i) : other.upper(i);
            if (!(a < b)) return std::nullopt;
            out.emplace_back(a, b);
        }
        return BoxDomain(std::move(out));
    }

    std::vector<Face> faces() const
    {
        std::vector<Face> out;
        for (int i = 1; i <= dim(); ++i) {
            out.push_back(Face{i, false});
            out.push_back(Face{i, true});
        }
        return out;
    }

    void require_face(const Face& f) const
    {
        if (f.axis < 1 || f.axis > dim()) {
            throw DomainError("box: face axis " + std::to_string(f.axis) + " outside 1.." + std::to_string(dim()));
        }
    }

    template <Scalar U> BoxDomain<U> cast() const
    {
        std::vector<std::pair<U, U>> out;
        for (const auto& [a, b] : intervals_) {
            if constexpr (std::same_as<U, T>) out.emplace_back(a, b);
            else out.emplace_back(to_double(a), to_double(b));
        }
        return BoxDomain<U>(std::move(out));
    }

    bool operator==(const BoxDomain&) const = default;

    /// `[0,1]x[0,1/2]`
    std::string to_string() const
    {
        std::string out;
        for (std::size_t k = 0; k < intervals_.size(); ++k) {
            if (k) out += "x";
            out += "[" + format_scalar(intervals_[k].first) + "," + format_scalar(intervals_[k].second) + "]";
        }
        return out;
    }

private:
    std::vector<std::pair<T, T>> intervals_;
};

using RBox = BoxDomain<Rational>;

/// Parses `[a1,b1]x[a2,b2]x...` with rational or decimal bounds.
RBox parse_box(const std::string& text);

}  // namespace jetstress
