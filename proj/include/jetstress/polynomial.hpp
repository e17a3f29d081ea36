#pragma once

#include "jetstress/scalar.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace jetstress {

inline constexpr int kMaxPolyDim = 6;

/// Exponent vector (e_1, ..., e_n) of a monomial; unused trailing slots are 0.
using Exponent = std::array<std::uint8_t, kMaxPolyDim>;

/// Multivariate polynomial in X^1..X^n with exact closure under +, *, d_i,
/// evaluation, substitution and definite integration over boxes.
///
/// A default-constructed polynomial is the zero of unspecified dimension; it
/// adopts the dimension of whatever it is combined with. That lets generic
/// accumulators start from `C{}`.
template <Scalar T>
class Polynomial {
public:
    using scalar_type = T;
    using term_map = std::map<Exponent, T>;

    Polynomial() = default;
    explicit Polynomial(int dim) : dim_(dim) { check_dim(dim); }

    static Polynomial constant(int dim, const T& c)
    {
        Polynomial p(dim);
        p.add_term(Exponent{}, c);
        return p;
    }

    /// The coordinate function X^i (1-based).
    static Polynomial coordinate(int dim, int axis)
    {
        Polynomial p(dim);
        p.require_axis(axis);
        Exponent e{};
        e[static_cast<std::size_t>(axis - 1)] = 1;
        p.add_term(e, T(1));
        return p;
    }

    static Polynomial monomial(int dim, const Exponent& e, const T& c = T(1))
    {
        Polynomial p(dim);
        p.add_term(e, c);
        return p;
    }

    int dim() const { return dim_; }
    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int total_degree() const
    {
        int best = -1;
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (auto x : e) d += x;
            best = std::max(best, d);
        }
        return best;
    }

    void add_term(const Exponent& e, const T& c)
    {
        for (int k = dim_; k < kMaxPolyDim; ++k) {
            if (e[static_cast<std::size_t>(k)] != 0) throw DomainError("polynomial: exponent uses axis beyond n");
        }
        if (jetstress::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (jetstress::is_zero(it->second)) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        adopt_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o)
    {
        adopt_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, T(-c));
        return *this;
    }
    Polynomial& operator*=(const T& s)
    {
        if (jetstress::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a)
    {
        for (auto& [e, c] : a.terms_) c = -c;
        return a;
    }
    friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
    friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        Polynomial out;
        out.dim_ = merged_dim(a, b);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e{};
                for (int k = 0; k < kMaxPolyDim; ++k) {
                    int s = ea[static_cast<std::size_t>(k)] + eb[static_cast<std::size_t>(k)];
                    if (s > 255) throw DomainError("polynomial: exponent overflow");
                    e[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(s);
                }
                out.add_term(e, T(ca * cb));
            }
        }
        return out;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        if (a.terms_.empty() && b.terms_.empty()) return true;
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    /// Exact partial derivative d/dX^axis.
    Polynomial derivative(int axis) const
    {
        require_axis(axis);
        const auto k = static_cast<std::size_t>(axis - 1);
        Polynomial out(dim_);
        for (const auto& [e, c] : terms_) {
            if (e[k] == 0) continue;
            Exponent d = e;
            d[k] = static_cast<std::uint8_t>(e[k] - 1);
            out.add_term(d, T(c * T(static_cast<int>(e[k]))));
        }
        return out;
    }

    /// Repeated derivative along the axes listed (1-based, any order).
    Polynomial derivative(std::span<const int> axes) const
    {
        Polynomial out = *this;
        for (int a : axes) out = out.derivative(a);
        return out;
    }

    T evaluate(std::span<const T> point) const
    {
        if (static_cast<int>(point.size()) < dim_) throw DomainError("polynomial: evaluation point too short");
        T total = 0;
        for (const auto& [e, c] : terms_) {
            T m = c;
            for (int k = 0; k < dim_; ++k) {
                if (e[static_cast<std::size_t>(k)]) m *= ipow(point[static_cast<std::size_t>(k)], e[static_cast<std::size_t>(k)]);
            }
            total += m;
        }
        return total;
    }

    /// Sets X^axis to a constant; the result keeps dimension n and no longer
    /// depends on that axis.
    Polynomial substitute(int axis, const T& value) const
    {
        require_axis(axis);
        const auto k = static_cast<std::size_t>(axis - 1);
        Polynomial out(dim_);
        for (const auto& [e, c] : terms_) {
            Exponent r = e;
            r[k] = 0;
            out.add_term(r, T(c * ipow(value, e[k])));
        }
        return out;
    }

    /// Exact integral over [lo, hi] along one axis; result independent of that axis.
    Polynomial integrate_axis(int axis, const T& lo, const T& hi) const
    {
        require_axis(axis);
        const auto k = static_cast<std::size_t>(axis - 1);
        Polynomial out(dim_);
        for (const auto& [e, c] : terms_) {
            const int next = e[k] + 1;
            T weight = (ipow(hi, next) - ipow(lo, next)) / T(next);
            Exponent r = e;
            r[k] = 0;
            out.add_term(r, T(c * weight));
        }
        return out;
    }

    /// Value of a polynomial that depends on no axis.
    T constant_term() const
    {
        auto it = terms_.find(Exponent{});
        return it == terms_.end() ? T(0) : it->second;
    }

    T max_abs_coefficient() const
    {
        T best = 0;
        for (const auto& [e, c] : terms_) {
            T a = abs_value(c);
            if (a > best) best = a;
        }
        return best;
    }

    template <Scalar U> Polynomial<U> cast() const
    {
        Polynomial<U> out(dim_);
        for (const auto& [e, c] : terms_) {
            if constexpr (std::same_as<T, U>) {
                out.add_term(e, c);
            } else if constexpr (std::same_as<U, double>) {
                out.add_term(e, to_double(c));
            } else {
                out.add_term(e, U(c));
            }
        }
        return out;
    }

    /// `3/2 * X1^2 X2 + -1 * X3`; zero prints as `0`.
    std::string to_string() const;

private:
    static void check_dim(int dim)
    {
        if (dim < 0 || dim > kMaxPolyDim) {
            throw DomainError("polynomial: dimension " + std::to_string(dim) + " outside 0.." +
                              std::to_string(kMaxPolyDim));
        }
    }
    void require_axis(int axis) const
    {
        if (dim_ == 0 && terms_.empty()) return;  // dimension-agnostic zero
        if (axis < 1 || axis > dim_) {
            throw DomainError("polynomial: axis " + std::to_string(axis) + " outside 1.." + std::to_string(dim_));
        }
    }
    static int merged_dim(const Polynomial& a, const Polynomial& b)
    {
        if (a.dim_ == b.dim_) return a.dim_;
        if (a.terms_.empty() && a.dim_ == 0) return b.dim_;
        if (b.terms_.empty() && b.dim_ == 0) return a.dim_;
        throw DomainError("polynomial: dimension mismatch " + std::to_string(a.dim_) + " vs " + std::to_string(b.dim_));
    }
    void adopt_dim(const Polynomial& o) { dim_ = merged_dim(*this, o); }

    term_map terms_;
    int dim_ = 0;
};

template <Scalar T> bool is_zero(const Polynomial<T>& p) { return p.is_zero(); }

using RPoly = Polynomial<Rational>;
using DPoly = Polynomial<double>;

/// Parses `coef * X1^e1 X2^e2 + ...` (coefficients `p/q` or decimals, `-`
/// allowed between terms, omitted coefficient means 1, bare exponent means 1).
RPoly parse_polynomial(const std::string& text, int dim);

/// The boundary bump B(X) = prod_i (X^i - a_i)(b_i - X^i).
template <Scalar T>
Polynomial<T> boundary_bump(std::span<const std::pair<T, T>> intervals)
{
    const int n = static_cast<int>(intervals.size());
    Polynomial<T> out = Polynomial<T>::constant(n, T(1));
    for (int i = 1; i <= n; ++i) {
        const auto& [a, b] = intervals[static_cast<std::size_t>(i - 1)];
        Polynomial<T> x = Polynomial<T>::coordinate(n, i);
        out = out * (x - Polynomial<T>::constant(n, a)) * (Polynomial<T>::constant(n, b) - x);
    }
    return out;
}

}  // namespace jetstress
