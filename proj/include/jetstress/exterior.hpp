#pragma once

#include "jetstress/multiindex.hpp"
#include "jetstress/scalar.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace jetstress {

namespace detail {

template <typename C> bool coefficient_is_zero(const C& c)
{
    using jetstress::is_zero;
    return is_zero(c);
}

}  // namespace detail

struct FormTag {};
struct VectorTag {};

/// Homogeneous element of the exterior algebra over an n-dimensional chart,
/// stored as a sparse map from strictly increasing indices to coefficients.
///
/// With `FormTag` this is a p-form omega = omega_lambda dX^lambda; with
/// `VectorTag` a p-vector eta = eta^lambda d_lambda. Missing keys are zero and
/// zero coefficients are never stored, so the zero element has an empty map.
/// The coefficient type may be a scalar or a polynomial (form fields).
template <typename C, typename Tag>
class Alternating {
public:
    using coefficient_type = C;
    using map_type = std::map<IncreasingIndex, C>;

    Alternating() = default;
    Alternating(int dim, int degree) : dim_(dim), degree_(degree)
    {
        if (dim < 0 || degree < 0 || degree > dim) {
            throw DomainError("alternating tensor: degree " + std::to_string(degree) + " invalid for n = " +
                              std::to_string(dim));
        }
    }

    /// Single basis element dX^lambda (or d_lambda) times a coefficient.
    static Alternating basis(const IncreasingIndex& lambda, C coefficient = C(1))
    {
        Alternating out(lambda.dim(), lambda.size());
        out.add(lambda, coefficient);
        return out;
    }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    const map_type& components() const { return components_; }
    bool is_zero() const { return components_.empty(); }

    C operator[](const IncreasingIndex& lambda) const
    {
        auto it = components_.find(lambda);
        return it == components_.end() ? C{} : it->second;
    }

    void add(const IncreasingIndex& lambda, const C& value)
    {
        if (lambda.dim() != dim_ || lambda.size() != degree_) {
            throw DomainError("alternating tensor: index " + lambda.to_string() + " does not fit degree " +
                              std::to_string(degree_) + " in n = " + std::to_string(dim_));
        }
        if (detail::coefficient_is_zero(value)) return;
        auto [it, inserted] = components_.try_emplace(lambda, value);
        if (!inserted) {
            it->second += value;
            if (detail::coefficient_is_zero(it->second)) components_.erase(it);
        }
    }

    void set(const IncreasingIndex& lambda, const C& value)
    {
        components_.erase(lambda);
        add(lambda, value);
    }

    Alternating& operator+=(const Alternating& other)
    {
        require_same_shape(other);
        for (const auto& [k, v] : other.components_) add(k, v);
        return *this;
    }
    Alternating& operator-=(const Alternating& other)
    {
        require_same_shape(other);
        for (const auto& [k, v] : other.components_) add(k, C(-v));
        return *this;
    }
    friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
    friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }
    friend Alternating operator-(const Alternating& a)
    {
        Alternating out(a.dim_, a.degree_);
        for (const auto& [k, v] : a.components_) out.components_.emplace(k, C(-v));
        return out;
    }

    template <typename S>
    Alternating scaled(const S& factor) const
    {
        Alternating out(dim_, degree_);
        for (const auto& [k, v] : components_) out.add(k, C(v * factor));
        return out;
    }

    Alternating signed_copy(int sign) const { return sign >= 0 ? *this : -*this; }

    friend bool operator==(const Alternating& a, const Alternating& b)
    {
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.components_ == b.components_;
    }

    /// `[((1,2), 3/2), ((1,3), -1)]` in lexicographic index order.
    std::string to_string() const
    {
        std::string out = "[";
        bool first = true;
        for (const auto& [k, v] : components_) {
            if (!first) out += ", ";
            first = false;
            out += "(" + k.to_string() + ", " + coefficient_string(v) + ")";
        }
        return out + "]";
    }

private:
    template <typename V> static std::string coefficient_string(const V& v)
    {
        if constexpr (requires { v.to_string(); }) {
            return v.to_string();
        } else {
            return format_scalar(v);
        }
    }

    void require_same_shape(const Alternating& other) const
    {
        if (other.dim_ != dim_ || other.degree_ != degree_) {
            throw DomainError("alternating tensor: shape mismatch (n, p) = (" + std::to_string(dim_) + ", " +
                              std::to_string(degree_) + ") vs (" + std::to_string(other.dim_) + ", " +
                              std::to_string(other.degree_) + ")");
        }
    }

    map_type components_;
    int dim_ = 0;
    int degree_ = 0;
};

template <typename C> using AltForm = Alternating<C, FormTag>;
template <typename C> using MultiVector = Alternating<C, VectorTag>;

/// The volume form dX = dX^1 ^ ... ^ dX^n.
template <typename C> AltForm<C> volume_form(int n, C coefficient = C(1))
{
    return AltForm<C>::basis(enumerate_increasing(n, n).front(), coefficient);
}

namespace detail {

template <typename C, typename D, typename Tag>
Alternating<C, Tag> wedge_impl(const Alternating<C, Tag>& a, const Alternating<D, Tag>& b)
{
    if (a.dim() != b.dim()) throw DomainError("wedge: dimension mismatch");
    if (a.degree() + b.degree() > a.dim()) {
        throw DomainError("wedge: degree " + std::to_string(a.degree()) + " + " + std::to_string(b.degree()) +
                          " exceeds n = " + std::to_string(a.dim()));
    }
    Alternating<C, Tag> out(a.dim(), a.degree() + b.degree());
    for (const auto& [ka, va] : a.components()) {
        for (const auto& [kb, vb] : b.components()) {
            int sign = merge_sign(ka, kb);
            if (sign == 0) continue;
            C product = va * vb;
            out.add(merge_union(ka, kb), sign > 0 ? product : C(-product));
        }
    }
    return out;
}

// Shared kernel for both contractions: eta (degree p) against theta (degree
// p + r) evaluated on basis r-vectors d_rho. `eta_first` selects
// theta(eta ^ eta') versus theta(eta' ^ eta).
template <typename C, typename D>
AltForm<C> contract_impl(const MultiVector<D>& eta, const AltForm<C>& theta, bool eta_first)
{
    if (eta.dim() != theta.dim()) throw DomainError("contraction: dimension mismatch");
    if (theta.degree() < eta.degree()) {
        throw DomainError("contraction: form degree " + std::to_string(theta.degree()) +
                          " below multivector degree " + std::to_string(eta.degree()));
    }
    AltForm<C> out(theta.dim(), theta.degree() - eta.degree());
    for (const auto& [nu, theta_nu] : theta.components()) {
        for (const auto& [mu, eta_mu] : eta.components()) {
            if (!is_subset(mu, nu)) continue;
            IncreasingIndex rho = set_difference(nu, mu);
            int sign = eta_first ? merge_sign(mu, rho) : merge_sign(rho, mu);
            C product = theta_nu * eta_mu;
            out.add(rho, sign > 0 ? product : C(-product));
        }
    }
    return out;
}

}  // namespace detail

/// omega ^ psi; degree overflow (p + q > n) is a DomainError.
template <typename C, typename D>
AltForm<C> wedge(const AltForm<C>& omega, const AltForm<D>& psi)
{
    return detail::wedge_impl(omega, psi);
}

/// xi ^ eta for multivectors, same sign algebra as forms.
template <typename C, typename D>
MultiVector<C> wedge_mv(const MultiVector<C>& xi, const MultiVector<D>& eta)
{
    return detail::wedge_impl(xi, eta);
}

/// eta -| theta, defined by (eta -| theta)(eta') = theta(eta ^ eta').
template <typename C, typename D>
AltForm<C> contract_left(const MultiVector<D>& eta, const AltForm<C>& theta)
{
    return detail::contract_impl(eta, theta, true);
}

/// theta |- eta, defined by (theta |- eta)(eta') = theta(eta' ^ eta).
template <typename C, typename D>
AltForm<C> contract_right(const AltForm<C>& theta, const MultiVector<D>& eta)
{
    return detail::contract_impl(eta, theta, false);
}

/// Canonical pairing theta(eta) of a p-form with a p-vector; dX^lambda(d_mu) = delta.
template <typename C, typename D>
C pair(const AltForm<C>& theta, const MultiVector<D>& eta)
{
    if (theta.dim() != eta.dim() || theta.degree() != eta.degree()) {
        throw DomainError("pairing: shape mismatch");
    }
    C total{};
    for (const auto& [k, v] : theta.components()) {
        auto it = eta.components().find(k);
        if (it != eta.components().end()) total += C(v * it->second);
    }
    return total;
}

/// Linear map from p-forms to q-forms, stored by its values on basis p-forms.
template <typename C>
class FormMap {
public:
    FormMap(int dim, int source_degree, int target_degree) : dim_(dim), source_(source_degree), target_(target_degree) {}

    int dim() const { return dim_; }
    int source_degree() const { return source_; }
    int target_degree() const { return target_; }

    void set_image(const IncreasingIndex& lambda, AltForm<C> image) { images_[lambda] = std::move(image); }

    AltForm<C> image(const IncreasingIndex& lambda) const
    {
        auto it = images_.find(lambda);
        return it == images_.end() ? AltForm<C>(dim_, target_) : it->second;
    }

    AltForm<C> operator()(const AltForm<C>& psi) const
    {
        if (psi.dim() != dim_ || psi.degree() != source_) throw DomainError("form map: argument shape mismatch");
        AltForm<C> out(dim_, target_);
        for (const auto& [k, v] : psi.components()) out += image(k).scaled(v);
        return out;
    }

    friend bool operator==(const FormMap& a, const FormMap& b)
    {
        if (a.dim_ != b.dim_ || a.source_ != b.source_ || a.target_ != b.target_) return false;
        for (const auto& lambda : enumerate_increasing(a.dim_, a.source_)) {
            if (!(a.image(lambda) == b.image(lambda))) return false;
        }
        return true;
    }

private:
    int dim_;
    int source_;
    int target_;
    std::map<IncreasingIndex, AltForm<C>> images_;
};

/// e_right(omega): psi -> omega ^ psi, an isomorphism from (n-p)-forms onto
/// Hom(p-forms, n-forms).
template <typename C>
FormMap<C> e_right(const AltForm<C>& omega, int p)
{
    const int n = omega.dim();
    if (p < 0 || p > n || omega.degree() != n - p) {
        throw DomainError("e_right: omega must have degree n - p");
    }
    FormMap<C> map(n, p, n);
    for (const auto& lambda : enumerate_increasing(n, p)) map.set_image(lambda, wedge(omega, AltForm<C>::basis(lambda)));
    return map;
}

/// e_left(omega): psi -> psi ^ omega.
template <typename C>
FormMap<C> e_left(const AltForm<C>& omega, int p)
{
    const int n = omega.dim();
    if (p < 0 || p > n || omega.degree() != n - p) {
        throw DomainError("e_left: omega must have degree n - p");
    }
    FormMap<C> map(n, p, n);
    for (const auto& lambda : enumerate_increasing(n, p)) map.set_image(lambda, wedge(AltForm<C>::basis(lambda), omega));
    return map;
}

/// The rank-one element xi (x) theta of Hom(p-forms, n-forms): psi -> psi(xi) theta.
template <typename C>
FormMap<C> rank_one(const MultiVector<C>& xi, const AltForm<C>& theta)
{
    if (xi.dim() != theta.dim()) throw DomainError("rank_one: dimension mismatch");
    FormMap<C> map(xi.dim(), xi.degree(), theta.degree());
    for (const auto& lambda : enumerate_increasing(xi.dim(), xi.degree())) {
        map.set_image(lambda, theta.scaled(xi[lambda]));
    }
    return map;
}

/// Inverse of e_right: recovers omega from psi -> omega ^ psi. Uses
/// omega ^ dX^lambda = eps^{lambda^ lambda} omega_{lambda^} dX.
template <typename C>
AltForm<C> e_right_inverse(const FormMap<C>& map)
{
    const int n = map.dim();
    if (map.target_degree() != n) throw DomainError("e_right_inverse: target must be n-forms");
    const int p = map.source_degree();
    const IncreasingIndex full = enumerate_increasing(n, n).front();
    AltForm<C> omega(n, n - p);
    for (const auto& lambda : enumerate_increasing(n, p)) {
        IncreasingIndex hat = complement(lambda);
        int eps = concat_sign(hat, lambda);
        C top = map.image(lambda)[full];
        omega.add(hat, eps > 0 ? top : C(-top));
    }
    return omega;
}

}  // namespace jetstress
