#pragma once

#include "jetstress/box.hpp"
#include "jetstress/exterior.hpp"
#include "jetstress/multiindex.hpp"
#include "jetstress/polynomial.hpp"

#include <string>
#include <vector>

namespace jetstress {

/// p-form field omega = omega_lambda dX^lambda with polynomial components.
template <Scalar T> using FormField = AltForm<Polynomial<T>>;

template <Scalar T> Polynomial<T> differentiate(const Polynomial<T>& f, int axis) { return f.derivative(axis); }

/// A constant-coefficient form lifted to a form field.
template <Scalar T> FormField<T> to_field(const AltForm<T>& form)
{
    FormField<T> out(form.dim(), form.degree());
    for (const auto& [k, v] : form.components()) out.add(k, Polynomial<T>::constant(form.dim(), v));
    return out;
}

/// Exact integral of a function over a box (against dX with the standard orientation).
template <Scalar T> T integrate_box(const Polynomial<T>& f, const BoxDomain<T>& box)
{
    if (f.is_zero()) return T(0);
    if (f.dim() != box.dim()) throw DomainError("integrate_box: dimension mismatch");
    Polynomial<T> g = f;
    for (int i = 1; i <= box.dim(); ++i) g = g.integrate_axis(i, box.lower(i), box.upper(i));
    return g.constant_term();
}

/// Integral of an n-form field over the box.
template <Scalar T> T integrate_box(const FormField<T>& mu, const BoxDomain<T>& box)
{
    if (mu.degree() != mu.dim()) {
        throw DomainError("integrate_box: need an n-form, got degree " + std::to_string(mu.degree()));
    }
    if (mu.dim() != box.dim()) throw DomainError("integrate_box: dimension mismatch");
    return integrate_box(mu[enumerate_increasing(mu.dim(), mu.dim()).front()], box);
}

/// Lebesgue integral of a function over one face, i.e. the face coordinate is
/// frozen and the remaining axes are integrated in increasing order. No
/// orientation sign is applied.
template <Scalar T> T integrate_face(const Polynomial<T>& f, const BoxDomain<T>& box, const Face& face)
{
    box.require_face(face);
    if (f.is_zero()) return T(0);
    Polynomial<T> g = f.substitute(face.axis, box.face_value(face));
    for (int i = 1; i <= box.dim(); ++i) {
        if (i != face.axis) g = g.integrate_axis(i, box.lower(i), box.upper(i));
    }
    return g.constant_term();
}

/// Integral of an (n-1)-form over one face with its induced orientation. Only
/// the dX^{i^} component (i^ the complement of the face axis) pulls back
/// non-trivially.
template <Scalar T> T integrate_over_face(const FormField<T>& omega, const BoxDomain<T>& box, const Face& face)
{
    const int n = box.dim();
    IncreasingIndex hat = complement(IncreasingIndex({face.axis}, n));
    T value = integrate_face(omega[hat], box, face);
    return face.orientation_sign() > 0 ? value : T(-value);
}

/// Sum over the 2n faces of the pullback integral of an (n-1)-form.
template <Scalar T> T integrate_boundary(const FormField<T>& omega, const BoxDomain<T>& box)
{
    const int n = box.dim();
    if (omega.dim() != n || omega.degree() != n - 1) {
        throw DomainError("integrate_boundary: need an (n-1)-form on the box");
    }
    T total = 0;
    for (const Face& face : box.faces()) total += integrate_over_face(omega, box, face);
    return total;
}

/// d omega = sum_i sum_lambda d_i omega_lambda dX^i ^ dX^lambda.
template <Scalar T> FormField<T> exterior_derivative(const FormField<T>& omega)
{
    const int n = omega.dim();
    if (omega.degree() >= n) throw DomainError("exterior_derivative: no forms of degree above n");
    FormField<T> out(n, omega.degree() + 1);
    for (const auto& [lambda, coeff] : omega.components()) {
        for (int i = 1; i <= n; ++i) {
            IncreasingIndex di({i}, n);
            int sign = merge_sign(di, lambda);
            if (sign == 0) continue;
            Polynomial<T> d = coeff.derivative(i);
            out.add(merge_union(di, lambda), sign > 0 ? d : -d);
        }
    }
    return out;
}

/// A section w = (w^1, ..., w^m) of the trivial rank-m bundle over a box.
template <Scalar T>
class SectionField {
public:
    SectionField() = default;
    SectionField(BoxDomain<T> domain, std::vector<Polynomial<T>> components)
        : domain_(std::move(domain)), components_(std::move(components))
    {
        for (auto& c : components_) {
            if (c.is_zero()) c = Polynomial<T>(domain_.dim());
            if (c.dim() != domain_.dim()) throw DomainError("section: component dimension differs from domain");
        }
    }

    static SectionField zero(BoxDomain<T> domain, int fiber)
    {
        int n = domain.dim();
        return SectionField(std::move(domain), std::vector<Polynomial<T>>(static_cast<std::size_t>(fiber), Polynomial<T>(n)));
    }

    int dim() const { return domain_.dim(); }
    int fiber() const { return static_cast<int>(components_.size()); }
    const BoxDomain<T>& domain() const { return domain_; }
    const std::vector<Polynomial<T>>& components() const { return components_; }
    const Polynomial<T>& operator[](int alpha) const { return components_.at(static_cast<std::size_t>(alpha - 1)); }

    SectionField& operator+=(const SectionField& o)
    {
        require_compatible(o);
        for (std::size_t k = 0; k < components_.size(); ++k) components_[k] += o.components_[k];
        return *this;
    }
    SectionField& operator-=(const SectionField& o)
    {
        require_compatible(o);
        for (std::size_t k = 0; k < components_.size(); ++k) components_[k] -= o.components_[k];
        return *this;
    }
    friend SectionField operator+(SectionField a, const SectionField& b) { return a += b; }
    friend SectionField operator-(SectionField a, const SectionField& b) { return a -= b; }
    friend SectionField operator*(const T& s, SectionField a)
    {
        for (auto& c : a.components_) c *= s;
        return a;
    }
    friend SectionField operator*(const Polynomial<T>& u, const SectionField& a)
    {
        SectionField out = a;
        for (auto& c : out.components_) c = u * c;
        return out;
    }
    bool operator==(const SectionField&) const = default;

    /// Same components viewed on a sub-box.
    SectionField restrict_to(const BoxDomain<T>& sub) const
    {
        if (!domain_.contains(sub)) throw DomainError("section: restriction box not inside the domain");
        return SectionField(sub, components_);
    }

    template <Scalar U> SectionField<U> cast() const
    {
        std::vector<Polynomial<U>> comps;
        for (const auto& c : components_) comps.push_back(c.template cast<U>());
        return SectionField<U>(domain_.template cast<U>(), std::move(comps));
    }

    void require_compatible(const SectionField& o) const
    {
        if (o.dim() != dim() || o.fiber() != fiber()) {
            throw DomainError("section: shape mismatch (n, m) = (" + std::to_string(dim()) + ", " +
                              std::to_string(fiber()) + ") vs (" + std::to_string(o.dim()) + ", " +
                              std::to_string(o.fiber()) + ")");
        }
    }

private:
    BoxDomain<T> domain_;
    std::vector<Polynomial<T>> components_;
};

/// Lattice of evaluation points: `counts[i]` equally spaced points on axis i,
/// corners included.
class SamplingGrid {
public:
    SamplingGrid() = default;
    explicit SamplingGrid(std::vector<int> counts) : counts_(std::move(counts))
    {
        for (int c : counts_) {
            if (c < 2) throw DomainError("grid: need at least 2 points per axis");
        }
    }
    static SamplingGrid uniform(int n, int count) { return SamplingGrid(std::vector<int>(static_cast<std::size_t>(n), count)); }

    const std::vector<int>& counts() const { return counts_; }
    int dim() const { return static_cast<int>(counts_.size()); }

    template <Scalar T> std::vector<std::vector<T>> points(const BoxDomain<T>& box) const
    {
        if (box.dim() != dim()) throw DomainError("grid: dimension differs from box");
        std::vector<std::vector<T>> out{{}};
        for (int i = 1; i <= dim(); ++i) {
            const int count = counts_[static_cast<std::size_t>(i - 1)];
            std::vector<std::vector<T>> next;
            for (const auto& prefix : out) {
                for (int k = 0; k < count; ++k) {
                    auto p = prefix;
                    T step = (box.upper(i) - box.lower(i)) / T(count - 1);
                    p.push_back(k == count - 1 ? box.upper(i) : T(box.lower(i) + T(k) * step));
                    next.push_back(std::move(p));
                }
            }
            out = std::move(next);
        }
        return out;
    }

private:
    std::vector<int> counts_;
};

/// sup over grid points of |f|.
template <Scalar T> T grid_sup(const Polynomial<T>& f, const std::vector<std::vector<T>>& points)
{
    T best = 0;
    if (f.is_zero()) return best;
    for (const auto& x : points) {
        T v = abs_value(f.evaluate(x));
        if (v > best) best = v;
    }
    return best;
}

/// ||w||^r: sup over grid points, components and all |I| <= r of |d_I w^alpha|.
template <Scalar T> T cr_norm(const SectionField<T>& w, int order, const SamplingGrid& grid)
{
    if (order < 0) throw DomainError("cr_norm: negative order");
    const auto points = grid.points(w.domain());
    T best = 0;
    for (const auto& component : w.components()) {
        for (const auto& index : enumerate_non_decreasing_upto(w.dim(), order)) {
            T v = grid_sup(component.derivative(index.entries()), points);
            if (v > best) best = v;
        }
    }
    return best;
}

/// kappa' lies in the C^r neighbourhood of radius eps around kappa (strict inequality).
template <Scalar T>
bool neighborhood_contains(const SectionField<T>& kappa, const SectionField<T>& kappa_prime, const T& eps, int order,
                           const SamplingGrid& grid)
{
    kappa.require_compatible(kappa_prime);
    return cr_norm(kappa_prime - kappa, order, grid) < eps;
}

/// Jacobian D kappa(X) as row-major m x n values.
template <Scalar T>
std::vector<std::vector<T>> jacobian_at(const SectionField<T>& kappa, const std::vector<T>& x)
{
    std::vector<std::vector<T>> jac;
    for (const auto& component : kappa.components()) {
        std::vector<T> row;
        for (int i = 1; i <= kappa.dim(); ++i) row.push_back(component.derivative(i).evaluate(x));
        jac.push_back(std::move(row));
    }
    return jac;
}

/// Max-norm unit vectors used to probe |D kappa(X) v|: the 2n signed basis
/// vectors followed by the 2^n sign patterns (+-1, ..., +-1).
template <Scalar T> std::vector<std::vector<T>> unit_vector_samples(int n)
{
    std::vector<std::vector<T>> out;
    for (int i = 0; i < n; ++i) {
        for (int s : {1, -1}) {
            std::vector<T> v(static_cast<std::size_t>(n), T(0));
            v[static_cast<std::size_t>(i)] = T(s);
            out.push_back(std::move(v));
        }
    }
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<T> v;
        for (int i = 0; i < n; ++i) v.push_back((mask >> i) & 1u ? T(-1) : T(1));
        out.push_back(std::move(v));
    }
    return out;
}

/// M = min over grid points and sampled unit vectors of |D kappa(X) v| (max-norm).
template <Scalar T> T injectivity_margin(const SectionField<T>& kappa, const SamplingGrid& grid)
{
    if (kappa.fiber() < kappa.dim()) throw DomainError("injectivity_margin: need fiber dimension m >= n");
    const auto samples = unit_vector_samples<T>(kappa.dim());
    bool first = true;
    T best = 0;
    for (const auto& x : grid.points(kappa.domain())) {
        const auto jac = jacobian_at(kappa, x);
        for (const auto& v : samples) {
            T norm = 0;
            for (const auto& row : jac) {
                T acc = 0;
                for (std::size_t i = 0; i < v.size(); ++i) acc += row[i] * v[i];
                T a = abs_value(acc);
                if (a > norm) norm = a;
            }
            if (first || norm < best) best = norm;
            first = false;
        }
    }
    return best;
}

/// Rank by Gaussian elimination; exact on rationals, tolerance for doubles.
template <Scalar T> int matrix_rank(std::vector<std::vector<T>> rows, double tol = 1e-12)
{
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    int rank = 0;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
        std::size_t best = pivot_row;
        for (std::size_t r = pivot_row; r < rows.size(); ++r) {
            if (abs_value(rows[r][c]) > abs_value(rows[best][c])) best = r;
        }
        bool zero_pivot;
        if constexpr (std::same_as<T, double>) zero_pivot = std::fabs(rows[best][c]) <= tol;
        else zero_pivot = is_zero(rows[best][c]);
        if (zero_pivot) continue;
        std::swap(rows[pivot_row], rows[best]);
        for (std::size_t r = pivot_row + 1; r < rows.size(); ++r) {
            T factor = rows[r][c] / rows[pivot_row][c];
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[pivot_row][k];
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

/// D kappa(X) has rank n at every grid point.
template <Scalar T> bool is_immersion_on_grid(const SectionField<T>& kappa, const SamplingGrid& grid)
{
    if (kappa.fiber() < kappa.dim()) throw DomainError("is_immersion_on_grid: need fiber dimension m >= n");
    for (const auto& x : grid.points(kappa.domain())) {
        if (matrix_rank(jacobian_at(kappa, x)) != kappa.dim()) return false;
    }
    return true;
}

}  // namespace jetstress
