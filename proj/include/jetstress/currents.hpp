#pragma once

#include "jetstress/fields.hpp"
#include "jetstress/signs.hpp"

#include <string>
#include <vector>

namespace jetstress {

/// Which side of the test form the density sits on:
/// left  _omega T(psi) = int omega ^ psi,
/// right T_omega(psi)  = int psi ^ omega.
enum class DensitySide { left, right };

/// A smooth p-current on a box, represented by an (n-p)-form density.
template <Scalar T>
class SmoothCurrent {
public:
    SmoothCurrent(BoxDomain<T> domain, int p, FormField<T> density, DensitySide side = DensitySide::left)
        : domain_(std::move(domain)), p_(p), density_(std::move(density)), side_(side)
    {
        const int n = domain_.dim();
        if (p < 0 || p > n) throw DomainError("current: dimension p = " + std::to_string(p) + " outside 0..n");
        if (density_.dim() != n || density_.degree() != n - p) {
            throw DomainError("current: a " + std::to_string(p) + "-current needs a density of degree n - p = " +
                              std::to_string(n - p));
        }
    }

    static SmoothCurrent zero(const BoxDomain<T>& domain, int p)
    {
        return SmoothCurrent(domain, p, FormField<T>(domain.dim(), domain.dim() - p));
    }

    int dim() const { return domain_.dim(); }
    int p() const { return p_; }
    const BoxDomain<T>& domain() const { return domain_; }
    const FormField<T>& density() const { return density_; }
    DensitySide side() const { return side_; }

    /// The n-form integrated when acting on psi.
    FormField<T> integrand(const FormField<T>& psi) const
    {
        if (psi.dim() != dim() || psi.degree() != p_) {
            throw DomainError("current: a " + std::to_string(p_) + "-current acts on " + std::to_string(p_) +
                              "-forms, got degree " + std::to_string(psi.degree()));
        }
        return side_ == DensitySide::left ? wedge(density_, psi) : wedge(psi, density_);
    }

    T act(const FormField<T>& psi) const { return integrate_box(integrand(psi), domain_); }

    /// Same functional with a left density: T_omega = (-1)^{p(n-p)} _omega T.
    SmoothCurrent to_left() const
    {
        if (side_ == DensitySide::left) return *this;
        return SmoothCurrent(domain_, p_, density_.signed_copy(signs::graded_swap(p_, dim() - p_)), DensitySide::left);
    }

    SmoothCurrent& operator+=(const SmoothCurrent& other)
    {
        if (other.p_ != p_ || !(other.domain_ == domain_)) throw DomainError("current: cannot add currents of different shape");
        SmoothCurrent a = to_left();
        a.density_ += other.to_left().density_;
        return *this = a;
    }
    friend SmoothCurrent operator+(SmoothCurrent a, const SmoothCurrent& b) { return a += b; }

    SmoothCurrent scaled(const T& s) const
    {
        return SmoothCurrent(domain_, p_, density_.scaled(Polynomial<T>::constant(dim(), s)), side_);
    }

    /// `degree=p side=left density=[...]`
    std::string to_string() const
    {
        return "p=" + std::to_string(p_) + " side=" + (side_ == DensitySide::left ? "left" : "right") +
               " density=" + density_.to_string();
    }

private:
    BoxDomain<T> domain_;
    int p_;
    FormField<T> density_;
    DensitySide side_;
};

/// The n-current of the box itself, T_X(psi) = int_X psi.
template <Scalar T> SmoothCurrent<T> manifold_current(const BoxDomain<T>& box)
{
    const int n = box.dim();
    FormField<T> one(n, 0);
    one.add(IncreasingIndex({}, n), Polynomial<T>::constant(n, T(1)));
    return SmoothCurrent<T>(box, n, std::move(one));
}

/// A test p-form; the compact tag means every component carries the bump
/// factor B(X) = prod (X^i - a_i)(b_i - X^i) and so vanishes on the boundary.
template <Scalar T>
struct TestForm {
    FormField<T> form;
    bool compact = false;

    static TestForm compactly_supported(const FormField<T>& psi, const BoxDomain<T>& box)
    {
        const Polynomial<T> bump = boundary_bump<T>(box.intervals());
        FormField<T> out(psi.dim(), psi.degree());
        for (const auto& [k, v] : psi.components()) out.add(k, bump * v);
        return TestForm{std::move(out), true};
    }
};

/// Spanning family X^e dX^lambda, total degree of e <= max_degree, optionally
/// bump-multiplied.
template <Scalar T>
std::vector<FormField<T>> monomial_test_forms(const BoxDomain<T>& box, int p, int max_degree, bool compact)
{
    const int n = box.dim();
    std::vector<FormField<T>> out;
    std::vector<Exponent> exps{Exponent{}};
    for (int axis = 0; axis < n; ++axis) {
        std::vector<Exponent> next;
        for (const auto& e : exps) {
            int used = 0;
            for (auto x : e) used += x;
            for (int k = 0; used + k <= max_degree; ++k) {
                Exponent f = e;
                f[static_cast<std::size_t>(axis)] = static_cast<std::uint8_t>(k);
                next.push_back(f);
            }
        }
        exps = std::move(next);
    }
    for (const auto& lambda : enumerate_increasing(n, p)) {
        for (const auto& e : exps) {
            FormField<T> psi = FormField<T>::basis(lambda, Polynomial<T>::monomial(n, e));
            out.push_back(compact ? TestForm<T>::compactly_supported(psi, box).form : psi);
        }
    }
    return out;
}

/// Left density rho with rho ^ psi = L(psi) for every p-form psi, given the
/// pointwise linear map L on basis forms:
/// rho_{lambda^} = eps^{lambda^ lambda} L(dX^lambda)_{1..n}.
template <Scalar T, typename Integrand>
FormField<T> left_density_of(int n, int p, Integrand&& integrand)
{
    const IncreasingIndex full = enumerate_increasing(n, n).front();
    FormField<T> rho(n, n - p);
    for (const auto& lambda : enumerate_increasing(n, p)) {
        FormField<T> basis = FormField<T>::basis(lambda, Polynomial<T>::constant(n, T(1)));
        Polynomial<T> top = integrand(basis)[full];
        IncreasingIndex hat = complement(lambda);
        rho.add(hat, concat_sign(hat, lambda) > 0 ? top : -top);
    }
    return rho;
}

/// omega -| T, (omega -| T)(psi) = T(omega ^ psi), for a (p+q)-current T and a q-form omega.
template <Scalar T>
SmoothCurrent<T> contract_current_left(const FormField<T>& omega, const SmoothCurrent<T>& current)
{
    if (omega.degree() > current.p()) throw DomainError("contraction: form degree exceeds current dimension");
    const SmoothCurrent<T> left = current.to_left();
    return SmoothCurrent<T>(current.domain(), current.p() - omega.degree(), wedge(left.density(), omega));
}

/// T |- omega, (T |- omega)(psi) = T(psi ^ omega) = (-1)^{pq} (omega -| T)(psi).
template <Scalar T>
SmoothCurrent<T> contract_current_right(const SmoothCurrent<T>& current, const FormField<T>& omega)
{
    if (omega.degree() > current.p()) throw DomainError("contraction: form degree exceeds current dimension");
    const int p = current.p() - omega.degree();
    const SmoothCurrent<T> left = current.to_left();
    return SmoothCurrent<T>(current.domain(), p,
                            wedge(left.density(), omega).signed_copy(signs::graded_swap(p, omega.degree())));
}

/// xi ^ T, (xi ^ T)(psi) = T(xi -| psi), for a q-vector field xi and a p-current T.
template <Scalar T>
SmoothCurrent<T> wedge_current_left(const MultiVector<Polynomial<T>>& xi, const SmoothCurrent<T>& current)
{
    const int n = current.dim();
    const int degree = current.p() + xi.degree();
    if (degree > n) throw DomainError("wedge: current dimension would exceed n");
    auto density = left_density_of<T>(n, degree, [&](const FormField<T>& psi) {
        return current.integrand(contract_left(xi, psi));
    });
    return SmoothCurrent<T>(current.domain(), degree, std::move(density));
}

/// T ^ xi, (T ^ xi)(psi) = T(psi |- xi) = (-1)^{pq} (xi ^ T)(psi).
template <Scalar T>
SmoothCurrent<T> wedge_current_right(const SmoothCurrent<T>& current, const MultiVector<Polynomial<T>>& xi)
{
    SmoothCurrent<T> left = wedge_current_left(xi, current);
    return SmoothCurrent<T>(current.domain(), left.p(),
                            left.density().signed_copy(signs::graded_swap(current.p(), xi.degree())));
}

/// Density-level boundary: for _omega T, d(_omega T) = (-1)^{n-p+1} _{d omega} T.
/// Agrees with psi -> T(d psi) on test forms vanishing on the box boundary; use
/// boundary_full for the face term on general test forms.
template <Scalar T>
SmoothCurrent<T> boundary(const SmoothCurrent<T>& current)
{
    if (current.p() < 1) throw DomainError("boundary: a 0-current has no boundary");
    const int n = current.dim();
    const SmoothCurrent<T> left = current.to_left();
    FormField<T> d = exterior_derivative(left.density());
    return SmoothCurrent<T>(current.domain(), current.p() - 1, d.signed_copy(signs::current_boundary(n, current.p())));
}

/// dT = (-1)^{n-p+1} dT as a current; d(_omega T) = _{d omega} T for smooth currents.
template <Scalar T>
SmoothCurrent<T> ext_derivative(const SmoothCurrent<T>& current)
{
    SmoothCurrent<T> b = boundary(current);
    return SmoothCurrent<T>(current.domain(), b.p(),
                            b.density().signed_copy(signs::current_boundary(current.dim(), current.p())));
}

template <Scalar T>
struct BoundarySplit {
    T interior;  ///< density-level boundary acting on psi
    T face;      ///< Stokes face term (-1)^{n-p} int_{dX} omega ^ psi
    T total;     ///< T(d psi), evaluated directly
};

/// T(d psi) split into the density-level boundary and the boundary face term.
template <Scalar T>
BoundarySplit<T> boundary_full(const SmoothCurrent<T>& current, const FormField<T>& psi)
{
    const SmoothCurrent<T> left = current.to_left();
    const int n = current.dim();
    BoundarySplit<T> out;
    out.interior = boundary(current).act(psi);
    T face = integrate_boundary(wedge(left.density(), psi), current.domain());
    out.face = minus_one_pow(n - current.p()) > 0 ? face : T(-face);
    out.total = current.act(exterior_derivative(psi));
    return out;
}

/// R^lambda = dX^lambda -| R, one 0-current (n-form density) per basis p-form.
template <Scalar T>
struct ZeroCurrentRep {
    std::vector<IncreasingIndex> labels;
    std::vector<SmoothCurrent<T>> components;
};

template <Scalar T>
ZeroCurrentRep<T> rep_zero_currents(const SmoothCurrent<T>& current)
{
    const int n = current.dim();
    ZeroCurrentRep<T> rep;
    for (const auto& lambda : enumerate_increasing(n, current.p())) {
        FormField<T> basis = FormField<T>::basis(lambda, Polynomial<T>::constant(n, T(1)));
        rep.labels.push_back(lambda);
        rep.components.push_back(contract_current_left(basis, current));
    }
    return rep;
}

/// R = d_lambda ^ R^lambda.
template <Scalar T>
SmoothCurrent<T> reconstruct(const ZeroCurrentRep<T>& rep, const BoxDomain<T>& box, int p)
{
    const int n = box.dim();
    SmoothCurrent<T> out = SmoothCurrent<T>::zero(box, p);
    for (std::size_t k = 0; k < rep.labels.size(); ++k) {
        auto xi = MultiVector<Polynomial<T>>::basis(rep.labels[k], Polynomial<T>::constant(n, T(1)));
        out += wedge_current_left(xi, rep.components[k]);
    }
    return out;
}

/// R(psi) = sum_lambda R^lambda(psi_lambda).
template <Scalar T>
T act_from_zero_currents(const ZeroCurrentRep<T>& rep, const FormField<T>& psi)
{
    T total = 0;
    const int n = psi.dim();
    for (std::size_t k = 0; k < rep.labels.size(); ++k) {
        FormField<T> function(n, 0);
        function.add(IncreasingIndex({}, n), psi[rep.labels[k]]);
        total += rep.components[k].act(function);
    }
    return total;
}

/// R_{lambda^} = d_{lambda^} ^ R (and the primed R'_{lambda^} = R ^ d_{lambda^}),
/// one n-current per strictly increasing lambda^ of length n - p.
template <Scalar T>
struct NCurrentRep {
    std::vector<IncreasingIndex> labels;  ///< the lambda^
    std::vector<SmoothCurrent<T>> components;
    bool primed = false;
};

template <Scalar T>
NCurrentRep<T> rep_n_currents(const SmoothCurrent<T>& current, bool primed = false)
{
    const int n = current.dim();
    NCurrentRep<T> rep;
    rep.primed = primed;
    for (const auto& hat : enumerate_increasing(n, n - current.p())) {
        auto xi = MultiVector<Polynomial<T>>::basis(hat, Polynomial<T>::constant(n, T(1)));
        rep.labels.push_back(hat);
        rep.components.push_back(primed ? wedge_current_right(current, xi) : wedge_current_left(xi, current));
    }
    return rep;
}

/// R(omega) = sum_lambda eps^{lambda^ lambda} R_{lambda^}(omega_lambda dX), or
/// with eps^{lambda lambda^} for the primed family.
template <Scalar T>
T act_from_n_currents(const NCurrentRep<T>& rep, const FormField<T>& omega)
{
    const int n = omega.dim();
    T total = 0;
    for (std::size_t k = 0; k < rep.labels.size(); ++k) {
        const IncreasingIndex& hat = rep.labels[k];
        const IncreasingIndex lambda = complement(hat);
        int eps = rep.primed ? concat_sign(lambda, hat) : concat_sign(hat, lambda);
        T value = rep.components[k].act(FormField<T>::basis(enumerate_increasing(n, n).front(), omega[lambda]));
        total += eps > 0 ? value : T(-value);
    }
    return total;
}

/// R = dX^{lambda^} -| R_{lambda^} (unprimed) or R = R'_{lambda^} |- dX^{lambda^} (primed).
template <Scalar T>
SmoothCurrent<T> reconstruct(const NCurrentRep<T>& rep, const BoxDomain<T>& box, int p)
{
    const int n = box.dim();
    SmoothCurrent<T> out = SmoothCurrent<T>::zero(box, p);
    for (std::size_t k = 0; k < rep.labels.size(); ++k) {
        FormField<T> dx = FormField<T>::basis(rep.labels[k], Polynomial<T>::constant(n, T(1)));
        out += rep.primed ? contract_current_right(rep.components[k], dx) : contract_current_left(dx, rep.components[k]);
    }
    return out;
}

/// Largest |T1(psi) - T2(psi)| over the given test forms.
template <Scalar T>
T max_action_gap(const SmoothCurrent<T>& a, const SmoothCurrent<T>& b, const std::vector<FormField<T>>& tests)
{
    T best = 0;
    for (const auto& psi : tests) {
        T gap = abs_value(T(a.act(psi) - b.act(psi)));
        if (gap > best) best = gap;
    }
    return best;
}

}  // namespace jetstress
