#pragma once

#include "jetstress/fields.hpp"
#include "jetstress/jets.hpp"
#include "jetstress/signs.hpp"

#include <string>
#include <vector>

namespace jetstress {

/// Smooth (hyper-)stress density of order r: S^I_alpha for every symmetric
/// I with 0 <= |I| <= r, where S^{()}_alpha is the zeroth-order slot S_alpha.
/// The slot layout is that of JetField, which is reused for storage.
template <Scalar T>
class StressDensity {
public:
    StressDensity(BoxDomain<T> domain, int fiber, int order) : slots_(std::move(domain), fiber, order) {}

    int dim() const { return slots_.dim(); }
    int fiber() const { return slots_.fiber(); }
    int order() const { return slots_.order(); }
    const BoxDomain<T>& domain() const { return slots_.domain(); }

    const Polynomial<T>& at(int alpha, const NonDecreasingIndex& index) const { return slots_.at(alpha, index); }
    void set(int alpha, const NonDecreasingIndex& index, Polynomial<T> value) { slots_.set(alpha, index, std::move(value)); }

    /// S_alpha
    const Polynomial<T>& base(int alpha) const { return at(alpha, NonDecreasingIndex({}, dim())); }
    void set_base(int alpha, Polynomial<T> value) { set(alpha, NonDecreasingIndex({}, dim()), std::move(value)); }
    /// S^i_alpha
    const Polynomial<T>& flux(int alpha, int i) const { return at(alpha, NonDecreasingIndex({i}, dim())); }
    void set_flux(int alpha, int i, Polynomial<T> value) { set(alpha, NonDecreasingIndex({i}, dim()), std::move(value)); }

    const std::map<NonDecreasingIndex, Polynomial<T>>& slots(int alpha) const { return slots_.slots(alpha); }

    StressDensity& operator+=(const StressDensity& o)
    {
        slots_ += o.slots_;
        return *this;
    }
    friend StressDensity operator+(StressDensity a, const StressDensity& b) { return a += b; }
    friend StressDensity operator*(const T& s, StressDensity a)
    {
        a.slots_ = s * a.slots_;
        return a;
    }
    bool operator==(const StressDensity&) const = default;

    template <Scalar U> StressDensity<U> cast() const
    {
        StressDensity<U> out(domain().template cast<U>(), fiber(), order());
        for (int alpha = 1; alpha <= fiber(); ++alpha) {
            for (const auto& [k, v] : slots(alpha)) out.set(alpha, k, v.template cast<U>());
        }
        return out;
    }

    void require_order_one(const char* what) const
    {
        if (order() != 1) {
            throw DomainError(std::string(what) + ": needs a simple stress (order 1), got order " + std::to_string(order()));
        }
    }

private:
    JetField<T> slots_;
};

/// Smooth non-holonomic stress density: S^{p, I_p}_alpha for every binary node
/// p of generation <= r and full multi-index I_p of length |p|.
template <Scalar T>
class NonHolonomicStressDensity {
public:
    NonHolonomicStressDensity(BoxDomain<T> domain, int fiber, int order) : slots_(std::move(domain), fiber, order) {}

    int dim() const { return slots_.dim(); }
    int fiber() const { return slots_.fiber(); }
    int order() const { return slots_.order(); }
    const BoxDomain<T>& domain() const { return slots_.domain(); }
    std::vector<BinaryNodeIndex> labels() const { return slots_.labels(); }

    const Polynomial<T>& at(BinaryNodeIndex p, int alpha, const MultiIndex& index) const { return slots_.at(p, alpha, index); }
    void set(BinaryNodeIndex p, int alpha, const MultiIndex& index, Polynomial<T> value)
    {
        slots_.set(p, alpha, index, std::move(value));
    }
    const IteratedJetField<T>& slots() const { return slots_; }

    template <Scalar U> NonHolonomicStressDensity<U> cast() const
    {
        NonHolonomicStressDensity<U> out(domain().template cast<U>(), fiber(), order());
        for (const auto& p : labels()) {
            for (const auto& index : enumerate_multi(dim(), p.arity())) {
                for (int alpha = 1; alpha <= fiber(); ++alpha) out.set(p, alpha, index, at(p, alpha, index).template cast<U>());
            }
        }
        return out;
    }

private:
    IteratedJetField<T> slots_;
};

namespace detail {

template <Scalar T> void require_section_fits(const BoxDomain<T>& domain, int fiber, const SectionField<T>& w, const char* what)
{
    if (w.dim() != domain.dim() || w.fiber() != fiber) {
        throw DomainError(std::string(what) + ": stress has (n, m) = (" + std::to_string(domain.dim()) + ", " +
                          std::to_string(fiber) + "), section has (" + std::to_string(w.dim()) + ", " +
                          std::to_string(w.fiber()) + ")");
    }
}

}  // namespace detail

/// Stress power density sum_alpha sum_I S^I_alpha d_I w^alpha, the integrand of
/// the principle of virtual work.
template <Scalar T> Polynomial<T> power_density(const StressDensity<T>& s, const SectionField<T>& w)
{
    detail::require_section_fits(s.domain(), s.fiber(), w, "power_density");
    Polynomial<T> out(s.dim());
    for (int alpha = 1; alpha <= s.fiber(); ++alpha) {
        for (const auto& [index, coeff] : s.slots(alpha)) {
            if (!coeff.is_zero()) out += coeff * w[alpha].derivative(index.entries());
        }
    }
    return out;
}

/// F(w) = int_X S^I_alpha d_I w^alpha dX.
template <Scalar T> T force_of(const StressDensity<T>& s, const SectionField<T>& w)
{
    return integrate_box(power_density(s, w), s.domain());
}

template <Scalar T> Polynomial<T> power_density(const NonHolonomicStressDensity<T>& s, const SectionField<T>& w)
{
    detail::require_section_fits(s.domain(), s.fiber(), w, "power_density");
    const IteratedJetField<T> jet = iterate_prolong(w, s.order());
    Polynomial<T> out(s.dim());
    for (const auto& p : s.labels()) {
        const auto& stress = s.slots().array(p);
        const auto& values = jet.array(p);
        for (std::size_t k = 0; k < stress.size(); ++k) {
            if (!stress[k].is_zero()) out += stress[k] * values[k];
        }
    }
    return out;
}

/// F(w) = int_X sum_{G_p <= r} S^{p, I_p}_alpha d_{I_p} w^alpha dX.
template <Scalar T> T force_of_nh(const NonHolonomicStressDensity<T>& s, const SectionField<T>& w)
{
    return integrate_box(power_density(s, w), s.domain());
}

/// Spreads a holonomic stress over the iterated-jet slots so that force_of_nh
/// reproduces force_of: S^{p, I} = S^{sort I} / (C(r, |p|) * #perm(sort I)).
template <Scalar T> NonHolonomicStressDensity<T> split_symmetric(const StressDensity<T>& s)
{
    NonHolonomicStressDensity<T> out(s.domain(), s.fiber(), s.order());
    const int r = s.order();
    for (const auto& p : out.labels()) {
        const int k = p.arity();
        for (const auto& index : enumerate_multi(s.dim(), k)) {
            const NonDecreasingIndex sym = sorted(index);
            const T weight = T(1) / (T(static_cast<long>(binomial(r, k))) * T(static_cast<long>(permutation_count(sym))));
            for (int alpha = 1; alpha <= s.fiber(); ++alpha) out.set(p, alpha, index, s.at(alpha, sym) * weight);
        }
    }
    return out;
}

/// Vertical part of a simple stress: drops S_alpha and keeps S^i_alpha.
template <Scalar T> StressDensity<T> vertical_projection(const StressDensity<T>& s)
{
    s.require_order_one("vertical_projection");
    StressDensity<T> out = s;
    for (int alpha = 1; alpha <= s.fiber(); ++alpha) out.set_base(alpha, Polynomial<T>(s.dim()));
    return out;
}

/// Action of a vertical stress on the T*X (x) W-valued field du (x) w:
/// int S^i_alpha d_i u w^alpha dX.
template <Scalar T> T vertical_action(const StressDensity<T>& vertical, const Polynomial<T>& u, const SectionField<T>& w)
{
    vertical.require_order_one("vertical_action");
    detail::require_section_fits(vertical.domain(), vertical.fiber(), w, "vertical_action");
    Polynomial<T> integrand(vertical.dim());
    for (int alpha = 1; alpha <= vertical.fiber(); ++alpha) {
        for (int i = 1; i <= vertical.dim(); ++i) integrand += vertical.flux(alpha, i) * u.derivative(i) * w[alpha];
    }
    return integrate_box(integrand, vertical.domain());
}

/// Co-vector valued (n-1)-form density s = s_{alpha i^} e^alpha (x) dX^{i^}.
/// The primed variant stores s' = (-1)^{n-1} s, for which the Cauchy formula
/// carries no sign.
template <Scalar T>
struct TractionDensity {
    BoxDomain<T> domain;
    std::vector<FormField<T>> components;  ///< one (n-1)-form per alpha
    bool primed = false;

    int dim() const { return domain.dim(); }
    int fiber() const { return static_cast<int>(components.size()); }
    /// s_{alpha i^}
    Polynomial<T> at(int alpha, int i) const
    {
        return components.at(static_cast<std::size_t>(alpha - 1))[complement(IncreasingIndex({i}, dim()))];
    }
};

/// s_{alpha i^} = (-1)^{n-i} S^i_alpha (primed: additionally times (-1)^{n-1}).
template <Scalar T> TractionDensity<T> traction_stress(const StressDensity<T>& s, bool primed = false)
{
    s.require_order_one("traction_stress");
    const int n = s.dim();
    TractionDensity<T> out{s.domain(), {}, primed};
    for (int alpha = 1; alpha <= s.fiber(); ++alpha) {
        FormField<T> form(n, n - 1);
        for (int i = 1; i <= n; ++i) {
            int sign = signs::traction(n, i);
            if (primed) sign *= signs::cauchy(n);
            const Polynomial<T>& flux = s.flux(alpha, i);
            form.add(complement(IncreasingIndex({i}, n)), sign > 0 ? flux : -flux);
        }
        out.components.push_back(std::move(form));
    }
    return out;
}

/// Traction on one face: t_alpha densities against the face's Lebesgue measure,
/// already carrying the induced-orientation sign. Each t_alpha is a polynomial
/// in X with the face coordinate frozen.
template <Scalar T>
struct SurfaceTraction {
    Face face;
    std::vector<Polynomial<T>> components;
};

/// t = (-1)^{n-1} rho(s) = rho(s'): pulls s_{alpha i^} back to the face.
template <Scalar T> SurfaceTraction<T> surface_traction(const TractionDensity<T>& s, const Face& face)
{
    s.domain.require_face(face);
    const int n = s.dim();
    int sign = face.orientation_sign();
    if (!s.primed) sign *= signs::cauchy(n);
    SurfaceTraction<T> out{face, {}};
    for (int alpha = 1; alpha <= s.fiber(); ++alpha) {
        Polynomial<T> pulled = s.at(alpha, face.axis).substitute(face.axis, s.domain.face_value(face));
        if (pulled.is_zero()) pulled = Polynomial<T>(n);
        out.components.push_back(sign > 0 ? pulled : -pulled);
    }
    return out;
}

template <Scalar T> std::vector<SurfaceTraction<T>> surface_tractions(const TractionDensity<T>& s)
{
    std::vector<SurfaceTraction<T>> out;
    for (const Face& face : s.domain.faces()) out.push_back(surface_traction(s, face));
    return out;
}

/// int_face t_alpha w^alpha.
template <Scalar T> T face_power(const SurfaceTraction<T>& t, const SectionField<T>& w)
{
    Polynomial<T> integrand(w.dim());
    for (std::size_t a = 0; a < t.components.size(); ++a) integrand += t.components[a] * w.components()[a];
    return integrate_face(integrand, w.domain(), t.face);
}

/// Components b_alpha of b = b_alpha e^alpha (x) dX.
template <Scalar T>
struct BodyForceDensity {
    BoxDomain<T> domain;
    std::vector<Polynomial<T>> components;
};

/// div S = (S^i_{alpha,i} - S_alpha) e^alpha (x) dX.
template <Scalar T> BodyForceDensity<T> divergence(const StressDensity<T>& s)
{
    s.require_order_one("divergence");
    BodyForceDensity<T> out{s.domain(), {}};
    for (int alpha = 1; alpha <= s.fiber(); ++alpha) {
        Polynomial<T> d = -s.base(alpha);
        for (int i = 1; i <= s.dim(); ++i) d += s.flux(alpha, i).derivative(i);
        if (d.is_zero()) d = Polynomial<T>(s.dim());
        out.components.push_back(std::move(d));
    }
    return out;
}

/// b = -div S.
template <Scalar T> BodyForceDensity<T> body_force(const StressDensity<T>& s)
{
    BodyForceDensity<T> out = divergence(s);
    for (auto& c : out.components) c = -c;
    return out;
}

template <Scalar T>
struct BalanceReport {
    T lhs;            ///< force_of(S, w)
    T body_term;      ///< int b_alpha w^alpha dX
    T boundary_term;  ///< sum over faces of int t_alpha w^alpha
    T residual;       ///< lhs - body - boundary
    std::vector<std::pair<Face, T>> faces;
};

/// S . j^1 w = b . w + t . w on the box.
template <Scalar T> BalanceReport<T> balance_check(const StressDensity<T>& s, const SectionField<T>& w)
{
    s.require_order_one("balance_check");
    detail::require_section_fits(s.domain(), s.fiber(), w, "balance_check");
    BalanceReport<T> report;
    report.lhs = force_of(s, w);

    const BodyForceDensity<T> b = body_force(s);
    Polynomial<T> body(s.dim());
    for (int alpha = 1; alpha <= s.fiber(); ++alpha) body += b.components[static_cast<std::size_t>(alpha - 1)] * w[alpha];
    report.body_term = integrate_box(body, s.domain());

    report.boundary_term = T(0);
    for (const auto& t : surface_tractions(traction_stress(s))) {
        T value = face_power(t, w);
        report.faces.emplace_back(t.face, value);
        report.boundary_term += value;
    }
    report.residual = report.lhs - report.body_term - report.boundary_term;
    return report;
}

/// F_R(w): the force_of integrand integrated over the sub-box R only.
template <Scalar T> T restrict_force_system(const StressDensity<T>& s, const BoxDomain<T>& sub, const SectionField<T>& w)
{
    if (!s.domain().contains(sub)) {
        throw DomainError("restrict_force_system: sub-body " + sub.to_string() + " not inside " + s.domain().to_string());
    }
    return integrate_box(power_density(s, w), sub);
}

/// Monomial probe sections X^e e_alpha with total degree <= max_degree.
template <Scalar T> std::vector<SectionField<T>> monomial_probes(const BoxDomain<T>& box, int fiber, int max_degree = 3)
{
    const int n = box.dim();
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
    std::vector<SectionField<T>> out;
    for (int alpha = 1; alpha <= fiber; ++alpha) {
        for (const auto& e : exps) {
            SectionField<T> w = SectionField<T>::zero(box, fiber);
            std::vector<Polynomial<T>> comps = w.components();
            comps[static_cast<std::size_t>(alpha - 1)] = Polynomial<T>::monomial(n, e);
            out.emplace_back(box, std::move(comps));
        }
    }
    return out;
}

template <Scalar T>
struct EquivalenceResult {
    bool equivalent;
    T max_gap;
};

/// force_of(S1, w) == force_of(S2, w) on every probe (within tol for doubles).
template <Scalar T>
EquivalenceResult<T> stresses_equivalent(const StressDensity<T>& a, const StressDensity<T>& b,
                                         const std::vector<SectionField<T>>& probes, double tol = 0)
{
    if (a.dim() != b.dim() || a.fiber() != b.fiber() || a.order() != b.order() || !(a.domain() == b.domain())) {
        throw DomainError("stresses_equivalent: shape mismatch");
    }
    T gap = 0;
    for (const auto& w : probes) {
        T d = abs_value(T(force_of(a, w) - force_of(b, w)));
        if (d > gap) gap = d;
    }
    bool same;
    if constexpr (std::same_as<T, double>) same = gap <= tol;
    else same = is_zero(gap);
    return {same, gap};
}

template <Scalar T>
EquivalenceResult<T> stresses_equivalent(const StressDensity<T>& a, const StressDensity<T>& b)
{
    return stresses_equivalent(a, b, monomial_probes(a.domain(), a.fiber()));
}

/// A potential phi^{ij}_alpha (i < j) for a pure-gauge increment.
template <Scalar T>
struct GaugePotential {
    int alpha;
    int i;
    int j;
    Polynomial<T> shape;
};

/// Pure-gauge increment dS^i_alpha = sum_j d_j phi^{ij}_alpha with phi
/// antisymmetric and phi^{ij} = shape * B^2, B the boundary bump of the box.
/// Divergence-free because d_i d_j phi^{ij} cancels in pairs; boundary-traction
/// free because B^2 vanishes to second order on every face.
template <Scalar T>
StressDensity<T> pure_gauge_increment(const BoxDomain<T>& box, int fiber, const std::vector<GaugePotential<T>>& potentials)
{
    const int n = box.dim();
    const Polynomial<T> bump = boundary_bump<T>(box.intervals());
    const Polynomial<T> bump2 = bump * bump;
    StressDensity<T> out(box, fiber, 1);
    for (const auto& g : potentials) {
        if (!(g.i >= 1 && g.i < g.j && g.j <= n) || g.alpha < 1 || g.alpha > fiber) {
            throw DomainError("pure_gauge_increment: need 1 <= i < j <= n and a valid alpha");
        }
        const Polynomial<T> phi = g.shape * bump2;
        out.set_flux(g.alpha, g.i, out.flux(g.alpha, g.i) + phi.derivative(g.j));
        out.set_flux(g.alpha, g.j, out.flux(g.alpha, g.j) - phi.derivative(g.i));
    }
    return out;
}

/// One reduction step: a non-holonomic stress of order r >= 2 on W is
/// regrouped as a simple stress on the fiber W_{r-1} of \hat J^{r-1} W
/// (flattened by array label, alpha, row-major I). Arrays of generation <= r-1
/// become S_A; array 2^{r-1} + q at index (I, i) becomes S^i_A for A = (q, alpha, I).
template <Scalar T> StressDensity<T> reduce_nonholonomic(const NonHolonomicStressDensity<T>& s)
{
    const int r = s.order();
    if (r < 2) throw DomainError("reduce_nonholonomic: needs order r >= 2, got " + std::to_string(r));
    const int n = s.dim();
    const std::uint32_t lower = 1u << (r - 1);
    int reduced_fiber = 0;
    for (std::uint32_t q = 0; q < lower; ++q) reduced_fiber += static_cast<int>(s.slots().slot_count(BinaryNodeIndex(q)));

    StressDensity<T> out(s.domain(), reduced_fiber, 1);
    int a = 1;
    for (std::uint32_t qv = 0; qv < lower; ++qv) {
        const BinaryNodeIndex q(qv);
        const BinaryNodeIndex child = child_index(q, r);
        for (int alpha = 1; alpha <= s.fiber(); ++alpha) {
            for (const auto& index : enumerate_multi(n, q.arity())) {
                out.set_base(a, s.at(q, alpha, index));
                for (int i = 1; i <= n; ++i) {
                    std::vector<int> extended = index.entries();
                    extended.push_back(i);
                    out.set_flux(a, i, s.at(child, alpha, MultiIndex(std::move(extended), n)));
                }
                ++a;
            }
        }
    }
    return out;
}

/// Section of \hat J^{r-1} W matching the fiber of reduce_nonholonomic.
template <Scalar T> SectionField<T> reduced_section(const SectionField<T>& w, int order)
{
    return as_section(iterate_prolong(w, order - 1));
}

}  // namespace jetstress
