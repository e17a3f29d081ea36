#include "doctest.h"

#include "jetstress/random.hpp"
#include "jetstress/stress.hpp"

using namespace jetstress;

namespace {

using Stress = StressDensity<Rational>;
using Section = SectionField<Rational>;

RPoly x(int n, int i) { return RPoly::coordinate(n, i); }
RPoly c(int n, Rational v) { return RPoly::constant(n, v); }
IncreasingIndex inc(std::initializer_list<int> e, int n) { return IncreasingIndex(e, n); }
BinaryNodeIndex bin(const char* s) { return BinaryNodeIndex::parse(s); }

// Oracle: F(w) = int sum_I S^I_alpha d_I w^alpha, differentiating axis by axis.
Rational force_oracle(const Stress& s, const Section& w, const RBox& region)
{
    RPoly integrand(s.dim());
    for (int alpha = 1; alpha <= s.fiber(); ++alpha) {
        for (const auto& [index, value] : s.slots(alpha)) {
            RPoly d = w[alpha];
            for (int axis : index.entries()) d = d.derivative(axis);
            integrand += value * d;
        }
    }
    for (int i = s.dim(); i >= 1; --i) integrand = integrand.integrate_axis(i, region.lower(i), region.upper(i));
    return integrand.constant_term();
}

}  // namespace

TEST_CASE("force of a stress")
{
    RBox u1 = RBox::unit(1), u2 = RBox::unit(2);
    Stress s(u2, 1, 1);
    s.set_base(1, c(2, 1));
    CHECK(force_of(s, Section(u2, {c(2, 1)})) == 1);

    Stress s1(u1, 1, 1);
    s1.set_flux(1, 1, c(1, 1));
    CHECK(force_of(s1, Section(u1, {x(1, 1)})) == 1);

    TrialRng rng(2);
    for (int n = 1; n <= 3; ++n) {
        RBox box = random_box(rng, n);
        for (int r = 0; r <= 3; ++r) {
            Stress st = random_stress(rng, box, 2, r, 2);
            Section a = random_section(rng, box, 2, 3), b = random_section(rng, box, 2, 3);
            Rational k = rng.coefficient();
            CHECK(force_of(st, a) == force_oracle(st, a, box));
            CHECK(force_of(st, k * a + b) == k * force_of(st, a) + force_of(st, b));
        }
    }
    CHECK_THROWS_AS(force_of(s, Section(u2, {c(2, 1), c(2, 1)})), DomainError);
}

TEST_CASE("non-holonomic force")
{
    TrialRng rng(4);
    RBox box = RBox::unit(2);
    // Supported on array 0 only: an order-0 stress.
    NonHolonomicStressDensity<Rational> nh(box, 1, 2);
    nh.set(bin("0"), 1, MultiIndex({}, 2), x(2, 1));
    Stress zero_order(box, 1, 0);
    zero_order.set_base(1, x(2, 1));
    Section w = random_section(rng, box, 1, 3);
    CHECK(force_of_nh(nh, w) == force_of(zero_order, w));
    CHECK(force_of_nh(NonHolonomicStressDensity<Rational>(box, 1, 2), w) == 0);

    for (int r = 1; r <= 3; ++r) {
        Stress s = random_stress(rng, box, 2, r, 2);
        Section w2 = random_section(rng, box, 2, 3);
        CHECK(force_of_nh(split_symmetric(s), w2) == force_of(s, w2));
    }
}

TEST_CASE("vertical projection")
{
    RBox u2 = RBox::unit(2);
    Stress s(u2, 1, 1);
    s.set_base(1, c(2, 7));
    CHECK(vertical_projection(s) == Stress(u2, 1, 1));

    TrialRng rng(5);
    Stress t = random_stress(rng, u2, 2, 1, 2);
    Stress v = vertical_projection(t);
    CHECK(vertical_projection(v) == v);
    // Acting on du (x) w equals the flux part of the force on u w minus the u du-free terms.
    RPoly u = random_polynomial(rng, 2, 2);
    Section w = random_section(rng, u2, 2, 2);
    Section uw = u * w;
    Stress flux_only = v;
    Rational expected = force_of(flux_only, uw);
    Stress frozen(u2, 2, 1);
    for (int alpha = 1; alpha <= 2; ++alpha) {
        for (int i = 1; i <= 2; ++i) frozen.set_flux(alpha, i, v.flux(alpha, i) * u);
    }
    CHECK(vertical_action(v, u, w) == expected - force_of(frozen, w));
    CHECK_THROWS_AS(vertical_projection(Stress(u2, 1, 2)), DomainError);
}

TEST_CASE("traction stress")
{
    RBox u2 = RBox::unit(2);
    Stress s(u2, 1, 1);
    s.set_flux(1, 1, x(2, 1));
    s.set_flux(1, 2, x(2, 2));
    auto tr = traction_stress(s);
    CHECK(tr.components[0][inc({2}, 2)] == -x(2, 1));
    CHECK(tr.components[0][inc({1}, 2)] == x(2, 2));
    auto primed = traction_stress(s, true);
    CHECK(primed.components[0] == tr.components[0].signed_copy(-1));

    RBox u1 = RBox::unit(1);
    Stress s1(u1, 1, 1);
    s1.set_flux(1, 1, x(1, 1) + c(1, 2));
    CHECK(traction_stress(s1).components[0][inc({}, 1)] == x(1, 1) + c(1, 2));
    CHECK(traction_stress(Stress(u2, 2, 1)).components[1].is_zero());
    CHECK(traction_stress(Stress(RBox::unit(3), 1, 1)).components.size() == 1);
}

TEST_CASE("surface traction")
{
    RBox u1 = RBox::unit(1);
    Stress s1(u1, 1, 1);
    s1.set_flux(1, 1, x(1, 1) + c(1, 2));
    auto tr = traction_stress(s1);
    CHECK(surface_traction(tr, Face::parse("1:hi")).components[0] == c(1, 3));
    CHECK(surface_traction(tr, Face::parse("1:lo")).components[0] == c(1, -2));

    for (int n = 1; n <= 3; ++n) {
        Stress s(RBox::unit(n), 1, 1);
        for (int i = 1; i <= n; ++i) s.set_flux(1, i, c(n, Rational(i + 1)));
        auto t = traction_stress(s), tp = traction_stress(s, true);
        for (int i = 1; i <= n; ++i) {
            auto hi = surface_traction(t, Face{i, true}), lo = surface_traction(t, Face{i, false});
            CHECK(hi.components[0] == c(n, Rational(i + 1)));
            CHECK(lo.components[0] == -hi.components[0]);
            CHECK(surface_traction(tp, Face{i, true}).components == hi.components);
        }
        CHECK_THROWS_AS(surface_traction(t, Face{n + 1, true}), DomainError);
    }
    auto zero = surface_tractions(traction_stress(Stress(RBox::unit(2), 2, 1)));
    CHECK(zero.size() == 4);
    for (const auto& f : zero) {
        for (const auto& comp : f.components) CHECK(comp.is_zero());
    }
}

TEST_CASE("divergence and body force")
{
    RBox u1 = RBox::unit(1);
    Stress s(u1, 1, 1);
    s.set_flux(1, 1, x(1, 1));
    CHECK(divergence(s).components[0] == c(1, 1));
    Stress k(u1, 1, 1);
    k.set_flux(1, 1, c(1, 5));
    CHECK(divergence(k).components[0].is_zero());
    Stress b(u1, 1, 1);
    b.set_base(1, c(1, 4));
    CHECK(divergence(b).components[0] == c(1, -4));
    CHECK(body_force(b).components[0] == c(1, 4));
}

TEST_CASE("balance")
{
    RBox u1 = RBox::unit(1);
    Stress s(u1, 1, 1);
    s.set_flux(1, 1, c(1, 1));
    auto rep = balance_check(s, Section(u1, {x(1, 1)}));
    CHECK(rep.lhs == 1);
    CHECK(rep.body_term == 0);
    CHECK(rep.boundary_term == 1);
    CHECK(rep.residual == 0);
    CHECK(rep.faces.size() == 2);

    RBox u2 = RBox::unit(2);
    Stress noflux(u2, 2, 1);
    noflux.set_base(1, x(2, 1));
    noflux.set_base(2, x(2, 2) * x(2, 2));
    auto r2 = balance_check(noflux, Section(u2, {x(2, 2), c(2, 3)}));
    CHECK(r2.boundary_term == 0);
    CHECK(r2.lhs == r2.body_term);

    TrialRng rng(7);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 4; ++trial) {
            RBox box = random_box(rng, n);
            int m = rng.integer(1, 3);
            Stress st = random_stress(rng, box, m, 1, 3);
            Section w = random_section(rng, box, m, 3);
            auto report = balance_check(st, w);
            CHECK(report.residual == 0);
            CHECK(report.lhs == force_oracle(st, w, box));
            // Cauchy consistency: boundary term is (-1)^{n-1} int_boundary w^alpha s_alpha.
            auto tr = traction_stress(st);
            FormField<Rational> ws(n, n - 1);
            for (int alpha = 1; alpha <= m; ++alpha) {
                for (const auto& [idx, v] : tr.components[static_cast<std::size_t>(alpha - 1)].components()) ws.add(idx, w[alpha] * v);
            }
            CHECK(report.boundary_term == minus_one_pow(n - 1) * integrate_boundary(ws, box));
        }
    }
}

TEST_CASE("balance in floating point")
{
    TrialRng rng(8);
    RBox box = RBox::unit(2);
    Stress st = random_stress(rng, box, 2, 1, 3);
    Section w = random_section(rng, box, 2, 3);
    auto report = balance_check(st.cast<double>(), w.cast<double>());
    CHECK(std::fabs(report.residual) <= 1e-10);
    CHECK(report.lhs == doctest::Approx(balance_check(st, w).lhs.get_d()));
}

TEST_CASE("divergence duality against compactly supported scalars")
{
    TrialRng rng(9);
    for (int n = 1; n <= 3; ++n) {
        RBox box = random_box(rng, n);
        Stress st = random_stress(rng, box, 1, 1, 2);
        RPoly u = random_polynomial(rng, n, 1) * boundary_bump<Rational>(box.intervals());
        RPoly w = random_polynomial(rng, n, 2);
        RPoly lhs(n), rhs(n);
        for (int i = 1; i <= n; ++i) {
            lhs += st.flux(1, i) * (u * w).derivative(i);
            rhs += st.flux(1, i).derivative(i) * u * w;
        }
        CHECK(integrate_box(lhs, box) == -integrate_box(rhs, box));
    }
}

TEST_CASE("force systems on sub-bodies")
{
    RBox u1 = RBox::unit(1);
    Stress s(u1, 1, 1);
    s.set_base(1, c(1, 1));
    Section one(u1, {c(1, 1)});
    CHECK(restrict_force_system(s, parse_box("[0,1/2]"), one) == Rational(1, 2));
    CHECK_THROWS_AS(restrict_force_system(s, parse_box("[0,2]"), one), DomainError);

    TrialRng rng(10);
    RBox box = parse_box("[0,1]x[0,2]");
    Stress st = random_stress(rng, box, 2, 2, 2);
    Section w = random_section(rng, box, 2, 3);
    Rational whole = force_of(st, w);
    CHECK(restrict_force_system(st, box, w) == whole);
    CHECK(restrict_force_system(st, parse_box("[0,1]x[0,3/4]"), w) + restrict_force_system(st, parse_box("[0,1]x[3/4,2]"), w) == whole);
    CHECK(restrict_force_system(st, parse_box("[0,1/3]x[0,1]"), w) == force_oracle(st, w, parse_box("[0,1/3]x[0,1]")));
}

TEST_CASE("equivalent stresses and gauge increments")
{
    RBox u2 = RBox::unit(2);
    TrialRng rng(11);
    Stress s = random_stress(rng, u2, 1, 1, 2);
    CHECK(stresses_equivalent(s, s).equivalent);

    Stress gauge = pure_gauge_increment<Rational>(u2, 1, {{1, 1, 2, c(2, 1)}});
    // phi = B^2: S^1 += d_2 phi, S^2 -= d_1 phi.
    RPoly b = boundary_bump<Rational>(u2.intervals());
    CHECK(gauge.flux(1, 1) == (b * b).derivative(2));
    CHECK(gauge.flux(1, 2) == -(b * b).derivative(1));
    CHECK(divergence(gauge).components[0].is_zero());
    for (const auto& f : surface_tractions(traction_stress(gauge))) CHECK(f.components[0].is_zero());
    auto eq = stresses_equivalent(s, s + gauge);
    CHECK(eq.equivalent);
    CHECK(eq.max_gap == 0);

    Stress shifted = s;
    shifted.set_base(1, s.base(1) + c(2, Rational(3, 2)));
    auto neq = stresses_equivalent(s, shifted);
    CHECK_FALSE(neq.equivalent);
    CHECK(neq.max_gap >= Rational(3, 2));

    // Random gauge potentials in 3-d keep the force on every probe.
    RBox u3 = RBox::unit(3);
    Stress s3 = random_stress(rng, u3, 2, 1, 1);
    Stress g3 = pure_gauge_increment<Rational>(u3, 2, {{1, 1, 3, random_polynomial(rng, 3, 1)}, {2, 2, 3, random_polynomial(rng, 3, 1)}});
    CHECK(stresses_equivalent(s3, s3 + g3, monomial_probes(u3, 2, 2)).equivalent);
    CHECK_THROWS_AS(pure_gauge_increment<Rational>(u2, 1, {{1, 2, 1, c(2, 1)}}), DomainError);
}

TEST_CASE("non-holonomic reduction")
{
    CHECK_THROWS_AS(reduce_nonholonomic(NonHolonomicStressDensity<Rational>(RBox::unit(1), 1, 1)), DomainError);
    TrialRng rng(12);
    for (int n = 1; n <= 2; ++n) {
        RBox box = random_box(rng, n);
        for (int r = 2; r <= 3; ++r) {
            auto nh = random_nh_stress(rng, box, 2, r, 2);
            Stress red = reduce_nonholonomic(nh);
            CHECK(red.order() == 1);
            Section w = random_section(rng, box, 2, 4);
            Section lifted = reduced_section(w, r);
            CHECK(lifted.fiber() == red.fiber());
            CHECK(force_of_nh(nh, w) == force_of(red, lifted));
            CHECK(balance_check(red, lifted).residual == 0);
        }
    }
    // Supported on arrays 0, 1 at r = 2: plain regrouping of an order-1 stress.
    RBox u1 = RBox::unit(1);
    NonHolonomicStressDensity<Rational> nh(u1, 1, 2);
    nh.set(bin("0"), 1, MultiIndex({}, 1), c(1, 2));
    nh.set(bin("1"), 1, MultiIndex({1}, 1), x(1, 1));
    Stress red = reduce_nonholonomic(nh);
    REQUIRE(red.fiber() == 2);
    CHECK(red.base(1) == c(1, 2));
    CHECK(red.base(2) == x(1, 1));
    CHECK(red.flux(1, 1).is_zero());
    CHECK(red.flux(2, 1).is_zero());
    Stress zero = reduce_nonholonomic(NonHolonomicStressDensity<Rational>(u1, 1, 2));
    CHECK(zero == Stress(u1, 2, 1));
}
