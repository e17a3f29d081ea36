#include "doctest.h"

#include "jetstress/currents.hpp"
#include "jetstress/random.hpp"

using namespace jetstress;

namespace {

using FF = FormField<Rational>;
using MV = MultiVector<RPoly>;
using Current = SmoothCurrent<Rational>;

RPoly x(int n, int i) { return RPoly::coordinate(n, i); }
RPoly one(int n) { return RPoly::constant(n, Rational(1)); }
IncreasingIndex inc(std::initializer_list<int> e, int n) { return IncreasingIndex(e, n); }
FF basis(std::initializer_list<int> e, int n, RPoly c) { return FF::basis(inc(e, n), c); }

std::vector<FF> tests_for(const RBox& box, int p, bool compact) { return monomial_test_forms<Rational>(box, p, 2, compact); }

}  // namespace

TEST_CASE("action by exact integration")
{
    RBox u2 = RBox::unit(2);
    Current t(u2, 1, basis({1}, 2, x(2, 2)));
    CHECK(t.act(basis({2}, 2, one(2))) == Rational(1, 2));
    CHECK(t.act(FF(2, 1)) == 0);
    RBox b = parse_box("[0,2]x[1,4]");
    CHECK(manifold_current(b).act(basis({1, 2}, 2, one(2))) == 6);
    CHECK_THROWS_AS(t.act(basis({1, 2}, 2, one(2))), DomainError);
    CHECK_THROWS_AS(Current(u2, 1, basis({1, 2}, 2, one(2))), DomainError);

    // Right density: T_w(psi) = int psi ^ w = (-1)^{p(n-p)} _wT(psi).
    Current r(u2, 1, basis({1}, 2, x(2, 2)), DensitySide::right);
    CHECK(r.act(basis({2}, 2, one(2))) == Rational(-1, 2));
    CHECK(r.to_left().act(basis({2}, 2, one(2))) == Rational(-1, 2));
}

TEST_CASE("contraction of currents")
{
    RBox u2 = RBox::unit(2);
    Current tx = manifold_current(u2);
    FF vol = basis({1, 2}, 2, one(2));
    CHECK(contract_current_right(tx, vol).act(FF::basis(inc({}, 2), one(2))) == 1);

    TrialRng rng(19);
    for (int n = 1; n <= 3; ++n) {
        RBox box = random_box(rng, n);
        for (int total = 0; total <= n; ++total) {
            for (int q = 0; q <= total; ++q) {
                const int p = total - q;
                Current t = random_current(rng, box, total, 2);
                FF omega = random_form(rng, n, q, 1);
                Current left = contract_current_left(omega, t), right = contract_current_right(t, omega);
                for (const auto& psi : tests_for(box, p, false)) {
                    CHECK(left.act(psi) == t.act(wedge(omega, psi)));
                    CHECK(right.act(psi) == t.act(wedge(psi, omega)));
                    CHECK(right.act(psi) == minus_one_pow(p * q) * left.act(psi));
                }
            }
        }
        // _omega T = omega -| T_X.
        for (int p = 0; p <= n; ++p) {
            FF omega = random_form(rng, n, n - p, 2);
            Current direct(box, p, omega);
            Current via = contract_current_left(omega, manifold_current(box));
            CHECK(max_action_gap(direct, via, tests_for(box, p, false)) == 0);
        }
    }
}

TEST_CASE("wedge of currents with multivectors")
{
    TrialRng rng(21);
    for (int n = 1; n <= 3; ++n) {
        RBox box = random_box(rng, n);
        for (int p = 0; p <= n; ++p) {
            for (int q = 0; p + q <= n; ++q) {
                Current t = random_current(rng, box, p, 2);
                MV xi = random_multivector_field(rng, n, q, 1);
                Current left = wedge_current_left(xi, t), right = wedge_current_right(t, xi);
                for (const auto& psi : tests_for(box, p + q, false)) {
                    CHECK(left.act(psi) == t.act(contract_left(xi, psi)));
                    CHECK(right.act(psi) == t.act(contract_right(psi, xi)));
                    CHECK(left.act(psi) == minus_one_pow(p * q) * right.act(psi));
                }
            }
            if (p >= 1) CHECK_THROWS_AS(wedge_current_left(MV(n, n - p + 1), random_current(rng, box, p, 1)), DomainError);
        }
    }
    RBox u2 = RBox::unit(2);
    Current t = manifold_current(u2);
    CHECK(max_action_gap(wedge_current_left(MV(2, 0), contract_current_left(FF(2, 1), t)), Current::zero(u2, 1),
                         tests_for(u2, 1, false)) == 0);
}

TEST_CASE("scalar multiples coincide for all four operations")
{
    TrialRng rng(22);
    RBox box = RBox::unit(2);
    RPoly u = random_polynomial(rng, 2, 2);
    FF uf = FF::basis(inc({}, 2), u);
    MV uv = MV::basis(inc({}, 2), u);
    Current t = random_current(rng, box, 1, 2);
    for (const auto& psi : tests_for(box, 1, false)) {
        FF upsi(2, 1);
        for (const auto& [k, v] : psi.components()) upsi.add(k, u * v);
        const Rational expected = t.act(upsi);
        CHECK(contract_current_left(uf, t).act(psi) == expected);
        CHECK(contract_current_right(t, uf).act(psi) == expected);
        CHECK(wedge_current_left(uv, t).act(psi) == expected);
        CHECK(wedge_current_right(t, uv).act(psi) == expected);
    }
}

TEST_CASE("boundary on compactly supported tests")
{
    RBox u2 = RBox::unit(2);
    Current t(u2, 1, basis({1}, 2, x(2, 2)));
    FF psi = FF::basis(inc({}, 2), x(2, 1) * x(2, 2) * (one(2) - x(2, 1)) * (one(2) - x(2, 2)));
    CHECK(boundary(t).act(psi) == Rational(-1, 36));
    CHECK(t.act(exterior_derivative(psi)) == Rational(-1, 36));

    CHECK(max_action_gap(boundary(manifold_current(u2)), Current::zero(u2, 1), tests_for(u2, 1, true)) == 0);
    CHECK_THROWS_AS(boundary(Current::zero(u2, 0)), DomainError);

    TrialRng rng(29);
    for (int n = 1; n <= 3; ++n) {
        RBox box = random_box(rng, n);
        for (int p = 1; p <= n; ++p) {
            Current t2 = random_current(rng, box, p, 2);
            for (const auto& phi : tests_for(box, p - 1, true)) CHECK(boundary(t2).act(phi) == t2.act(exterior_derivative(phi)));
            if (p >= 2) {
                CHECK(max_action_gap(boundary(boundary(t2)), Current::zero(box, p - 2), tests_for(box, p - 2, false)) == 0);
            }
        }
    }
}

TEST_CASE("boundary face term")
{
    TrialRng rng(30);
    for (int n = 1; n <= 3; ++n) {
        RBox box = random_box(rng, n);
        for (int p = 1; p <= n; ++p) {
            Current t = random_current(rng, box, p, 2);
            for (const auto& phi : tests_for(box, p - 1, false)) {
                auto split = boundary_full(t, phi);
                CHECK(split.total == split.interior + split.face);
            }
            // Compact tests carry no face term.
            for (const auto& phi : tests_for(box, p - 1, true)) CHECK(boundary_full(t, phi).face == 0);
        }
    }
}

TEST_CASE("exterior derivative of currents")
{
    TrialRng rng(31);
    for (int n = 1; n <= 3; ++n) {
        RBox box = random_box(rng, n);
        for (int p = 1; p <= n; ++p) {
            FF omega = random_form(rng, n, n - p, 2);
            Current t(box, p, omega);
            Current dt = ext_derivative(t);
            Current expected(box, p - 1, exterior_derivative(omega));
            CHECK(dt.density() == expected.density());
            for (const auto& phi : tests_for(box, p - 1, false)) {
                CHECK(dt.act(phi) == minus_one_pow(n - p + 1) * boundary(t).act(phi));
            }
        }
    }
    // Closed density.
    RBox u2 = RBox::unit(2);
    CHECK(ext_derivative(Current(u2, 1, basis({1}, 2, x(2, 1)))).density().is_zero());
}

TEST_CASE("representation by 0-currents")
{
    TrialRng rng(37);
    for (int n = 1; n <= 3; ++n) {
        RBox box = random_box(rng, n);
        for (int p = 0; p <= n; ++p) {
            Current t = random_current(rng, box, p, 2);
            auto rep = rep_zero_currents(t);
            CHECK(rep.components.size() == binomial(n, p));
            for (const auto& c : rep.components) CHECK(c.p() == 0);
            auto tests = tests_for(box, p, false);
            CHECK(max_action_gap(reconstruct(rep, box, p), t, tests) == 0);
            for (const auto& psi : tests) CHECK(act_from_zero_currents(rep, psi) == t.act(psi));
        }
    }
    // p = n: the single component is the underlying density.
    RBox u2 = RBox::unit(2);
    Current t(u2, 2, FF::basis(inc({}, 2), x(2, 1)));
    auto rep = rep_zero_currents(t);
    REQUIRE(rep.components.size() == 1);
    CHECK(rep.components[0].act(FF::basis(inc({}, 2), one(2))) == Rational(1, 2));
}

TEST_CASE("representation by n-currents")
{
    CHECK(concat_sign(inc({2}, 2), inc({1}, 2)) == -1);
    CHECK(concat_sign(inc({1}, 2), inc({2}, 2)) == 1);
    TrialRng rng(41);
    for (int n = 1; n <= 3; ++n) {
        RBox box = random_box(rng, n);
        for (int p = 0; p <= n; ++p) {
            Current t = random_current(rng, box, p, 2);
            auto rep = rep_n_currents(t), primed = rep_n_currents(t, true);
            auto tests = tests_for(box, p, false);
            for (const auto& psi : tests) {
                CHECK(act_from_n_currents(rep, psi) == t.act(psi));
                CHECK(act_from_n_currents(primed, psi) == t.act(psi));
            }
            CHECK(max_action_gap(reconstruct(rep, box, p), t, tests) == 0);
            CHECK(max_action_gap(reconstruct(primed, box, p), t, tests) == 0);
            auto top = tests_for(box, n, false);
            for (std::size_t k = 0; k < rep.components.size(); ++k) {
                CHECK(max_action_gap(primed.components[k], rep.components[k].scaled(Rational(minus_one_pow(p * (n - p)))), top) == 0);
            }
        }
    }
}

TEST_CASE("linear structure")
{
    RBox u2 = RBox::unit(2);
    TrialRng rng(43);
    Current a = random_current(rng, u2, 1, 2), b = random_current(rng, u2, 1, 2);
    for (const auto& psi : tests_for(u2, 1, false)) {
        CHECK((a + b).act(psi) == a.act(psi) + b.act(psi));
        CHECK(a.scaled(Rational(3)).act(psi) == 3 * a.act(psi));
    }
    CHECK(Current(u2, 1, basis({1}, 2, x(2, 2))).to_string().find("left") != std::string::npos);
}
