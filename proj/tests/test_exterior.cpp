#include "doctest.h"

#include "jetstress/exterior.hpp"
#include "jetstress/random.hpp"

using namespace jetstress;

namespace {

using Form = AltForm<Rational>;
using Vec = MultiVector<Rational>;

IncreasingIndex inc(std::initializer_list<int> e, int n) { return IncreasingIndex(e, n); }
Form dx(std::initializer_list<int> e, int n) { return Form::basis(inc(e, n), Rational(1)); }
Vec d(std::initializer_list<int> e, int n) { return Vec::basis(inc(e, n), Rational(1)); }
Rational top(const Form& f) { return f[enumerate_increasing(f.dim(), f.dim()).front()]; }

// Oracle for the full evaluation theta(v_1 ^ ... ^ v_p) of a p-form on a
// p-vector built by wedging vectors: the determinant expansion, computed
// directly from components.
Rational evaluate(const Form& theta, const Vec& eta) { return pair(theta, eta); }

}  // namespace

TEST_CASE("wedge signs")
{
    CHECK(top(wedge(dx({1}, 2), dx({2}, 2))) == 1);
    CHECK(top(wedge(dx({2}, 2), dx({1}, 2))) == -1);
    CHECK(top(wedge(dx({1, 3}, 3), dx({2}, 3))) == -1);
    CHECK(wedge(dx({1}, 2), dx({1}, 2)).is_zero());
    CHECK_THROWS_AS(wedge(dx({1, 2}, 2), dx({1}, 2)), DomainError);
}

TEST_CASE("wedge is associative and graded commutative")
{
    TrialRng rng(11);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
            int p = rng.integer(0, n), q = rng.integer(0, n - p), r = rng.integer(0, n - p - q);
            Form a = random_constant_form(rng, n, p), b = random_constant_form(rng, n, q), c = random_constant_form(rng, n, r);
            CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
            CHECK(wedge(a, b) == wedge(b, a).signed_copy(minus_one_pow(p * q)));
        }
    }
}

TEST_CASE("contractions on basis elements")
{
    const Form vol2 = dx({1, 2}, 2);
    CHECK(contract_left(d({1}, 2), vol2) == dx({2}, 2));
    CHECK(contract_left(d({2}, 2), vol2) == -dx({1}, 2));
    CHECK(contract_left(d({1, 2}, 3), dx({1, 2, 3}, 3)) == dx({3}, 3));
    CHECK(contract_right(vol2, d({2}, 2)) == dx({1}, 2));
    CHECK(contract_right(vol2, d({1}, 2)) == -dx({2}, 2));
    CHECK_THROWS_AS(contract_left(d({1, 2}, 2), dx({1}, 2)), DomainError);
}

TEST_CASE("contractions satisfy their definitions and the side relation")
{
    TrialRng rng(5);
    for (int n = 1; n <= 4; ++n) {
        for (int p = 0; p <= n; ++p) {
            for (int r = 0; p + r <= n; ++r) {
                Form theta = random_constant_form(rng, n, p + r);
                Vec eta = random_constant_multivector(rng, n, p);
                Form left = contract_left(eta, theta), right = contract_right(theta, eta);
                CHECK(right == left.signed_copy(minus_one_pow(r * p)));
                for (const auto& mu : enumerate_increasing(n, r)) {
                    Vec e2 = Vec::basis(mu, Rational(1));
                    CHECK(evaluate(left, e2) == evaluate(theta, wedge_mv(eta, e2)));
                    CHECK(evaluate(right, e2) == evaluate(theta, wedge_mv(e2, eta)));
                }
            }
        }
    }
}

TEST_CASE("multivector wedge")
{
    CHECK(wedge_mv(d({1}, 2), d({2}, 2)) == d({1, 2}, 2));
    CHECK(wedge_mv(d({2}, 2), d({2}, 2)).is_zero());
    CHECK(wedge_mv(d({2}, 3), d({1, 3}, 3)) == -d({1, 2, 3}, 3));
}

TEST_CASE("contraction is adjoint to multivector wedge")
{
    TrialRng rng(8);
    for (int n = 1; n <= 4; ++n) {
        for (int p = 0; p <= n; ++p) {
            for (int q = 0; p + q <= n; ++q) {
                Vec eta = random_constant_multivector(rng, n, p);
                Vec xi = random_constant_multivector(rng, n, q);
                Form theta = random_constant_form(rng, n, p + q);
                CHECK(pair(contract_left(eta, theta), xi) == pair(theta, wedge_mv(eta, xi)));
            }
        }
    }
}

TEST_CASE("e maps")
{
    CHECK(e_right(dx({2}, 2), 1)(dx({1}, 2)) == -dx({1, 2}, 2));
    Form one = Form::basis(inc({}, 2), Rational(1));
    CHECK(e_right(dx({1, 2}, 2), 0)(one) == dx({1, 2}, 2));
    CHECK_THROWS_AS(e_right(dx({1}, 3), 1), DomainError);

    TrialRng rng(3);
    for (int n = 1; n <= 4; ++n) {
        for (int p = 0; p <= n; ++p) {
            Form theta = random_constant_form(rng, n, n);
            Vec xi = random_constant_multivector(rng, n, p);
            CHECK(e_right(contract_right(theta, xi), p) == rank_one(xi, theta));
            CHECK(e_left(contract_left(xi, theta), p) == rank_one(xi, theta));
            Form omega = random_constant_form(rng, n, n - p);
            CHECK(e_right_inverse(e_right(omega, p)) == omega);
        }
    }
}

TEST_CASE("contracting the volume complement recovers the form")
{
    // sum over l^ of d_{l^} _| (dX^{l^} ^ omega) = omega, n <= 5.
    TrialRng rng(4);
    for (int n = 1; n <= 5; ++n) {
        for (int p = 0; p <= n; ++p) {
            Form omega = random_constant_form(rng, n, p);
            Form sum(n, p);
            for (const auto& hat : enumerate_increasing(n, n - p)) {
                sum += contract_left(Vec::basis(hat, Rational(1)), wedge(Form::basis(hat, Rational(1)), omega));
            }
            CHECK(sum == omega);
        }
    }
}

TEST_CASE("serialization lists components in lexicographic order")
{
    Form f(3, 1);
    f.add(inc({3}, 3), Rational(2));
    f.add(inc({1}, 3), Rational(-1, 2));
    CHECK(f.to_string() == "[((1), -1/2), ((3), 2)]");
}
