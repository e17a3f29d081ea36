#include "doctest.h"

#include "jetstress/fields.hpp"
#include "jetstress/random.hpp"

using namespace jetstress;

namespace {

RPoly x(int n, int i) { return RPoly::coordinate(n, i); }
RPoly c(int n, Rational v) { return RPoly::constant(n, v); }
IncreasingIndex inc(std::initializer_list<int> e, int n) { return IncreasingIndex(e, n); }
FormField<Rational> one_form(int n, int i, RPoly coeff) { return FormField<Rational>::basis(inc({i}, n), coeff); }
FormField<Rational> top_form(int n, RPoly coeff) { return FormField<Rational>::basis(enumerate_increasing(n, n).front(), coeff); }
SectionField<Rational> section(const RBox& box, std::vector<RPoly> comps) { return SectionField<Rational>(box, std::move(comps)); }

}  // namespace

TEST_CASE("box integration")
{
    RBox u2 = RBox::unit(2);
    CHECK(integrate_box(top_form(2, c(2, 1)), u2) == 1);
    CHECK(integrate_box(top_form(2, x(2, 1) * x(2, 2)), u2) == Rational(1, 4));
    CHECK(integrate_box(top_form(1, x(1, 1) * (c(1, 1) - x(1, 1))), RBox::unit(1)) == Rational(1, 6));
    CHECK(integrate_box(top_form(2, c(2, 1)), parse_box("[0,2]x[-1,1/2]")) == 3);
    CHECK_THROWS_AS(integrate_box(one_form(2, 1, c(2, 1)), u2), DomainError);
}

TEST_CASE("boundary integration and Stokes")
{
    RBox u2 = RBox::unit(2);
    auto w1 = one_form(2, 2, x(2, 1));
    CHECK(integrate_boundary(w1, u2) == 1);
    CHECK(integrate_box(exterior_derivative(w1), u2) == 1);
    auto w2 = one_form(2, 1, x(2, 2));
    CHECK(integrate_boundary(w2, u2) == -1);
    CHECK(exterior_derivative(w2) == top_form(2, c(2, -1)));

    // Compactly supported: any form times the bump integrates to zero on the boundary.
    std::vector<std::pair<Rational, Rational>> iv = u2.intervals();
    auto bumped = one_form(2, 1, x(2, 2) * boundary_bump<Rational>(iv));
    CHECK(integrate_boundary(bumped, u2) == 0);

    TrialRng rng(17);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 8; ++trial) {
            RBox box = random_box(rng, n);
            auto omega = random_form(rng, n, n - 1, 4);
            CHECK(integrate_boundary(omega, box) == integrate_box(exterior_derivative(omega), box));
        }
    }
}

TEST_CASE("exterior derivative squares to zero")
{
    TrialRng rng(23);
    for (int n = 1; n <= 4; ++n) {
        for (int p = 0; p + 2 <= n; ++p) {
            auto omega = random_form(rng, n, p, 3);
            CHECK(exterior_derivative(exterior_derivative(omega)).is_zero());
        }
    }
}

TEST_CASE("C^r norm")
{
    SamplingGrid g1 = SamplingGrid::uniform(1, 5), g2 = SamplingGrid::uniform(2, 5);
    RBox u1 = RBox::unit(1), u2 = RBox::unit(2);
    CHECK(cr_norm(section(u1, {x(1, 1)}), 1, g1) == 1);
    CHECK(cr_norm(section(u1, {c(1, 2) * x(1, 1)}), 1, g1) == 2);
    CHECK(cr_norm(section(u2, {x(2, 1) * x(2, 2)}), 1, g2) == 1);
    CHECK(cr_norm(section(u2, {x(2, 1) * x(2, 2)}), 2, g2) == 1);
    CHECK(cr_norm(section(u1, {x(1, 1) * x(1, 1) * x(1, 1)}), 2, g1) == 6);

    TrialRng rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        auto a = random_section(rng, u2, 2, 3), b = random_section(rng, u2, 2, 3);
        Rational s = rng.coefficient();
        CHECK(cr_norm(s * a, 2, g2) == abs(s) * cr_norm(a, 2, g2));
        CHECK(cr_norm(a + b, 2, g2) <= cr_norm(a, 2, g2) + cr_norm(b, 2, g2));
    }
}

TEST_CASE("C^r neighbourhoods")
{
    SamplingGrid g = SamplingGrid::uniform(1, 5);
    RBox u1 = RBox::unit(1);
    auto k = section(u1, {x(1, 1) * x(1, 1)});
    CHECK(neighborhood_contains(k, k, Rational(1, 100), 1, g));
    Rational eps(1, 10);
    CHECK_FALSE(neighborhood_contains(k, section(u1, {x(1, 1) * x(1, 1) + eps * x(1, 1)}), eps, 1, g));
    auto zero = SectionField<Rational>::zero(u1, 1);
    auto bump = section(u1, {Rational(3, 10) * x(1, 1) * (c(1, 1) - x(1, 1))});
    CHECK(neighborhood_contains(zero, bump, Rational(1, 2), 1, g));
}

TEST_CASE("injectivity margin and immersions")
{
    SamplingGrid g2 = SamplingGrid::uniform(2, 3);
    RBox u2 = RBox::unit(2);
    auto id = section(u2, {x(2, 1), x(2, 2)});
    CHECK(injectivity_margin(id, g2) == 1);
    CHECK(injectivity_margin(section(u2, {c(2, 2) * x(2, 1), c(2, 2) * x(2, 2)}), g2) == 2);
    // Oracle for the shear [[1,0],[1,1]]: min over the sample vectors of max|Av|.
    std::vector<std::vector<Rational>> a{{1, 0}, {1, 1}};
    Rational expected = -1;
    for (auto v : unit_vector_samples<Rational>(2)) {
        Rational m = 0;
        for (const auto& row : a) m = std::max(m, Rational(abs(row[0] * v[0] + row[1] * v[1])));
        if (expected < 0 || m < expected) expected = m;
    }
    CHECK(injectivity_margin(section(u2, {x(2, 1), x(2, 1) + x(2, 2)}), g2) == expected);
    CHECK(expected == 1);

    CHECK(is_immersion_on_grid(id, g2));
    CHECK_FALSE(is_immersion_on_grid(section(u2, {c(2, 1), c(2, 3)}), g2));
    SamplingGrid g1 = SamplingGrid::uniform(1, 6);
    CHECK(is_immersion_on_grid(section(RBox::unit(1), {x(1, 1) * x(1, 1), x(1, 1)}), g1));
    CHECK_FALSE(is_immersion_on_grid(section(RBox::unit(1), {x(1, 1) * x(1, 1)}), g1));
}

TEST_CASE("small perturbations of the identity stay injective on the grid")
{
    SamplingGrid g = SamplingGrid::uniform(2, 4);
    RBox u2 = RBox::unit(2);
    auto id = section(u2, {x(2, 1), x(2, 2)});
    Rational margin = injectivity_margin(id, g);
    TrialRng rng(41);
    const auto pts = g.points(u2);
    for (int trial = 0; trial < 10; ++trial) {
        auto delta = random_section(rng, u2, 2, 2);
        Rational norm = cr_norm(delta, 1, g);
        if (norm == 0) continue;
        delta = (margin / (Rational(3) * norm)) * delta;
        auto k = id + delta;
        std::vector<std::vector<Rational>> images;
        for (const auto& p : pts) images.push_back({k[1].evaluate(std::span<const Rational>(p)), k[2].evaluate(std::span<const Rational>(p))});
        for (std::size_t i = 0; i < images.size(); ++i) {
            for (std::size_t j = i + 1; j < images.size(); ++j) CHECK(images[i] != images[j]);
        }
    }
}

TEST_CASE("boxes and faces")
{
    RBox b = parse_box("[0,1]x[-1/2,2]");
    CHECK(b.dim() == 2);
    CHECK(b.lower(2) == Rational(-1, 2));
    CHECK(b.faces().size() == 4);
    CHECK(Face::parse("2:hi").orientation_sign() == -1);
    CHECK(Face::parse("2:lo").orientation_sign() == 1);
    CHECK(Face::parse("1:hi").orientation_sign() == 1);
    CHECK_THROWS_AS(parse_box("[1,0]"), DomainError);
    CHECK(b.contains(parse_box("[0,1/2]x[0,1]")));
    CHECK_FALSE(b.contains(parse_box("[0,2]x[0,1]")));
}
