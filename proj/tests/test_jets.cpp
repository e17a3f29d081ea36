#include "doctest.h"

#include "jetstress/jets.hpp"
#include "jetstress/random.hpp"

#include <utility>

using namespace jetstress;

namespace {

RPoly x(int n, int i) { return RPoly::coordinate(n, i); }
RPoly c(int n, Rational v) { return RPoly::constant(n, v); }
NonDecreasingIndex nd(std::initializer_list<int> e, int n) { return NonDecreasingIndex(e, n); }
MultiIndex mi(std::initializer_list<int> e, int n) { return MultiIndex(e, n); }
BinaryNodeIndex bin(const char* s) { return BinaryNodeIndex::parse(s); }

// Oracle: iterated partial derivative by repeated single differentiation.
RPoly d_i(RPoly f, const std::vector<int>& axes)
{
    for (int a : axes) f = f.derivative(a);
    return f;
}

}  // namespace

TEST_CASE("prolongation values")
{
    RBox u2 = RBox::unit(2);
    SectionField<Rational> w(u2, {x(2, 1) * x(2, 2)});
    auto j = prolong(w, 1);
    CHECK(j.at(1, nd({}, 2)) == x(2, 1) * x(2, 2));
    CHECK(j.at(1, nd({1}, 2)) == x(2, 2));
    CHECK(j.at(1, nd({2}, 2)) == x(2, 1));

    auto jc = prolong(SectionField<Rational>(u2, {c(2, 4)}), 3);
    for (const auto& [idx, v] : std::as_const(jc).slots(1)) {
        if (!idx.empty()) CHECK(v.is_zero());
    }
    auto j2 = prolong(SectionField<Rational>(RBox::unit(1), {x(1, 1) * x(1, 1)}), 2);
    CHECK(j2.at(1, nd({1, 1}, 1)) == c(1, 2));
    CHECK(j.slot_count() == 3);
}

TEST_CASE("prolongation matches iterated derivatives and is linear")
{
    TrialRng rng(3);
    RBox box = RBox::unit(3);
    for (int trial = 0; trial < 5; ++trial) {
        auto a = random_section(rng, box, 2, 4), b = random_section(rng, box, 2, 4);
        Rational s = rng.coefficient();
        auto ja = prolong(a, 3);
        for (int alpha = 1; alpha <= 2; ++alpha) {
            for (const auto& [idx, v] : std::as_const(ja).slots(alpha)) CHECK(v == d_i(a[alpha], idx.entries()));
        }
        CHECK(prolong(s * a + b, 3) == s * ja + prolong(b, 3));
    }
}

TEST_CASE("iterated prolongation layout")
{
    RBox u2 = RBox::unit(2);
    SectionField<Rational> w(u2, {x(2, 1) * x(2, 2)});
    auto h = iterate_prolong(w, 2);
    auto labels = h.labels();
    REQUIRE(labels.size() == 4);
    CHECK(labels[0].to_string() == "0");
    CHECK(labels[1].to_string() == "1");
    CHECK(labels[2].to_string() == "10");
    CHECK(labels[3].to_string() == "11");
    CHECK(h.array(bin("1")) == h.array(bin("10")));
    CHECK(h.at(bin("11"), 1, mi({1, 2}, 2)) == c(2, 1));
    CHECK(h.at(bin("11"), 1, mi({2, 1}, 2)) == c(2, 1));
    CHECK(h.at(bin("11"), 1, mi({1, 1}, 2)).is_zero());
    CHECK(h.at(bin("1"), 1, mi({1}, 2)) == x(2, 2));

    auto h3 = iterate_prolong(w, 3);
    std::vector<std::string> names;
    for (const auto& p : h3.labels()) names.push_back(p.to_string());
    CHECK(names == std::vector<std::string>{"0", "1", "10", "11", "100", "101", "110", "111"});
    for (const auto& p : h3.labels()) {
        std::size_t expect = 1;
        for (int k = 0; k < p.arity(); ++k) expect *= 2;
        CHECK(h3.slot_count(p) == expect);
    }
}

TEST_CASE("order one iterated jets coincide with jets")
{
    TrialRng rng(6);
    RBox box = RBox::unit(2);
    auto w = random_section(rng, box, 2, 3);
    auto j = prolong(w, 1);
    auto h = iterate_prolong(w, 1);
    for (int alpha = 1; alpha <= 2; ++alpha) {
        CHECK(h.at(bin("0"), alpha, mi({}, 2)) == j.at(alpha, nd({}, 2)));
        for (int i = 1; i <= 2; ++i) CHECK(h.at(bin("1"), alpha, mi({i}, 2)) == j.at(alpha, nd({i}, 2)));
    }
}

TEST_CASE("holonomic inclusion commutes with prolongation")
{
    TrialRng rng(7);
    for (int n = 1; n <= 3; ++n) {
        RBox box = random_box(rng, n);
        for (int r = 0; r <= 3; ++r) {
            auto w = random_section(rng, box, 2, 3);
            auto h = iterate_prolong(w, r);
            CHECK(include_holonomic(prolong(w, r)) == h);
            CHECK(is_holonomic(h));
            CHECK(is_pointwise_holonomic(h));
            // Entry-level oracle.
            for (const auto& p : h.labels()) {
                for (const auto& idx : enumerate_multi(n, p.arity())) CHECK(h.at(p, 1, idx) == d_i(w[1], idx.entries()));
            }
        }
    }
}

TEST_CASE("symmetrization of jet data")
{
    RBox u2 = RBox::unit(2);
    JetField<Rational> j(u2, 1, 2);
    j.set(1, nd({1, 2}, 2), c(2, 5));
    auto h = include_holonomic(j);
    CHECK(h.at(bin("11"), 1, mi({1, 2}, 2)) == c(2, 5));
    CHECK(h.at(bin("11"), 1, mi({2, 1}, 2)) == c(2, 5));
    CHECK(is_pointwise_holonomic(h));
    // Array 0 is zero but array 11 is not: not integrable.
    CHECK_FALSE(is_holonomic(h));

    JetField<Rational> j0(u2, 1, 0);
    j0.set(1, nd({}, 2), x(2, 1));
    auto h0 = include_holonomic(j0);
    CHECK(h0.labels().size() == 1);
    CHECK(h0.at(bin("0"), 1, mi({}, 2)) == x(2, 1));
}

TEST_CASE("perturbations break holonomy")
{
    RBox u2 = RBox::unit(2);
    SectionField<Rational> w(u2, {x(2, 1) * x(2, 2)});
    auto h = iterate_prolong(w, 2);
    auto bad = h;
    bad.set(bin("10"), 1, mi({1}, 2), h.at(bin("10"), 1, mi({1}, 2)) + c(2, 1));
    CHECK_FALSE(is_holonomic(bad));
    CHECK_FALSE(is_pointwise_holonomic(bad));

    // Symmetric arrays of equal popcount that are not derivatives of array 0.
    IteratedJetField<Rational> fake(u2, 1, 1);
    fake.set(bin("0"), 1, mi({}, 2), x(2, 1));
    fake.set(bin("1"), 1, mi({1}, 2), c(2, 3));
    CHECK(is_pointwise_holonomic(fake));
    CHECK_FALSE(is_holonomic(fake));

    auto dh = iterate_prolong(w.cast<double>(), 2);
    CHECK(is_holonomic(dh, 1e-12));
}

TEST_CASE("norm isometries")
{
    TrialRng rng(13);
    for (int n = 1; n <= 3; ++n) {
        SamplingGrid grid = SamplingGrid::uniform(n, 4);
        RBox box = random_box(rng, n);
        for (int r = 0; r <= 3; ++r) {
            auto w = random_section(rng, box, 2, 4);
            Rational nw = cr_norm(w, r, grid);
            CHECK(jet_norm0(prolong(w, r), grid) == nw);
            CHECK(jet_norm0(iterate_prolong(w, r), grid) == nw);
            CHECK(cr_norm(as_section(iterate_prolong(w, r)), 0, grid) == nw);
        }
        CHECK(jet_norm0(prolong(SectionField<Rational>::zero(box, 1), 2), grid) == 0);
    }
}

TEST_CASE("fiber offsets and listing")
{
    RBox u2 = RBox::unit(2);
    SectionField<Rational> w(u2, {x(2, 1), x(2, 2)});
    auto h = iterate_prolong(w, 2);
    // Array 0: 2 slots; array 1: 4; array 10: 4; array 11: 8.
    CHECK(iterated_fiber_offset(h, bin("0"), 2, mi({}, 2)) == 1);
    CHECK(iterated_fiber_offset(h, bin("1"), 1, mi({2}, 2)) == 3);
    CHECK(iterated_fiber_offset(h, bin("10"), 1, mi({1}, 2)) == 6);
    CHECK(iterated_fiber_offset(h, bin("11"), 2, mi({2, 1}, 2)) == 10 + 4 + 2);
    CHECK(as_section(h).fiber() == 18);

    const std::string listing = to_listing(h);
    CHECK(listing.find("array 0 ") == 0);
    CHECK(listing.find("array 10 ") != std::string::npos);
    CHECK(listing.find("(2, (2,1)) -> 0") != std::string::npos);
    CHECK(to_listing(prolong(w, 1)).find("(1, (1)) -> 1") != std::string::npos);
}
