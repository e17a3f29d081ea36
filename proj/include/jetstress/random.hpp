#pragma once

#include "jetstress/currents.hpp"
#include "jetstress/stress.hpp"

#include <cstdint>
#include <random>

namespace jetstress {

/// Seeded generator for randomized trials. Draws go through explicit modulo
/// mappings rather than std distributions so that a seed reproduces the same
/// data on every standard library.
class TrialRng {
public:
    explicit TrialRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform-ish integer in [lo, hi].
    int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool coin() { return (engine_() & 1u) != 0; }

    /// Small rational a/b with |a| <= 4, b in 1..3.
    Rational coefficient()
    {
        Rational q(integer(-4, 4), integer(1, 3));
        q.canonicalize();
        return q;
    }

private:
    std::mt19937_64 engine_;
};

/// Random polynomial in n variables of total degree <= degree; each monomial
/// is kept with probability 1/2.
inline RPoly random_polynomial(TrialRng& rng, int n, int degree)
{
    RPoly out(n);
    std::vector<Exponent> exps{Exponent{}};
    for (int axis = 0; axis < n; ++axis) {
        std::vector<Exponent> next;
        for (const auto& e : exps) {
            int used = 0;
            for (auto x : e) used += x;
            for (int k = 0; used + k <= degree; ++k) {
                Exponent f = e;
                f[static_cast<std::size_t>(axis)] = static_cast<std::uint8_t>(k);
                next.push_back(f);
            }
        }
        exps = std::move(next);
    }
    for (const auto& e : exps) {
        if (rng.coin()) out.add_term(e, rng.coefficient());
    }
    return out;
}

inline FormField<Rational> random_form(TrialRng& rng, int n, int p, int degree)
{
    FormField<Rational> out(n, p);
    for (const auto& lambda : enumerate_increasing(n, p)) out.add(lambda, random_polynomial(rng, n, degree));
    return out;
}

inline AltForm<Rational> random_constant_form(TrialRng& rng, int n, int p)
{
    AltForm<Rational> out(n, p);
    for (const auto& lambda : enumerate_increasing(n, p)) out.add(lambda, rng.coefficient());
    return out;
}

inline MultiVector<Rational> random_constant_multivector(TrialRng& rng, int n, int p)
{
    MultiVector<Rational> out(n, p);
    for (const auto& lambda : enumerate_increasing(n, p)) out.add(lambda, rng.coefficient());
    return out;
}

inline MultiVector<RPoly> random_multivector_field(TrialRng& rng, int n, int p, int degree)
{
    MultiVector<RPoly> out(n, p);
    for (const auto& lambda : enumerate_increasing(n, p)) out.add(lambda, random_polynomial(rng, n, degree));
    return out;
}

/// Random sub-box of [0,1]^n or the given box with rational endpoints.
inline RBox random_box(TrialRng& rng, int n)
{
    std::vector<std::pair<Rational, Rational>> intervals;
    for (int i = 0; i < n; ++i) {
        Rational a(rng.integer(-2, 1), 2);
        Rational b = a + Rational(rng.integer(1, 3), 2);
        a.canonicalize();
        b.canonicalize();
        intervals.emplace_back(a, b);
    }
    return RBox(std::move(intervals));
}

inline SectionField<Rational> random_section(TrialRng& rng, const RBox& box, int fiber, int degree)
{
    std::vector<RPoly> comps;
    for (int a = 0; a < fiber; ++a) comps.push_back(random_polynomial(rng, box.dim(), degree));
    return SectionField<Rational>(box, std::move(comps));
}

inline StressDensity<Rational> random_stress(TrialRng& rng, const RBox& box, int fiber, int order, int degree)
{
    StressDensity<Rational> out(box, fiber, order);
    for (int alpha = 1; alpha <= fiber; ++alpha) {
        for (const auto& index : enumerate_non_decreasing_upto(box.dim(), order)) {
            out.set(alpha, index, random_polynomial(rng, box.dim(), degree));
        }
    }
    return out;
}

inline NonHolonomicStressDensity<Rational> random_nh_stress(TrialRng& rng, const RBox& box, int fiber, int order, int degree)
{
    NonHolonomicStressDensity<Rational> out(box, fiber, order);
    for (const auto& p : out.labels()) {
        for (const auto& index : enumerate_multi(box.dim(), p.arity())) {
            for (int alpha = 1; alpha <= fiber; ++alpha) out.set(p, alpha, index, random_polynomial(rng, box.dim(), degree));
        }
    }
    return out;
}

inline SmoothCurrent<Rational> random_current(TrialRng& rng, const RBox& box, int p, int degree)
{
    DensitySide side = rng.coin() ? DensitySide::left : DensitySide::right;
    return SmoothCurrent<Rational>(box, p, random_form(rng, box.dim(), box.dim() - p, degree), side);
}

}  // namespace jetstress
