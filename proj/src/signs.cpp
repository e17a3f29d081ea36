#include "jetstress/signs.hpp"

#include "jetstress/scalar.hpp"

#include <atomic>

namespace jetstress::signs {
namespace {

// -1 means no flip, otherwise the enum value.
std::atomic<int> g_flipped{-1};

int apply(SignConstant c, int value)
{
    return g_flipped.load(std::memory_order_relaxed) == static_cast<int>(c) ? -value : value;
}

}  // namespace

int traction(int n, int i) { return apply(SignConstant::traction, minus_one_pow(n - i)); }
int cauchy(int n) { return apply(SignConstant::cauchy, minus_one_pow(n - 1)); }
int current_boundary(int n, int p) { return apply(SignConstant::current_boundary, minus_one_pow(n - p + 1)); }
int graded_swap(int p, int q) { return apply(SignConstant::graded_swap, minus_one_pow(p * q)); }

std::string_view name(SignConstant c)
{
    switch (c) {
    case SignConstant::traction: return "traction";
    case SignConstant::cauchy: return "cauchy";
    case SignConstant::current_boundary: return "current-boundary";
    case SignConstant::graded_swap: return "graded-swap";
    }
    return "?";
}

std::optional<SignConstant> parse(std::string_view text)
{
    for (auto c : {SignConstant::traction, SignConstant::cauchy, SignConstant::current_boundary,
                   SignConstant::graded_swap}) {
        if (name(c) == text) return c;
    }
    return std::nullopt;
}

ScopedFlip::ScopedFlip(SignConstant c)
{
    int prev = g_flipped.exchange(static_cast<int>(c));
    if (prev >= 0) previous_ = static_cast<SignConstant>(prev);
}

ScopedFlip::~ScopedFlip()
{
    g_flipped.store(previous_ ? static_cast<int>(*previous_) : -1);
}

std::optional<SignConstant> active_flip()
{
    int v = g_flipped.load();
    if (v < 0) return std::nullopt;
    return static_cast<SignConstant>(v);
}

}  // namespace jetstress::signs
