#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace jetstress::signs {

/// The sign constants the stress and current formulas rely on. Each one is
/// computed in exactly one place so that a deliberate flip (mutation testing)
/// reaches every formula that uses it.
enum class SignConstant {
    traction,        ///< (-1)^{n-i} in s_{alpha i^} = (-1)^{n-i} S^i_alpha
    cauchy,          ///< (-1)^{n-1} in t = (-1)^{n-1} rho(s)
    current_boundary,///< (-1)^{n-p+1} in the boundary of a smooth current
    graded_swap,     ///< (-1)^{pq} relating left/right contraction and wedge of currents
};

int traction(int n, int i);
int cauchy(int n);
int current_boundary(int n, int p);
int graded_swap(int p, int q);

std::string_view name(SignConstant c);
std::optional<SignConstant> parse(std::string_view text);

/// Flips one sign constant for the lifetime of the guard. Test hook only; not
/// thread-safe with concurrent evaluation.
class ScopedFlip {
public:
    explicit ScopedFlip(SignConstant c);
    ~ScopedFlip();
    ScopedFlip(const ScopedFlip&) = delete;
    ScopedFlip& operator=(const ScopedFlip&) = delete;

private:
    std::optional<SignConstant> previous_;
};

std::optional<SignConstant> active_flip();

}  // namespace jetstress::signs
