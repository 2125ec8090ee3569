#pragma once

#include "subalign/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace subalign {

// One bound value as a certified rational enclosure. When the closed form is
// rational (perfect squares and friends) lo == hi and exact is set; otherwise
// lo/hi come from 256-bit directed rounding, so `dof <= lo` proves the bound
// holds and `dof > hi` proves it is violated.
struct BoundValue {
    Rational lo;
    Rational hi;
    bool exact = false;
    bool applicable = false;

    /// 50-significant-digit decimal of the lower enclosure, for display.
    std::string decimal() const;
};

// Evaluations of the tool's bound curves at one parameter point:
//   eq1        three-user exact DoF curve (3/2)(1 - 1/(4L - 2*floor(L/2) - 1))
//   eq2        K-user achievable curve (K/2)(1 - C*N/(L/2)^(1/N)), N = (K-1)(K-2)-1
//   thm1       (K/2)(1 - 1/(11*sqrt(L)))          fast fading, K >= 4
//   thm2       (K/2)(1 - 1/(20*sqrt(L)))          block fading, K >= 4
//   thm3       (K/2)(1 - 2^-17 min(L^-1/4, 2^(M/4)/sqrt(L))), M = (K-2)(K-3)
//   thm4_l_min eps^-2 / 121                        (needs eps)
//   thm5_l_min eps^-2 / 400                        (needs eps)
//   thm6_l_min 2^-34 eps^-2 min(2^(M/2), eps^-2)   (needs eps)
struct BoundTable {
    std::size_t k = 0;
    std::size_t l = 0;
    std::size_t t = 1;
    Rational c_for_eq2;
    std::optional<Rational> eps;

    BoundValue eq1;
    BoundValue eq2;
    BoundValue thm1;
    BoundValue thm2;
    BoundValue thm3;
    std::optional<Rational> thm4_l_min;
    std::optional<Rational> thm5_l_min;
    std::optional<Rational> thm6_l_min;
};

/// Evaluates every curve at (k, l, t). thm1..thm3 are marked not applicable
/// when k < 4; the L-minimum rows need eps. c_for_eq2 defaults to 1.
BoundTable eval_bounds(std::size_t k, std::size_t l, std::size_t t,
                       std::optional<Rational> eps = std::nullopt,
                       const Rational& c_for_eq2 = Rational(1));

} // namespace subalign
